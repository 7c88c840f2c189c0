// Copyright 2026 The mgshadows Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense pure-state simulation of matchgate circuits and Born-rule sampling.
// Basis index convention: qubit 1 is the most significant bit.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <span>
#include <vector>

#include "mgshadows/errors.hpp"
#include "mgshadows/majorana.hpp"
#include "mgshadows/orthogonal.hpp"

namespace mgs {

inline constexpr int kMaxStateQubits = 24;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kFileNormTol = 1e-6;

class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
            throw ResourceError("StateVector: qubit count " + std::to_string(n_qubits) +
                                " outside [1, " + std::to_string(kMaxStateQubits) + "]");
        }
        amps_.assign(std::size_t{1} << n_qubits, cplx{});
        amps_[0] = 1.0;
    }

    StateVector(int n_qubits, std::vector<cplx> amplitudes) : StateVector(n_qubits) {
        if (amplitudes.size() != amps_.size()) {
            throw DataError("StateVector: expected " + std::to_string(amps_.size()) + " amplitudes, got " +
                            std::to_string(amplitudes.size()));
        }
        amps_ = std::move(amplitudes);
        if (std::abs(squared_norm() - 1.0) > kNormTol) {
            throw DomainError("StateVector: amplitudes are not normalized");
        }
    }

    [[nodiscard]] int n_qubits() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] const std::vector<cplx>& amplitudes() const { return amps_; }
    [[nodiscard]] std::vector<cplx>& mutable_amplitudes() { return amps_; }
    [[nodiscard]] cplx operator[](std::uint64_t i) const { return amps_[i]; }

    [[nodiscard]] double squared_norm() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    friend bool operator==(const StateVector&, const StateVector&) = default;

  private:
    int n_;
    std::vector<cplx> amps_;
};

/// psi <- P psi.
inline void apply_pauli(StateVector& psi, const PauliString& p) {
    if (p.n_qubits() != psi.n_qubits()) throw DomainError("apply_pauli: qubit count mismatch");
    auto& a = psi.mutable_amplitudes();
    std::vector<cplx> out(a.size());
    for (std::uint64_t b = 0; b < a.size(); ++b) {
        const auto [amp, target] = p.act_on_basis(b);
        out[target] = amp * a[b];
    }
    a = std::move(out);
}

/// psi <- exp(-theta/2 gamma_{k-1} gamma_k) psi = cos(theta/2) psi - sin(theta/2) gamma_{k-1} gamma_k psi.
inline void apply_givens(StateVector& psi, const GivensRotation& r) {
    const int n = psi.n_qubits();
    if (r.axis < 2 || r.axis > 2 * n) {
        throw DomainError("apply_givens: axis " + std::to_string(r.axis) + " outside [2, " +
                          std::to_string(2 * n) + "]");
    }
    const std::array<int, 2> idx{r.axis - 1, r.axis};
    const PauliString p = monomial_to_pauli(MajoranaMonomial(n, {idx[0], idx[1]}));
    const double c = std::cos(0.5 * r.angle);
    const double s = std::sin(0.5 * r.angle);
    auto& a = psi.mutable_amplitudes();
    const std::uint64_t x = p.x_mask();
    if (x == 0) {
        for (std::uint64_t b = 0; b < a.size(); ++b) {
            a[b] *= c - s * p.act_on_basis(b).first;
        }
        return;
    }
    for (std::uint64_t b = 0; b < a.size(); ++b) {
        const std::uint64_t b2 = b ^ x;
        if (b2 < b) continue;
        // P|b> = u|b2>, P|b2> = v|b>.
        const cplx u = p.act_on_basis(b).first;
        const cplx v = p.act_on_basis(b2).first;
        const cplx ab = a[b];
        const cplx ab2 = a[b2];
        a[b] = c * ab - s * v * ab2;
        a[b2] = c * ab2 - s * u * ab;
    }
}

/// Pauli X on the last qubit, the reflection gamma_{2n} -> -gamma_{2n}.
inline void apply_reflection(StateVector& psi) {
    auto& a = psi.mutable_amplitudes();
    for (std::uint64_t b = 0; b < a.size(); b += 2) std::swap(a[b], a[b + 1]);
}

inline void apply_sequence(StateVector& psi, const GivensSequence& seq) {
    if (seq.n_modes() != psi.n_qubits()) throw DomainError("apply_sequence: mode count mismatch");
    for (const auto& r : seq.rotations()) apply_givens(psi, r);
    if (seq.terminal_reflection()) apply_reflection(psi);
}

/// Sequence whose unitary is the inverse of `seq`'s (no terminal reflection allowed).
inline GivensSequence inverse_sequence(const GivensSequence& seq) {
    if (seq.terminal_reflection()) throw DomainError("inverse_sequence: terminal reflection not supported");
    GivensSequence out(seq.n_modes());
    for (auto it = seq.rotations().rbegin(); it != seq.rotations().rend(); ++it) {
        out.push_back({it->axis, -it->angle});
    }
    return out;
}

/// <psi|P|psi>.
inline cplx expectation(const StateVector& psi, const PauliString& p) {
    if (p.n_qubits() != psi.n_qubits()) throw DomainError("expectation: qubit count mismatch");
    const auto& a = psi.amplitudes();
    cplx acc{};
    for (std::uint64_t b = 0; b < a.size(); ++b) {
        const auto [amp, target] = p.act_on_basis(b);
        acc += std::conj(a[target]) * amp * a[b];
    }
    return acc;
}

inline cplx expectation(const StateVector& psi, const MajoranaMonomial& m) {
    return expectation(psi, monomial_to_pauli(m));
}

/// Basis index drawn with probability |psi_z|^2.
template <class URBG>
std::uint64_t born_sample_index(const StateVector& psi, URBG& rng) {
    const double norm = psi.squared_norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw InternalError("born_sample: state norm deviates from 1 by " + std::to_string(norm - 1.0));
    }
    const double u = std::uniform_real_distribution<double>(0.0, norm)(rng);
    const auto& a = psi.amplitudes();
    double acc = 0.0;
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t b = 0; b < a.size(); ++b) {
        const double pb = std::norm(a[b]);
        if (pb == 0.0) continue;
        acc += pb;
        last_nonzero = b;
        if (u < acc) return b;
    }
    return last_nonzero;
}

template <class URBG>
std::vector<std::uint8_t> born_sample(const StateVector& psi, URBG& rng) {
    return index_to_bits(born_sample_index(psi, rng), psi.n_qubits());
}

// ---------------------------------------------------------------------------
// Input states.

inline StateVector basis_state(std::span<const std::uint8_t> z) {
    StateVector psi(static_cast<int>(z.size()));
    auto& a = psi.mutable_amplitudes();
    a[0] = 0.0;
    a[bits_to_index(z)] = 1.0;
    return psi;
}

template <class URBG>
StateVector random_haar_state(int n_qubits, URBG& rng) {
    StateVector psi(n_qubits);
    std::normal_distribution<double> g(0.0, 1.0);
    auto& a = psi.mutable_amplitudes();
    double s = 0.0;
    for (auto& v : a) {
        const double re = g(rng);
        const double im = g(rng);
        v = {re, im};
        s += re * re + im * im;
    }
    const double inv = 1.0 / std::sqrt(s);
    for (auto& v : a) v *= inv;
    return psi;
}

/// State file: "nqubits N" then 2^N lines "re im" in basis-index order.
inline StateVector read_state(std::istream& in, const std::string& source = "state file") {
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            const auto first = out.find_first_not_of(" \t\r");
            if (first != std::string::npos && out[first] != '#') return true;
        }
        return false;
    };
    if (!next_line(line)) throw DataError(source + ": empty input");
    std::istringstream head(line);
    std::string key;
    int n = 0;
    if (!(head >> key >> n) || key != "nqubits") {
        throw DataError(source + ": expected header 'nqubits N', got '" + line + "'");
    }
    if (n < 1 || n > kMaxStateQubits) throw DataError(source + ": qubit count out of range");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<cplx> amps;
    amps.reserve(dim);
    while (next_line(line)) {
        std::istringstream row(line);
        double re = 0.0;
        double im = 0.0;
        std::string extra;
        if (!(row >> re >> im) || (row >> extra)) {
            throw DataError(source + ": malformed amplitude line " + std::to_string(amps.size() + 2) + ": '" +
                            line + "'");
        }
        if (!std::isfinite(re) || !std::isfinite(im)) throw DataError(source + ": non-finite amplitude");
        amps.emplace_back(re, im);
    }
    if (amps.size() != dim) {
        throw DataError(source + ": expected " + std::to_string(dim) + " amplitudes, found " +
                        std::to_string(amps.size()));
    }
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    if (std::abs(s - 1.0) >= kFileNormTol) {
        throw DataError(source + ": squared norm " + std::to_string(s) + " deviates from 1 by more than 1e-6");
    }
    if (s != 1.0) {
        const double inv = 1.0 / std::sqrt(s);
        for (auto& a : amps) a *= inv;
    }
    return StateVector(n, std::move(amps));
}

inline StateVector load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open state file '" + path + "'");
    return read_state(in, path);
}

inline void write_state(std::ostream& out, const StateVector& psi) {
    out << "nqubits " << psi.n_qubits() << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& a : psi.amplitudes()) out << a.real() << ' ' << a.imag() << '\n';
}

enum class StateKind { basis, random_haar, from_file };

struct StateSpec {
    StateKind kind = StateKind::basis;
    int n_qubits = 1;
    std::vector<std::uint8_t> bits;  // basis
    std::string path;                // from_file
};

template <class URBG>
StateVector make_state(const StateSpec& spec, URBG& rng) {
    switch (spec.kind) {
        case StateKind::basis:
            if (spec.bits.empty()) return StateVector(spec.n_qubits);
            return basis_state(spec.bits);
        case StateKind::random_haar: return random_haar_state(spec.n_qubits, rng);
        case StateKind::from_file: return load_state(spec.path);
    }
    throw InternalError("make_state: unknown kind");
}

}  // namespace mgs
