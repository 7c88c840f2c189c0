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

/**
 * @file
 * Pauli strings, Majorana monomials and the Jordan-Wigner map between them.
 *
 * Conventions used throughout the library:
 *  - modes and qubits are numbered from 1; qubit 1 is the most significant bit
 *    of a computational-basis index (bit n - q holds qubit q);
 *  - Majorana indices run over [1, 2n] with gamma_{2q-1} = Z..Z X_q and
 *    gamma_{2q} = Z..Z Y_q;
 *  - phases are exponents of i, kept modulo 4.
 */

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mgshadows/errors.hpp"

namespace mgs {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 62;
inline constexpr int kDefaultOracleCap = 6;

/// i^e for an exponent taken modulo 4.
inline cplx i_pow(int e) {
    static constexpr std::array<std::pair<double, double>, 4> table{
        {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}};
    const auto& [re, im] = table[static_cast<std::size_t>(((e % 4) + 4) % 4)];
    return {re, im};
}

/// Bit of qubit q (1-based) inside an n-qubit mask or basis index.
inline std::uint64_t qubit_bit(int n_qubits, int qubit) {
    return std::uint64_t{1} << (n_qubits - qubit);
}

class PauliString {
  public:
    /// Identity on n qubits.
    explicit PauliString(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw DomainError("PauliString: qubit count out of range: " +
                              std::to_string(n_qubits));
        }
    }

    /// i^phase * (tensor over qubits of X, Y or Z), Y meaning both bits set.
    PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
                int phase = 0)
        : PauliString(n_qubits) {
        const std::uint64_t full = mask_all();
        if ((x_mask & ~full) != 0 || (z_mask & ~full) != 0) {
            throw DomainError("PauliString: mask has bits beyond qubit count");
        }
        x_ = x_mask;
        z_ = z_mask;
        phase_ = ((phase % 4) + 4) % 4;
    }

    [[nodiscard]] int n_qubits() const { return n_; }
    [[nodiscard]] std::uint64_t x_mask() const { return x_; }
    [[nodiscard]] std::uint64_t z_mask() const { return z_; }
    [[nodiscard]] int phase() const { return phase_; }
    [[nodiscard]] cplx phase_value() const { return i_pow(phase_); }
    [[nodiscard]] bool is_identity_up_to_phase() const { return x_ == 0 && z_ == 0; }

    /// 'I', 'X', 'Y' or 'Z' on qubit q (1-based).
    [[nodiscard]] char op_at(int qubit) const {
        const std::uint64_t b = qubit_bit(n_, qubit);
        const bool x = (x_ & b) != 0;
        const bool z = (z_ & b) != 0;
        if (x && z) return 'Y';
        if (x) return 'X';
        if (z) return 'Z';
        return 'I';
    }

    [[nodiscard]] PauliString with_phase(int phase) const {
        return PauliString(n_, x_, z_, phase);
    }

    // sigma(x,z) = i^{x.z} X^x Z^z, and Z^z1 X^x2 = (-1)^{z1.x2} X^x2 Z^z1.
    PauliString operator*(const PauliString& rhs) const {
        if (rhs.n_ != n_) {
            throw DomainError("PauliString: qubit count mismatch in product");
        }
        const std::uint64_t x = x_ ^ rhs.x_;
        const std::uint64_t z = z_ ^ rhs.z_;
        const int e = phase_ + rhs.phase_ + std::popcount(x_ & z_) +
                      std::popcount(rhs.x_ & rhs.z_) +
                      2 * std::popcount(z_ & rhs.x_) - std::popcount(x & z);
        return PauliString(n_, x, z, e);
    }

    [[nodiscard]] bool commutes_with(const PauliString& other) const {
        const int overlap =
            std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_);
        return overlap % 2 == 0;
    }

    /// Hermitian iff the phase is real (the bare tensor product is Hermitian).
    [[nodiscard]] bool is_hermitian() const { return phase_ % 2 == 0; }

    /// Amplitude and target index of P|b>: P|b> = amp * |b ^ x>.
    [[nodiscard]] std::pair<cplx, std::uint64_t> act_on_basis(std::uint64_t b) const {
        const int e = phase_ + std::popcount(x_ & z_) + 2 * std::popcount(z_ & b);
        return {i_pow(e), b ^ x_};
    }

    [[nodiscard]] std::string str() const {
        static constexpr std::array<const char*, 4> prefix{"+", "+i", "-", "-i"};
        std::string s = prefix[static_cast<std::size_t>(phase_)];
        for (int q = 1; q <= n_; ++q) s.push_back(op_at(q));
        return s;
    }

    friend bool operator==(const PauliString&, const PauliString&) = default;

  private:
    [[nodiscard]] std::uint64_t mask_all() const {
        return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    }

    int n_ = 1;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int phase_ = 0;
};

/// Ordered product gamma_{mu_1} ... gamma_{mu_k} with strictly increasing indices.
class MajoranaMonomial {
  public:
    explicit MajoranaMonomial(int n_modes) : n_(n_modes) {
        if (n_modes < 1 || n_modes > kMaxQubits) {
            throw DomainError("MajoranaMonomial: mode count out of range");
        }
    }

    MajoranaMonomial(int n_modes, std::vector<int> indices)
        : MajoranaMonomial(n_modes) {
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (indices[i] < 1 || indices[i] > 2 * n_modes) {
                throw DomainError("MajoranaMonomial: index " +
                                  std::to_string(indices[i]) + " outside [1, " +
                                  std::to_string(2 * n_modes) + "]");
            }
            if (i > 0 && indices[i] <= indices[i - 1]) {
                throw DomainError("MajoranaMonomial: indices must be strictly increasing");
            }
        }
        idx_ = std::move(indices);
    }

    [[nodiscard]] int n_modes() const { return n_; }
    [[nodiscard]] int degree() const { return static_cast<int>(idx_.size()); }
    [[nodiscard]] const std::vector<int>& indices() const { return idx_; }
    [[nodiscard]] bool is_identity() const { return idx_.empty(); }

    /// Bit (index - 1) set for every index in the monomial.
    [[nodiscard]] std::uint64_t support_mask() const {
        std::uint64_t m = 0;
        for (int i : idx_) m |= std::uint64_t{1} << (i - 1);
        return m;
    }

    static MajoranaMonomial from_support_mask(int n_modes, std::uint64_t mask) {
        std::vector<int> idx;
        for (int i = 1; i <= 2 * n_modes; ++i) {
            if ((mask >> (i - 1)) & 1U) idx.push_back(i);
        }
        return MajoranaMonomial(n_modes, std::move(idx));
    }

    [[nodiscard]] std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < idx_.size(); ++i) {
            if (i) s.push_back(' ');
            s += std::to_string(idx_[i]);
        }
        return s;
    }

    friend bool operator==(const MajoranaMonomial&, const MajoranaMonomial&) = default;
    friend auto operator<=>(const MajoranaMonomial& a, const MajoranaMonomial& b) {
        if (auto c = a.idx_.size() <=> b.idx_.size(); c != 0) return c;
        return a.idx_ <=> b.idx_;
    }

  private:
    int n_ = 1;
    std::vector<int> idx_;
};

/// Reduces gamma_{s_1} gamma_{s_2} ... (any order, repeats allowed) to
/// sign * gamma_nu with nu sorted, using gamma_a gamma_b = -gamma_b gamma_a and
/// gamma_a^2 = 1.
inline std::pair<int, std::vector<int>> reduce_majorana_product(std::span<const int> seq) {
    std::vector<int> sorted;
    int sign = 1;
    for (int j : seq) {
        // Move gamma_j left past every larger index already present.
        auto pos = std::lower_bound(sorted.begin(), sorted.end(), j);
        const auto larger = std::distance(pos, sorted.end());
        if (pos != sorted.end() && *pos == j) {
            // Passes the larger ones, then annihilates against its twin.
            if ((larger - 1) % 2 != 0) sign = -sign;
            sorted.erase(pos);
        } else {
            if (larger % 2 != 0) sign = -sign;
            sorted.insert(pos, j);
        }
    }
    return {sign, std::move(sorted)};
}

/// Jordan-Wigner image of gamma_k. The only fermion-to-qubit map in the library;
/// everything else goes through this function.
inline PauliString jw_pauli(int k, int n_modes) {
    if (n_modes < 1 || n_modes > kMaxQubits) {
        throw DomainError("jw_pauli: mode count out of range");
    }
    if (k < 1 || k > 2 * n_modes) {
        throw DomainError("jw_pauli: Majorana index " + std::to_string(k) +
                          " outside [1, " + std::to_string(2 * n_modes) + "]");
    }
    const int q = (k + 1) / 2;
    std::uint64_t z = 0;
    for (int l = 1; l < q; ++l) z |= qubit_bit(n_modes, l);
    const std::uint64_t x = qubit_bit(n_modes, q);
    if (k % 2 == 0) z |= x;  // Y_q
    return PauliString(n_modes, x, z, 0);
}

inline PauliString monomial_to_pauli(const MajoranaMonomial& m) {
    PauliString p(m.n_modes());
    for (int k : m.indices()) p = p * jw_pauli(k, m.n_modes());
    return p;
}

/// Inverse of monomial_to_pauli up to phase: the unique monomial whose
/// Jordan-Wigner image has the same masks as `p`, plus the phase e such that
/// gamma_mu = i^e * sigma(x, z).
inline std::pair<MajoranaMonomial, int> pauli_to_monomial(const PauliString& p) {
    const int n = p.n_qubits();
    // Peel qubits from the last one: X_q or Y_q on the highest non-Z qubit fixes
    // gamma_{2q-1} / gamma_{2q}; Z_q alone is -i gamma_{2q-1} gamma_{2q}.
    std::vector<int> idx;
    std::uint64_t x = p.x_mask();
    std::uint64_t z = p.z_mask();
    for (int q = n; q >= 1; --q) {
        const std::uint64_t b = qubit_bit(n, q);
        if (x & b) {
            const bool is_y = (z & b) != 0;
            idx.push_back(is_y ? 2 * q : 2 * q - 1);
            // Remove gamma's string: toggles Z on qubits < q and the local bit.
            for (int l = 1; l < q; ++l) z ^= qubit_bit(n, l);
            x ^= b;
            if (is_y) z ^= b;
        } else if (z & b) {
            idx.push_back(2 * q - 1);
            idx.push_back(2 * q);
            z ^= b;
        }
    }
    std::sort(idx.begin(), idx.end());
    MajoranaMonomial m(n, idx);
    const PauliString image = monomial_to_pauli(m);
    if (image.x_mask() != p.x_mask() || image.z_mask() != p.z_mask()) {
        throw InternalError("pauli_to_monomial: inversion failed for " + p.str());
    }
    return {std::move(m), image.phase()};
}

/// Exponent e with <z|gamma_mu|z> = i^e, or nullopt when the value is 0.
/// `basis_index` encodes z with qubit 1 as the most significant bit.
inline std::optional<int> bitstring_expectation_phase(const MajoranaMonomial& m,
                                                      std::uint64_t basis_index) {
    const PauliString p = monomial_to_pauli(m);
    if (p.x_mask() != 0) return std::nullopt;
    return p.phase() + 2 * std::popcount(p.z_mask() & basis_index);
}

inline std::uint64_t bits_to_index(std::span<const std::uint8_t> bits) {
    std::uint64_t idx = 0;
    for (std::uint8_t b : bits) {
        if (b > 1) throw DomainError("bitstring entries must be 0 or 1");
        idx = (idx << 1) | b;
    }
    return idx;
}

inline std::vector<std::uint8_t> index_to_bits(std::uint64_t idx, int n) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    for (int q = 1; q <= n; ++q) bits[static_cast<std::size_t>(q - 1)] = (idx & qubit_bit(n, q)) ? 1 : 0;
    return bits;
}

/// <z|gamma_mu|z> for a bitstring z = (z_1, ..., z_n).
inline cplx bitstring_expectation(const MajoranaMonomial& m,
                                  std::span<const std::uint8_t> z) {
    if (static_cast<int>(z.size()) != m.n_modes()) {
        throw DomainError("bitstring_expectation: bitstring length " +
                          std::to_string(z.size()) + " != mode count " +
                          std::to_string(m.n_modes()));
    }
    const auto e = bitstring_expectation_phase(m, bits_to_index(z));
    return e ? i_pow(*e) : cplx{0.0, 0.0};
}

// ---------------------------------------------------------------------------
// Dense oracles. Built from Kronecker products of 2x2 matrices, independent of
// the mask arithmetic above.

namespace detail {

inline Eigen::Matrix2cd pauli_2x2(char op) {
    Eigen::Matrix2cd m;
    const cplx i{0.0, 1.0};
    switch (op) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -i, i, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m << 1, 0, 0, 1; break;
    }
    return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

inline void check_oracle_cap(int n, int cap) {
    if (n > cap) {
        throw ResourceError("dense oracle: " + std::to_string(n) +
                            " qubits exceeds cap of " + std::to_string(cap));
    }
}

inline Eigen::MatrixXcd kron_ops(const std::string& ops) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (char c : ops) out = kron(out, pauli_2x2(c));
    return out;
}

}  // namespace detail

/// Dense 2^n x 2^n matrix of a Majorana operator gamma_k, from its defining
/// string Z_1 ... Z_{q-1} (X|Y)_q.
inline Eigen::MatrixXcd dense_majorana(int k, int n_modes, int cap = kDefaultOracleCap) {
    detail::check_oracle_cap(n_modes, cap);
    if (k < 1 || k > 2 * n_modes) throw DomainError("dense_majorana: index out of range");
    const int q = (k + 1) / 2;
    std::string ops(static_cast<std::size_t>(n_modes), 'I');
    for (int l = 1; l < q; ++l) ops[static_cast<std::size_t>(l - 1)] = 'Z';
    ops[static_cast<std::size_t>(q - 1)] = (k % 2 == 1) ? 'X' : 'Y';
    return detail::kron_ops(ops);
}

inline Eigen::MatrixXcd dense_matrix(const MajoranaMonomial& m, int cap = kDefaultOracleCap) {
    detail::check_oracle_cap(m.n_modes(), cap);
    const Eigen::Index dim = Eigen::Index{1} << m.n_modes();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
    for (int k : m.indices()) out = out * dense_majorana(k, m.n_modes(), cap);
    return out;
}

inline Eigen::MatrixXcd dense_matrix(const PauliString& p, int cap = kDefaultOracleCap) {
    detail::check_oracle_cap(p.n_qubits(), cap);
    std::string ops;
    for (int q = 1; q <= p.n_qubits(); ++q) ops.push_back(p.op_at(q));
    return p.phase_value() * detail::kron_ops(ops);
}

// ---------------------------------------------------------------------------
// Linear combinations of monomials.

/// Sum of c_mu gamma_mu over monomials of a fixed mode count.
class MajoranaCombination {
  public:
    explicit MajoranaCombination(int n_modes) : n_(n_modes) {}

    [[nodiscard]] int n_modes() const { return n_; }

    void add(const MajoranaMonomial& m, cplx c) {
        if (m.n_modes() != n_) throw DomainError("MajoranaCombination: mode count mismatch");
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) it->second += c;
        if (it->second == cplx{0.0, 0.0}) terms_.erase(it);
    }

    [[nodiscard]] const std::map<MajoranaMonomial, cplx>& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    /// Coefficient of gamma_mu (0 when absent).
    [[nodiscard]] cplx coefficient(const MajoranaMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? cplx{} : it->second;
    }

    [[nodiscard]] Eigen::MatrixXcd dense(int cap = kDefaultOracleCap) const {
        detail::check_oracle_cap(n_, cap);
        const Eigen::Index dim = Eigen::Index{1} << n_;
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto& [m, c] : terms_) out += c * dense_matrix(m, cap);
        return out;
    }

  private:
    int n_;
    std::map<MajoranaMonomial, cplx> terms_;
};

namespace detail {

/// Gaussian integer a + bi.
struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;
    GaussInt operator*(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
};

}  // namespace detail

/// Expansion of a^dag_{p1} ... a^dag_{pk} a_{q1} ... a_{qk} in Majorana monomials,
/// with a_p = (gamma_{2p-1} + i gamma_{2p}) / 2 and
/// a^dag_p = (gamma_{2p-1} - i gamma_{2p}) / 2.
///
/// Numerators are accumulated as Gaussian integers and divided by 2^{2k} at the
/// end; every coefficient is a dyadic rational and therefore exact in double.
/// Repeated creation (or annihilation) indices give the empty combination.
inline MajoranaCombination rdm_expansion(std::span<const int> creation,
                                         std::span<const int> annihilation, int n_modes) {
    if (creation.size() != annihilation.size()) {
        throw DomainError("rdm_expansion: creation and annihilation lists differ in length");
    }
    for (int p : creation) {
        if (p < 1 || p > n_modes) throw DomainError("rdm_expansion: mode index out of range");
    }
    for (int q : annihilation) {
        if (q < 1 || q > n_modes) throw DomainError("rdm_expansion: mode index out of range");
    }
    MajoranaCombination out(n_modes);
    auto has_repeat = [](std::span<const int> v) {
        std::vector<int> s(v.begin(), v.end());
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) != s.end();
    };
    if (has_repeat(creation) || has_repeat(annihilation)) return out;

    // Each ladder operator is a two-term sum; enumerate all 2^{2k} choices.
    struct Choice {
        int index;
        detail::GaussInt coeff;
    };
    std::vector<std::array<Choice, 2>> factors;
    for (int p : creation) factors.push_back({{{2 * p - 1, {1, 0}}, {2 * p, {0, -1}}}});
    for (int q : annihilation) factors.push_back({{{2 * q - 1, {1, 0}}, {2 * q, {0, 1}}}});

    std::map<MajoranaMonomial, detail::GaussInt> acc;
    const std::size_t n_factors = factors.size();
    std::vector<int> seq(n_factors);
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << n_factors); ++choice) {
        detail::GaussInt c{1, 0};
        for (std::size_t f = 0; f < n_factors; ++f) {
            const Choice& ch = factors[f][(choice >> f) & 1U];
            seq[f] = ch.index;
            c = c * ch.coeff;
        }
        auto [sign, nu] = reduce_majorana_product(seq);
        auto& slot = acc.try_emplace(MajoranaMonomial(n_modes, std::move(nu))).first->second;
        slot.re += sign * c.re;
        slot.im += sign * c.im;
    }
    const double scale = std::ldexp(1.0, -static_cast<int>(n_factors));
    for (const auto& [m, g] : acc) {
        if (g.re == 0 && g.im == 0) continue;
        out.add(m, cplx{static_cast<double>(g.re) * scale, static_cast<double>(g.im) * scale});
    }
    return out;
}

}  // namespace mgs
