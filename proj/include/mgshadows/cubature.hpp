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

// t-fold channel verification for matchgate ensembles.
//
// Operators on t copies of n qubits are expanded in Hermitian Pauli words. A
// single-copy Pauli has index (x << n) | z; in a t-fold word copy 1 occupies
// the most significant n-qubit digit. Channels act by A -> U^dag A U, so the
// channel of "s1 then s2" is E_{s1} o E_{s2}.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mgshadows/circuits.hpp"
#include "mgshadows/errors.hpp"
#include "mgshadows/majorana.hpp"
#include "mgshadows/orthogonal.hpp"

namespace mgs {

inline constexpr int kDefaultWordExponentCap = 6;  // 4^{n t} <= 4^6
inline constexpr double kSymmetryTol = 1e-8;
inline constexpr double kQuadratureTol = 1e-11;

inline std::size_t tfold_dim(int n, int t, int cap = kDefaultWordExponentCap) {
    if (n < 1 || t < 1) throw DomainError("tfold_dim: n and t must be positive");
    if (n * t > cap) {
        throw ResourceError("t-fold Pauli basis of size 4^" + std::to_string(n * t) + " exceeds the cap 4^" +
                            std::to_string(cap));
    }
    return std::size_t{1} << (2 * n * t);
}

inline PauliString pauli_from_index(int n, std::uint32_t p) {
    const std::uint64_t z_mask = (std::uint64_t{1} << n) - 1;
    return PauliString(n, p >> n, p & z_mask, 0);
}

inline std::uint32_t pauli_index(const PauliString& p) {
    return static_cast<std::uint32_t>((p.x_mask() << p.n_qubits()) | p.z_mask());
}

/// Coefficient vector of an operator in the t-fold Pauli word basis.
struct ChannelVector {
    int n = 1;
    int t = 1;
    std::vector<double> coeffs;

    static ChannelVector basis(int n_qubits, int folds, std::size_t word) {
        ChannelVector v{n_qubits, folds, std::vector<double>(tfold_dim(n_qubits, folds), 0.0)};
        v.coeffs.at(word) = 1.0;
        return v;
    }
};

/// Linear map on ChannelVectors stored column by column.
struct SparseChannel {
    int n = 1;
    int t = 1;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> columns;

    [[nodiscard]] std::size_t dim() const { return columns.size(); }

    [[nodiscard]] std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<double> out(v.size(), 0.0);
        for (std::size_t w = 0; w < v.size(); ++w) {
            if (v[w] == 0.0) continue;
            for (const auto& [row, c] : columns[w]) out[row] += c * v[w];
        }
        return out;
    }

    [[nodiscard]] ChannelVector apply(const ChannelVector& v) const {
        if (v.n != n || v.t != t) throw DomainError("SparseChannel: shape mismatch");
        return {n, t, apply(v.coeffs)};
    }

    /// Dense column w.
    [[nodiscard]] std::vector<double> column(std::size_t w) const {
        std::vector<double> c(dim(), 0.0);
        for (const auto& [row, v] : columns[w]) c[row] += v;
        return c;
    }
};

/// max over columns and rows of |a - b|.
inline double sup_difference(const SparseChannel& a, const SparseChannel& b) {
    if (a.dim() != b.dim()) throw DomainError("sup_difference: dimension mismatch");
    double worst = 0.0;
    std::vector<double> acc(a.dim(), 0.0);
    for (std::size_t w = 0; w < a.dim(); ++w) {
        for (const auto& [r, v] : a.columns[w]) acc[r] += v;
        for (const auto& [r, v] : b.columns[w]) acc[r] -= v;
        for (const auto& [r, v] : a.columns[w]) worst = std::max(worst, std::abs(acc[r]));
        for (const auto& [r, v] : b.columns[w]) worst = std::max(worst, std::abs(acc[r]));
        for (const auto& [r, v] : a.columns[w]) acc[r] = 0.0;
        for (const auto& [r, v] : b.columns[w]) acc[r] = 0.0;
    }
    return worst;
}

/// Clifford channel as a signed permutation of Pauli words.
class MonomialChannel {
  public:
    MonomialChannel(int n, int t, std::vector<std::uint32_t> target, std::vector<std::int8_t> sign)
        : n_(n), t_(t), target_(std::move(target)), sign_(std::move(sign)) {
        if (target_.size() != tfold_dim(n, t, 64) || sign_.size() != target_.size()) {
            throw DomainError("MonomialChannel: table size mismatch");
        }
    }

    static MonomialChannel identity(int n, int t) {
        const std::size_t d = tfold_dim(n, t);
        std::vector<std::uint32_t> tg(d);
        for (std::size_t w = 0; w < d; ++w) tg[w] = static_cast<std::uint32_t>(w);
        return {n, t, std::move(tg), std::vector<std::int8_t>(d, 1)};
    }

    [[nodiscard]] int n_qubits() const { return n_; }
    [[nodiscard]] int folds() const { return t_; }
    [[nodiscard]] std::size_t dim() const { return target_.size(); }
    [[nodiscard]] std::uint32_t target(std::size_t w) const { return target_[w]; }
    [[nodiscard]] int sign(std::size_t w) const { return sign_[w]; }

    /// (*this) o rhs: apply rhs first.
    MonomialChannel operator*(const MonomialChannel& rhs) const {
        if (rhs.n_ != n_ || rhs.t_ != t_) throw DomainError("MonomialChannel: shape mismatch");
        std::vector<std::uint32_t> tg(dim());
        std::vector<std::int8_t> sg(dim());
        for (std::size_t w = 0; w < dim(); ++w) {
            const std::uint32_t mid = rhs.target_[w];
            tg[w] = target_[mid];
            sg[w] = static_cast<std::int8_t>(rhs.sign_[w] * sign_[mid]);
        }
        return {n_, t_, std::move(tg), std::move(sg)};
    }

    [[nodiscard]] std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<double> out(v.size(), 0.0);
        for (std::size_t w = 0; w < v.size(); ++w) out[target_[w]] += sign_[w] * v[w];
        return out;
    }

    [[nodiscard]] SparseChannel to_sparse() const {
        SparseChannel s{n_, t_, {}};
        s.columns.resize(dim());
        for (std::size_t w = 0; w < dim(); ++w) s.columns[w] = {{target_[w], static_cast<double>(sign_[w])}};
        return s;
    }

    friend bool operator==(const MonomialChannel&, const MonomialChannel&) = default;

  private:
    int n_;
    int t_;
    std::vector<std::uint32_t> target_;
    std::vector<std::int8_t> sign_;
};

/// U^dag sigma U = sign * sigma' for every Hermitian Pauli sigma on one copy.
inline std::vector<std::pair<std::uint32_t, int>> single_copy_action(const SignedPermutation& q) {
    const int n = q.n_modes();
    const std::uint32_t d = std::uint32_t{1} << (2 * n);
    std::vector<std::pair<std::uint32_t, int>> out(d);
    for (std::uint32_t p = 0; p < d; ++p) {
        const auto [mu, e] = pauli_to_monomial(pauli_from_index(n, p));  // gamma_mu = i^e sigma
        const auto [nu, s] = act_on_monomial(q, mu);
        const PauliString img = monomial_to_pauli(nu);  // gamma_nu = i^{e'} sigma'
        const int ph = ((img.phase() - e) % 4 + 4) % 4;
        if (ph % 2 != 0) throw InternalError("single_copy_action: Clifford image is not Hermitian");
        out[p] = {pauli_index(img), ph == 0 ? s : -s};
    }
    return out;
}

inline MonomialChannel clifford_tfold(const SignedPermutation& q, int t, int cap = kDefaultWordExponentCap) {
    const int n = q.n_modes();
    const std::size_t d = tfold_dim(n, t, cap);
    const auto one = single_copy_action(q);
    const std::uint32_t digit = std::uint32_t{1} << (2 * n);
    std::vector<std::uint32_t> tg(d);
    std::vector<std::int8_t> sg(d);
    for (std::size_t w = 0; w < d; ++w) {
        std::size_t rest = w;
        std::uint32_t out = 0;
        std::uint32_t scale = 1;
        int sign = 1;
        for (int c = 0; c < t; ++c) {  // least significant digit is the last copy
            const auto p = static_cast<std::uint32_t>(rest % digit);
            rest /= digit;
            out += one[p].first * scale;
            sign *= one[p].second;
            scale *= digit;
        }
        tg[w] = out;
        sg[w] = static_cast<std::int8_t>(sign);
    }
    return {n, t, std::move(tg), std::move(sg)};
}

inline MonomialChannel clifford_tfold(const GivensSequence& seq, int t, int cap = kDefaultWordExponentCap) {
    return clifford_tfold(signed_permutation_of(seq), t, cap);
}

// ---------------------------------------------------------------------------
// Angle distributions.

/// Law of a Givens angle: an unnormalized density on (-pi, pi] or finitely many point masses.
class AngleDistribution {
  public:
    static AngleDistribution density(std::function<double(double)> f, std::string name = "density",
                                     std::optional<double> p_closed_form = std::nullopt) {
        AngleDistribution d;
        d.name_ = std::move(name);
        d.density_ = std::move(f);
        d.p_closed_ = p_closed_form;
        d.norm_ = d.integrate([](double) { return 1.0; });
        if (!(d.norm_ > 0)) throw DomainError("AngleDistribution: density integrates to zero");
        return d;
    }

    static AngleDistribution point_masses(std::vector<std::pair<double, double>> masses, std::string name = "atoms") {
        if (masses.empty()) throw DomainError("AngleDistribution: no point masses");
        double total = 0.0;
        for (const auto& [a, w] : masses) {
            if (!(w >= 0) || !std::isfinite(a)) throw DomainError("AngleDistribution: invalid point mass");
            total += w;
        }
        if (!(total > 0)) throw DomainError("AngleDistribution: zero total weight");
        AngleDistribution d;
        d.name_ = std::move(name);
        for (auto& [a, w] : masses) w /= total;
        d.atoms_ = std::move(masses);
        return d;
    }

    static AngleDistribution uniform() {
        return density([](double) { return 1.0; }, "uniform", 0.5);
    }

    /// Density proportional to |sin theta|^{k-2}, with E[sin^2] = (k-1)/k.
    static AngleDistribution haar_givens(int k) {
        if (k < 2) throw DomainError("haar_givens: k must be >= 2");
        return density([k](double th) { return std::pow(std::abs(std::sin(th)), k - 2); },
                       "haar_givens(" + std::to_string(k) + ")", static_cast<double>(k - 1) / k);
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] bool is_atomic() const { return !atoms_.empty(); }

    /// E[g(theta)].
    [[nodiscard]] double expect(const std::function<double(double)>& g) const {
        if (is_atomic()) {
            double s = 0.0;
            for (const auto& [a, w] : atoms_) s += w * g(a);
            return s;
        }
        return integrate(g) / norm_;
    }

    /// E[cos^a sin^b], exact on Clifford atoms.
    [[nodiscard]] double moment(int a, int b) const {
        if (is_atomic()) {
            double s = 0.0;
            for (const auto& [th, w] : atoms_) {
                double c = std::cos(th);
                double sn = std::sin(th);
                if (const auto cl = classify_clifford_angle(th)) {
                    switch (*cl) {
                        case CliffordAngle::zero: c = 1, sn = 0; break;
                        case CliffordAngle::pi: c = -1, sn = 0; break;
                        case CliffordAngle::half_pi: c = 0, sn = 1; break;
                        case CliffordAngle::minus_half_pi: c = 0, sn = -1; break;
                    }
                }
                s += w * std::pow(c, a) * std::pow(sn, b);
            }
            return s;
        }
        return expect([a, b](double th) { return std::pow(std::cos(th), a) * std::pow(std::sin(th), b); });
    }

    /// p = E[sin^2], closed form when one is known.
    [[nodiscard]] double p() const { return p_closed_ ? *p_closed_ : moment(0, 2); }

    /// Largest of |E[sin]|, |E[cos]|, |E[sin 2.]|, |E[sin 3.]|, |E[cos 3.]|; zero when
    /// the law is symmetric about the Clifford angles.
    [[nodiscard]] double symmetry_defect() const {
        double worst = 0.0;
        for (auto f : std::array<double (*)(double), 5>{
                 [](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
                 [](double t) { return std::sin(2 * t); }, [](double t) { return std::sin(3 * t); },
                 [](double t) { return std::cos(3 * t); }}) {
            worst = std::max(worst, std::abs(expect(f)));
        }
        return worst;
    }

  private:
    AngleDistribution() = default;

    /// Integral of g * density over (-pi, pi], split at the Clifford angles.
    [[nodiscard]] double integrate(const std::function<double(double)>& g) const {
        static constexpr std::array<double, 5> cuts{-kPi, -kPi / 2, 0.0, kPi / 2, kPi};
        double total = 0.0;
        double err_total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double err = 0.0;
            total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                [&](double th) { return g(th) * density_(th); }, cuts[i], cuts[i + 1], 15, 1e-14, &err);
            err_total += err;
        }
        if (!std::isfinite(total) || err_total > kQuadratureTol) {
            throw NumericError("AngleDistribution: quadrature error estimate " + std::to_string(err_total) +
                               " above 1e-11 for " + name_);
        }
        return total;
    }

    std::string name_;
    std::function<double(double)> density_;
    std::vector<std::pair<double, double>> atoms_;
    std::optional<double> p_closed_;
    double norm_ = 1.0;
};

/// Four-term Clifford formula for the averaged t-fold gate on `axis`.
struct AveragedGate {
    std::array<MonomialChannel, 4> channels;  // G(0), G(pi), G(pi/2), G(-pi/2)
    std::array<double, 4> weights;
    double p = 0.0;

    [[nodiscard]] std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<double> out(v.size(), 0.0);
        for (std::size_t c = 0; c < 4; ++c) {
            if (weights[c] == 0.0) continue;
            for (std::size_t w = 0; w < v.size(); ++w) {
                if (v[w] != 0.0) out[channels[c].target(w)] += weights[c] * channels[c].sign(w) * v[w];
            }
        }
        return out;
    }

    [[nodiscard]] SparseChannel to_sparse() const {
        const auto& c0 = channels[0];
        SparseChannel s{c0.n_qubits(), c0.folds(), {}};
        s.columns.resize(c0.dim());
        for (std::size_t w = 0; w < c0.dim(); ++w) {
            std::map<std::uint32_t, double> col;
            for (std::size_t c = 0; c < 4; ++c) col[channels[c].target(w)] += weights[c] * channels[c].sign(w);
            for (const auto& [r, v] : col) {
                if (v != 0.0) s.columns[w].emplace_back(r, v);
            }
        }
        return s;
    }
};

inline AveragedGate averaged_gate_tfold(int n, int axis, const AngleDistribution& dist, int t = 3) {
    const double defect = dist.symmetry_defect();
    if (defect > kSymmetryTol) {
        throw DomainError("averaged_gate: distribution " + dist.name() +
                          " is not symmetric about the Clifford angles (defect " + std::to_string(defect) + ")");
    }
    const double p = dist.p();
    auto ch = [&](CliffordAngle a) { return clifford_tfold(clifford_givens(n, axis, a), t); };
    return AveragedGate{{ch(CliffordAngle::zero), ch(CliffordAngle::pi), ch(CliffordAngle::half_pi),
                         ch(CliffordAngle::minus_half_pi)},
                        {(1 - p) / 2, (1 - p) / 2, p / 2, p / 2},
                        p};
}

inline AveragedGate averaged_gate_3fold(int n, int axis, const AngleDistribution& dist) {
    return averaged_gate_tfold(n, axis, dist, 3);
}

/// Direct average of the t-fold channel of G(theta) on `axis`: each copy that
/// anticommutes with the generator A (G = exp(-i theta A / 2)) becomes
/// cos(theta) P + sin(theta) (-i P A); the products are averaged moment by moment.
inline SparseChannel brute_tfold_quadrature(int n, int axis, const AngleDistribution& dist, int t = 3) {
    if (axis < 2 || axis > 2 * n) throw DomainError("brute_tfold_quadrature: axis out of range");
    const std::size_t d = tfold_dim(n, t);
    const PauliString gg = monomial_to_pauli(MajoranaMonomial(n, {axis - 1, axis}));  // = i^e sigma
    if (gg.phase() % 2 == 0) throw InternalError("brute_tfold_quadrature: generator phase");
    // exp(-theta/2 i^e sigma) = exp(-i theta A / 2) with A = i^{e-1} sigma.
    const PauliString a_gen = gg.with_phase(gg.phase() - 1);

    std::vector<std::vector<double>> mom(static_cast<std::size_t>(t) + 1, std::vector<double>(static_cast<std::size_t>(t) + 1, 0.0));
    for (int a = 0; a <= t; ++a) {
        for (int b = 0; a + b <= t; ++b) mom[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = dist.moment(a, b);
    }

    const std::uint32_t digit = std::uint32_t{1} << (2 * n);
    // Per single-copy Pauli: commutes?, and the index/sign of -i P A.
    std::vector<std::pair<std::uint32_t, int>> tilde(digit);
    std::vector<char> anti(digit);
    for (std::uint32_t p = 0; p < digit; ++p) {
        const PauliString pp = pauli_from_index(n, p);
        anti[p] = pp.commutes_with(a_gen) ? 0 : 1;
        if (!anti[p]) continue;
        const PauliString prod = (pp * a_gen).with_phase((pp * a_gen).phase() + 3);
        if (prod.phase() % 2 != 0) throw InternalError("brute_tfold_quadrature: non-Hermitian image");
        tilde[p] = {pauli_index(prod), prod.phase() == 0 ? 1 : -1};
    }

    SparseChannel out{n, t, {}};
    out.columns.resize(d);
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(t));
    for (std::size_t w = 0; w < d; ++w) {
        std::size_t rest = w;
        for (int c = t - 1; c >= 0; --c) {
            digits[static_cast<std::size_t>(c)] = static_cast<std::uint32_t>(rest % digit);
            rest /= digit;
        }
        std::vector<int> anti_copies;
        for (int c = 0; c < t; ++c) {
            if (anti[digits[static_cast<std::size_t>(c)]]) anti_copies.push_back(c);
        }
        const int k = static_cast<int>(anti_copies.size());
        std::map<std::uint32_t, double> col;
        for (std::uint32_t choice = 0; choice < (1u << k); ++choice) {
            auto word = digits;
            int sign = 1;
            const int n_sin = std::popcount(choice);
            for (int j = 0; j < k; ++j) {
                if ((choice >> j) & 1u) {
                    auto& dg = word[static_cast<std::size_t>(anti_copies[static_cast<std::size_t>(j)])];
                    sign *= tilde[dg].second;
                    dg = tilde[dg].first;
                }
            }
            std::uint32_t idx = 0;
            for (auto dg : word) idx = idx * digit + dg;
            col[idx] += sign * mom[static_cast<std::size_t>(k - n_sin)][static_cast<std::size_t>(n_sin)];
        }
        for (const auto& [r, v] : col) {
            if (v != 0.0) out.columns[w].emplace_back(r, v);
        }
    }
    return out;
}

inline SparseChannel brute_3fold_quadrature(int n, int axis, const AngleDistribution& dist) {
    return brute_tfold_quadrature(n, axis, dist, 3);
}

// ---------------------------------------------------------------------------
// Design and cubature checks.

struct DesignReport {
    int n = 1;
    std::size_t group_size = 0;
    std::size_t gates = 0;
    double max_deviation = 0.0;
};

/// Compares the triangular template with independent angle laws (haar_givens
/// per axis by default) against the uniform average over Sym+(2, 2n), column
/// by column in the 3-fold Pauli basis. `overrides` replaces the averaged
/// operator of the gate at the given time index.
inline DesignReport check_3design(int n, const std::map<std::size_t, SparseChannel>& overrides = {}) {
    if (n < 1 || n > 2) throw ResourceError("check_3design: n = " + std::to_string(n) + " outside [1, 2]");
    const int t = 3;
    const std::size_t d = tfold_dim(n, t);
    const auto axes = triangular_template(n);

    std::vector<std::optional<AveragedGate>> gates(axes.size());
    for (std::size_t g = 0; g < axes.size(); ++g) {
        if (!overrides.count(g)) gates[g] = averaged_gate_3fold(n, axes[g], AngleDistribution::haar_givens(axes[g]));
    }
    const auto group = enumerate_signed_permutations(n, true);
    std::vector<MonomialChannel> group_ch;
    group_ch.reserve(group.size());
    for (const auto& q : group) group_ch.push_back(clifford_tfold(q, t));
    const double inv_g = 1.0 / static_cast<double>(group.size());

    DesignReport rep{n, group.size(), axes.size(), 0.0};
    std::vector<double> avg(d, 0.0);
    for (std::size_t w = 0; w < d; ++w) {
        std::vector<double> v(d, 0.0);
        v[w] = 1.0;
        // U = G_m ... G_1, so U^dag A U applies the last gate first.
        for (std::size_t g = axes.size(); g-- > 0;) {
            v = gates[g] ? gates[g]->apply(v) : overrides.at(g).apply(v);
        }
        std::fill(avg.begin(), avg.end(), 0.0);
        for (const auto& c : group_ch) avg[c.target(w)] += c.sign(w) * inv_g;
        for (std::size_t r = 0; r < d; ++r) rep.max_deviation = std::max(rep.max_deviation, std::abs(v[r] - avg[r]));
    }
    return rep;
}

struct GammaReport {
    double gamma = 0.0;        // sum over {X,Y}^4 words of |E[cos^a sin^b]|
    double closed_form = 0.0;  // 1 + 4 E[cos^2 sin^2]
};

/// Single-qubit 4-fold obstruction: Gamma > 1 rules out a Clifford 4-cubature.
inline GammaReport gamma_4fold(const AngleDistribution& dist) {
    const double defect = dist.symmetry_defect();
    if (defect > kSymmetryTol) {
        throw DomainError("gamma_4fold: distribution " + dist.name() + " is not symmetric about the Clifford angles");
    }
    // R(X) = cos X + sin Y; the coefficient of a word with a X's and b Y's is E[cos^a sin^b].
    std::array<double, 5> mom{};
    for (int b = 0; b <= 4; ++b) mom[static_cast<std::size_t>(b)] = dist.moment(4 - b, b);
    GammaReport r;
    for (int word = 0; word < 16; ++word) r.gamma += std::abs(mom[static_cast<std::size_t>(std::popcount(static_cast<unsigned>(word)))]);
    r.closed_form = 1.0 + 4.0 * mom[2];
    return r;
}

}  // namespace mgs
