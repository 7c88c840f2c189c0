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

// Exact expectations over finite Clifford ensembles: Born probabilities,
// estimator means and second moments, the measurement channel on the Majorana
// basis, and the sign / matching invariance checks.
//
// Nothing here samples shadows. Every quantity is a finite sum over ensemble
// elements and outcomes z, evaluated with the state's Majorana expectations.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mgshadows/circuits.hpp"
#include "mgshadows/errors.hpp"
#include "mgshadows/majorana.hpp"
#include "mgshadows/orthogonal.hpp"
#include "mgshadows/shadows.hpp"
#include "mgshadows/state_sim.hpp"

namespace mgs {

inline constexpr int kExactModeCap = 3;

/// <psi|gamma_mu|psi> for every monomial, indexed by support mask (bit i-1 for index i).
class MajoranaTable {
  public:
    explicit MajoranaTable(const StateVector& psi) : n_(psi.n_qubits()) {
        if (n_ > 6) throw ResourceError("MajoranaTable: more than 6 modes");
        values_.resize(std::size_t{1} << (2 * n_));
        for (std::uint64_t mask = 0; mask < values_.size(); ++mask) {
            values_[mask] = expectation(psi, MajoranaMonomial::from_support_mask(n_, mask));
        }
    }
    [[nodiscard]] int n_modes() const { return n_; }
    [[nodiscard]] cplx operator()(const MajoranaMonomial& m) const { return values_[m.support_mask()]; }
    [[nodiscard]] cplx operator()(std::uint64_t mask) const { return values_[mask]; }

  private:
    int n_;
    std::vector<cplx> values_;
};

struct FiniteEnsemble {
    std::vector<SignedPermutation> elements;
    std::vector<double> weights;

    static FiniteEnsemble uniform(std::vector<SignedPermutation> elems) {
        if (elems.empty()) throw DomainError("FiniteEnsemble: empty");
        FiniteEnsemble e;
        e.weights.assign(elems.size(), 1.0 / static_cast<double>(elems.size()));
        e.elements = std::move(elems);
        return e;
    }
    [[nodiscard]] int n_modes() const { return elements.front().n_modes(); }
    [[nodiscard]] std::size_t size() const { return elements.size(); }
};

/// The full group Sym+(2, 2n) with uniform weights.
inline FiniteEnsemble clifford_group_ensemble(int n_modes) {
    return FiniteEnsemble::uniform(enumerate_signed_permutations(n_modes, true));
}

/// Exact law of signed_permutation_of(clifford_sequence(n, mode)).
inline FiniteEnsemble clifford_angle_ensemble(int n_modes, CliffordMode mode) {
    std::map<std::pair<Permutation, std::vector<int>>, double> dist;
    dist[{identity_permutation(2 * n_modes), std::vector<int>(static_cast<std::size_t>(2 * n_modes), 1)}] = 1.0;
    for (int axis : triangular_template(n_modes)) {
        const double k = axis;
        std::vector<std::pair<CliffordAngle, double>> law;
        if (mode == CliffordMode::four_angle) {
            law = {{CliffordAngle::zero, 1 / (2 * k)},
                   {CliffordAngle::pi, 1 / (2 * k)},
                   {CliffordAngle::half_pi, (k - 1) / (2 * k)},
                   {CliffordAngle::minus_half_pi, (k - 1) / (2 * k)}};
        } else {
            law = {{CliffordAngle::zero, 1 / k}, {CliffordAngle::half_pi, (k - 1) / k}};
        }
        std::map<std::pair<Permutation, std::vector<int>>, double> next;
        for (const auto& [key, w] : dist) {
            const SignedPermutation q(n_modes, key.first, key.second);
            for (const auto& [angle, pw] : law) {
                const SignedPermutation r = clifford_givens(n_modes, axis, angle) * q;
                next[{r.perm(), r.signs()}] += w * pw;
            }
        }
        dist = std::move(next);
    }
    FiniteEnsemble e;
    for (const auto& [key, w] : dist) {
        e.elements.emplace_back(n_modes, key.first, key.second);
        e.weights.push_back(w);
    }
    return e;
}

/// Uniform weights over one canonical permutation per perfect matching.
inline FiniteEnsemble matching_representatives_ensemble(int n_modes) {
    return FiniteEnsemble::uniform(matching_representatives(n_modes));
}

/// P(z | U_Q) = <z|U rho U^dag|z>, from |z><z| = 2^{-n} prod_q (1 - i(-1)^{z_q} gamma_{2q-1} gamma_{2q}).
inline double born_probability(const SignedPermutation& q, std::uint64_t z, const MajoranaTable& table) {
    const int n = q.n_modes();
    cplx acc{};
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        int e = 0;
        for (int qb = 1; qb <= n; ++qb) {
            if ((s >> (qb - 1)) & 1U) e += (z & qubit_bit(n, qb)) ? 1 : 3;  // -i(-1)^{z}
        }
        const auto [nu, sign] = act_on_monomial(q, MajoranaMonomial(n, pair_union_indices(s, n)));
        acc += i_pow(e) * static_cast<double>(sign) * table(nu);
    }
    return acc.real() / static_cast<double>(std::uint64_t{1} << n);
}

namespace detail {

inline void require_exact_inputs(const FiniteEnsemble& ens, const MajoranaTable& table) {
    if (ens.elements.empty() || ens.elements.size() != ens.weights.size()) {
        throw DomainError("exact: ensemble elements and weights differ in size");
    }
    if (ens.n_modes() != table.n_modes()) throw DomainError("exact: mode count mismatch");
    if (ens.n_modes() > kExactModeCap) throw ResourceError("exact: more than 3 modes");
}

/// Calls f(weight * P(z|Q), Q, z) for every element and outcome.
template <class F>
void for_each_outcome(const FiniteEnsemble& ens, std::span<const double> probs, F&& f) {
    const std::uint64_t outcomes = std::uint64_t{1} << ens.n_modes();
    for (std::size_t i = 0; i < ens.size(); ++i) {
        for (std::uint64_t z = 0; z < outcomes; ++z) {
            f(ens.weights[i] * probs[i * outcomes + z], ens.elements[i], z);
        }
    }
}

inline cplx clifford_estimate(const SignedPermutation& q, const MajoranaCombination& o, std::uint64_t z) {
    cplx acc{};
    for (const auto& [mu, c] : o.terms()) {
        require_estimable(mu, q.n_modes());
        const double inv_lambda = 1.0 / to_double(lambda_eigenvalue(mu.degree() / 2, q.n_modes()));
        acc += c * inv_lambda * clifford_estimate_unscaled(q, mu, z);
    }
    return acc;
}

}  // namespace detail

/// Born probabilities of every (element, outcome) pair, computed once.
class ExactContext {
  public:
    ExactContext(const FiniteEnsemble& ens, const MajoranaTable& table) : ens_(&ens) {
        detail::require_exact_inputs(ens, table);
        const std::uint64_t outcomes = std::uint64_t{1} << ens.n_modes();
        probs_.resize(ens.size() * outcomes);
        for (std::size_t i = 0; i < ens.size(); ++i) {
            for (std::uint64_t z = 0; z < outcomes; ++z) {
                probs_[i * outcomes + z] = born_probability(ens.elements[i], z, table);
            }
        }
    }
    [[nodiscard]] const FiniteEnsemble& ensemble() const { return *ens_; }
    [[nodiscard]] std::span<const double> probabilities() const { return probs_; }

  private:
    const FiniteEnsemble* ens_;
    std::vector<double> probs_;
};

inline MajoranaCombination as_combination(const MajoranaMonomial& m) {
    MajoranaCombination o(m.n_modes());
    o.add(m, 1.0);
    return o;
}

/// E[o_hat] over the ensemble and Born outcomes.
inline cplx exact_mean(const ExactContext& ctx, const MajoranaCombination& o) {
    cplx acc{};
    detail::for_each_outcome(ctx.ensemble(), ctx.probabilities(), [&](double w, const SignedPermutation& q, std::uint64_t z) {
        if (w != 0.0) acc += w * detail::clifford_estimate(q, o, z);
    });
    return acc;
}

/// E[|o_hat|^2]. For Hermitian observables o_hat is real and this is E[o_hat^2].
inline double exact_second_moment(const ExactContext& ctx, const MajoranaCombination& o) {
    double acc = 0.0;
    detail::for_each_outcome(ctx.ensemble(), ctx.probabilities(), [&](double w, const SignedPermutation& q, std::uint64_t z) {
        if (w != 0.0) acc += w * std::norm(detail::clifford_estimate(q, o, z));
    });
    return acc;
}

inline cplx exact_mean(const FiniteEnsemble& ens, const MajoranaTable& table, const MajoranaCombination& o) {
    return exact_mean(ExactContext(ens, table), o);
}

inline double exact_second_moment(const FiniteEnsemble& ens, const MajoranaTable& table,
                                  const MajoranaCombination& o) {
    return exact_second_moment(ExactContext(ens, table), o);
}

inline double exact_second_moment(const FiniteEnsemble& ens, const MajoranaTable& table, const MajoranaMonomial& m) {
    return exact_second_moment(ExactContext(ens, table), as_combination(m));
}

/// Matrix of the measurement channel M(A) = E sum_z <z|U A U^dag|z> U^dag|z><z|U in the
/// monomial basis: column mu holds the coefficients of M(gamma_mu). Rows and
/// columns are indexed by support mask.
inline Eigen::MatrixXcd exact_measurement_channel(const FiniteEnsemble& ens, int mode_cap = kExactModeCap) {
    const int n = ens.n_modes();
    if (n > mode_cap || n > 5) {
        throw ResourceError("exact_measurement_channel: " + std::to_string(n) + " modes exceed the cap of " +
                            std::to_string(std::min(mode_cap, 5)));
    }
    const std::size_t dim = std::size_t{1} << (2 * n);
    const std::uint64_t outcomes = std::uint64_t{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<MajoranaMonomial> basis;
    for (std::uint64_t mask = 0; mask < dim; ++mask) basis.push_back(MajoranaMonomial::from_support_mask(n, mask));
    std::vector<cplx> a(outcomes);
    for (std::size_t i = 0; i < ens.size(); ++i) {
        const SignedPermutation& q = ens.elements[i];
        const SignedPermutation qt = q.transpose();
        // U^dag gamma_{pairs S} U for every S.
        std::vector<std::pair<std::uint64_t, int>> dyad(outcomes);
        for (std::uint64_t s = 0; s < outcomes; ++s) {
            const auto [nu, sign] = act_on_monomial(q, MajoranaMonomial(n, pair_union_indices(s, n)));
            dyad[s] = {nu.support_mask(), sign};
        }
        for (std::uint64_t mu = 0; mu < dim; ++mu) {
            // a(z) = <z| U gamma_mu U^dag |z>.
            const auto [img, sign] = act_on_monomial(qt, basis[mu]);
            bool any = false;
            for (std::uint64_t z = 0; z < outcomes; ++z) {
                const auto e = bitstring_expectation_phase(img, z);
                a[z] = e ? static_cast<double>(sign) * i_pow(*e) : cplx{};
                any = any || e.has_value();
            }
            if (!any) continue;
            for (std::uint64_t s = 0; s < outcomes; ++s) {
                cplx coef{};
                for (std::uint64_t z = 0; z < outcomes; ++z) {
                    int e = 0;
                    for (int qb = 1; qb <= n; ++qb) {
                        if ((s >> (qb - 1)) & 1U) e += (z & qubit_bit(n, qb)) ? 1 : 3;
                    }
                    coef += a[z] * i_pow(e);
                }
                if (coef == cplx{}) continue;
                coef /= static_cast<double>(outcomes);
                m(static_cast<Eigen::Index>(dyad[s].first), static_cast<Eigen::Index>(mu)) +=
                    ens.weights[i] * static_cast<double>(dyad[s].second) * coef;
            }
        }
    }
    return m;
}

/// max over entries of |M - diag(lambda_{deg/2, n})|, zero target on odd degrees.
inline double channel_deviation_from_lambda(const Eigen::MatrixXcd& m, int n) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            cplx target{};
            if (r == c) {
                const int deg = std::popcount(static_cast<std::uint64_t>(r));
                if (deg % 2 == 0) target = to_double(lambda_eigenvalue(deg / 2, n));
            }
            worst = std::max(worst, std::abs(m(r, c) - target));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Invariance checks.

struct InvarianceReport {
    double max_deviation = 0.0;
    int trials = 0;
    std::size_t observables = 0;
};

/// Replace every element Q by D Q with D a uniformly random sign diagonal.
template <class URBG>
FiniteEnsemble resign_ensemble(const FiniteEnsemble& ens, URBG& rng) {
    FiniteEnsemble out = ens;
    std::bernoulli_distribution coin(0.5);
    for (auto& q : out.elements) {
        std::vector<int> s = q.signs();
        for (auto& v : s) v = coin(rng) ? -v : v;
        q = SignedPermutation(q.n_modes(), q.perm(), std::move(s));
    }
    return out;
}

/// Uniformly random position permutation mapping pairs {2i-1, 2i} to pairs.
template <class URBG>
Permutation random_pair_preserving(int n_pairs, URBG& rng) {
    std::vector<int> order(static_cast<std::size_t>(n_pairs));
    std::iota(order.begin(), order.end(), 1);
    for (std::size_t i = order.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(order[i - 1], order[pick(rng)]);
    }
    std::bernoulli_distribution coin(0.5);
    Permutation sigma;
    for (int p : order) {
        const bool flip = coin(rng);
        sigma.push_back(flip ? 2 * p : 2 * p - 1);
        sigma.push_back(flip ? 2 * p - 1 : 2 * p);
    }
    return sigma;
}

/// Row i of the result is row sigma(i) of q: perm' = perm o sigma.
inline SignedPermutation permute_rows(const SignedPermutation& q, std::span<const int> sigma) {
    Permutation p(sigma.size());
    std::vector<int> s(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        p[i] = q.image(sigma[i]);
        s[i] = q.sign(sigma[i]);
    }
    return SignedPermutation(q.n_modes(), std::move(p), std::move(s));
}

template <class URBG>
FiniteEnsemble rematch_ensemble(const FiniteEnsemble& ens, URBG& rng) {
    FiniteEnsemble out = ens;
    for (auto& q : out.elements) q = permute_rows(q, random_pair_preserving(q.n_modes(), rng));
    return out;
}

inline double second_moment_deviation(const FiniteEnsemble& a, const FiniteEnsemble& b, const MajoranaTable& table,
                                      std::span<const MajoranaCombination> observables) {
    const ExactContext ca(a, table);
    const ExactContext cb(b, table);
    double worst = 0.0;
    for (const auto& o : observables) {
        worst = std::max(worst, std::abs(exact_second_moment(ca, o) - exact_second_moment(cb, o)));
    }
    return worst;
}

inline constexpr int kInvarianceTrials = 20;

/// Sign reassignments leave the second moments and the measurement channel unchanged.
template <class URBG>
InvarianceReport check_sign_invariance(const FiniteEnsemble& ens, const MajoranaTable& table,
                                       std::span<const MajoranaCombination> observables, URBG& rng,
                                       int trials = kInvarianceTrials) {
    InvarianceReport r{0.0, trials, observables.size()};
    const Eigen::MatrixXcd base_channel = exact_measurement_channel(ens);
    for (int t = 0; t < trials; ++t) {
        const FiniteEnsemble other = resign_ensemble(ens, rng);
        r.max_deviation = std::max(r.max_deviation, second_moment_deviation(ens, other, table, observables));
        r.max_deviation =
            std::max(r.max_deviation, (exact_measurement_channel(other) - base_channel).cwiseAbs().maxCoeff());
    }
    return r;
}

/// Matching-preserving replacements leave the second moments unchanged.
template <class URBG>
InvarianceReport check_matching_invariance(const FiniteEnsemble& ens, const MajoranaTable& table,
                                           std::span<const MajoranaCombination> observables, URBG& rng,
                                           int trials = kInvarianceTrials) {
    InvarianceReport r{0.0, trials, observables.size()};
    for (int t = 0; t < trials; ++t) {
        const FiniteEnsemble other = rematch_ensemble(ens, rng);
        r.max_deviation = std::max(r.max_deviation, second_moment_deviation(ens, other, table, observables));
    }
    return r;
}

/// All even-degree monomials of degree 2..max_degree as single-term combinations.
inline std::vector<MajoranaCombination> even_monomial_observables(int n, int max_degree) {
    std::vector<MajoranaCombination> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (2 * n)); ++mask) {
        const int d = std::popcount(mask);
        if (d % 2 == 0 && d <= max_degree) out.push_back(as_combination(MajoranaMonomial::from_support_mask(n, mask)));
    }
    return out;
}

/// Random Hermitian combinations of even monomials (coefficient c with c gamma_mu Hermitian).
template <class URBG>
std::vector<MajoranaCombination> random_hermitian_observables(int n, int count, int max_degree, URBG& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<MajoranaCombination> out;
    for (int c = 0; c < count; ++c) {
        MajoranaCombination o(n);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (2 * n)); ++mask) {
            const int d = std::popcount(mask);
            if (d % 2 != 0 || d > max_degree) continue;
            // gamma_mu^dag = (-1)^{d(d-1)/2} gamma_mu.
            const bool hermitian = ((d * (d - 1) / 2) % 2) == 0;
            o.add(MajoranaMonomial::from_support_mask(n, mask), hermitian ? cplx{g(rng), 0} : cplx{0, g(rng)});
        }
        out.push_back(std::move(o));
    }
    return out;
}

}  // namespace mgs
