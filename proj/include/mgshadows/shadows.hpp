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

// Classical shadows with matchgate ensembles: channel eigenvalues, per-sample
// estimators, median-of-means aggregation, k-RDM assembly, shadow collection
// and the bootstrap variance experiment.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "mgshadows/circuits.hpp"
#include "mgshadows/errors.hpp"
#include "mgshadows/majorana.hpp"
#include "mgshadows/orthogonal.hpp"
#include "mgshadows/rng.hpp"
#include "mgshadows/state_sim.hpp"

namespace mgs {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;  // exact at every step
    return r;
}

/// lambda_{k,n} = C(n, k) / C(2n, 2k), the channel eigenvalue on degree-2k monomials.
inline Rational lambda_eigenvalue(int k, int n) {
    if (n < 1 || n > 30) throw DomainError("lambda_eigenvalue: n outside [1, 30]");
    if (k < 0 || k > n) throw DomainError("lambda_eigenvalue: need 0 <= k <= n, got k = " + std::to_string(k));
    return Rational(binomial(n, k), binomial(2 * n, 2 * k));
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// ---------------------------------------------------------------------------
// Ensembles.

enum class Ensemble { haar, haar_o2n, four_angle, two_angle, optimal };

inline constexpr std::array<Ensemble, 5> kAllEnsembles{Ensemble::haar, Ensemble::haar_o2n, Ensemble::four_angle,
                                                       Ensemble::two_angle, Ensemble::optimal};

inline std::string_view ensemble_name(Ensemble e) {
    switch (e) {
        case Ensemble::haar: return "haar";
        case Ensemble::haar_o2n: return "haar_o2n";
        case Ensemble::four_angle: return "four_angle";
        case Ensemble::two_angle: return "two_angle";
        case Ensemble::optimal: return "optimal";
    }
    return "?";
}

inline std::optional<Ensemble> parse_ensemble(std::string_view s) {
    for (Ensemble e : kAllEnsembles) {
        if (ensemble_name(e) == s) return e;
    }
    return std::nullopt;
}

inline bool is_clifford(Ensemble e) { return e != Ensemble::haar && e != Ensemble::haar_o2n; }

template <class URBG>
GivensSequence sample_circuit(Ensemble e, int n_modes, URBG& rng) {
    switch (e) {
        case Ensemble::haar: return haar_sequence(n_modes, rng);
        case Ensemble::haar_o2n: return add_random_reflection(haar_sequence(n_modes, rng), rng);
        case Ensemble::four_angle: return clifford_sequence(n_modes, rng, CliffordMode::four_angle);
        case Ensemble::two_angle: return clifford_sequence(n_modes, rng, CliffordMode::two_angle);
        case Ensemble::optimal: return sample_optimal_circuit(n_modes, rng);
    }
    throw InternalError("sample_circuit: unknown ensemble");
}

// ---------------------------------------------------------------------------
// Samples and single-sample estimates.

struct ShadowSample {
    std::variant<SignedPermutation, OrthogonalMatrix> transform;
    std::uint64_t outcome = 0;  // basis index, qubit 1 most significant
    Ensemble ensemble = Ensemble::haar;

    [[nodiscard]] int n_modes() const {
        return std::visit([](const auto& q) { return q.n_modes(); }, transform);
    }
    [[nodiscard]] std::vector<std::uint8_t> bits() const { return index_to_bits(outcome, n_modes()); }
};

inline bool operator==(const ShadowSample& a, const ShadowSample& b) {
    if (a.outcome != b.outcome || a.ensemble != b.ensemble || a.transform.index() != b.transform.index()) {
        return false;
    }
    if (const auto* p = std::get_if<SignedPermutation>(&a.transform)) {
        return *p == std::get<SignedPermutation>(b.transform);
    }
    return std::get<OrthogonalMatrix>(a.transform).matrix() == std::get<OrthogonalMatrix>(b.transform).matrix();
}

inline constexpr int kDefaultDenseDegreeCap = 4;

/// Indices of the pair union over the selected qubits (bit q-1 of `qubits` set).
inline std::vector<int> pair_union_indices(std::uint64_t qubits, int n) {
    std::vector<int> idx;
    for (int q = 1; q <= n; ++q) {
        if ((qubits >> (q - 1)) & 1U) {
            idx.push_back(2 * q - 1);
            idx.push_back(2 * q);
        }
    }
    return idx;
}

/// <z|gamma_{pairs S}|z> = prod_{q in S} i (-1)^{z_q}.
inline cplx pair_union_value(std::uint64_t qubits, std::uint64_t z, int n) {
    int e = 0;
    for (int q = 1; q <= n; ++q) {
        if ((qubits >> (q - 1)) & 1U) e += (z & qubit_bit(n, q)) ? 3 : 1;
    }
    return i_pow(e);
}

/// Qubit set S when `m` is a union of pairs {2q-1, 2q}, else nullopt.
inline std::optional<std::uint64_t> as_pair_union(const MajoranaMonomial& m) {
    const auto& idx = m.indices();
    if (idx.size() % 2 != 0) return std::nullopt;
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < idx.size(); i += 2) {
        if (idx[i] % 2 == 0 || idx[i + 1] != idx[i] + 1) return std::nullopt;
        s |= std::uint64_t{1} << ((idx[i] + 1) / 2 - 1);
    }
    return s;
}

/// lambda^{-1} <z| U gamma_mu U^dag |z> for a signed permutation: U gamma_mu U^dag
/// is a single signed monomial under the transpose action.
inline cplx clifford_estimate_unscaled(const SignedPermutation& q, const MajoranaMonomial& mu, std::uint64_t z) {
    const int n = q.n_modes();
    int sign = 1;
    std::uint64_t support = 0;
    // Transpose action: index i of mu lands on j with perm(j) = i, sign s_j.
    // Work through the inverse map directly to avoid materializing Q^T.
    thread_local std::vector<int> inv;
    thread_local std::vector<int> images;
    inv.assign(static_cast<std::size_t>(2 * n) + 1, 0);
    for (int j = 1; j <= 2 * n; ++j) inv[static_cast<std::size_t>(q.image(j))] = j;
    images.clear();
    for (int i : mu.indices()) {
        const int j = inv[static_cast<std::size_t>(i)];
        images.push_back(j);
        sign *= q.sign(j);
        support |= std::uint64_t{1} << (j - 1);
    }
    // Pair-union test on the support before sorting.
    std::uint64_t qubits = 0;
    for (int qb = 1; qb <= n; ++qb) {
        const std::uint64_t pair = std::uint64_t{3} << (2 * qb - 2);
        const std::uint64_t hit = support & pair;
        if (hit == 0) continue;
        if (hit != pair) return {};
        qubits |= std::uint64_t{1} << (qb - 1);
    }
    auto [parity, sorted] = reduce_majorana_product(images);
    (void)sorted;
    return static_cast<double>(sign * parity) * pair_union_value(qubits, z, n);
}

/// sum over pair unions nu of det((Q^T)_{mu nu}) <z|gamma_nu|z>.
inline cplx dense_estimate_unscaled(const OrthogonalMatrix& q, const MajoranaMonomial& mu, std::uint64_t z) {
    const int n = q.n_modes();
    const int k = mu.degree() / 2;
    cplx acc{};
    // Enumerate k-subsets of qubits.
    std::vector<int> sel(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) sel[static_cast<std::size_t>(i)] = i + 1;
    if (k == 0) return 1.0;
    while (true) {
        std::uint64_t qubits = 0;
        for (int s : sel) qubits |= std::uint64_t{1} << (s - 1);
        const auto nu = pair_union_indices(qubits, n);
        // (Q^T)_{mu nu} = (Q_{nu mu})^T.
        const double d = minor_determinant(q, nu, mu.indices());
        acc += d * pair_union_value(qubits, z, n);
        int pos = k - 1;
        while (pos >= 0 && sel[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++sel[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i) sel[static_cast<std::size_t>(i)] = sel[static_cast<std::size_t>(i - 1)] + 1;
    }
    return acc;
}

inline void require_estimable(const MajoranaMonomial& mu, int n) {
    if (mu.n_modes() != n) throw DomainError("single_sample_estimate: mode count mismatch");
    if (mu.degree() % 2 != 0) {
        throw DomainError("single_sample_estimate: odd-degree monomial {" + mu.str() +
                          "} is annihilated by the measurement channel");
    }
}

/// tr(gamma_mu rho_hat) for one shadow sample.
inline cplx single_sample_estimate(const ShadowSample& s, const MajoranaMonomial& mu,
                                   int dense_degree_cap = kDefaultDenseDegreeCap) {
    const int n = s.n_modes();
    require_estimable(mu, n);
    const double inv_lambda = 1.0 / to_double(lambda_eigenvalue(mu.degree() / 2, n));
    if (const auto* p = std::get_if<SignedPermutation>(&s.transform)) {
        return inv_lambda * clifford_estimate_unscaled(*p, mu, s.outcome);
    }
    if (mu.degree() > dense_degree_cap) {
        throw ResourceError("single_sample_estimate: degree " + std::to_string(mu.degree()) +
                            " exceeds the dense-transform cap " + std::to_string(dense_degree_cap));
    }
    return inv_lambda * dense_estimate_unscaled(std::get<OrthogonalMatrix>(s.transform), mu, s.outcome);
}

inline cplx single_sample_estimate(const ShadowSample& s, const MajoranaCombination& o,
                                   int dense_degree_cap = kDefaultDenseDegreeCap) {
    cplx acc{};
    for (const auto& [mu, c] : o.terms()) acc += c * single_sample_estimate(s, mu, dense_degree_cap);
    return acc;
}

// ---------------------------------------------------------------------------
// Aggregation.

enum class Method { mean, median_of_means };

struct EstimatorReport {
    std::string observable;
    cplx estimate{};
    int batches = 1;
    std::vector<cplx> batch_means;
    Method method = Method::mean;
};

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size();
    return k % 2 == 1 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

/// Mean, or median of K batch means. Batches have floor(N/K) values and the last
/// one absorbs the remainder; real and imaginary parts take separate medians.
inline EstimatorReport aggregate(std::span<const cplx> values, Method method, int k_batches = 1,
                                 std::string observable = {}) {
    if (values.empty()) throw DomainError("estimate: no samples");
    EstimatorReport r;
    r.observable = std::move(observable);
    r.method = method;
    if (method == Method::mean) k_batches = 1;
    if (k_batches < 1 || static_cast<std::size_t>(k_batches) > values.size()) {
        throw DomainError("estimate: batch count must lie in [1, sample count]");
    }
    r.batches = k_batches;
    const std::size_t size = values.size() / static_cast<std::size_t>(k_batches);
    for (int b = 0; b < k_batches; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * size;
        const std::size_t hi = b + 1 == k_batches ? values.size() : lo + size;
        cplx s{};
        for (std::size_t i = lo; i < hi; ++i) s += values[i];
        r.batch_means.push_back(s / static_cast<double>(hi - lo));
    }
    if (k_batches == 1) {
        r.estimate = r.batch_means.front();
        return r;
    }
    std::vector<double> re;
    std::vector<double> im;
    for (const auto& m : r.batch_means) {
        re.push_back(m.real());
        im.push_back(m.imag());
    }
    r.estimate = {median_of(std::move(re)), median_of(std::move(im))};
    return r;
}

inline EstimatorReport estimate(std::span<const ShadowSample> samples, const MajoranaMonomial& mu, Method method,
                                int k_batches = 1) {
    if (samples.empty()) throw DomainError("estimate: no samples");
    std::vector<cplx> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(single_sample_estimate(s, mu));
    return aggregate(v, method, k_batches, mu.str());
}

inline constexpr double kDefaultMedianOfMeansConstant = 34.0;

/// N = ceil(C log(M / delta) var / eps^2).
inline std::uint64_t sample_size(double epsilon, double delta, double m_observables, double var_bound,
                                 double c = kDefaultMedianOfMeansConstant) {
    if (!(epsilon > 0) || !(delta > 0) || !(m_observables > 0) || !(var_bound > 0) || !(c > 0)) {
        throw DomainError("sample_size: all inputs must be positive");
    }
    const double raw = c * std::log(m_observables / delta) * var_bound / (epsilon * epsilon);
    return raw <= 0 ? 0 : static_cast<std::uint64_t>(std::ceil(raw));
}

// ---------------------------------------------------------------------------
// Reduced density matrices.

struct RdmEstimate {
    int k = 1;
    int n = 1;
    /// Entry (p_1..p_k, q_1..q_k) at flat index sum over the 2k indices in base n, p_1 most significant.
    std::vector<cplx> values;
    std::vector<EstimatorReport> reports;

    [[nodiscard]] cplx at(std::span<const int> p, std::span<const int> q) const {
        return values[flat(p, q)];
    }
    [[nodiscard]] std::size_t flat(std::span<const int> p, std::span<const int> q) const {
        std::size_t f = 0;
        for (int v : p) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(v - 1);
        for (int v : q) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(v - 1);
        return f;
    }
};

/// Estimates ^kD_{p;q} = <a^dag_{p_1} .. a^dag_{p_k} a_{q_1} .. a_{q_k}> by linearity,
/// then replaces D by (D + D^dag) / 2 with D^dag_{p;q} = conj(D_{rev q; rev p}).
inline RdmEstimate estimate_rdm(std::span<const ShadowSample> samples, int k, Method method = Method::mean,
                                int k_batches = 1) {
    if (samples.empty()) throw DomainError("estimate_rdm: no samples");
    if (k != 1 && k != 2) throw DomainError("estimate_rdm: k must be 1 or 2");
    const int n = samples.front().n_modes();
    RdmEstimate out;
    out.k = k;
    out.n = n;
    std::size_t entries = 1;
    for (int i = 0; i < 2 * k; ++i) entries *= static_cast<std::size_t>(n);
    out.values.resize(entries);
    out.reports.resize(entries);

    std::vector<std::vector<int>> ps(entries), qs(entries);
    std::map<MajoranaMonomial, std::size_t> slot;
    std::vector<MajoranaCombination> combos;
    for (std::size_t f = 0; f < entries; ++f) {
        std::vector<int> digits(static_cast<std::size_t>(2 * k));
        std::size_t g = f;
        for (int i = 2 * k - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(i)] = static_cast<int>(g % static_cast<std::size_t>(n)) + 1;
            g /= static_cast<std::size_t>(n);
        }
        ps[f].assign(digits.begin(), digits.begin() + k);
        qs[f].assign(digits.begin() + k, digits.end());
        combos.push_back(rdm_expansion(ps[f], qs[f], n));
        for (const auto& [mu, c] : combos.back().terms()) slot.try_emplace(mu, slot.size());
    }
    std::vector<MajoranaMonomial> monomials(slot.size(), MajoranaMonomial(n));
    for (const auto& [mu, i] : slot) monomials[i] = mu;

    std::vector<std::vector<cplx>> per_entry(entries, std::vector<cplx>(samples.size()));
    std::vector<cplx> cache(monomials.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        for (std::size_t i = 0; i < monomials.size(); ++i) cache[i] = single_sample_estimate(samples[s], monomials[i]);
        for (std::size_t f = 0; f < entries; ++f) {
            cplx v{};
            for (const auto& [mu, c] : combos[f].terms()) v += c * cache[slot.at(mu)];
            per_entry[f][s] = v;
        }
    }
    std::vector<cplx> raw(entries);
    for (std::size_t f = 0; f < entries; ++f) {
        std::string label = "p=";
        for (int v : ps[f]) label += std::to_string(v) + ' ';
        label += "q=";
        for (std::size_t i = 0; i < qs[f].size(); ++i) label += (i ? " " : "") + std::to_string(qs[f][i]);
        out.reports[f] = aggregate(per_entry[f], method, k_batches, label);
        raw[f] = out.reports[f].estimate;
    }
    for (std::size_t f = 0; f < entries; ++f) {
        std::vector<int> rp(qs[f].rbegin(), qs[f].rend());
        std::vector<int> rq(ps[f].rbegin(), ps[f].rend());
        out.values[f] = 0.5 * (raw[f] + std::conj(raw[out.flat(rp, rq)]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Collection.

inline constexpr int kDefaultCollectQubitCap = 14;

/// One shadow sample drawn from the stream (seed, index).
inline ShadowSample draw_shadow(const StateVector& psi, Ensemble e, std::uint64_t seed, std::uint64_t index) {
    Rng rng = make_stream(seed, {index});
    const int n = psi.n_qubits();
    const GivensSequence seq = sample_circuit(e, n, rng);
    StateVector work = psi;
    apply_sequence(work, seq);
    const std::uint64_t z = born_sample_index(work, rng);
    if (is_clifford(e)) return {signed_permutation_of(seq), z, e};
    return {compose_to_matrix(seq), z, e};
}

/// N independent samples; sample i depends only on (seed, i), so the result is
/// the same for every worker count.
inline std::vector<ShadowSample> collect_shadows(const StateVector& psi, Ensemble e, std::size_t count,
                                                 std::uint64_t seed, unsigned workers = 0,
                                                 int qubit_cap = kDefaultCollectQubitCap) {
    if (psi.n_qubits() > qubit_cap) {
        throw ResourceError("collect_shadows: " + std::to_string(psi.n_qubits()) + " qubits exceed the cap of " +
                            std::to_string(qubit_cap));
    }
    std::vector<std::optional<ShadowSample>> slots(count);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    auto run = [&](unsigned w) {
        for (std::size_t i = w; i < count; i += workers) slots[i] = draw_shadow(psi, e, seed, i);
    };
    if (workers <= 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    run(w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }
    std::vector<ShadowSample> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

template <class URBG>
std::vector<ShadowSample> collect_shadows(const StateVector& psi, Ensemble e, std::size_t count, URBG& rng) {
    return collect_shadows(psi, e, count, static_cast<std::uint64_t>(rng()));
}

// ---------------------------------------------------------------------------
// Variance experiment.

struct VarianceConfig {
    std::vector<Ensemble> ensembles{Ensemble::haar, Ensemble::four_angle, Ensemble::two_angle, Ensemble::optimal};
    std::vector<std::size_t> grid{100, 1000, 10000, 100000};
    std::size_t bootstrap = 1000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

struct VarianceRow {
    Ensemble ensemble = Ensemble::haar;
    std::size_t n_samples = 0;
    double mean_abs_error = 0.0;
    double std_abs_error = 0.0;
    std::size_t bootstrap = 0;
    std::uint64_t seed = 0;
};

/// Degree-2 observables gamma_p gamma_q, p < q.
inline std::vector<MajoranaMonomial> quadratic_monomials(int n) {
    std::vector<MajoranaMonomial> out;
    for (int p = 1; p <= 2 * n; ++p) {
        for (int q = p + 1; q <= 2 * n; ++q) out.emplace_back(n, std::vector<int>{p, q});
    }
    return out;
}

/// For each ensemble and N: bootstrap mean and standard deviation of the
/// observable-averaged absolute error over all gamma_p gamma_q, using resamples
/// (with replacement) of the first N shadows.
inline std::vector<VarianceRow> variance_experiment(const StateVector& psi, const VarianceConfig& cfg) {
    if (cfg.grid.empty() || cfg.ensembles.empty()) throw DomainError("variance_experiment: empty grid or ensemble list");
    if (cfg.bootstrap == 0) throw DomainError("variance_experiment: bootstrap size must be positive");
    for (auto g : cfg.grid) {
        if (g == 0) throw DomainError("variance_experiment: grid values must be positive");
    }
    const int n = psi.n_qubits();
    const auto observables = quadratic_monomials(n);
    const std::size_t m = observables.size();
    std::vector<cplx> exact(m);
    for (std::size_t o = 0; o < m; ++o) exact[o] = expectation(psi, observables[o]);
    const std::size_t n_max = *std::max_element(cfg.grid.begin(), cfg.grid.end());

    std::vector<VarianceRow> rows;
    for (std::size_t ei = 0; ei < cfg.ensembles.size(); ++ei) {
        const Ensemble e = cfg.ensembles[ei];
        const std::uint64_t ens_seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(e)});
        const auto samples = collect_shadows(psi, e, n_max, ens_seed, cfg.workers);

        // Sparse per-sample values (row offsets into obs/val).
        std::vector<std::size_t> offset{0};
        std::vector<std::uint32_t> obs;
        std::vector<cplx> val;
        for (const auto& s : samples) {
            for (std::size_t o = 0; o < m; ++o) {
                const cplx v = single_sample_estimate(s, observables[o]);
                if (v != cplx{}) {
                    obs.push_back(static_cast<std::uint32_t>(o));
                    val.push_back(v);
                }
            }
            offset.push_back(obs.size());
        }

        for (std::size_t big_n : cfg.grid) {
            Rng rng = make_stream(cfg.seed, {static_cast<std::uint64_t>(e), big_n, 0xB007u});
            std::uniform_int_distribution<std::size_t> pick(0, big_n - 1);
            std::vector<double> errs(cfg.bootstrap);
            std::vector<cplx> sums(m);
            for (std::size_t b = 0; b < cfg.bootstrap; ++b) {
                std::fill(sums.begin(), sums.end(), cplx{});
                for (std::size_t r = 0; r < big_n; ++r) {
                    const std::size_t i = pick(rng);
                    for (std::size_t t = offset[i]; t < offset[i + 1]; ++t) sums[obs[t]] += val[t];
                }
                double e_sum = 0.0;
                for (std::size_t o = 0; o < m; ++o) e_sum += std::abs(sums[o] / static_cast<double>(big_n) - exact[o]);
                errs[b] = e_sum / static_cast<double>(m);
            }
            double mean = 0.0;
            for (double x : errs) mean += x;
            mean /= static_cast<double>(errs.size());
            double var = 0.0;
            for (double x : errs) var += (x - mean) * (x - mean);
            var = errs.size() > 1 ? var / static_cast<double>(errs.size() - 1) : 0.0;
            rows.push_back({e, big_n, mean, std::sqrt(var), cfg.bootstrap, cfg.seed});
        }
    }
    return rows;
}

}  // namespace mgs
