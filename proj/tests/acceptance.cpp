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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mgshadows/circuits.hpp"
#include "mgshadows/cubature.hpp"
#include "mgshadows/exact.hpp"
#include "mgshadows/shadows.hpp"
#include "mgshadows/state_sim.hpp"

namespace mgs {
namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. Averaged 3-fold gate of the sine-power density equals the four-term formula.
Outcome gate_average_formula() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    double worst_p = 0.0;
    for (int k = 2; k <= 8; ++k) {
        const auto dist = AngleDistribution::haar_givens(k);
        worst_p = std::max(worst_p, std::abs(dist.moment(0, 2) - (k - 1.0) / k));
        for (int axis = 2; axis <= 4; ++axis) {
            const auto gate = averaged_gate_3fold(2, axis, dist);
            worst = std::max(worst, sup_difference(brute_3fold_quadrature(2, axis, dist), gate.to_sparse()));
        }
    }
    const double t = elapsed_since(t0);
    return {worst < 1e-8 && worst_p < 1e-10 && t < 10,
            "k=2..8, n=2 axes 2..4: sup diff " + fmt(worst) + ", |E sin^2 - (k-1)/k| " + fmt(worst_p) + ", " +
                fmt(t) + " s"};
}

// 2. Triangular template with independent per-gate laws is a 3-design for Sym+(2,2n).
Outcome three_design() {
    std::string detail;
    bool pass = true;
    for (int n = 1; n <= 2; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = check_3design(n);
        const double t = elapsed_since(t0);
        pass = pass && r.max_deviation < 1e-9 && t < 300;
        detail += "n=" + std::to_string(n) + " |G|=" + std::to_string(r.group_size) + " dev " + fmt(r.max_deviation) +
                  " (" + fmt(t) + " s); ";
    }
    return {pass, detail};
}

// 3. Four-fold witness.
Outcome gamma_witness() {
    const auto u = gamma_4fold(AngleDistribution::uniform());
    // cos(pi/2) is 6e-17 in floating point, so "exactly" means to rounding.
    double worst = 0.0;
    for (int k = 2; k <= 8; ++k) {
        const double a = 1.0 / (2 * k);
        const double b = (k - 1.0) / (2 * k);
        const auto g = gamma_4fold(AngleDistribution::point_masses({{0, a}, {kPi, a}, {kPi / 2, b}, {-kPi / 2, b}}));
        worst = std::max({worst, std::abs(g.gamma - 1.0), std::abs(g.closed_form - 1.0)});
    }
    const auto quarter = gamma_4fold(AngleDistribution::point_masses({{0, 1}, {kPi / 2, 1}, {kPi, 1}, {-kPi / 2, 1}}));
    worst = std::max(worst, std::abs(quarter.gamma - 1.0));
    return {std::abs(u.gamma - 1.5) < 1e-9 && std::abs(u.closed_form - 1.5) < 1e-9 && worst < 1e-12,
            "uniform Gamma " + std::to_string(u.gamma) + " (closed form " + std::to_string(u.closed_form) +
                "); Clifford-supported laws: max |Gamma - 1| " + fmt(worst)};
}

// 4. Exact measurement channel.
Outcome channel_eigenvalues() {
    std::string detail;
    bool pass = true;
    for (int n = 2; n <= 3; ++n) {
        const double full = channel_deviation_from_lambda(exact_measurement_channel(clifford_group_ensemble(n)), n);
        const double reps =
            channel_deviation_from_lambda(exact_measurement_channel(matching_representatives_ensemble(n)), n);
        pass = pass && full < 1e-10 && reps < 1e-10;
        detail += "n=" + std::to_string(n) + " group " + fmt(full) + ", matching reps " + fmt(reps) + "; ";
    }
    return {pass, detail};
}

// 5. Second moments never exceed lambda^{-1}; the exact value is a rational count.
Outcome shadow_norm() {
    bool pass = true;
    double worst_float = -1e300;
    std::size_t checked = 0;
    Rng rng(5005);
    for (int n = 1; n <= 3; ++n) {
        const auto ens = clifford_group_ensemble(n);
        const std::size_t g = ens.size();
        const auto observables = even_monomial_observables(n, 4);
        for (const StateVector& psi : {StateVector(n), random_haar_state(n, rng)}) {
            const MajoranaTable table(psi);
            const ExactContext ctx(ens, table);
            for (const auto& o : observables) {
                const auto& mu = o.terms().begin()->first;
                const int k = mu.degree() / 2;
                const Rational inv_lambda = 1 / lambda_eigenvalue(k, n);
                const double m2 = exact_second_moment(ctx, o);
                worst_float = std::max(worst_float, m2 - to_double(inv_lambda));
                pass = pass && m2 <= to_double(inv_lambda) + 1e-10;
                ++checked;
            }
        }
        // |o_hat|^2 is lambda^{-2} on pair-union images and 0 otherwise, for every outcome,
        // so E|o_hat|^2 = lambda^{-2} * (#elements sending mu to a pair union) / |G|.
        for (const auto& o : observables) {
            const auto& mu = o.terms().begin()->first;
            const Rational lam = lambda_eigenvalue(mu.degree() / 2, n);
            std::int64_t hits = 0;
            for (const auto& q : ens.elements) {
                if (clifford_estimate_unscaled(q, mu, 0) != cplx{}) ++hits;
            }
            const Rational exact = Rational(hits, static_cast<std::int64_t>(g)) / (lam * lam);
            pass = pass && exact <= 1 / lam;
        }
    }
    return {pass, std::to_string(checked) + " (state, monomial) pairs at n<=3, max E[o^2]-1/lambda " +
                      fmt(worst_float) + "; rational counts satisfy <= 1/lambda exactly"};
}

// 6. Sign reassignment and matching-equivalent replacement leave second moments unchanged.
Outcome invariances() {
    Rng rng(6006);
    double sign_dev = 0.0;
    double match_dev = 0.0;
    double control = 1e300;
    for (int n = 2; n <= 3; ++n) {
        const MajoranaTable table(random_haar_state(n, rng));
        auto obs = even_monomial_observables(n, 4);
        for (auto& o : random_hermitian_observables(n, 5, 4, rng)) obs.push_back(std::move(o));
        std::vector<FiniteEnsemble> ensembles{matching_representatives_ensemble(n),
                                              clifford_angle_ensemble(n, CliffordMode::two_angle)};
        if (n == 2) ensembles.push_back(clifford_group_ensemble(n));
        for (const auto& ens : ensembles) {
            sign_dev = std::max(sign_dev, check_sign_invariance(ens, table, obs, rng).max_deviation);
            match_dev = std::max(match_dev, check_matching_invariance(ens, table, obs, rng).max_deviation);
        }
        Permutation sigma = identity_permutation(2 * n);
        std::swap(sigma[1], sigma[2]);
        const auto reps = matching_representatives_ensemble(n);
        FiniteEnsemble broken = reps;
        for (auto& q : broken.elements) q = permute_rows(q, sigma);
        control = std::min(control, second_moment_deviation(reps, broken, table, obs));
    }
    return {sign_dev < 1e-10 && match_dev < 1e-10 && control > 1e-3,
            "20 trials each, n=2,3: sign dev " + fmt(sign_dev) + ", matching dev " + fmt(match_dev) +
                ", negative control dev " + fmt(control)};
}

// 7. Bootstrap error curves of the four samplers overlap.
Outcome variance_overlap() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(7007);
    const StateVector psi = random_haar_state(4, rng);
    VarianceConfig cfg;
    cfg.seed = 7007;
    const auto rows = variance_experiment(psi, cfg);
    bool pass = true;
    double worst_ratio = 0.0;
    for (std::size_t big_n : cfg.grid) {
        std::vector<VarianceRow> at;
        for (const auto& r : rows) {
            if (r.n_samples == big_n) at.push_back(r);
        }
        for (std::size_t a = 0; a < at.size(); ++a) {
            for (std::size_t b = a + 1; b < at.size(); ++b) {
                const double gap = std::abs(at[a].mean_abs_error - at[b].mean_abs_error);
                const double allowed = 2 * (at[a].std_abs_error + at[b].std_abs_error);
                worst_ratio = std::max(worst_ratio, gap / allowed);
                pass = pass && gap <= allowed;
            }
        }
    }
    const double t = elapsed_since(t0);
    std::ostringstream detail;
    detail << "n=4, 1e5 shadows, B=1000; worst gap/(2 sd sum) " << fmt(worst_ratio) << ", " << fmt(t) << " s; ";
    for (const auto& r : rows) {
        if (r.n_samples == 100000) detail << ensemble_name(r.ensemble) << " " << fmt(r.mean_abs_error) << " ";
    }
    return {pass && t < 900, detail.str()};
}

// 8. Compiled matching circuits.
Outcome algorithm_structure() {
    bool counts_ok = true;
    bool depth_ok = true;
    double mean2 = 0.0;
    for (int n = 2; n <= 6; ++n) {
        Rng rng = make_stream(8008, {static_cast<std::uint64_t>(n)});
        double total = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const auto c = sample_optimal_circuit_full(n, rng);
            counts_ok = counts_ok && c.gate_count == inversion_count(signed_permutation_of(c.sequence).perm()) &&
                        signed_permutation_of(c.sequence).perm() == c.canonical;
            depth_ok = depth_ok && c.depth <= 2 * n;
            total += static_cast<double>(c.gate_count);
        }
        if (n == 2) mean2 = total / 10000;
    }
    double brute = 0.0;
    const auto all = all_perfect_matchings(2);
    for (const auto& pm : all) brute += static_cast<double>(inversion_count(canonical_permutation(pm)));
    brute /= static_cast<double>(all.size());
    return {counts_ok && depth_ok && std::abs(brute - 1.0) < 1e-12 && std::abs(mean2 - brute) < 0.05,
            "gate count = inversions: " + std::string(counts_ok ? "yes" : "no") + ", depth <= 2n: " +
                (depth_ok ? "yes" : "no") + "; n=2 mean " + fmt(mean2) + " vs enumeration " + fmt(brute) +
                " (n(n-1)/4 = 0.5 reported, not asserted)"};
}

// 9. Brick-wall rewrite.
Outcome brickwall() {
    Rng rng(9009);
    std::bernoulli_distribution coin(0.5);
    bool ok = true;
    for (int m = 2; m <= 10; m += 2) {
        for (int it = 0; it < 10000; ++it) {
            TriangularWord w = TriangularWord::empty(m);
            for (auto& d : w.bits) {
                for (auto& b : d) b = coin(rng) ? 1 : 0;
            }
            const auto b = brickwall_transform(w);
            ok = ok && apply_transpositions(m, b.axes()) == apply_transpositions(m, w.axes()) &&
                 b.gate_count() <= w.gate_count();
        }
    }
    bool braid = true;
    for (int m = 3; m <= 10; ++m) {
        for (int i = 1; i + 1 < m; ++i) {
            braid = braid && apply_transpositions(m, std::vector<int>{i + 1, i + 2, i + 1}) ==
                                 apply_transpositions(m, std::vector<int>{i + 2, i + 1, i + 2});
        }
    }
    return {ok && braid, "1e4 words at each 2n in {2,...,10}: preserved and non-increasing: " +
                             std::string(ok ? "yes" : "no") + "; braid identity: " + (braid ? "yes" : "no")};
}

// 10. First and second moments of the continuous sampler.
Outcome haar_moments() {
    bool pass = true;
    double worst = 0.0;
    double so2_cross = 0.0;
    for (int n = 1; n <= 3; ++n) {
        for (Ensemble e : {Ensemble::haar, Ensemble::haar_o2n}) {
            const int m = 2 * n;
            const int shots = 100000;
            Rng rng = make_stream(1010, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(e)});
            std::vector<double> sum1(m * m, 0.0), sq1(m * m, 0.0);
            std::vector<double> sum2(m * m * m * m, 0.0), sq2(m * m * m * m, 0.0);
            for (int s = 0; s < shots; ++s) {
                const Eigen::MatrixXd q = compose_to_matrix(sample_circuit(e, n, rng)).matrix();
                for (int i = 0; i < m * m; ++i) {
                    const double x = q(i / m, i % m);
                    sum1[i] += x;
                    sq1[i] += x * x;
                    for (int j = 0; j < m * m; ++j) {
                        const double y = x * q(j / m, j % m);
                        sum2[i * m * m + j] += y;
                        sq2[i * m * m + j] += y * y;
                    }
                }
            }
            auto check = [&](double sum, double sq, double want) {
                const double mean = sum / shots;
                const double var = (sq / shots - mean * mean) * shots / (shots - 1);
                const double se = std::sqrt(std::max(var, 0.0) / shots);
                const double z = se > 0 ? std::abs(mean - want) / se : (std::abs(mean - want) < 1e-12 ? 0 : 1e9);
                return z;
            };
            for (int i = 0; i < m * m; ++i) {
                const double z1 = check(sum1[i], sq1[i], 0.0);
                bool ok = z1 < 5;
                worst = std::max(worst, z1);
                for (int j = 0; j < m * m; ++j) {
                    const double want = i == j ? 1.0 / m : 0.0;
                    const double z2 = check(sum2[i * m * m + j], sq2[i * m * m + j], want);
                    // SO(2) is abelian: Q11 Q22 = cos^2 has mean 1/2, so the identity needs O(2) at n = 1.
                    if (n == 1 && e == Ensemble::haar) {
                        if (i == 0 && j == 3) so2_cross = sum2[i * m * m + j] / shots;
                        continue;
                    }
                    worst = std::max(worst, z2);
                    ok = ok && z2 < 5;
                }
                pass = pass && ok;
            }
        }
    }
    return {pass, "1e5 samples, n=1..3 (SO(2n) for n>=2, O(2n) for all n): worst |z| " + fmt(worst) +
                      "; SO(2) E[Q11 Q22] = " + fmt(so2_cross) + " reported"};
}

}  // namespace
}  // namespace mgs

int main() {
    using namespace mgs;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"three-fold gate average equals the Clifford formula", gate_average_formula},
        {"triangular template is a Clifford 3-design at n=1,2", three_design},
        {"four-fold witness Gamma", gamma_witness},
        {"exact measurement channel eigenvalues", channel_eigenvalues},
        {"second moments bounded by the shadow norm", shadow_norm},
        {"sign and matching invariance of second moments", invariances},
        {"sampler error curves overlap at n=4", variance_overlap},
        {"compiled matching circuits", algorithm_structure},
        {"brick-wall rewrite", brickwall},
        {"continuous sampler moments", haar_moments},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failures += r.pass ? 0 : 1;
        std::printf("criterion %2zu: %s  %s [%s] (%.1f s)\n", i + 1, r.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    r.detail.c_str(), elapsed_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
