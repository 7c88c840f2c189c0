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

// The `shadows` command line: sample | estimate | verify | bench.
// Kept in a header so the integration tests can drive it in-process.

#pragma once

#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mgshadows/circuits.hpp"
#include "mgshadows/cubature.hpp"
#include "mgshadows/errors.hpp"
#include "mgshadows/exact.hpp"
#include "mgshadows/io.hpp"
#include "mgshadows/orthogonal.hpp"
#include "mgshadows/rng.hpp"
#include "mgshadows/shadows.hpp"
#include "mgshadows/state_sim.hpp"

namespace mgs::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kData = 3, kResource = 4, kVerifyFail = 5 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int n = 0;
    std::optional<std::uint64_t> seed;
    std::string out;
    // sample / estimate
    std::string ensemble;
    long long shots = 1;
    std::string state_file;
    std::string state_kind;  // empty: vacuum for estimate, haar for bench
    std::string observables;
    std::string method = "mean";
    int batches = 1;
    unsigned workers = 0;
    // verify
    std::string check;
    double tol = 1e-9;
    // bench
    std::vector<std::string> ensembles{"haar", "four_angle", "two_angle", "optimal"};
    std::vector<std::size_t> grid{100, 1000, 10000, 100000};
    std::size_t bootstrap = 1000;
};

/// Output target: the given stream, or a file when --out is set.
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw DataError("cannot open output file '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream& operator*() { return *os_; }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

inline Ensemble require_ensemble(const std::string& name) {
    const auto e = parse_ensemble(name);
    if (!e) {
        throw UsageError("unknown ensemble '" + name + "' (expected haar, haar_o2n, four_angle, two_angle or optimal)");
    }
    return *e;
}

inline std::uint64_t require_seed(const Options& o) {
    if (!o.seed) throw UsageError("--seed is required for sampling commands");
    return *o.seed;
}

inline StateVector resolve_state(const Options& o, std::uint64_t seed) {
    if (!o.state_file.empty()) {
        StateVector psi = load_state(o.state_file);
        if (o.n != 0 && o.n != psi.n_qubits()) {
            throw DataError("state file has " + std::to_string(psi.n_qubits()) + " qubits but --n is " +
                            std::to_string(o.n));
        }
        return psi;
    }
    if (o.n < 1) throw UsageError("either --state-file or --n must be given");
    if (o.state_kind.empty() || o.state_kind == "vacuum") return StateVector(o.n);
    if (o.state_kind == "haar") {
        Rng rng = make_stream(seed, {0x57A7Eu});
        return random_haar_state(o.n, rng);
    }
    throw UsageError("unknown --state '" + o.state_kind + "' (expected vacuum or haar)");
}

inline int cmd_sample(const Options& o, std::ostream& out) {
    const Ensemble e = require_ensemble(o.ensemble);
    const std::uint64_t seed = require_seed(o);
    if (o.n < 1) throw UsageError("--n must be positive");
    if (o.shots < 0) throw UsageError("--shots must be non-negative");
    Sink sink(o.out, out);
    for (long long i = 0; i < o.shots; ++i) {
        Rng rng = make_stream(seed, {static_cast<std::uint64_t>(i)});
        nlohmann::json j;
        if (e == Ensemble::optimal) {
            const auto oc = sample_optimal_circuit_full(o.n, rng);
            j = to_json(oc.sequence);
            j["gate_count"] = oc.gate_count;
            j["depth"] = oc.depth;
        } else {
            j = to_json(sample_circuit(e, o.n, rng));
        }
        *sink << j.dump() << '\n';
    }
    return kOk;
}

inline int cmd_estimate(const Options& o, std::ostream& out) {
    const Ensemble e = require_ensemble(o.ensemble);
    const std::uint64_t seed = require_seed(o);
    if (o.shots < 1) throw UsageError("--shots must be positive for estimate");
    if (o.observables.empty()) throw UsageError("--observables is required");
    const Method method = o.method == "mean" ? Method::mean
                          : o.method == "median_of_means" ? Method::median_of_means
                                                          : throw UsageError("--method must be mean or median_of_means");
    const StateVector psi = resolve_state(o, seed);
    std::ifstream obs_in(o.observables);
    if (!obs_in) throw DataError("cannot open observables file '" + o.observables + "'");
    const auto observables = read_observables(obs_in, psi.n_qubits(), o.observables);
    const auto samples = collect_shadows(psi, e, static_cast<std::size_t>(o.shots), seed, o.workers);
    Sink sink(o.out, out);
    *sink << "observable,re,im,method,batches,shots\n";
    for (const auto& mu : observables) {
        const auto r = estimate(samples, mu, method, method == Method::mean ? 1 : o.batches);
        *sink << mu.str() << ',' << format_double17(r.estimate.real()) << ',' << format_double17(r.estimate.imag())
              << ',' << o.method << ',' << r.batches << ',' << o.shots << '\n';
    }
    return kOk;
}

inline nlohmann::json verify_report(const std::string& check, int n, double dev, bool pass) {
    return {{"check", check}, {"n", n}, {"max_deviation", dev}, {"pass", pass}};
}

inline int cmd_verify(const Options& o, std::ostream& out) {
    nlohmann::json rep;
    const int n = o.n;
    if (o.check == "design3") {
        const auto r = check_3design(n);
        rep = verify_report(o.check, n, r.max_deviation, r.max_deviation < o.tol);
        rep["group_size"] = r.group_size;
    } else if (o.check == "gamma4") {
        const auto g = gamma_4fold(AngleDistribution::uniform());
        const double dev = std::abs(g.gamma - g.closed_form);
        rep = verify_report(o.check, 1, dev, dev < o.tol && g.gamma > 1.0);
        rep["gamma"] = g.gamma;
        rep["closed_form"] = g.closed_form;
        rep["density"] = "uniform";
    } else if (o.check == "sign-invariance" || o.check == "matching-invariance") {
        if (n < 1 || n > kExactModeCap) {
            throw ResourceError(o.check + ": exact enumeration is limited to n <= " + std::to_string(kExactModeCap));
        }
        Rng rng = make_stream(o.seed.value_or(1), {0xC0DEu});
        const StateVector psi = random_haar_state(n, rng);
        const MajoranaTable table(psi);
        const FiniteEnsemble ens = n <= 2 ? clifford_group_ensemble(n) : matching_representatives_ensemble(n);
        auto observables = even_monomial_observables(n, 4);
        for (auto& c : random_hermitian_observables(n, 5, 4, rng)) observables.push_back(std::move(c));
        const auto r = o.check == "sign-invariance" ? check_sign_invariance(ens, table, observables, rng)
                                                    : check_matching_invariance(ens, table, observables, rng);
        rep = verify_report(o.check, n, r.max_deviation, r.max_deviation < std::max(o.tol, 1e-10));
        rep["trials"] = r.trials;
        rep["ensemble_size"] = ens.size();
    } else if (o.check == "lambda") {
        if (n < 1 || n > 4) throw ResourceError("lambda: exact channel enumeration is limited to n <= 4");
        const FiniteEnsemble ens = n <= 3 ? clifford_group_ensemble(n) : matching_representatives_ensemble(n);
        const double dev = channel_deviation_from_lambda(exact_measurement_channel(ens, 4), n);
        rep = verify_report(o.check, n, dev, dev < std::max(o.tol, 1e-10));
        nlohmann::json table = nlohmann::json::array();
        for (int k = 0; k <= n; ++k) {
            const Rational l = lambda_eigenvalue(k, n);
            table.push_back({{"k", k},
                             {"lambda", std::to_string(l.numerator()) + "/" + std::to_string(l.denominator())},
                             {"value", to_double(l)}});
        }
        rep["lambda"] = table;
        rep["ensemble"] = n <= 3 ? "full_group" : "matching_representatives";
    } else {
        throw UsageError("unknown --check '" + o.check +
                         "' (expected design3, gamma4, sign-invariance, matching-invariance or lambda)");
    }
    Sink sink(o.out, out);
    *sink << rep.dump() << '\n';
    return rep["pass"].get<bool>() ? kOk : kVerifyFail;
}

inline int cmd_bench(const Options& o, std::ostream& out) {
    const std::uint64_t seed = require_seed(o);
    VarianceConfig cfg;
    cfg.ensembles.clear();
    for (const auto& name : o.ensembles) cfg.ensembles.push_back(require_ensemble(name));
    cfg.grid = o.grid;
    cfg.bootstrap = o.bootstrap;
    cfg.seed = seed;
    cfg.workers = o.workers;
    Options with_default = o;
    if (o.state_kind.empty()) with_default.state_kind = "haar";
    const StateVector psi = resolve_state(with_default, seed);
    const auto rows = variance_experiment(psi, cfg);
    Sink sink(o.out, out);
    write_bench_csv(*sink, rows);
    return kOk;
}

/// Runs the CLI on argv-style arguments (args[0] is the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Matchgate classical shadows: sampling, estimation and exact verification"};
    app.require_subcommand(1);
    Options o;

    auto shared = [&](CLI::App* sub) {
        sub->add_option("--n", o.n, "number of modes (qubits)");
        sub->add_option("--seed", o.seed, "64-bit seed");
        sub->add_option("--out", o.out, "output file (default: stdout)");
    };
    auto* sample = app.add_subcommand("sample", "emit random matchgate circuits as JSON lines");
    shared(sample);
    sample->add_option("--ensemble", o.ensemble, "haar, haar_o2n, four_angle, two_angle or optimal")->required();
    sample->add_option("--shots", o.shots, "number of circuits");

    auto* est = app.add_subcommand("estimate", "estimate Majorana monomials from classical shadows");
    shared(est);
    est->add_option("--ensemble", o.ensemble, "haar, haar_o2n, four_angle, two_angle or optimal")->required();
    est->add_option("--shots", o.shots, "number of shadows");
    est->add_option("--state-file", o.state_file, "amplitude file, one \"re im\" pair per line");
    est->add_option("--state", o.state_kind, "vacuum or haar when no state file is given");
    est->add_option("--observables", o.observables, "file of Majorana index lists, one per line")->required();
    est->add_option("--method", o.method, "mean or median_of_means");
    est->add_option("--batches", o.batches, "median-of-means batch count");
    est->add_option("--workers", o.workers, "worker threads (0: hardware concurrency)");

    auto* ver = app.add_subcommand("verify", "run an exact verification");
    shared(ver);
    ver->add_option("--check", o.check, "design3, gamma4, sign-invariance, matching-invariance or lambda")->required();
    ver->add_option("--tol", o.tol, "pass tolerance");

    auto* bench = app.add_subcommand("bench", "bootstrap variance experiment, CSV output");
    shared(bench);
    bench->add_option("--state-file", o.state_file, "amplitude file (default: seeded Haar state)");
    bench->add_option("--state", o.state_kind, "vacuum or haar");
    bench->add_option("--ensembles", o.ensembles, "comma-separated ensembles")->delimiter(',');
    bench->add_option("--grid", o.grid, "comma-separated shadow counts")->delimiter(',');
    bench->add_option("--bootstrap", o.bootstrap, "bootstrap resamples per point");
    bench->add_option("--workers", o.workers, "worker threads (0: hardware concurrency)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (sample->parsed()) return cmd_sample(o, out);
        if (est->parsed()) return cmd_estimate(o, out);
        if (ver->parsed()) return cmd_verify(o, out);
        if (bench->parsed()) return cmd_bench(o, out);
        return kUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kData;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const DomainError& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace mgs::cli
