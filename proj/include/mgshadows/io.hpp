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

// File formats: circuit JSON lines, observable lists and the bench CSV.

#pragma once

#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "mgshadows/circuits.hpp"
#include "mgshadows/errors.hpp"
#include "mgshadows/orthogonal.hpp"
#include "mgshadows/shadows.hpp"

namespace mgs {

/// 17 significant digits, enough for an exact round trip.
inline std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::json to_json(const SignedPermutation& q) {
    return {{"perm", q.perm()}, {"signs", q.signs()}};
}

inline nlohmann::json to_json(const GivensSequence& seq) {
    nlohmann::json rot = nlohmann::json::array();
    for (const auto& r : seq.rotations()) rot.push_back({{"axis", r.axis}, {"angle", r.angle}});
    nlohmann::json j{{"n_modes", seq.n_modes()}, {"rotations", rot}, {"terminal_reflection", seq.terminal_reflection()}};
    if (is_clifford_sequence(seq)) j["signed_permutation"] = to_json(signed_permutation_of(seq));
    return j;
}

inline GivensSequence sequence_from_json(const nlohmann::json& j) {
    try {
        GivensSequence seq(j.at("n_modes").get<int>());
        for (const auto& r : j.at("rotations")) seq.push_back({r.at("axis").get<int>(), r.at("angle").get<double>()});
        seq.set_terminal_reflection(j.value("terminal_reflection", false));
        return seq;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("circuit JSON: ") + e.what());
    }
}

/// One monomial per line as strictly increasing, space-separated Majorana
/// indices. Blank lines and '#' comments are skipped. Odd-degree lines are
/// rejected by line number.
inline std::vector<MajoranaMonomial> read_observables(std::istream& in, int n_modes,
                                                      const std::string& source = "observables") {
    std::vector<MajoranaMonomial> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::vector<int> idx;
        std::string tok;
        while (row >> tok) {
            try {
                std::size_t used = 0;
                const int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                idx.push_back(v);
            } catch (const std::exception&) {
                throw DataError(source + ": line " + std::to_string(line_no) + ": not an integer: '" + tok + "'");
            }
        }
        if (idx.empty()) continue;
        if (idx.size() % 2 != 0) {
            throw DataError(source + ": line " + std::to_string(line_no) + ": odd-degree monomial '" + line +
                            "' has no unbiased shadow estimator");
        }
        try {
            out.emplace_back(n_modes, idx);
        } catch (const DomainError& e) {
            throw DataError(source + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (out.empty()) throw DataError(source + ": no observables");
    return out;
}

inline constexpr const char* kBenchHeader = "ensemble,N,mean_abs_error,std_abs_error,bootstrap_size,seed";

inline void write_bench_csv(std::ostream& out, const std::vector<VarianceRow>& rows) {
    out << kBenchHeader << '\n';
    for (const auto& r : rows) {
        out << ensemble_name(r.ensemble) << ',' << r.n_samples << ',' << format_double17(r.mean_abs_error) << ','
            << format_double17(r.std_abs_error) << ',' << r.bootstrap << ',' << r.seed << '\n';
    }
}

}  // namespace mgs
