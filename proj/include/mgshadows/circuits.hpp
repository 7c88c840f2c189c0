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

// Perfect matchings, adjacent-transposition words and the optimal matchgate
// sampler built on them.
//
// Transposition words are written as lists of axes in time order, axis k
// standing for the swap of positions (k - 1, k). The permutation realized by a
// word is obtained by applying its swaps, in order, to the identity array;
// this is exactly the `perm` of the signed permutation produced by the
// matching circuit of pi/2 Givens rotations.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mgshadows/errors.hpp"
#include "mgshadows/orthogonal.hpp"

namespace mgs {

class PerfectMatching {
  public:
    /// Pairs are stored sorted internally and ordered by first element.
    explicit PerfectMatching(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
        const int m = 2 * static_cast<int>(pairs_.size());
        if (m == 0) throw DomainError("PerfectMatching: empty");
        std::vector<char> seen(static_cast<std::size_t>(m) + 1, 0);
        for (auto& [a, b] : pairs_) {
            if (a > b) std::swap(a, b);
            for (int v : {a, b}) {
                if (v < 1 || v > m || seen[static_cast<std::size_t>(v)]) {
                    throw DomainError("PerfectMatching: pairs must be disjoint and cover [1, 2n]");
                }
                seen[static_cast<std::size_t>(v)] = 1;
            }
        }
        std::sort(pairs_.begin(), pairs_.end());
    }

    [[nodiscard]] int n_pairs() const { return static_cast<int>(pairs_.size()); }
    [[nodiscard]] const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

    friend bool operator==(const PerfectMatching&, const PerfectMatching&) = default;
    friend auto operator<=>(const PerfectMatching&, const PerfectMatching&) = default;

  private:
    std::vector<std::pair<int, int>> pairs_;
};

inline void require_even_permutation_size(std::span<const int> p, const char* who) {
    if (p.empty() || p.size() % 2 != 0 || !is_permutation_of_range(p)) {
        throw DomainError(std::string(who) + ": expected a bijection on [1, 2n]");
    }
}

inline PerfectMatching perfect_matching_of(std::span<const int> p) {
    require_even_permutation_size(p, "perfect_matching_of");
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i + 1 < p.size(); i += 2) pairs.emplace_back(p[i], p[i + 1]);
    return PerfectMatching(std::move(pairs));
}

inline PerfectMatching perfect_matching_of(const SignedPermutation& q) {
    return perfect_matching_of(q.perm());
}

inline Permutation canonical_permutation(const PerfectMatching& m) {
    Permutation p;
    p.reserve(static_cast<std::size_t>(2 * m.n_pairs()));
    for (const auto& [a, b] : m.pairs()) {
        p.push_back(a);
        p.push_back(b);
    }
    return p;
}

inline long long inversion_count(std::span<const int> p) {
    long long inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j] ? 1 : 0;
    }
    return inv;
}

/// Permutation realized by a transposition word on m points.
inline Permutation apply_transpositions(int m, std::span<const int> axes) {
    Permutation arr = identity_permutation(m);
    for (int k : axes) {
        if (k < 2 || k > m) throw DomainError("apply_transpositions: axis out of range");
        std::swap(arr[static_cast<std::size_t>(k - 2)], arr[static_cast<std::size_t>(k - 1)]);
    }
    return arr;
}

/// All perfect matchings of [1, 2n], (2n - 1)!! of them.
inline std::vector<PerfectMatching> all_perfect_matchings(int n_pairs) {
    if (n_pairs < 1 || n_pairs > 8) throw ResourceError("all_perfect_matchings: n outside [1, 8]");
    std::vector<PerfectMatching> out;
    std::vector<std::pair<int, int>> cur;
    std::vector<char> used(static_cast<std::size_t>(2 * n_pairs) + 1, 0);
    auto rec = [&](auto&& self) -> void {
        int first = 1;
        while (first <= 2 * n_pairs && used[static_cast<std::size_t>(first)]) ++first;
        if (first > 2 * n_pairs) {
            out.emplace_back(cur);
            return;
        }
        used[static_cast<std::size_t>(first)] = 1;
        for (int partner = first + 1; partner <= 2 * n_pairs; ++partner) {
            if (used[static_cast<std::size_t>(partner)]) continue;
            used[static_cast<std::size_t>(partner)] = 1;
            cur.emplace_back(first, partner);
            self(self);
            cur.pop_back();
            used[static_cast<std::size_t>(partner)] = 0;
        }
        used[static_cast<std::size_t>(first)] = 0;
    };
    rec(rec);
    return out;
}

// ---------------------------------------------------------------------------
// Triangular and brick-wall words.
//
// Letters: tau_j swaps positions (j, j + 1), i.e. axis j + 1. A triangular
// word on m points is D_1 D_2 ... D_{m-1} with D_k = tau_k tau_{k-1} ... tau_1,
// each letter present or absent. A brick-wall word has m layers; layer t
// (1-based) may only hold letters j with j = t mod 2.

struct TriangularWord {
    int m = 2;
    /// bits[k - 1][j - 1] says whether tau_j is present in D_k.
    std::vector<std::vector<std::uint8_t>> bits;

    static TriangularWord empty(int m_points) {
        if (m_points < 2) throw DomainError("TriangularWord: need at least two points");
        TriangularWord w;
        w.m = m_points;
        for (int k = 1; k < m_points; ++k) w.bits.emplace_back(static_cast<std::size_t>(k), 0);
        return w;
    }

    void validate() const {
        if (m < 2 || bits.size() != static_cast<std::size_t>(m - 1)) {
            throw DomainError("TriangularWord: expected m - 1 diagonals");
        }
        for (std::size_t k = 0; k < bits.size(); ++k) {
            if (bits[k].size() != k + 1) {
                throw DomainError("TriangularWord: diagonal " + std::to_string(k + 1) +
                                  " must have " + std::to_string(k + 1) + " letters");
            }
            for (auto b : bits[k]) {
                if (b > 1) throw DomainError("TriangularWord: letter bits must be 0 or 1");
            }
        }
    }

    [[nodiscard]] std::vector<int> axes() const {
        validate();
        std::vector<int> out;
        for (int k = 1; k < m; ++k) {
            for (int j = k; j >= 1; --j) {
                if (bits[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)]) out.push_back(j + 1);
            }
        }
        return out;
    }

    [[nodiscard]] std::size_t gate_count() const { return axes().size(); }
};

struct BrickwallWord {
    int m = 2;
    /// layers[t - 1] holds the letters j of layer t, increasing.
    std::vector<std::vector<int>> layers;

    void validate() const {
        if (layers.size() > static_cast<std::size_t>(m)) throw DomainError("BrickwallWord: more than m layers");
        for (std::size_t t = 0; t < layers.size(); ++t) {
            for (int j : layers[t]) {
                if (j < 1 || j >= m || (j - static_cast<int>(t + 1)) % 2 != 0) {
                    throw DomainError("BrickwallWord: letter " + std::to_string(j) + " not allowed in layer " +
                                      std::to_string(t + 1));
                }
            }
        }
    }

    [[nodiscard]] std::vector<int> axes() const {
        std::vector<int> out;
        for (const auto& layer : layers) {
            for (int j : layer) out.push_back(j + 1);
        }
        return out;
    }

    [[nodiscard]] std::size_t gate_count() const {
        std::size_t c = 0;
        for (const auto& layer : layers) c += layer.size();
        return c;
    }
};

/// Rewrites tau_i^b1 tau_{i+1}^b2 tau_i^b3 as tau_{i+1}^c1 tau_i^c2 tau_{i+1}^c3
/// realizing the same permutation with the fewest letters.
inline std::array<std::uint8_t, 3> braid_rewrite(std::uint8_t b1, std::uint8_t b2, std::uint8_t b3) {
    const std::array<int, 3> s{1, 0, 2};  // tau_i on three points
    const std::array<int, 3> t{0, 2, 1};  // tau_{i+1}
    auto apply = [](std::array<int, 3> arr, const std::array<int, 3>& g) {
        std::array<int, 3> r{};
        for (int i = 0; i < 3; ++i) r[static_cast<std::size_t>(i)] = arr[static_cast<std::size_t>(g[static_cast<std::size_t>(i)])];
        return r;
    };
    auto word = [&](int x, int y, int z, const std::array<int, 3>& g1, const std::array<int, 3>& g2) {
        std::array<int, 3> arr{0, 1, 2};
        if (x) arr = apply(arr, g1);
        if (y) arr = apply(arr, g2);
        if (z) arr = apply(arr, g1);
        return arr;
    };
    const auto target = word(b1, b2, b3, s, t);
    std::array<std::uint8_t, 3> best{1, 1, 1};
    int best_w = 4;
    for (int c = 0; c < 8; ++c) {
        const int c1 = (c >> 2) & 1, c2 = (c >> 1) & 1, c3 = c & 1;
        if (word(c1, c2, c3, t, s) == target && c1 + c2 + c3 < best_w) {
            best_w = c1 + c2 + c3;
            best = {static_cast<std::uint8_t>(c1), static_cast<std::uint8_t>(c2), static_cast<std::uint8_t>(c3)};
        }
    }
    return best;
}

namespace detail {

/// Diagonal tau_{shift+len} ... tau_{shift+1}; bit[j - shift - 1] for letter j.
struct Diagonal {
    int len = 0;
    int shift = 0;
    std::vector<std::uint8_t> bit;

    [[nodiscard]] std::uint8_t& at(int j) { return bit[static_cast<std::size_t>(j - shift - 1)]; }
};

/// Moves `left` past `right` (left right -> right' left'), left' shifted by one.
inline void swap_diagonals(Diagonal& left, Diagonal& right) {
    if (!(right.shift <= left.shift && left.shift + left.len <= right.shift + right.len - 1)) {
        throw InternalError("brickwall_transform: diagonal swap precondition violated");
    }
    Diagonal moved{left.len, left.shift + 1, std::vector<std::uint8_t>(static_cast<std::size_t>(left.len), 0)};
    for (int j = left.shift + 1; j <= left.shift + left.len; ++j) {
        // tau_j^{b1} meets tau_{j+1}^{b2} tau_j^{b3} inside `right`.
        const auto c = braid_rewrite(left.at(j), right.at(j + 1), right.at(j));
        right.at(j + 1) = c[0];
        right.at(j) = c[1];
        moved.at(j + 1) = c[2];
    }
    left = std::move(right);
    right = std::move(moved);
}

}  // namespace detail

/// Brick-wall rewrite of a triangular word. Never increases the letter count.
inline BrickwallWord brickwall_transform(const TriangularWord& w) {
    w.validate();
    const int m = w.m;
    if (m % 2 != 0) throw DomainError("brickwall_transform: expected an even number of points");
    std::vector<detail::Diagonal> diags;
    for (int k = 1; k < m; ++k) diags.push_back({k, 0, w.bits[static_cast<std::size_t>(k - 1)]});

    // Bubble the even diagonals to the tail, longest first. The final list is
    // D_1 D_3 ... D_{m-1} followed by the shifted even ones in decreasing length.
    for (int len = m - 2; len >= 2; len -= 2) {
        for (auto pos = static_cast<std::size_t>(len - 1); pos + 1 < diags.size(); ++pos) {
            detail::swap_diagonals(diags[pos], diags[pos + 1]);
        }
    }

    // Diagonal at position i (1-based) carries c = 2i; letter j goes to layer c - j.
    BrickwallWord out;
    out.m = m;
    out.layers.assign(static_cast<std::size_t>(m), {});
    for (std::size_t i = 0; i < diags.size(); ++i) {
        const int c = 2 * static_cast<int>(i + 1);
        const auto& d = diags[i];
        for (int j = d.shift + 1; j <= d.shift + d.len; ++j) {
            if (!d.bit[static_cast<std::size_t>(j - d.shift - 1)]) continue;
            const int t = c - j;
            if (t < 1 || t > m) throw InternalError("brickwall_transform: layer index out of range");
            out.layers[static_cast<std::size_t>(t - 1)].push_back(j);
        }
    }
    for (auto& layer : out.layers) std::sort(layer.begin(), layer.end());
    while (!out.layers.empty() && out.layers.back().empty()) out.layers.pop_back();
    out.validate();
    return out;
}

/// Bubble-sort decomposition as a triangular word: applying its letters to the
/// identity array yields p, and the letter count is the inversion count of p.
inline TriangularWord bubblesort_word(std::span<const int> p) {
    if (p.size() < 2 || !is_permutation_of_range(p)) {
        throw DomainError("bubblesort_word: expected a bijection on [1, m], m >= 2");
    }
    const int m = static_cast<int>(p.size());
    TriangularWord w = TriangularWord::empty(m);
    Permutation arr(p.begin(), p.end());
    // Pass `pass` scans tau_1 .. tau_{m - pass}; read backwards it is D_{m - pass}.
    for (int pass = 1; pass < m; ++pass) {
        for (int j = 1; j <= m - pass; ++j) {
            auto& a = arr[static_cast<std::size_t>(j - 1)];
            auto& b = arr[static_cast<std::size_t>(j)];
            if (a > b) {
                std::swap(a, b);
                w.bits[static_cast<std::size_t>(m - pass - 1)][static_cast<std::size_t>(j - 1)] = 1;
            }
        }
    }
    return w;
}

/// Axes of the bubble-sort decomposition of p in time order.
inline std::vector<int> bubblesort_transpositions(std::span<const int> p) {
    if (p.size() == 1 && p[0] == 1) return {};
    return bubblesort_word(p).axes();
}

/// Depth under greedy earliest-layer placement; gates sharing a Majorana index
/// never share a layer.
inline int circuit_depth(std::span<const int> axes, int m) {
    std::vector<int> last(static_cast<std::size_t>(m) + 1, 0);
    int depth = 0;
    for (int k : axes) {
        const auto a = static_cast<std::size_t>(k - 1);
        const auto b = static_cast<std::size_t>(k);
        const int layer = std::max(last[a], last[b]) + 1;
        last[a] = last[b] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

inline int circuit_depth(const GivensSequence& seq) {
    std::vector<int> axes;
    for (const auto& r : seq.rotations()) axes.push_back(r.axis);
    return circuit_depth(axes, 2 * seq.n_modes());
}

struct OptimalCircuit {
    GivensSequence sequence;
    Permutation canonical;
    long long gate_count = 0;
    int depth = 0;
};

/// Matchgate circuit of pi/2 rotations whose signed permutation has `perm`
/// equal to the canonical permutation of `m`, laid out brick-wall.
inline OptimalCircuit optimal_circuit_for(const PerfectMatching& m) {
    const int n = m.n_pairs();
    OptimalCircuit out{GivensSequence(n), canonical_permutation(m), 0, 0};
    const auto word = brickwall_transform(bubblesort_word(out.canonical));
    for (int axis : word.axes()) out.sequence.push_back({axis, kPi / 2});
    out.gate_count = static_cast<long long>(out.sequence.size());
    out.depth = circuit_depth(out.sequence);
    return out;
}

/// Random uniform permutation, reduced to its matching and compiled.
template <class URBG>
OptimalCircuit sample_optimal_circuit_full(int n_modes, URBG& rng) {
    if (n_modes < 1 || n_modes > kMaxQubits) throw DomainError("sample_optimal_circuit: n out of range");
    Permutation p = identity_permutation(2 * n_modes);
    // Explicit Fisher-Yates so the stream usage does not depend on the library.
    for (std::size_t i = p.size() - 1; i > 0; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i);
        std::swap(p[i], p[pick(rng)]);
    }
    return optimal_circuit_for(perfect_matching_of(p));
}

template <class URBG>
GivensSequence sample_optimal_circuit(int n_modes, URBG& rng) {
    return sample_optimal_circuit_full(n_modes, rng).sequence;
}

// ---------------------------------------------------------------------------
// Enumerations.

/// Every signed permutation on 2n points; with `proper_only`, those of
/// determinant +1.
inline std::vector<SignedPermutation> enumerate_signed_permutations(int n_modes, bool proper_only) {
    if (n_modes < 1 || n_modes > 3) {
        throw ResourceError("enumerate_signed_permutations: n = " + std::to_string(n_modes) +
                            " exceeds the enumeration cap of 3");
    }
    const int m = 2 * n_modes;
    std::vector<SignedPermutation> out;
    Permutation p = identity_permutation(m);
    do {
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            std::vector<int> s(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? -1 : 1;
            SignedPermutation q(n_modes, p, std::move(s));
            if (!proper_only || q.determinant() == 1) out.push_back(std::move(q));
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// One canonical permutation (positive signs) per perfect matching.
inline std::vector<SignedPermutation> matching_representatives(int n_modes) {
    std::vector<SignedPermutation> out;
    for (const auto& pm : all_perfect_matchings(n_modes)) {
        out.emplace_back(n_modes, canonical_permutation(pm), std::vector<int>(static_cast<std::size_t>(2 * n_modes), 1));
    }
    return out;
}

}  // namespace mgs
