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
 * Orthogonal-group side of fermionic Gaussian unitaries: Givens rotations,
 * circuit sequences, signed permutations and the angle samplers for the
 * continuous and Clifford ensembles.
 *
 * Ordering convention: a GivensSequence lists its rotations in circuit time
 * order. The matrix of a sequence is the Q for which U^dag gamma_k U =
 * sum_l Q_kl gamma_l, where U is the circuit unitary. Since the last gate acts
 * outermost, Q = g(r_m) ... g(r_2) g(r_1), with the terminal reflection (last in
 * time) multiplied on the left. The Hurwitz template emitted by haar_sequence
 * lists the factors of
 *     Q = (g^1_2 g^1_3 ... g^1_{2n}) ... (g^{2n-2}_2 g^{2n-2}_3) (g^{2n-1}_2)
 * right to left, so compose_to_matrix reproduces that product literally.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mgshadows/errors.hpp"
#include "mgshadows/majorana.hpp"
#include "mgshadows/rng.hpp"

namespace mgs {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kOrthogonalityTol = 1e-10;

/// Maps an angle onto (-pi, pi].
inline double normalize_angle(double theta) {
    double t = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
    if (t <= -kPi) t += 2.0 * kPi;
    return t;
}

/// Rotation in the plane of Majorana axes (axis - 1, axis).
struct GivensRotation {
    int axis = 2;
    double angle = 0.0;

    friend bool operator==(const GivensRotation&, const GivensRotation&) = default;
};

class GivensSequence {
  public:
    explicit GivensSequence(int n_modes) : n_(n_modes) {
        if (n_modes < 1 || n_modes > kMaxQubits) {
            throw DomainError("GivensSequence: mode count out of range");
        }
    }

    GivensSequence(int n_modes, std::vector<GivensRotation> rotations, bool terminal_reflection)
        : GivensSequence(n_modes) {
        rotations_.reserve(rotations.size());
        for (const auto& r : rotations) push_back(r);
        reflection_ = terminal_reflection;
    }

    void push_back(GivensRotation r) {
        if (r.axis < 2 || r.axis > 2 * n_) {
            throw DomainError("GivensRotation: axis " + std::to_string(r.axis) +
                              " outside [2, " + std::to_string(2 * n_) + "]");
        }
        if (!std::isfinite(r.angle)) throw DomainError("GivensRotation: non-finite angle");
        r.angle = normalize_angle(r.angle);
        rotations_.push_back(r);
    }

    [[nodiscard]] int n_modes() const { return n_; }
    [[nodiscard]] const std::vector<GivensRotation>& rotations() const { return rotations_; }
    [[nodiscard]] std::size_t size() const { return rotations_.size(); }
    [[nodiscard]] bool terminal_reflection() const { return reflection_; }
    void set_terminal_reflection(bool on) { reflection_ = on; }

    /// This sequence followed in time by `later`.
    [[nodiscard]] GivensSequence then(const GivensSequence& later) const {
        if (later.n_ != n_) throw DomainError("GivensSequence: mode count mismatch");
        if (reflection_) {
            throw DomainError("GivensSequence: cannot append after a terminal reflection");
        }
        GivensSequence out = *this;
        for (const auto& r : later.rotations_) out.rotations_.push_back(r);
        out.reflection_ = later.reflection_;
        return out;
    }

    friend bool operator==(const GivensSequence&, const GivensSequence&) = default;

  private:
    int n_;
    std::vector<GivensRotation> rotations_;
    bool reflection_ = false;
};

/// Dense real 2n x 2n matrix with orthonormal rows.
class OrthogonalMatrix {
  public:
    explicit OrthogonalMatrix(Eigen::MatrixXd q, double tol = kOrthogonalityTol) : q_(std::move(q)) {
        if (q_.rows() != q_.cols() || q_.rows() % 2 != 0 || q_.rows() == 0) {
            throw DomainError("OrthogonalMatrix: expected a square matrix of even size");
        }
        if (orthogonality_error() > tol) {
            throw DomainError("OrthogonalMatrix: |Q^T Q - I|_max exceeds tolerance");
        }
    }

    static OrthogonalMatrix identity(int n_modes) {
        return OrthogonalMatrix(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
    }

    [[nodiscard]] const Eigen::MatrixXd& matrix() const { return q_; }
    [[nodiscard]] int n_modes() const { return static_cast<int>(q_.rows() / 2); }
    /// 1-based entry access.
    [[nodiscard]] double operator()(int row, int col) const { return q_(row - 1, col - 1); }

    [[nodiscard]] double orthogonality_error() const {
        const auto n = q_.rows();
        return (q_.transpose() * q_ - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    }

    [[nodiscard]] double determinant() const { return q_.determinant(); }

  private:
    Eigen::MatrixXd q_;
};

/// Givens matrix g_axis(theta) acting on coordinates (axis - 1, axis).
inline Eigen::MatrixXd givens_matrix(int n_modes, int axis, double theta) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    const auto i = axis - 2;
    const auto j = axis - 1;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    g(i, i) = c;
    g(i, j) = -s;
    g(j, i) = s;
    g(j, j) = c;
    return g;
}

inline OrthogonalMatrix compose_to_matrix(const GivensSequence& seq) {
    const int dim = 2 * seq.n_modes();
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(dim, dim);
    for (const auto& r : seq.rotations()) {
        // Left-multiplying by a Givens matrix only mixes two rows.
        const auto i = r.axis - 2;
        const auto j = r.axis - 1;
        const double c = std::cos(r.angle);
        const double s = std::sin(r.angle);
        const Eigen::RowVectorXd ri = q.row(i);
        const Eigen::RowVectorXd rj = q.row(j);
        q.row(i) = c * ri - s * rj;
        q.row(j) = s * ri + c * rj;
    }
    if (seq.terminal_reflection()) q.row(dim - 1) *= -1.0;
    return OrthogonalMatrix(std::move(q));
}

/// Determinant of the submatrix (Q_{mu_i nu_j}), 1-based index sets.
inline double minor_determinant(const Eigen::MatrixXd& q, std::span<const int> mu,
                                std::span<const int> nu) {
    if (mu.size() != nu.size()) {
        throw DomainError("minor_determinant: index sets differ in size");
    }
    const auto k = static_cast<Eigen::Index>(mu.size());
    if (k == 0) return 1.0;
    Eigen::MatrixXd sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            const int r = mu[static_cast<std::size_t>(a)];
            const int c = nu[static_cast<std::size_t>(b)];
            if (r < 1 || r > q.rows() || c < 1 || c > q.cols()) {
                throw DomainError("minor_determinant: index out of range");
            }
            sub(a, b) = q(r - 1, c - 1);
        }
    }
    switch (k) {
        case 1: return sub(0, 0);
        case 2: return sub(0, 0) * sub(1, 1) - sub(0, 1) * sub(1, 0);
        default: return sub.partialPivLu().determinant();
    }
}

inline double minor_determinant(const OrthogonalMatrix& q, std::span<const int> mu,
                                std::span<const int> nu) {
    return minor_determinant(q.matrix(), mu, nu);
}

/// One-line permutation of [1, m]: p[i - 1] is the image of i.
using Permutation = std::vector<int>;

inline bool is_permutation_of_range(std::span<const int> p) {
    std::vector<char> seen(p.size() + 1, 0);
    for (int v : p) {
        if (v < 1 || v > static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

inline Permutation identity_permutation(int m) {
    Permutation p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    return p;
}

inline int permutation_parity(std::span<const int> p) {
    std::vector<char> seen(p.size(), 0);
    int transpositions = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j] - 1)) {
            seen[j] = 1;
            ++len;
        }
        transpositions += static_cast<int>(len) - 1;
    }
    return transpositions % 2 == 0 ? 1 : -1;
}

/// Generalized permutation matrix Q = D P with Q_{i, perm(i)} = sign(i).
class SignedPermutation {
  public:
    /// Identity on 2n indices.
    explicit SignedPermutation(int n_modes)
        : n_(n_modes), perm_(identity_permutation(2 * n_modes)), signs_(static_cast<std::size_t>(2 * n_modes), 1) {
        if (n_modes < 1 || n_modes > kMaxQubits) {
            throw DomainError("SignedPermutation: mode count out of range");
        }
    }

    SignedPermutation(int n_modes, Permutation perm, std::vector<int> signs)
        : SignedPermutation(n_modes) {
        if (perm.size() != static_cast<std::size_t>(2 * n_modes) || !is_permutation_of_range(perm)) {
            throw DomainError("SignedPermutation: perm is not a bijection on [1, 2n]");
        }
        if (signs.size() != perm.size() ||
            !std::all_of(signs.begin(), signs.end(), [](int s) { return s == 1 || s == -1; })) {
            throw DomainError("SignedPermutation: signs must be +-1, one per index");
        }
        perm_ = std::move(perm);
        signs_ = std::move(signs);
    }

    [[nodiscard]] int n_modes() const { return n_; }
    [[nodiscard]] int size() const { return 2 * n_; }
    [[nodiscard]] const Permutation& perm() const { return perm_; }
    [[nodiscard]] const std::vector<int>& signs() const { return signs_; }
    [[nodiscard]] int image(int i) const { return perm_[static_cast<std::size_t>(i - 1)]; }
    [[nodiscard]] int sign(int i) const { return signs_[static_cast<std::size_t>(i - 1)]; }

    [[nodiscard]] int determinant() const {
        int d = permutation_parity(perm_);
        for (int s : signs_) d *= s;
        return d;
    }

    /// Matrix product (*this) * rhs.
    SignedPermutation operator*(const SignedPermutation& rhs) const {
        if (rhs.n_ != n_) throw DomainError("SignedPermutation: size mismatch");
        Permutation p(perm_.size());
        std::vector<int> s(perm_.size());
        for (std::size_t i = 0; i < perm_.size(); ++i) {
            const auto mid = static_cast<std::size_t>(perm_[i] - 1);
            p[i] = rhs.perm_[mid];
            s[i] = signs_[i] * rhs.signs_[mid];
        }
        return SignedPermutation(n_, std::move(p), std::move(s));
    }

    /// Transpose, which is also the inverse.
    [[nodiscard]] SignedPermutation transpose() const {
        Permutation p(perm_.size());
        std::vector<int> s(perm_.size());
        for (std::size_t i = 0; i < perm_.size(); ++i) {
            const auto j = static_cast<std::size_t>(perm_[i] - 1);
            p[j] = static_cast<int>(i) + 1;
            s[j] = signs_[i];
        }
        return SignedPermutation(n_, std::move(p), std::move(s));
    }

    [[nodiscard]] Eigen::MatrixXd dense() const {
        Eigen::MatrixXd q = Eigen::MatrixXd::Zero(size(), size());
        for (std::size_t i = 0; i < perm_.size(); ++i) {
            q(static_cast<Eigen::Index>(i), perm_[i] - 1) = signs_[i];
        }
        return q;
    }

    friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

  private:
    int n_;
    Permutation perm_;
    std::vector<int> signs_;
};

/// The Majorana image of gamma_mu under Q: U^dag gamma_mu U = sign * gamma_nu.
/// For a signed permutation only one minor det(Q_{mu nu}) is nonzero.
inline std::pair<MajoranaMonomial, int> act_on_monomial(const SignedPermutation& q,
                                                        const MajoranaMonomial& mu) {
    if (q.n_modes() != mu.n_modes()) throw DomainError("act_on_monomial: mode count mismatch");
    std::vector<int> images;
    images.reserve(mu.indices().size());
    int sign = 1;
    for (int i : mu.indices()) {
        images.push_back(q.image(i));
        sign *= q.sign(i);
    }
    auto [parity, nu] = reduce_majorana_product(images);
    return {MajoranaMonomial(mu.n_modes(), std::move(nu)), sign * parity};
}

// ---------------------------------------------------------------------------
// Clifford angles.

enum class CliffordAngle { zero, pi, half_pi, minus_half_pi };

inline std::optional<CliffordAngle> classify_clifford_angle(double theta, double tol = 1e-12) {
    const double t = normalize_angle(theta);
    if (std::abs(t) <= tol) return CliffordAngle::zero;
    if (std::abs(t - kPi) <= tol || std::abs(t + kPi) <= tol) return CliffordAngle::pi;
    if (std::abs(t - kPi / 2) <= tol) return CliffordAngle::half_pi;
    if (std::abs(t + kPi / 2) <= tol) return CliffordAngle::minus_half_pi;
    return std::nullopt;
}

inline double clifford_angle_value(CliffordAngle a) {
    switch (a) {
        case CliffordAngle::zero: return 0.0;
        case CliffordAngle::pi: return kPi;
        case CliffordAngle::half_pi: return kPi / 2;
        case CliffordAngle::minus_half_pi: return -kPi / 2;
    }
    return 0.0;
}

/// Signed permutation of a single Givens rotation at a Clifford angle.
inline SignedPermutation clifford_givens(int n_modes, int axis, CliffordAngle angle) {
    SignedPermutation id(n_modes);
    Permutation p = id.perm();
    std::vector<int> s = id.signs();
    const auto a = static_cast<std::size_t>(axis - 2);
    const auto b = static_cast<std::size_t>(axis - 1);
    switch (angle) {
        case CliffordAngle::zero: break;
        case CliffordAngle::pi:
            s[a] = -1;
            s[b] = -1;
            break;
        case CliffordAngle::half_pi:  // rows: a -> -e_b, b -> +e_a
            std::swap(p[a], p[b]);
            s[a] = -1;
            break;
        case CliffordAngle::minus_half_pi:
            std::swap(p[a], p[b]);
            s[b] = -1;
            break;
    }
    return SignedPermutation(n_modes, std::move(p), std::move(s));
}

/// Reflection gamma_{2n} -> -gamma_{2n}.
inline SignedPermutation last_mode_reflection(int n_modes) {
    SignedPermutation id(n_modes);
    std::vector<int> s = id.signs();
    s.back() = -1;
    return SignedPermutation(n_modes, id.perm(), std::move(s));
}

/// Exact signed permutation of a sequence whose angles are all Clifford.
inline SignedPermutation signed_permutation_of(const GivensSequence& seq) {
    SignedPermutation q(seq.n_modes());
    for (const auto& r : seq.rotations()) {
        const auto a = classify_clifford_angle(r.angle);
        if (!a) {
            throw DomainError("signed_permutation_of: angle " + std::to_string(r.angle) +
                              " on axis " + std::to_string(r.axis) + " is not a Clifford angle");
        }
        q = clifford_givens(seq.n_modes(), r.axis, *a) * q;
    }
    if (seq.terminal_reflection()) q = last_mode_reflection(seq.n_modes()) * q;
    return q;
}

inline bool is_clifford_sequence(const GivensSequence& seq) {
    return std::all_of(seq.rotations().begin(), seq.rotations().end(),
                       [](const GivensRotation& r) { return classify_clifford_angle(r.angle).has_value(); });
}

// ---------------------------------------------------------------------------
// Samplers.

/// Axes of the Hurwitz triangular template in time order:
/// [2], [3, 2], [4, 3, 2], ..., [2n, ..., 2]; n(2n - 1) entries in total.
inline std::vector<int> triangular_template(int n_modes) {
    std::vector<int> axes;
    for (int top = 2; top <= 2 * n_modes; ++top) {
        for (int k = top; k >= 2; --k) axes.push_back(k);
    }
    return axes;
}

/// Angle on (-pi, pi] with density proportional to |sin(theta)|^{k-2}.
///
/// u = cos(theta) has density proportional to (1 - u^2)^{(k-3)/2}, i.e.
/// (u + 1) / 2 ~ Beta((k-1)/2, (k-1)/2); the sign of theta is a fair coin.
template <class URBG>
double sample_angle(int k, URBG& rng) {
    if (k < 2) throw DomainError("sample_angle: k must be >= 2, got " + std::to_string(k));
    const double a = 0.5 * (k - 1);
    std::gamma_distribution<double> gamma(a, 1.0);
    const double x = gamma(rng);
    const double y = gamma(rng);
    const double beta = (x + y) > 0 ? x / (x + y) : 0.5;
    const double u = std::clamp(2.0 * beta - 1.0, -1.0, 1.0);
    const double theta = std::acos(u);  // [0, pi]
    const bool negative = std::bernoulli_distribution(0.5)(rng);
    return normalize_angle(negative ? -theta : theta);
}

/// Sequence whose matrix is Haar-distributed on SO(2n).
template <class URBG>
GivensSequence haar_sequence(int n_modes, URBG& rng) {
    GivensSequence seq(n_modes);
    for (int axis : triangular_template(n_modes)) seq.push_back({axis, sample_angle(axis, rng)});
    return seq;
}

enum class CliffordMode { four_angle, two_angle };

/// Clifford angle for a rotation on `axis`:
///  four_angle: P(0) = P(pi) = 1/(2k), P(+-pi/2) = (k-1)/(2k);
///  two_angle:  P(0) = 1/k, P(pi/2) = (k-1)/k.
template <class URBG>
double sample_clifford_angle(int axis, CliffordMode mode, URBG& rng) {
    const int k = axis;
    if (mode == CliffordMode::four_angle) {
        std::uniform_int_distribution<int> pick(0, 2 * k - 1);
        const int r = pick(rng);
        if (r == 0) return 0.0;
        if (r == 1) return kPi;
        return r < k + 1 ? kPi / 2 : -kPi / 2;
    }
    std::uniform_int_distribution<int> pick(0, k - 1);
    return pick(rng) == 0 ? 0.0 : kPi / 2;
}

template <class URBG>
GivensSequence clifford_sequence(int n_modes, URBG& rng, CliffordMode mode) {
    GivensSequence seq(n_modes);
    for (int axis : triangular_template(n_modes)) {
        seq.push_back({axis, sample_clifford_angle(axis, mode, rng)});
    }
    return seq;
}

/// Toggles the terminal reflection with probability 1/2 (SO(2n) -> O(2n)).
template <class URBG>
GivensSequence add_random_reflection(GivensSequence seq, URBG& rng) {
    if (std::bernoulli_distribution(0.5)(rng)) {
        seq.set_terminal_reflection(!seq.terminal_reflection());
    }
    return seq;
}

}  // namespace mgs
