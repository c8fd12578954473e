#pragma once

#include <cstddef>
#include <optional>

#include "tucker/linalg.hpp"

namespace tucker {

/// Solution of  min ||Z - X||_F  over Z in argmax_{Z orthonormal} ||Z^T Y||_F^2.
struct GreedyResult {
    OrthonormalFactor z;
    /// sigma_r(Y) - sigma_{r+1}(Y).
    double gap;
    /// True when the closest maximizer is provably unique: the gap exceeds
    /// gap_tol and u^T x is nonsingular.
    bool unique;
    bool overlap_singular;
    /// sigma_r(Y)^2 - sigma_{r+1}(Y)^2, the curvature constant of the step bound.
    double gap_sq_diff;
    /// sum_{i<=r} sigma_i(Y)^2, the optimal value ||Z^T Y||_F^2.
    double optimal_value;
};

/// Among the maximizers of ||Z^T y||_F^2 over r-column orthonormal Z, returns
/// the one closest to x. On a tie in the singular values (gap <= gap_tol) the
/// computed leading basis is used and the result is flagged non-unique.
GreedyResult greedy_project(const Matrix& y, std::size_t r, const OrthonormalFactor& x, double gap_tol);

struct UniquenessReport {
    /// u^T x nonsingular.
    bool cond1;
    /// Strict nuclear-norm preference for one dominant subspace. Always true when
    /// the dominant subspace is unique; nullopt (undecidable) under a tie.
    std::optional<bool> cond2;
    double gap;
    double min_overlap_sigma;
};

UniquenessReport uniqueness_report(const Matrix& y, std::size_t r, const OrthonormalFactor& x, double gap_tol);

/// Thrown when z does not attain the maximal value of ||Z^T y||_F^2.
class NotAMaximizer : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Slack of the step bound
///   (sigma_r^2 - sigma_{r+1}^2)/2 * ||z - x||^2  <=  ||z^T y||^2 - ||x^T y||^2,
/// returned as right side minus left side. Requires z to be a maximizer
/// (relative tolerance 1e-8), else throws NotAMaximizer.
double key_inequality_residual(const OrthonormalFactor& x, const Matrix& y, const OrthonormalFactor& z);

}  // namespace tucker
