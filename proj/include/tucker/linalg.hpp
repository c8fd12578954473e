#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tucker/tensor.hpp"

namespace tucker {

/// Numerical constants shared by the dense kernels.
struct KernelConfig {
    /// Jacobi sweeps before svd() gives up.
    static constexpr int max_jacobi_sweeps = 100;
    /// Columns with norm at or below this fraction of ||input||_F are treated as
    /// numerically zero: they are skipped by rotations and their singular
    /// vectors come from an orthonormal completion.
    static constexpr double negligible_column = 1e-14;
    /// QR flags rank deficiency when min |R_jj| <= rank_tol * ||b||_F.
    static constexpr double rank_tol = 1e-12;
    /// u^T x counts as singular when its smallest singular value is at or below this.
    static constexpr double overlap_tol = 1e-12;
    /// Tolerance on ||A^T A - I||_F accepted by OrthonormalFactor.
    static constexpr double orthonormal_tol = 1e-10;
};

class SvdNonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RankDeficiency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Full SVD: input = U * diag(sigma) * V^T with U (m x m) and V (p x p)
/// orthogonal and sigma (min(m,p) entries) descending. In each column of U the
/// entry of largest magnitude (first on ties) is nonnegative; the paired V
/// column is flipped with it.
struct SvdResult {
    Matrix u;
    Eigen::VectorXd sigma;
    Matrix v;
};

/// A matrix with orthonormal columns, i.e. a point on the Stiefel manifold.
class OrthonormalFactor {
public:
    /// Throws std::invalid_argument when ||value^T value - I||_F exceeds the tolerance.
    explicit OrthonormalFactor(Matrix value);

    [[nodiscard]] const Matrix& value() const { return value_; }
    [[nodiscard]] Eigen::Index rows() const { return value_.rows(); }
    [[nodiscard]] Eigen::Index rank() const { return value_.cols(); }

    /// Projector A A^T, materialized. Only for small dimensions.
    [[nodiscard]] Matrix projector() const { return value_ * value_.transpose(); }

private:
    Matrix value_;
};

struct SubspaceResult {
    OrthonormalFactor basis;
    /// sigma_r - sigma_{r+1}, with sigma_{r+1} = 0 when r = min(m, p).
    double gap;
    bool degenerate;
    /// All min(m, p) singular values of the input, descending.
    Eigen::VectorXd sigma;
};

struct PolarResult {
    Matrix value;
    /// Smallest singular value of u^T x.
    double min_overlap_sigma;
    bool overlap_singular;
};

SvdResult svd(const Matrix& m);

/// Singular values only, descending.
Eigen::VectorXd singular_values(const Matrix& m);

/// Leading r left singular vectors with the singular-value gap after them.
SubspaceResult leading_left_subspace(const Matrix& y, std::size_t r, double gap_tol);

/// Thin QR with positive R diagonal; returns Q.
OrthonormalFactor qr_orthonormalize(const Matrix& b);

/// Rotation of span(u) closest to x: with u^T x = Ub Sb Vb^T, returns u Ub Vb^T.
PolarResult polar_align(const OrthonormalFactor& u, const Matrix& x);

Matrix kronecker(const Matrix& a, const Matrix& b);

double nuclear_norm(const Matrix& m);

/// ||a^T a - I||_F.
double orthonormality_error(const Matrix& a);

}  // namespace tucker
