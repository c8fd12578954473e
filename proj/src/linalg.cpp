#include "tucker/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace tucker {

namespace {

using Index = Eigen::Index;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// One-sided (Hestenes) Jacobi. Rotates the columns of `b` until they are
// pairwise orthogonal, accumulating the rotations so that b_in * rot = b_out.
void orthogonalize_columns(Matrix& b, Matrix& rot) {
    const Index k = b.cols();
    rot = Matrix::Identity(k, k);
    const double negligible = KernelConfig::negligible_column * b.norm();
    const double tol = kEps * std::sqrt(static_cast<double>(std::max<Index>(b.rows(), 1)));

    for (int sweep = 0; sweep < KernelConfig::max_jacobi_sweeps; ++sweep) {
        bool rotated = false;
        for (Index p = 0; p + 1 < k; ++p) {
            for (Index q = p + 1; q < k; ++q) {
                const double alpha = b.col(p).squaredNorm();
                const double beta = b.col(q).squaredNorm();
                const double na = std::sqrt(alpha);
                const double nb = std::sqrt(beta);
                if (na <= negligible || nb <= negligible) continue;
                const double gamma = b.col(p).dot(b.col(q));
                if (std::abs(gamma) <= tol * na * nb) continue;
                rotated = true;

                const double zeta = (beta - alpha) / (2.0 * gamma);
                double t;
                if (std::abs(zeta) > 1e150) {
                    t = 0.5 / zeta;
                } else {
                    t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                Eigen::VectorXd bp = b.col(p);
                b.col(p) = c * bp - s * b.col(q);
                b.col(q) = s * bp + c * b.col(q);
                Eigen::VectorXd rp = rot.col(p);
                rot.col(p) = c * rp - s * rot.col(q);
                rot.col(q) = s * rp + c * rot.col(q);
            }
        }
        if (!rotated) return;
    }
    throw SvdNonConvergence("svd: one-sided Jacobi did not converge within " +
                            std::to_string(KernelConfig::max_jacobi_sweeps) + " sweeps");
}

// Square orthogonal matrix whose column i is cols(:, order[i]) / norms[order[i]]
// for non-negligible columns; the remaining columns are an orthonormal completion
// chosen greedily from the standard basis.
Matrix normalized_basis(const Matrix& cols, const std::vector<Index>& order,
                        const Eigen::VectorXd& norms, double negligible) {
    const Index len = cols.rows();
    Matrix q = Matrix::Zero(len, len);
    std::vector<bool> filled(static_cast<std::size_t>(len), false);
    for (std::size_t i = 0; i < order.size() && static_cast<Index>(i) < len; ++i) {
        const Index src = order[i];
        if (norms(src) > negligible) {
            q.col(static_cast<Index>(i)) = cols.col(src) / norms(src);
            filled[i] = true;
        }
    }
    for (Index i = 0; i < len; ++i) {
        if (filled[static_cast<std::size_t>(i)]) continue;
        // Residual of e_j against span(q) has squared norm 1 - ||q(j, :)||^2.
        const Eigen::VectorXd leverage = q.rowwise().squaredNorm();
        Index best = 0;
        for (Index j = 1; j < len; ++j)
            if (leverage(j) < leverage(best)) best = j;
        Eigen::VectorXd v = Eigen::VectorXd::Unit(len, best);
        for (int pass = 0; pass < 2; ++pass) v -= q * (q.transpose() * v);
        q.col(i) = v / v.norm();
        filled[static_cast<std::size_t>(i)] = true;
    }
    return q;
}

// Index of the entry with the largest magnitude, first on ties.
Index pivot_index(const Eigen::Ref<const Eigen::VectorXd>& v) {
    Index best = 0;
    for (Index i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(best))) best = i;
    return best;
}

struct Factorization {
    Matrix u;
    Eigen::VectorXd sigma;
    Matrix v;
};

Factorization factorize(const Matrix& y, bool want_u, bool want_v) {
    for (Index j = 0; j < y.cols(); ++j)
        for (Index i = 0; i < y.rows(); ++i)
            if (!std::isfinite(y(i, j))) throw std::invalid_argument("svd: non-finite entry");

    const Index m = y.rows();
    const Index p = y.cols();
    const bool wide = m <= p;
    const Index k = std::min(m, p);

    Matrix b = wide ? Matrix(y.transpose()) : y;
    Matrix rot;
    orthogonalize_columns(b, rot);

    const Eigen::VectorXd norms = b.colwise().norm().transpose();
    std::vector<Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index c) { return norms(a) > norms(c); });

    Factorization f;
    f.sigma.resize(k);
    Matrix rot_sorted(k, k);
    for (Index i = 0; i < k; ++i) {
        f.sigma(i) = norms(order[static_cast<std::size_t>(i)]);
        rot_sorted.col(i) = rot.col(order[static_cast<std::size_t>(i)]);
    }
    const double negligible = KernelConfig::negligible_column * y.norm();

    if (wide) {
        f.u = std::move(rot_sorted);
        if (want_v) f.v = normalized_basis(b, order, norms, negligible);
    } else {
        f.v = std::move(rot_sorted);
        if (want_u) f.u = normalized_basis(b, order, norms, negligible);
    }

    const bool have_u = f.u.size() > 0;
    const bool have_v = f.v.size() > 0;
    if (have_u) {
        for (Index i = 0; i < f.u.cols(); ++i) {
            if (f.u(pivot_index(f.u.col(i)), i) < 0.0) {
                f.u.col(i) *= -1.0;
                if (have_v && i < k) f.v.col(i) *= -1.0;
            }
        }
    }
    if (have_v) {
        const Index first_free = have_u ? k : 0;
        for (Index i = first_free; i < f.v.cols(); ++i)
            if (f.v(pivot_index(f.v.col(i)), i) < 0.0) f.v.col(i) *= -1.0;
    }
    return f;
}

}  // namespace

double orthonormality_error(const Matrix& a) {
    return (a.transpose() * a - Matrix::Identity(a.cols(), a.cols())).norm();
}

OrthonormalFactor::OrthonormalFactor(Matrix value) : value_(std::move(value)) {
    if (value_.cols() < 1 || value_.cols() > value_.rows())
        throw std::invalid_argument("orthonormal factor must satisfy 1 <= cols <= rows");
    const double err = orthonormality_error(value_);
    if (!(err <= KernelConfig::orthonormal_tol))
        throw std::invalid_argument("matrix columns are not orthonormal (||A^T A - I||_F = " +
                                    std::to_string(err) + ")");
}

SvdResult svd(const Matrix& m) {
    auto f = factorize(m, true, true);
    return {std::move(f.u), std::move(f.sigma), std::move(f.v)};
}

Eigen::VectorXd singular_values(const Matrix& m) { return factorize(m, false, false).sigma; }

SubspaceResult leading_left_subspace(const Matrix& y, std::size_t r, double gap_tol) {
    const auto k = static_cast<std::size_t>(std::min(y.rows(), y.cols()));
    if (r < 1 || r > k)
        throw std::out_of_range("leading_left_subspace: rank " + std::to_string(r) +
                                " outside [1, " + std::to_string(k) + "]");
    if (gap_tol < 0.0) throw std::invalid_argument("leading_left_subspace: gap_tol must be >= 0");
    auto f = factorize(y, true, false);
    const auto ri = static_cast<Index>(r);
    const double next = r < k ? f.sigma(ri) : 0.0;
    const double gap = f.sigma(ri - 1) - next;
    return {OrthonormalFactor(f.u.leftCols(ri)), gap, gap <= gap_tol, std::move(f.sigma)};
}

OrthonormalFactor qr_orthonormalize(const Matrix& b) {
    const Index m = b.rows();
    const Index r = b.cols();
    if (r < 1 || r > m) throw RankDeficiency("qr_orthonormalize: need 1 <= cols <= rows");
    const double threshold = KernelConfig::rank_tol * b.norm();
    Matrix q(m, r);
    for (Index j = 0; j < r; ++j) {
        Eigen::VectorXd v = b.col(j);
        // Classical Gram-Schmidt applied twice keeps Q orthonormal to working precision.
        for (int pass = 0; pass < 2; ++pass) v -= q.leftCols(j) * (q.leftCols(j).transpose() * v);
        const double rjj = v.norm();
        if (!(rjj > threshold))
            throw RankDeficiency("qr_orthonormalize: column " + std::to_string(j) +
                                 " is numerically dependent (|R_jj| = " + std::to_string(rjj) + ")");
        q.col(j) = v / rjj;
    }
    return OrthonormalFactor(std::move(q));
}

PolarResult polar_align(const OrthonormalFactor& u, const Matrix& x) {
    if (u.rows() != x.rows() || u.rank() != x.cols())
        throw std::invalid_argument("polar_align: shape mismatch");
    const Matrix overlap = u.value().transpose() * x;
    const auto s = svd(overlap);
    const double smin = s.sigma(s.sigma.size() - 1);
    return {u.value() * (s.u * s.v.transpose()), smin, smin <= KernelConfig::overlap_tol};
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double nuclear_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return singular_values(m).sum();
}

}  // namespace tucker
