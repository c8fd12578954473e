#include "tucker/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tucker {

namespace {

constexpr double kMembershipTol = 1e-8;

void check_rank(const Matrix& y, std::size_t r, const OrthonormalFactor& x) {
    const auto k = static_cast<std::size_t>(std::min(y.rows(), y.cols()));
    if (r < 1 || r > k)
        throw std::out_of_range("greedy_project: rank " + std::to_string(r) + " outside [1, " +
                                std::to_string(k) + "]");
    if (x.rows() != y.rows() || static_cast<std::size_t>(x.rank()) != r)
        throw std::invalid_argument("greedy_project: x must be " + std::to_string(y.rows()) + " x " +
                                    std::to_string(r));
}

double sigma_after(const Eigen::VectorXd& sigma, std::size_t r) {
    return r < static_cast<std::size_t>(sigma.size()) ? sigma(static_cast<Eigen::Index>(r)) : 0.0;
}

}  // namespace

GreedyResult greedy_project(const Matrix& y, std::size_t r, const OrthonormalFactor& x, double gap_tol) {
    check_rank(y, r, x);
    auto sub = leading_left_subspace(y, r, gap_tol);
    auto polar = polar_align(sub.basis, x.value());

    const auto ri = static_cast<Eigen::Index>(r);
    const double sr = sub.sigma(ri - 1);
    const double sn = sigma_after(sub.sigma, r);
    return {OrthonormalFactor(std::move(polar.value)),
            sub.gap,
            !sub.degenerate && !polar.overlap_singular,
            polar.overlap_singular,
            sr * sr - sn * sn,
            sub.sigma.head(ri).squaredNorm()};
}

UniquenessReport uniqueness_report(const Matrix& y, std::size_t r, const OrthonormalFactor& x, double gap_tol) {
    check_rank(y, r, x);
    const auto sub = leading_left_subspace(y, r, gap_tol);
    const auto overlap = singular_values(sub.basis.value().transpose() * x.value());
    const double smin = overlap(overlap.size() - 1);
    UniquenessReport rep{smin > KernelConfig::overlap_tol, std::nullopt, sub.gap, smin};
    if (!sub.degenerate) rep.cond2 = true;
    return rep;
}

double key_inequality_residual(const OrthonormalFactor& x, const Matrix& y, const OrthonormalFactor& z) {
    if (x.rows() != y.rows() || z.rows() != y.rows() || x.rank() != z.rank())
        throw std::invalid_argument("key_inequality_residual: shape mismatch");
    const auto r = static_cast<std::size_t>(z.rank());
    if (r > static_cast<std::size_t>(std::min(y.rows(), y.cols())))
        throw std::out_of_range("key_inequality_residual: rank exceeds min(rows, cols)");

    const auto sigma = singular_values(y);
    const auto ri = static_cast<Eigen::Index>(r);
    const double optimal = sigma.head(ri).squaredNorm();
    const double z_value = (z.value().transpose() * y).squaredNorm();
    if (std::abs(z_value - optimal) > kMembershipTol * optimal)
        throw NotAMaximizer("key_inequality_residual: z is not a maximizer of ||Z^T Y||_F^2");

    const double x_value = (x.value().transpose() * y).squaredNorm();
    const double sr = sigma(ri - 1);
    const double sn = sigma_after(sigma, r);
    const double lhs = 0.5 * (sr * sr - sn * sn) * (z.value() - x.value()).squaredNorm();
    return (z_value - x_value) - lhs;
}

}  // namespace tucker
