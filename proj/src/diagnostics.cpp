#include "tucker/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tucker {

namespace {

void check_matching(const FactorSet& a, const FactorSet& b) {
    if (a.size() != b.size()) throw std::invalid_argument("factor sets differ in length");
    for (std::size_t n = 0; n < a.size(); ++n)
        if (a[n].rows() != b[n].rows() || a[n].rank() != b[n].rank())
            throw std::invalid_argument("factor sets differ in shape at mode " + std::to_string(n));
}

}  // namespace

KktReport kkt_residual(const DenseTensor& x, const FactorSet& a) {
    validate_factors(x, a);
    KktReport rep;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const Matrix& an = a[n].value();
        const Matrix g = compute_gn(x, a, n);
        const Matrix m = g * (g.transpose() * an);
        const double grad = (m - an * (an.transpose() * m)).norm();
        const double feas = orthonormality_error(an);
        rep.gradient.push_back(grad);
        rep.gradient_normalized.push_back(grad / (1.0 + m.norm()));
        rep.feasibility.push_back(feas);
        rep.aggregate = std::max({rep.aggregate, grad, feas});
        rep.aggregate_normalized = std::max({rep.aggregate_normalized, rep.gradient_normalized.back(), feas});
    }
    return rep;
}

ProjectorDistance projector_distance(const FactorSet& a, const FactorSet& b) {
    check_matching(a, b);
    ProjectorDistance d;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const Matrix& an = a[n].value();
        const Matrix& bn = b[n].value();
        // For orthonormal A, B of equal rank: ||AA^T - BB^T||_F^2 = 2 ||(I - BB^T) A||_F^2.
        // Identical factors skip the product so the distance is exactly zero.
        const double dist = an == bn ? 0.0 : std::sqrt(2.0) * (an - bn * (bn.transpose() * an)).norm();
        d.per_mode.push_back(dist);
        d.total += dist;
    }
    return d;
}

double subspace_rel_change(const FactorSet& prev, const FactorSet& curr) {
    const auto d = projector_distance(prev, curr);
    double denom = 0.0;
    // ||A A^T||_F = ||A^T A||_F, which is sqrt(r) for orthonormal A.
    for (const auto& f : prev) denom += (f.value().transpose() * f.value()).norm();
    return d.total / denom;
}

std::vector<double> nondegeneracy_gaps(const DenseTensor& x, const FactorSet& a) {
    validate_factors(x, a);
    std::vector<double> gaps;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const auto sigma = singular_values(compute_gn(x, a, n));
        const auto r = static_cast<Eigen::Index>(a[n].rank());
        if (r > sigma.size())
            throw std::invalid_argument("nondegeneracy_gaps: rank exceeds min dimension of G_n");
        const double next = r < sigma.size() ? sigma(r) : 0.0;
        gaps.push_back(sigma(r - 1) - next);
    }
    return gaps;
}

}  // namespace tucker
