#include "tucker/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "tucker/diagnostics.hpp"
#include "tucker/solvers.hpp"
#include "tucker/subspace.hpp"
#include "tucker/synthetic.hpp"

namespace tucker {

namespace {

std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

void record(CampaignResult& res, double violation, const std::string& what) {
    res.worst_violation = std::max(res.worst_violation, violation);
    if (violation > 0.0) {
        if (res.failures == 0) res.first_failure = what;
        ++res.failures;
    }
}

double trace_inner(const Matrix& a, const Matrix& b) { return (a.array() * b.array()).sum(); }

}  // namespace

CampaignResult campaign_von_neumann(std::size_t trials, std::uint64_t seed) {
    constexpr double tol = 1e-10;
    CampaignResult res;
    res.name = "von_neumann";
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed + t);
        const auto m = uniform_int(rng, 1, 8);
        const auto p = uniform_int(rng, 1, 8);
        const Matrix x = random_normal(rng, m, p);
        const Matrix y = random_normal(rng, m, p);
        const double lhs = std::abs(trace_inner(x, y));
        const double rhs = singular_values(x).dot(singular_values(y));
        ++res.trials;
        record(res, lhs - rhs - tol, fmt::format("trial {}: |<X,Y>| = {} > {}", t, lhs, rhs));
    }
    // Shared singular vectors with both spectra sorted descending attain equality.
    for (std::size_t t = 0; t < std::max<std::size_t>(trials / 10, 1); ++t) {
        std::mt19937_64 rng(seed + trials + t);
        const auto m = uniform_int(rng, 1, 8);
        const auto p = uniform_int(rng, 1, 8);
        const auto k = std::min(m, p);
        const Matrix u = random_orthonormal(rng, m, k).value();
        const Matrix v = random_orthonormal(rng, p, k).value();
        std::uniform_real_distribution<double> unif(0.0, 3.0);
        Eigen::VectorXd a(static_cast<Eigen::Index>(k)), b(static_cast<Eigen::Index>(k));
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            a(i) = unif(rng);
            b(i) = unif(rng);
        }
        std::sort(a.data(), a.data() + a.size(), std::greater<>());
        std::sort(b.data(), b.data() + b.size(), std::greater<>());
        const Matrix x = u * a.asDiagonal() * v.transpose();
        const Matrix y = u * b.asDiagonal() * v.transpose();
        const double lhs = std::abs(trace_inner(x, y));
        const double rhs = singular_values(x).dot(singular_values(y));
        ++res.trials;
        record(res, std::abs(lhs - rhs) - tol, fmt::format("equality case {}: {} vs {}", t, lhs, rhs));
    }
    return res;
}

CampaignResult campaign_key_inequality(std::size_t trials, std::uint64_t seed) {
    constexpr double tol = 1e-10;
    constexpr double min_gap = 1e-6;
    CampaignResult res;
    res.name = "key_inequality";
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed + t);
        const auto x = random_orthonormal(rng, 8, 3);
        Matrix y = random_normal(rng, 8, 10);
        // Redraw Y until the rank-3 gap is testable.
        for (int attempt = 0; attempt < 100; ++attempt) {
            const auto s = singular_values(y);
            if (s(2) - s(3) > min_gap) break;
            y = random_normal(rng, 8, 10);
        }
        ++res.trials;
        const auto g = greedy_project(y, 3, x, 0.0);
        if (!(g.gap > min_gap)) {
            ++res.skipped;
            continue;
        }
        const double slack = key_inequality_residual(x, y, g.z);
        record(res, -slack - tol, fmt::format("trial {}: residual {}", t, slack));
    }
    return res;
}

CampaignResult campaign_fixed_point(std::size_t trials, std::uint64_t seed) {
    constexpr double tol = 1e-10;
    CampaignResult res;
    res.name = "fixed_point";
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed + t);
        const auto m = uniform_int(rng, 2, 10);
        const auto p = uniform_int(rng, 2, 10);
        const auto k = std::min(m, p);
        const auto r = uniform_int(rng, 1, k);
        const Matrix u = random_orthonormal(rng, m, k).value();
        const Matrix v = random_orthonormal(rng, p, k).value();
        // Well-separated spectrum: 1, 1.5, 2, ... in descending order.
        Eigen::VectorXd s(static_cast<Eigen::Index>(k));
        for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = 1.0 + 0.5 * static_cast<double>(s.size() - 1 - i);
        const Matrix y = u * s.asDiagonal() * v.transpose();
        const Matrix q = random_orthonormal(rng, r, r).value();
        const OrthonormalFactor x(u.leftCols(static_cast<Eigen::Index>(r)) * q);
        const auto g = greedy_project(y, r, x, 1e-10);
        const double err = (g.z.value() - x.value()).norm();
        ++res.trials;
        record(res, err - tol, fmt::format("trial {}: ||Z - X||_F = {}", t, err));
    }
    return res;
}

CampaignResult campaign_sweep_equivalence(std::size_t instances, std::uint64_t seed) {
    constexpr double tol = 1e-8;
    constexpr double min_gap = 1e-6;
    constexpr std::size_t sweeps = 20;
    CampaignResult res;
    res.name = "sweep_equivalence";
    for (std::size_t t = 0; t < instances; ++t) {
        const auto syn = gen_synthetic({10, 10, 10}, {3, 3, 3}, 0.1, seed + t);
        const auto start = hosvd_init(syn.data, {3, 3, 3}, 0.0);
        FactorSet hooi = start;
        FactorSet greedy = start;
        ++res.trials;
        bool eligible = true;
        for (std::size_t k = 1; k <= sweeps && eligible; ++k) {
            auto h = sweep_hooi(syn.data, hooi, 0.0);
            auto g = sweep_greedy(syn.data, greedy, 0.0);
            for (std::size_t n = 0; n < h.modes.size(); ++n)
                if (!(*h.modes[n].gap > min_gap) || !(*g.modes[n].gap > min_gap)) eligible = false;
            if (!eligible) break;
            const auto d = projector_distance(h.factors, g.factors);
            const double worst = *std::max_element(d.per_mode.begin(), d.per_mode.end());
            record(res, worst - tol, fmt::format("instance {} sweep {}: projector distance {}", t, k, worst));
            hooi = std::move(h.factors);
            greedy = std::move(g.factors);
        }
        if (!eligible) ++res.skipped;
    }
    return res;
}

std::vector<CampaignResult> run_verification(std::size_t trials, std::uint64_t seed) {
    return {campaign_von_neumann(trials, seed), campaign_key_inequality(trials, seed),
            campaign_fixed_point(std::max<std::size_t>(trials / 5, 1), seed),
            campaign_sweep_equivalence(std::max<std::size_t>(trials / 50, 1), seed)};
}

}  // namespace tucker
