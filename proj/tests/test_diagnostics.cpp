#include <gtest/gtest.h>

#include <numbers>

#include "support/gen.hpp"
#include "tucker/diagnostics.hpp"
#include "tucker/subspace.hpp"

using namespace tucker;

namespace {

FactorSet rotated(testgen::Rng& rng, const FactorSet& a) {
    FactorSet out;
    for (const auto& f : a) out.emplace_back(f.value() * testgen::orthonormal(rng, f.rank(), f.rank()));
    return out;
}

struct RankOneCase {
    DenseTensor x;
    FactorSet a;
};

RankOneCase rank_one_case(std::uint64_t seed, double sigma) {
    testgen::Rng rng(seed);
    const auto u = testgen::unit_vector(rng, 4), v = testgen::unit_vector(rng, 5), w = testgen::unit_vector(rng, 3);
    return {testgen::rank_one(sigma, u, v, w), {OrthonormalFactor(u), OrthonormalFactor(v), OrthonormalFactor(w)}};
}

}  // namespace

TEST(Kkt, RankOneCriticalPoint) {
    const auto c = rank_one_case(401, 3.0);
    const auto k = kkt_residual(c.x, c.a);
    EXPECT_LE(k.aggregate, 1e-10);
    EXPECT_LE(k.aggregate_normalized, 1e-10);
}

TEST(Kkt, FeasibilityAndNormalization) {
    testgen::Rng rng(402);
    const auto x = testgen::normal_tensor(rng, {4, 5, 6});
    const auto a = testgen::orthonormal_factors(rng, x.shape(), {2, 2, 3});
    const auto k = kkt_residual(x, a);
    for (std::size_t n = 0; n < 3; ++n) {
        EXPECT_LE(k.feasibility[n], 1e-10);
        const Matrix g = compute_gn(x, a, n);
        const Matrix b = g * (g.transpose() * a[n].value());
        const Matrix p = a[n].projector();
        const double grad = (b - p * b).norm();
        EXPECT_LE(testgen::rel_err(k.gradient[n], grad), 1e-12);
        EXPECT_LE(testgen::rel_err(k.gradient_normalized[n], grad / (1 + b.norm())), 1e-12);
        EXPECT_GE(k.aggregate, k.gradient[n]);
    }
}

TEST(ProjectorDistance, Examples) {
    testgen::Rng rng(403);
    const auto a = testgen::orthonormal_factors(rng, {5, 4}, {2, 3});
    EXPECT_EQ(projector_distance(a, a).total, 0.0);

    const FactorSet e1{OrthonormalFactor(Matrix::Identity(2, 1))};
    Matrix m(2, 1);
    m << 0, 1;
    const FactorSet e2{OrthonormalFactor(m)};
    EXPECT_NEAR(projector_distance(e1, e2).per_mode[0], std::numbers::sqrt2, 1e-15);

    EXPECT_LE(projector_distance(a, rotated(rng, a)).total, 1e-10);
    EXPECT_THROW(projector_distance(a, e1), std::invalid_argument);
}

TEST(ProjectorDistance, MatchesMaterializedProjectors) {
    testgen::Rng rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        const Shape shape{rng.index(1, 7), rng.index(1, 7)};
        const Ranks ranks{rng.index(1, shape[0]), rng.index(1, shape[1])};
        const auto a = testgen::orthonormal_factors(rng, shape, ranks);
        const auto b = testgen::orthonormal_factors(rng, shape, ranks);
        const auto d = projector_distance(a, b);
        for (std::size_t n = 0; n < 2; ++n)
            EXPECT_NEAR(d.per_mode[n], testgen::materialized_projector_distance(a[n].value(), b[n].value()), 1e-10);
    }
}

TEST(ProjectorDistance, TriangleInequality) {
    testgen::Rng rng(405);
    for (int trial = 0; trial < 100; ++trial) {
        const Shape shape{6, 5, 4};
        const Ranks ranks{2, 2, 3};
        const auto a = testgen::orthonormal_factors(rng, shape, ranks);
        const auto b = testgen::orthonormal_factors(rng, shape, ranks);
        const auto c = testgen::orthonormal_factors(rng, shape, ranks);
        EXPECT_LE(projector_distance(a, c).total,
                  projector_distance(a, b).total + projector_distance(b, c).total + 1e-10);
    }
}

TEST(SubspaceRelChange, Examples) {
    testgen::Rng rng(406);
    const auto a = testgen::orthonormal_factors(rng, {5, 4, 3}, {2, 3, 1});
    EXPECT_EQ(subspace_rel_change(a, a), 0.0);
    EXPECT_LE(subspace_rel_change(a, rotated(rng, a)), 1e-10);

    const FactorSet e1{OrthonormalFactor(Matrix::Identity(2, 1))};
    Matrix m(2, 1);
    m << 0, 1;
    EXPECT_NEAR(subspace_rel_change(e1, {OrthonormalFactor(m)}), std::numbers::sqrt2, 1e-15);
}

TEST(SubspaceRelChange, MatchesMaterializedRatio) {
    testgen::Rng rng(407);
    const Shape shape{5, 4, 3};
    const Ranks ranks{2, 3, 1};
    const auto a = testgen::orthonormal_factors(rng, shape, ranks);
    const auto b = testgen::orthonormal_factors(rng, shape, ranks);
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < 3; ++n) {
        num += testgen::materialized_projector_distance(a[n].value(), b[n].value());
        den += a[n].projector().norm();
    }
    EXPECT_NEAR(subspace_rel_change(a, b), num / den, 1e-12);
    EXPECT_NEAR(den, std::sqrt(2.0) + std::sqrt(3.0) + 1.0, 1e-12);
}

TEST(NondegeneracyGaps, Examples) {
    const auto c = rank_one_case(408, 2.5);
    for (double g : nondegeneracy_gaps(c.x, c.a)) EXPECT_NEAR(g, 2.5, 1e-12);

    const DenseTensor zero({4, 5, 3});
    for (double g : nondegeneracy_gaps(zero, c.a)) EXPECT_EQ(g, 0.0);
}

TEST(Diagnostics, RotationInvariance) {
    testgen::Rng rng(409);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = testgen::normal_tensor(rng, {5, 4, 6});
        const auto a = testgen::orthonormal_factors(rng, x.shape(), {2, 2, 3});
        const auto b = testgen::orthonormal_factors(rng, x.shape(), {2, 2, 3});
        const auto ar = rotated(rng, a);
        const auto k1 = kkt_residual(x, a), k2 = kkt_residual(x, ar);
        const auto g1 = nondegeneracy_gaps(x, a), g2 = nondegeneracy_gaps(x, ar);
        for (std::size_t n = 0; n < 3; ++n) {
            EXPECT_NEAR(k1.gradient[n], k2.gradient[n], 1e-10);
            EXPECT_NEAR(g1[n], g2[n], 1e-10);
        }
        EXPECT_NEAR(projector_distance(a, b).total, projector_distance(ar, b).total, 1e-10);
        EXPECT_NEAR(subspace_rel_change(a, b), subspace_rel_change(ar, b), 1e-10);
    }
}

TEST(Diagnostics, GreedyFixedPointIsCritical) {
    // Alternate greedy updates until every factor is fixed, then check the KKT residual.
    testgen::Rng rng(410);
    const auto x = testgen::normal_tensor(rng, {6, 5, 4});
    auto a = testgen::orthonormal_factors(rng, x.shape(), {2, 2, 2});
    for (int sweep = 0; sweep < 2000; ++sweep) {
        double moved = 0.0;
        for (std::size_t n = 0; n < 3; ++n) {
            auto z = greedy_project(compute_gn(x, a, n), 2, a[n], 0.0).z;
            moved = std::max(moved, (z.value() - a[n].value()).norm());
            a[n] = std::move(z);
        }
        if (moved <= 1e-12) break;
    }
    for (std::size_t n = 0; n < 3; ++n)
        ASSERT_LE((greedy_project(compute_gn(x, a, n), 2, a[n], 0.0).z.value() - a[n].value()).norm(), 1e-9);
    EXPECT_LE(kkt_residual(x, a).aggregate_normalized, 1e-8);
}
