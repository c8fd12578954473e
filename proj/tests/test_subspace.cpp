#include <gtest/gtest.h>

#include <numbers>

#include "support/gen.hpp"
#include "tucker/subspace.hpp"

using namespace tucker;

namespace {

Matrix diag2(double a, double b) {
    Matrix y = Matrix::Zero(2, 2);
    y(0, 0) = a;
    y(1, 1) = b;
    return y;
}

OrthonormalFactor col(double a, double b) {
    Matrix x(2, 1);
    x << a, b;
    return OrthonormalFactor(x);
}

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

TEST(GreedyProject, DiagonalWithDiagonalStart) {
    const auto g = greedy_project(diag2(3, 1), 1, col(kInvSqrt2, kInvSqrt2), 1e-10);
    EXPECT_LE((g.z.value() - Matrix::Identity(2, 1)).norm(), 1e-15);
    EXPECT_DOUBLE_EQ(g.gap, 2.0);
    EXPECT_TRUE(g.unique);
    EXPECT_FALSE(g.overlap_singular);
}

TEST(GreedyProject, OrthogonalStartIsFlagged) {
    const auto g = greedy_project(diag2(3, 1), 1, col(0, 1), 1e-10);
    EXPECT_LE((g.z.value() - Matrix::Identity(2, 1)).norm(), 1e-15);
    EXPECT_TRUE(g.overlap_singular);
    EXPECT_FALSE(g.unique);
}

TEST(GreedyProject, TieIsNotUnique) {
    const auto g = greedy_project(Matrix::Identity(2, 2), 1, col(kInvSqrt2, kInvSqrt2), 1e-10);
    EXPECT_EQ(g.gap, 0.0);
    EXPECT_FALSE(g.unique);
    EXPECT_LE(orthonormality_error(g.z.value()), 1e-12);
}

TEST(GreedyProject, RankOutOfRange) {
    EXPECT_THROW(greedy_project(diag2(3, 1), 3, OrthonormalFactor(Matrix::Identity(2, 2)), 0.0), std::out_of_range);
    EXPECT_THROW(greedy_project(diag2(3, 1), 1, OrthonormalFactor(Matrix::Identity(3, 1)), 0.0), std::invalid_argument);
}

TEST(GreedyProject, LeadingBasisIsAFixedPoint) {
    testgen::Rng rng(201);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = static_cast<Eigen::Index>(rng.index(2, 9));
        const auto p = static_cast<Eigen::Index>(rng.index(2, 9));
        const auto k = std::min(m, p);
        const auto r = static_cast<Eigen::Index>(rng.index(1, k));
        const Matrix u = testgen::orthonormal(rng, m, k), v = testgen::orthonormal(rng, p, k);
        Eigen::VectorXd s(k);
        for (Eigen::Index i = 0; i < k; ++i) s(i) = static_cast<double>(k - i);
        const Matrix y = u * s.asDiagonal() * v.transpose();
        const OrthonormalFactor x(u.leftCols(r) * testgen::orthonormal(rng, r, r));
        EXPECT_LE((greedy_project(y, static_cast<std::size_t>(r), x, 1e-10).z.value() - x.value()).norm(), 1e-10);
    }
}

TEST(GreedyProject, MembershipIdempotenceAndBasisInvariance) {
    testgen::Rng rng(202);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = static_cast<Eigen::Index>(rng.index(2, 9));
        const auto p = static_cast<Eigen::Index>(rng.index(2, 9));
        const auto r = static_cast<Eigen::Index>(rng.index(1, std::min(m, p)));
        const Matrix y = testgen::normal_matrix(rng, m, p);
        const OrthonormalFactor x(testgen::orthonormal(rng, m, r));
        const auto g = greedy_project(y, static_cast<std::size_t>(r), x, 1e-10);
        const auto ref = testgen::reference_singular_values(y);
        EXPECT_LE(testgen::rel_err((g.z.value().transpose() * y).squaredNorm(), ref.head(r).squaredNorm()), 1e-9);
        EXPECT_LE(orthonormality_error(g.z.value()), 1e-10);
        if (g.gap <= 1e-6 || g.overlap_singular) continue;

        EXPECT_LE((greedy_project(y, static_cast<std::size_t>(r), g.z, 1e-10).z.value() - g.z.value()).norm(), 1e-10);

        const Matrix u = leading_left_subspace(y, static_cast<std::size_t>(r), 0.0).basis.value();
        const Matrix q = testgen::orthonormal(rng, r, r);
        EXPECT_LE((polar_align(OrthonormalFactor(u * q), x.value()).value - g.z.value()).norm(), 1e-10);
    }
}

TEST(GreedyProject, BruteForceSphereOracle) {
    // m = 3, r = 1: scan the unit sphere, keep near-maximizers of ||z^T y||^2,
    // then take the one closest to x.
    testgen::Rng rng(203);
    constexpr int kPoints = 200000;
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix u = testgen::orthonormal(rng, 3, 3), v = testgen::orthonormal(rng, 4, 3);
        const Matrix y = u * Eigen::Vector3d(3.0, 2.0, 1.0).asDiagonal() * v.transpose();
        const Matrix x = testgen::unit_vector(rng, 3);
        const Matrix yyt = y * y.transpose();
        double best_value = 0.0;
        std::vector<std::pair<Eigen::Vector3d, double>> pts;
        pts.reserve(kPoints);
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < kPoints; ++i) {
            const double zc = 1.0 - 2.0 * (i + 0.5) / kPoints;
            const double rad = std::sqrt(1.0 - zc * zc);
            const Eigen::Vector3d z(rad * std::cos(golden * i), rad * std::sin(golden * i), zc);
            const double val = z.dot(yyt * z);
            best_value = std::max(best_value, val);
            pts.emplace_back(z, val);
        }
        Eigen::Vector3d oracle = Eigen::Vector3d::Zero();
        double best_dist = 1e300;
        for (const auto& [z, val] : pts) {
            if (val < best_value * (1 - 1e-4)) continue;
            const double d = (z - x.col(0)).norm();
            if (d < best_dist) {
                best_dist = d;
                oracle = z;
            }
        }
        const auto g = greedy_project(y, 1, OrthonormalFactor(x), 1e-10);
        EXPECT_LE((g.z.value().col(0) - oracle).norm(), 2e-2);
    }
}

TEST(UniquenessReport, Examples) {
    const auto a = uniqueness_report(diag2(3, 1), 1, col(kInvSqrt2, kInvSqrt2), 1e-10);
    EXPECT_TRUE(a.cond1);
    ASSERT_TRUE(a.cond2.has_value());
    EXPECT_TRUE(*a.cond2);

    const auto b = uniqueness_report(Matrix::Identity(2, 2), 1, col(0.6, 0.8), 1e-10);
    EXPECT_FALSE(b.cond2.has_value());
    EXPECT_EQ(b.gap, 0.0);

    EXPECT_FALSE(uniqueness_report(diag2(3, 1), 1, col(0, 1), 1e-10).cond1);
}

TEST(KeyInequality, ZeroAtALeadingBasis) {
    const auto x = col(1, 0);
    EXPECT_NEAR(key_inequality_residual(x, diag2(3, 1), x), 0.0, 1e-10);
}

TEST(KeyInequality, ClosedFormExample) {
    const auto x = col(kInvSqrt2, kInvSqrt2);
    const auto z = col(1, 0);
    // Gain 9 - 5 = 4; bound (9 - 1)/2 * (2 - sqrt 2).
    const double want = 4.0 - 4.0 * (2.0 - std::numbers::sqrt2);
    EXPECT_NEAR(key_inequality_residual(x, diag2(3, 1), z), want, 1e-12);
    EXPECT_NEAR(want, 1.657, 1e-3);
}

TEST(KeyInequality, RejectsNonMaximizer) {
    EXPECT_THROW(key_inequality_residual(col(1, 0), diag2(3, 1), col(0, 1)), NotAMaximizer);
}

TEST(KeyInequality, NonnegativeOnRandomPairs) {
    testgen::Rng rng(204);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const OrthonormalFactor x(testgen::orthonormal(rng, 8, 3));
        const Matrix y = testgen::normal_matrix(rng, 8, 10);
        const auto g = greedy_project(y, 3, x, 0.0);
        if (g.gap <= 1e-8) continue;
        EXPECT_GE(key_inequality_residual(x, y, g.z), -1e-10);
        ++checked;
    }
    EXPECT_GT(checked, 990);
}
