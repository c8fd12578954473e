#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tucker/linalg.hpp"
#include "tucker/tensor.hpp"

namespace tucker {

/// One orthonormal factor per tensor mode.
using FactorSet = std::vector<OrthonormalFactor>;

using Ranks = std::vector<std::size_t>;

Ranks ranks_of(const FactorSet& a);

/// Checks 1 <= r_n <= I_n and r_n <= prod_{i != n} r_i for every mode.
void validate_ranks(const Shape& shape, const Ranks& ranks);

/// Checks that `a` has one factor per mode with I_n rows.
void validate_factors(const DenseTensor& x, const FactorSet& a);

struct TuckerModel {
    DenseTensor core;
    FactorSet factors;
};

/// X x_1 A_1^T ... x_N A_N^T.
DenseTensor project_core(const DenseTensor& x, const FactorSet& a);

/// F(A) = ||X x_1 A_1^T ... x_N A_N^T||_F^2.
double objective(const DenseTensor& x, const FactorSet& a);

/// G_n = unfold_n(X x_{i != n} A_i^T), shape I_n x prod_{i != n} r_i. Whatever
/// factors are in `a` are used, so inside a sweep the caller passes the
/// partially updated set (new factors for i < n, old for i > n).
Matrix compute_gn(const DenseTensor& x, const FactorSet& a, std::size_t mode);

DenseTensor reconstruct(const TuckerModel& model);

}  // namespace tucker
