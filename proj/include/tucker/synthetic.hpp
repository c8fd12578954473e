#pragma once

#include <cstdint>
#include <random>

#include "tucker/model.hpp"

namespace tucker {

/// rows x cols matrix of standard-normal draws, filled column by column.
Matrix random_normal(std::mt19937_64& rng, std::size_t rows, std::size_t cols);

/// Q factor of random_normal(rng, rows, cols).
OrthonormalFactor random_orthonormal(std::mt19937_64& rng, std::size_t rows, std::size_t cols);

struct SyntheticTensor {
    /// signal + noise.
    DenseTensor data;
    /// Noiseless C x_1 A_1 ... x_N A_N.
    DenseTensor signal;
    /// The planted core and orthonormal factors.
    TuckerModel planted;
};

/// Standard-normal core of size `ranks`, orthonormal factors from the QR of
/// standard-normal matrices, plus i.i.d. Gaussian noise rescaled so that
/// ||noise||_F = noise_level * ||signal||_F. Deterministic in `seed`.
SyntheticTensor gen_synthetic(const Shape& shape, const Ranks& ranks, double noise_level, std::uint64_t seed);

}  // namespace tucker
