#include "tucker/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace tucker {

Matrix random_normal(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> normal;
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = normal(rng);
    return m;
}

OrthonormalFactor random_orthonormal(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    return qr_orthonormalize(random_normal(rng, rows, cols));
}

SyntheticTensor gen_synthetic(const Shape& shape, const Ranks& ranks, double noise_level, std::uint64_t seed) {
    if (ranks.size() != shape.size()) throw std::invalid_argument("gen_synthetic: ranks and shape differ in length");
    for (std::size_t n = 0; n < shape.size(); ++n)
        if (ranks[n] < 1 || ranks[n] > shape[n])
            throw std::out_of_range("gen_synthetic: rank " + std::to_string(ranks[n]) + " exceeds dimension " +
                                    std::to_string(shape[n]) + " of mode " + std::to_string(n));
    if (!(noise_level >= 0.0) || !std::isfinite(noise_level))
        throw std::invalid_argument("gen_synthetic: noise level must be finite and >= 0");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;

    DenseTensor core(ranks);
    for (auto& v : core.data()) v = normal(rng);

    FactorSet factors;
    std::vector<Matrix> mats;
    for (std::size_t n = 0; n < shape.size(); ++n) {
        factors.push_back(random_orthonormal(rng, shape[n], ranks[n]));
        mats.push_back(factors.back().value());
    }
    DenseTensor signal = tucker_reconstruct(core, mats);
    DenseTensor data = signal;

    if (noise_level > 0.0) {
        DenseTensor noise(shape);
        for (auto& v : noise.data()) v = normal(rng);
        const double scale = noise_level * fro_norm(signal) / fro_norm(noise);
        auto out = data.data();
        const auto e = noise.data();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * e[i];
    }
    return {std::move(data), std::move(signal), {std::move(core), std::move(factors)}};
}

}  // namespace tucker
