#include "tucker/model.hpp"

#include <stdexcept>
#include <string>

namespace tucker {

Ranks ranks_of(const FactorSet& a) {
    Ranks r;
    r.reserve(a.size());
    for (const auto& f : a) r.push_back(static_cast<std::size_t>(f.rank()));
    return r;
}

void validate_ranks(const Shape& shape, const Ranks& ranks) {
    if (ranks.size() != shape.size())
        throw std::invalid_argument("expected " + std::to_string(shape.size()) + " ranks, got " +
                                    std::to_string(ranks.size()));
    for (std::size_t n = 0; n < shape.size(); ++n) {
        if (ranks[n] < 1 || ranks[n] > shape[n])
            throw std::out_of_range("rank " + std::to_string(ranks[n]) + " of mode " + std::to_string(n) +
                                    " outside [1, " + std::to_string(shape[n]) + "]");
        std::size_t others = 1;
        for (std::size_t i = 0; i < shape.size(); ++i)
            if (i != n) others *= ranks[i];
        if (ranks[n] > others)
            throw std::out_of_range("rank " + std::to_string(ranks[n]) + " of mode " + std::to_string(n) +
                                    " exceeds the product of the other ranks (" + std::to_string(others) +
                                    ")");
    }
}

void validate_factors(const DenseTensor& x, const FactorSet& a) {
    if (a.size() != x.order())
        throw std::invalid_argument("expected " + std::to_string(x.order()) + " factors, got " +
                                    std::to_string(a.size()));
    for (std::size_t n = 0; n < a.size(); ++n)
        if (static_cast<std::size_t>(a[n].rows()) != x.dim(n))
            throw std::invalid_argument("factor " + std::to_string(n) + " has " + std::to_string(a[n].rows()) +
                                        " rows, mode has size " + std::to_string(x.dim(n)));
}

DenseTensor project_core(const DenseTensor& x, const FactorSet& a) {
    validate_factors(x, a);
    std::vector<ModeProduct> ops;
    ops.reserve(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) ops.push_back({a[n].value().transpose(), n});
    return multi_mode_multiply(x, ops);
}

double objective(const DenseTensor& x, const FactorSet& a) {
    const auto core = project_core(x, a);
    return inner(core, core);
}

Matrix compute_gn(const DenseTensor& x, const FactorSet& a, std::size_t mode) {
    validate_factors(x, a);
    if (mode >= x.order()) throw std::out_of_range("compute_gn: mode out of range");
    std::vector<ModeProduct> ops;
    ops.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (i != mode) ops.push_back({a[i].value().transpose(), i});
    return unfold(multi_mode_multiply(x, ops), mode);
}

DenseTensor reconstruct(const TuckerModel& model) {
    std::vector<Matrix> mats;
    mats.reserve(model.factors.size());
    for (const auto& f : model.factors) mats.push_back(f.value());
    return tucker_reconstruct(model.core, mats);
}

}  // namespace tucker
