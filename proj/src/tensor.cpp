#include "tucker/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tucker {

namespace {

using ConstMap = Eigen::Map<const Matrix>;
using MutMap = Eigen::Map<Matrix>;

// Splits a shape around `mode` into (left, dim, right) volumes.
struct Split {
    std::size_t left = 1;
    std::size_t dim = 1;
    std::size_t right = 1;
};

Split split_at(const Shape& shape, std::size_t mode) {
    Split s;
    for (std::size_t k = 0; k < shape.size(); ++k) {
        if (k < mode) s.left *= shape[k];
        else if (k > mode) s.right *= shape[k];
        else s.dim = shape[k];
    }
    return s;
}

void check_mode(const Shape& shape, std::size_t mode) {
    if (mode >= shape.size())
        throw std::out_of_range("mode " + std::to_string(mode) + " out of range for order " +
                                std::to_string(shape.size()));
}

}  // namespace

std::size_t shape_volume(std::span<const std::size_t> shape) {
    std::size_t v = 1;
    for (auto d : shape) {
        if (d != 0 && v > std::numeric_limits<std::size_t>::max() / d)
            throw std::overflow_error("shape overflow");
        v *= d;
    }
    return v;
}

DenseTensor::DenseTensor(Shape shape) : DenseTensor(shape, std::vector<double>(shape_volume(shape), 0.0)) {}

DenseTensor::DenseTensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_.empty()) throw std::invalid_argument("tensor must have at least one mode");
    for (auto d : shape_)
        if (d == 0) throw std::invalid_argument("tensor dimensions must be positive");
    if (data_.size() != shape_volume(shape_))
        throw std::invalid_argument("data length " + std::to_string(data_.size()) +
                                    " does not match shape volume " +
                                    std::to_string(shape_volume(shape_)));
}

std::size_t DenseTensor::offset(std::span<const std::size_t> index) const {
    if (index.size() != shape_.size()) throw std::invalid_argument("index arity mismatch");
    std::size_t off = 0;
    std::size_t stride = 1;
    for (std::size_t k = 0; k < shape_.size(); ++k) {
        if (index[k] >= shape_[k]) throw std::out_of_range("tensor index out of range");
        off += index[k] * stride;
        stride *= shape_[k];
    }
    return off;
}

double& DenseTensor::operator()(std::span<const std::size_t> index) { return data_[offset(index)]; }

double DenseTensor::operator()(std::span<const std::size_t> index) const { return data_[offset(index)]; }

bool DenseTensor::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix unfold(const DenseTensor& t, std::size_t mode) {
    check_mode(t.shape(), mode);
    const auto s = split_at(t.shape(), mode);
    const auto li = static_cast<Eigen::Index>(s.left);
    const auto di = static_cast<Eigen::Index>(s.dim);
    Matrix out(di, li * static_cast<Eigen::Index>(s.right));
    if (s.left == 1) {
        out = ConstMap(t.data().data(), di, out.cols());
        return out;
    }
    // Slab r is the left x dim matrix t(:, :, r); its transpose fills columns [r*left, (r+1)*left).
    for (std::size_t r = 0; r < s.right; ++r) {
        ConstMap slab(t.data().data() + r * s.left * s.dim, li, di);
        out.middleCols(static_cast<Eigen::Index>(r) * li, li) = slab.transpose();
    }
    return out;
}

DenseTensor fold(const Matrix& m, std::size_t mode, const Shape& shape) {
    check_mode(shape, mode);
    const auto s = split_at(shape, mode);
    if (static_cast<std::size_t>(m.rows()) != s.dim ||
        static_cast<std::size_t>(m.cols()) != s.left * s.right)
        throw std::invalid_argument("fold: matrix dimensions do not match target shape");
    DenseTensor t(shape);
    const auto li = static_cast<Eigen::Index>(s.left);
    const auto di = static_cast<Eigen::Index>(s.dim);
    for (std::size_t r = 0; r < s.right; ++r) {
        MutMap slab(t.data().data() + r * s.left * s.dim, li, di);
        slab = m.middleCols(static_cast<Eigen::Index>(r) * li, li).transpose();
    }
    return t;
}

DenseTensor mode_multiply(const DenseTensor& t, const Matrix& y, std::size_t mode) {
    check_mode(t.shape(), mode);
    const auto s = split_at(t.shape(), mode);
    if (static_cast<std::size_t>(y.cols()) != s.dim)
        throw std::invalid_argument("mode_multiply: matrix has " + std::to_string(y.cols()) +
                                    " columns, mode " + std::to_string(mode) + " has size " +
                                    std::to_string(s.dim));
    Shape out_shape = t.shape();
    out_shape[mode] = static_cast<std::size_t>(y.rows());
    DenseTensor out(out_shape);

    const auto li = static_cast<Eigen::Index>(s.left);
    const auto di = static_cast<Eigen::Index>(s.dim);
    const auto ji = y.rows();
    if (s.left == 1) {
        const auto ri = static_cast<Eigen::Index>(s.right);
        MutMap(out.data().data(), ji, ri).noalias() = y * ConstMap(t.data().data(), di, ri);
        return out;
    }
    const Matrix yt = y.transpose();
    for (std::size_t r = 0; r < s.right; ++r) {
        ConstMap in(t.data().data() + r * s.left * s.dim, li, di);
        MutMap res(out.data().data() + r * s.left * static_cast<std::size_t>(ji), li, ji);
        res.noalias() = in * yt;
    }
    return out;
}

DenseTensor multi_mode_multiply(const DenseTensor& t, std::span<const ModeProduct> ops) {
    std::vector<std::size_t> order(ops.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<bool> seen(t.order(), false);
    for (const auto& op : ops) {
        check_mode(t.shape(), op.mode);
        if (seen[op.mode])
            throw std::invalid_argument("multi_mode_multiply: duplicate mode " + std::to_string(op.mode));
        seen[op.mode] = true;
        if (static_cast<std::size_t>(op.matrix.cols()) != t.dim(op.mode))
            throw std::invalid_argument("multi_mode_multiply: dimension mismatch on mode " +
                                        std::to_string(op.mode));
    }
    auto ratio = [&](std::size_t i) {
        return static_cast<double>(ops[i].matrix.rows()) / static_cast<double>(ops[i].matrix.cols());
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ratio(a) != ratio(b)) return ratio(a) < ratio(b);
        return ops[a].mode < ops[b].mode;
    });

    if (order.empty()) return t;
    DenseTensor cur = mode_multiply(t, ops[order[0]].matrix, ops[order[0]].mode);
    for (std::size_t i = 1; i < order.size(); ++i)
        cur = mode_multiply(cur, ops[order[i]].matrix, ops[order[i]].mode);
    return cur;
}

double inner(const DenseTensor& a, const DenseTensor& b) {
    if (a.shape() != b.shape()) throw std::invalid_argument("inner: shape mismatch");
    double acc = 0.0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) acc += da[i] * db[i];
    return acc;
}

double fro_norm(const DenseTensor& t) { return std::sqrt(inner(t, t)); }

DenseTensor tucker_reconstruct(const DenseTensor& core, std::span<const Matrix> factors) {
    if (factors.size() != core.order())
        throw std::invalid_argument("tucker_reconstruct: need one factor per core mode");
    std::vector<ModeProduct> ops;
    ops.reserve(factors.size());
    for (std::size_t n = 0; n < factors.size(); ++n) {
        if (static_cast<std::size_t>(factors[n].cols()) != core.dim(n))
            throw std::invalid_argument("tucker_reconstruct: factor " + std::to_string(n) +
                                        " column count does not match core");
        ops.push_back({factors[n], n});
    }
    return multi_mode_multiply(core, ops);
}

}  // namespace tucker
