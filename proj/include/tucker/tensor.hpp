#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tucker {

/// Dense column-major real matrix. Unfoldings, factors and Gram blocks all use it.
using Matrix = Eigen::MatrixXd;

using Shape = std::vector<std::size_t>;

/// Product of the entries of `shape`; throws std::overflow_error if it does not fit.
std::size_t shape_volume(std::span<const std::size_t> shape);

/// N-way dense real tensor in generalized column-major order: index i_1 varies
/// fastest, then i_2, and so on. Modes are numbered from 0 in this API.
class DenseTensor {
public:
    /// Zero tensor of the given shape.
    explicit DenseTensor(Shape shape);
    DenseTensor(Shape shape, std::vector<double> data);

    [[nodiscard]] const Shape& shape() const { return shape_; }
    [[nodiscard]] std::size_t order() const { return shape_.size(); }
    [[nodiscard]] std::size_t dim(std::size_t mode) const { return shape_.at(mode); }
    [[nodiscard]] std::size_t size() const { return data_.size(); }

    [[nodiscard]] std::span<const double> data() const { return data_; }
    [[nodiscard]] std::span<double> data() { return data_; }

    [[nodiscard]] double& operator()(std::span<const std::size_t> index);
    [[nodiscard]] double operator()(std::span<const std::size_t> index) const;

    /// Linear offset of a multi-index.
    [[nodiscard]] std::size_t offset(std::span<const std::size_t> index) const;

    [[nodiscard]] bool all_finite() const;

    friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

private:
    Shape shape_;
    std::vector<double> data_;
};

/// Mode-n matricization. Column j of the result is the mode-n fiber whose
/// remaining indices, with smaller mode numbers varying fastest, linearize to j.
Matrix unfold(const DenseTensor& t, std::size_t mode);

/// Inverse of unfold: rebuilds a tensor of `shape` from its mode-n unfolding.
DenseTensor fold(const Matrix& m, std::size_t mode, const Shape& shape);

/// t ×_n y : contracts mode n of t against the columns of y (y.cols() == I_n).
DenseTensor mode_multiply(const DenseTensor& t, const Matrix& y, std::size_t mode);

struct ModeProduct {
    Matrix matrix;
    std::size_t mode;
};

/// Applies several mode products, at most one per mode. Contractions run in
/// ascending order of rows/cols (largest shrink first), ties by mode.
DenseTensor multi_mode_multiply(const DenseTensor& t, std::span<const ModeProduct> ops);

double inner(const DenseTensor& a, const DenseTensor& b);
double fro_norm(const DenseTensor& t);

/// C ×_1 A_1 ... ×_N A_N.
DenseTensor tucker_reconstruct(const DenseTensor& core, std::span<const Matrix> factors);

}  // namespace tucker
