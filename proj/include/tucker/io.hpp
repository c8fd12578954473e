#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tucker/model.hpp"
#include "tucker/tensor.hpp"

namespace tucker {

/// Malformed tensor file. what() starts with one of "bad magic",
/// "truncated payload", "non-finite payload", "shape overflow", "bad shape".
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Binary layout, all little-endian: "DNT1", u32 mode count, u64 per mode,
/// then the f64 payload with mode 1 fastest.
void write_tensor(const DenseTensor& t, std::ostream& out);
DenseTensor read_tensor(std::istream& in);

void write_tensor_file(const DenseTensor& t, const std::filesystem::path& path);
DenseTensor read_tensor_file(const std::filesystem::path& path);

/// Stores a matrix as an order-2 tensor.
DenseTensor matrix_as_tensor(const Matrix& m);
Matrix tensor_as_matrix(const DenseTensor& t);

/// Writes <prefix>.core.dnt and <prefix>.factor<n>.dnt (n from 0).
void write_model(const TuckerModel& model, const std::string& prefix);
TuckerModel read_model(const std::string& prefix, std::size_t order);

/// FNV-1a 64 over the serialized tensor, as "fnv1a64:<16 hex digits>".
std::string tensor_digest(const DenseTensor& t);

}  // namespace tucker
