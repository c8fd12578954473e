#include "tucker/io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

namespace tucker {

namespace {

constexpr std::array<char, 4> kMagic{'D', 'N', 'T', '1'};
// Largest payload we are willing to allocate while reading: 2^40 doubles.
constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 40;

template <class T>
void put_le(std::ostream& out, T value) {
    static_assert(std::is_unsigned_v<T>);
    std::array<char, sizeof(T)> bytes{};
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    out.write(bytes.data(), bytes.size());
}

template <class T>
bool get_le(std::istream& in, T& value) {
    std::array<unsigned char, sizeof(T)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (in.gcount() != static_cast<std::streamsize>(bytes.size())) return false;
    value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
    return true;
}

}  // namespace

void write_tensor(const DenseTensor& t, std::ostream& out) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(t.order()));
    for (auto d : t.shape()) put_le<std::uint64_t>(out, d);
    for (double v : t.data()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    if (!out) throw std::runtime_error("write_tensor: stream error");
}

DenseTensor read_tensor(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (in.gcount() != 4 || magic != kMagic) throw FormatError("bad magic");

    std::uint32_t order = 0;
    if (!get_le(in, order)) throw FormatError("truncated payload: missing mode count");
    if (order == 0) throw FormatError("bad shape: zero modes");
    Shape shape;
    std::uint64_t volume = 1;
    for (std::uint32_t n = 0; n < order; ++n) {
        std::uint64_t d = 0;
        if (!get_le(in, d)) throw FormatError("truncated payload: missing shape entry");
        if (d == 0) throw FormatError("bad shape: zero-length mode");
        if (volume > kMaxEntries / d) throw FormatError("shape overflow");
        volume *= d;
        shape.push_back(static_cast<std::size_t>(d));
    }

    std::vector<double> data(static_cast<std::size_t>(volume));
    for (auto& v : data) {
        std::uint64_t bits = 0;
        if (!get_le(in, bits)) throw FormatError("truncated payload");
        v = std::bit_cast<double>(bits);
        if (!std::isfinite(v)) throw FormatError("non-finite payload");
    }
    return DenseTensor(std::move(shape), std::move(data));
}

void write_tensor_file(const DenseTensor& t, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_tensor(t, out);
}

DenseTensor read_tensor_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_tensor(in);
}

DenseTensor matrix_as_tensor(const Matrix& m) {
    std::vector<double> data(m.data(), m.data() + m.size());
    return DenseTensor({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())}, std::move(data));
}

Matrix tensor_as_matrix(const DenseTensor& t) {
    if (t.order() != 2) throw std::invalid_argument("expected an order-2 tensor for a matrix");
    return Eigen::Map<const Matrix>(t.data().data(), static_cast<Eigen::Index>(t.dim(0)),
                                    static_cast<Eigen::Index>(t.dim(1)));
}

void write_model(const TuckerModel& model, const std::string& prefix) {
    write_tensor_file(model.core, prefix + ".core.dnt");
    for (std::size_t n = 0; n < model.factors.size(); ++n)
        write_tensor_file(matrix_as_tensor(model.factors[n].value()), fmt::format("{}.factor{}.dnt", prefix, n));
}

TuckerModel read_model(const std::string& prefix, std::size_t order) {
    auto core = read_tensor_file(prefix + ".core.dnt");
    FactorSet factors;
    for (std::size_t n = 0; n < order; ++n)
        factors.emplace_back(tensor_as_matrix(read_tensor_file(fmt::format("{}.factor{}.dnt", prefix, n))));
    return {std::move(core), std::move(factors)};
}

std::string tensor_digest(const DenseTensor& t) {
    std::ostringstream buf;
    write_tensor(t, buf);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : buf.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("fnv1a64:{:016x}", h);
}

}  // namespace tucker
