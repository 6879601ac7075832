#include "radhf/kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include <fmt/format.h>

namespace radhf::kernels {

namespace {

constexpr std::array<char, 8> kMagic{'R', 'A', 'D', 'H', 'F', 'K', 'R', 'N'};
constexpr std::uint32_t kVersion = 1;

template <typename T> void write_le(std::ostream &out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char *>(bytes.data()), sizeof(T));
}

template <typename T> T read_le(std::istream &in) {
  std::array<unsigned char, sizeof(T)> bytes;
  in.read(reinterpret_cast<char *>(bytes.data()), sizeof(T));
  if (!in)
    throw Error("kernel cache: truncated file");
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

void write_matrix(std::ostream &out, const Eigen::MatrixXd &m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      write_le<double>(out, m(i, j));
}

void read_matrix(std::istream &in, Eigen::MatrixXd &m, int n) {
  m.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = read_le<double>(in);
}

} // namespace

void KernelTable::save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(fmt::format("kernel cache: cannot write {}", path.string()));
  out.write(kMagic.data(), kMagic.size());
  write_le<std::uint32_t>(out, kVersion);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(size()));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(max_l_));
  write_le<std::uint64_t>(out, grid_->hash());
  write_matrix(out, direct_);
  for (const auto &u : exchange_)
    write_matrix(out, u);
  if (!out)
    throw Error(fmt::format("kernel cache: write to {} failed", path.string()));
}

KernelTable KernelTable::load(const std::filesystem::path &path, GridPtr grid, int max_l) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(fmt::format("kernel cache: cannot open {}", path.string()));
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic)
    throw Error(fmt::format("kernel cache: {} is not a kernel table", path.string()));
  const auto version = read_le<std::uint32_t>(in);
  if (version != kVersion)
    throw Error(fmt::format("kernel cache: unsupported version {}", version));
  const auto n = read_le<std::uint32_t>(in);
  const auto stored_max_l = read_le<std::uint32_t>(in);
  const auto hash = read_le<std::uint64_t>(in);
  if (static_cast<int>(n) != grid->size() || hash != grid->hash())
    throw Error("kernel cache: grid does not match");
  if (static_cast<int>(stored_max_l) != max_l)
    throw Error(fmt::format("kernel cache: stored max_l {} != requested {}", stored_max_l,
                            max_l));
  KernelTable table;
  table.grid_ = std::move(grid);
  table.max_l_ = max_l;
  read_matrix(in, table.direct_, static_cast<int>(n));
  const std::size_t pairs = static_cast<std::size_t>(max_l + 1) * (max_l + 2) / 2;
  table.exchange_.resize(pairs);
  for (auto &u : table.exchange_)
    read_matrix(in, u, static_cast<int>(n));
  return table;
}

KernelTable KernelTable::cached(const std::filesystem::path &cache_dir, GridPtr grid,
                                int max_l, const TableOptions &options) {
  if (options.coefficients)
    return KernelTable(std::move(grid), max_l, options);
  std::filesystem::create_directories(cache_dir);
  const auto file =
      cache_dir / fmt::format("kernels_{:016x}_l{}.bin", grid->hash(), max_l);
  if (std::filesystem::exists(file)) {
    try {
      return load(file, grid, max_l);
    } catch (const Error &) {
      // stale or corrupt: rebuild below
    }
  }
  KernelTable table(std::move(grid), max_l, options);
  table.save(file);
  return table;
}

} // namespace radhf::kernels
