#include "oscillint/grid.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace oscillint {

namespace {

constexpr char kMagic[4] = {'O', 'S', 'C', 'G'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "grid container i/o assumes a little-endian host");

template <class T>
void write_pod(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <class T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::size_t GridField::size() const {
  std::size_t s = 1;
  for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n);
  return s;
}

double GridField::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= spacing();
  return v;
}

std::int64_t GridField::nearest_index(double x) const {
  const auto j = static_cast<std::int64_t>(std::llround((x + half_side) / spacing()));
  return std::clamp<std::int64_t>(j, 0, n - 1);
}

void GridField::validate() const {
  if (dim != 2 && dim != 3) throw ValidationError("GridField: dimension must be 2 or 3");
  if (!is_power_of_two(n) || n < 8)
    throw ValidationError("GridField: points per axis must be a power of two >= 8");
  if (!(half_side > 0.0) || !std::isfinite(half_side))
    throw ValidationError("GridField: box half side must be positive and finite");
  if (samples.size() != size())
    throw ValidationError("GridField: sample count does not match the grid");
}

GridField make_grid(int dim, std::int64_t n, double half_side, Side side) {
  GridField f;
  f.dim = dim;
  f.n = n;
  f.half_side = half_side;
  f.side = side;
  f.samples.assign(f.size(), {0.0, 0.0});
  f.validate();
  return f;
}

void save_grid(const GridField& field, const std::filesystem::path& path) {
  field.validate();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("save_grid: cannot open " + path.string());
  os.write(kMagic, 4);
  write_pod<std::uint32_t>(os, kVersion);
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(field.dim));
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(field.side));
  write_pod<std::uint64_t>(os, static_cast<std::uint64_t>(field.n));
  write_pod<double>(os, field.half_side);
  os.write(reinterpret_cast<const char*>(field.samples.data()),
           static_cast<std::streamsize>(field.samples.size() * sizeof(std::complex<double>)));
  if (!os) throw ValidationError("save_grid: short write to " + path.string());
}

GridField load_grid(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("load_grid: cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw ValidationError("load_grid: bad magic in " + path.string());
  const auto version = read_pod<std::uint32_t>(is);
  if (version != kVersion) throw ValidationError("load_grid: unsupported container version");
  GridField f;
  f.dim = static_cast<int>(read_pod<std::uint32_t>(is));
  f.side = static_cast<Side>(read_pod<std::uint32_t>(is));
  f.n = static_cast<std::int64_t>(read_pod<std::uint64_t>(is));
  f.half_side = read_pod<double>(is);
  if (!is) throw ValidationError("load_grid: truncated header in " + path.string());
  if (f.dim != 2 && f.dim != 3) throw ValidationError("load_grid: bad dimension");
  f.samples.resize(f.size());
  is.read(reinterpret_cast<char*>(f.samples.data()),
          static_cast<std::streamsize>(f.samples.size() * sizeof(std::complex<double>)));
  if (!is) throw ValidationError("load_grid: truncated payload in " + path.string());
  f.validate();
  return f;
}

void save_sidecar(const nlohmann::json& meta, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("save_sidecar: cannot open " + path.string());
  os << meta.dump(2) << "\n";
}

nlohmann::json load_sidecar(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("load_sidecar: cannot open " + path.string());
  return nlohmann::json::parse(is);
}

}  // namespace oscillint
