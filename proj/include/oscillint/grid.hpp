#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <json.hpp>

#include "oscillint/errors.hpp"

namespace oscillint {

/// Which physical variable the axes carry: frequency (xi) or space (x).
enum class Side : std::uint32_t { fourier = 0, space = 1 };

/// Complex samples on a regular box grid [-L, L)^d with n points per axis.
/// Node j along an axis sits at -L + j * spacing(); for even n the origin is
/// a node. Row-major storage, last axis fastest.
struct GridField {
  int dim = 2;
  std::int64_t n = 0;
  double half_side = 0.0;
  Side side = Side::fourier;
  std::vector<std::complex<double>> samples;

  double spacing() const { return 2.0 * half_side / static_cast<double>(n); }
  double coord(std::int64_t j) const { return -half_side + static_cast<double>(j) * spacing(); }
  std::size_t size() const;
  double cell_volume() const;

  std::size_t index2(std::int64_t j0, std::int64_t j1) const {
    return static_cast<std::size_t>(j0 * n + j1);
  }
  std::size_t index3(std::int64_t j0, std::int64_t j1, std::int64_t j2) const {
    return static_cast<std::size_t>((j0 * n + j1) * n + j2);
  }

  /// Grid index of the node nearest to a physical coordinate.
  std::int64_t nearest_index(double x) const;

  void validate() const;
};

GridField make_grid(int dim, std::int64_t n, double half_side, Side side);

/// Self-describing binary container: header (magic, version, dimension, side
/// tag, points per axis, box half side) followed by interleaved re/im
/// little-endian 64-bit floats. Round trips are bit exact.
void save_grid(const GridField& field, const std::filesystem::path& path);
GridField load_grid(const std::filesystem::path& path);

/// Companion sidecar describing how the samples were produced.
void save_sidecar(const nlohmann::json& meta, const std::filesystem::path& path);
nlohmann::json load_sidecar(const std::filesystem::path& path);

}  // namespace oscillint
