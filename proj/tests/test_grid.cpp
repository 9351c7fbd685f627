#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>

#include "oscillint/grid.hpp"
#include "oscillint/rng.hpp"

using namespace oscillint;

TEST_CASE("grid container round-trips bit exactly") {
  GridField f = make_grid(2, 16, 2.0, Side::fourier);
  Rng rng(99);
  for (auto& v : f.samples)
    v = {rng.uniform(-1e9, 1e9), rng.uniform(-1e-9, 1e-9)};

  const auto path = std::filesystem::temp_directory_path() / "oscillint_grid_test.bin";
  save_grid(f, path);
  const GridField g = load_grid(path);
  std::filesystem::remove(path);

  CHECK(g.dim == f.dim);
  CHECK(g.n == f.n);
  CHECK(g.half_side == f.half_side);
  CHECK(g.side == f.side);
  REQUIRE(g.samples.size() == f.samples.size());
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    CHECK(std::memcmp(&g.samples[i], &f.samples[i], sizeof f.samples[i]) == 0);
  }
}

TEST_CASE("grid metadata: node coordinates and origin") {
  const GridField f = make_grid(2, 64, 2.0, Side::fourier);
  CHECK(f.spacing() == doctest::Approx(4.0 / 64));
  CHECK(f.coord(32) == 0.0);  // even n puts the origin on a node
  CHECK(f.coord(0) == -2.0);
  CHECK(f.nearest_index(0.0) == 32);
  CHECK(f.nearest_index(1.0) == 48);
}

TEST_CASE("grid validation rejects bad shapes") {
  CHECK_THROWS_AS(make_grid(4, 16, 2.0, Side::fourier), ValidationError);
  CHECK_THROWS_AS(make_grid(2, 48, 2.0, Side::fourier), ValidationError);
  CHECK_THROWS_AS(make_grid(2, 16, -1.0, Side::fourier), ValidationError);
}
