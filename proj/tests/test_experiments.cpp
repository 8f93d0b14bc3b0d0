#include <catch2/catch_amalgamated.hpp>

#include "hdc/experiments.hpp"

using namespace hdc;

namespace {

VsaConfig tpl(VsaKind k, std::uint64_t seed = 7) {
  VsaConfig cfg;
  cfg.kind = k;
  cfg.dim = 4;  // experiments re-derive the dimension per grid point
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("default grids match the evaluation setup") {
  const auto dims = default_dims();
  REQUIRE(dims.front() == 4);
  REQUIRE(dims.back() == 1156);
  REQUIRE(dims.size() == 33);
  const auto ks = default_ks();
  REQUIRE(ks.front() == 2);
  REQUIRE(ks.back() == 50);
  REQUIRE(ks.size() == 49);
  REQUIRE(default_dims(true).size() == 9);
}

TEST_CASE("bundling one item always retrieves it") {
  for (VsaKind k : {VsaKind::Bsc, VsaKind::Fhrr, VsaKind::Hrr}) {
    const double acc = capacity_cell(tpl(k), 64, 1, 100, 0);
    INFO("kind " << kind_name(k));
    REQUIRE(acc == 1.0);
  }
}

TEST_CASE("FHRR stores two vectors perfectly at D=1156") {
  for (std::uint32_t r = 0; r < 10; ++r) {
    REQUIRE(capacity_cell(tpl(VsaKind::Fhrr), 1156, 2, 1000, r) == 1.0);
  }
}

TEST_CASE("tiny dimensions decay to chance accuracy") {
  // At D=4 and k=50, retrieval is chance-level: the expected hit rate is
  // k/N = 0.05. Thirty repeats keep the Monte-Carlo 3-sigma band tight.
  const std::uint32_t reps = 30, k = 50, n = 1000;
  double mean = 0.0;
  for (std::uint32_t r = 0; r < reps; ++r) {
    mean += capacity_cell(tpl(VsaKind::Bsc), 4, k, n, r) / reps;
  }
  const double chance = double(k) / n;
  const double sigma =
      std::sqrt(chance * (1 - chance) / double(k * reps));
  REQUIRE(std::abs(mean - chance) <= 3 * sigma + 0.01);
}

TEST_CASE("capacity accuracy is non-decreasing in dimension") {
  // Asserted with a one-grid-step noise margin over 10 repeats.
  const std::vector<std::uint32_t> dims{16, 64, 144, 256, 400};
  const auto grid = run_capacity(tpl(VsaKind::MapB), 200, dims, {5}, 10, 2);
  for (std::size_t d = 2; d < dims.size(); ++d) {
    REQUIRE(grid.at(d, 0) >= grid.at(d - 2, 0) - 0.05);
  }
}

TEST_CASE("capacity grids are reproducible bit-exact") {
  const std::vector<std::uint32_t> dims{36, 100};
  const std::vector<std::uint32_t> ks{2, 5};
  const auto a = run_capacity(tpl(VsaKind::Fhrr, 42), 100, dims, ks, 3, 2);
  const auto b = run_capacity(tpl(VsaKind::Fhrr, 42), 100, dims, ks, 3, 1);
  REQUIRE(a.accuracy == b.accuracy);  // also independent of thread count
}

TEST_CASE("min_dims picks the first dimension over the threshold") {
  CapacityGrid grid;
  grid.kind = VsaKind::Bsc;
  grid.dims = {4, 16, 64, 256};
  grid.ks = {2, 4};
  grid.repeats = 1;
  grid.accuracy = {
      0.10, 0.05,  // D=4
      0.80, 0.50,  // D=16
      1.00, 0.90,  // D=64
      1.00, 1.00,  // D=256
  };
  const auto summary = min_dims(grid, 0.99);
  REQUIRE(summary.entries[0].reachable);
  REQUIRE(summary.entries[0].min_dim == 64);
  REQUIRE(summary.entries[1].reachable);
  REQUIRE(summary.entries[1].min_dim == 256);
  REQUIRE(summary.fit.has_value());
  REQUIRE(summary.fit->slope == Catch::Approx((256.0 - 64.0) / 2.0));

  const auto strict = min_dims(grid, 1.01);
  REQUIRE_FALSE(strict.entries[0].reachable);
  REQUIRE_FALSE(strict.fit.has_value());
}

TEST_CASE("k larger than the memory is rejected") {
  REQUIRE_THROWS_AS(run_capacity(tpl(VsaKind::Bsc), 10, {16}, {11}, 1),
                    ArgumentError);
  REQUIRE_THROWS_AS(run_bundled_pairs(tpl(VsaKind::Bsc), 10, {16}, {6}, 1),
                    ArgumentError);
}

TEST_CASE("item memory sweep: more items never need fewer dimensions") {
  const std::vector<std::uint32_t> dims{16, 36, 64, 100, 144, 196, 256, 324};
  const auto points = run_itemmem_sweep(tpl(VsaKind::Fhrr), 10,
                                        {20, 2000}, dims, 10, 0.99, 2);
  REQUIRE(points.size() == 2);
  REQUIRE(points[0].reachable);
  REQUIRE(points[1].reachable);
  // One-grid-step slack mirrors the capacity monotonicity margin.
  REQUIRE(points[0].min_dim <= points[1].min_dim + 36);
}

TEST_CASE("doubling the item count never raises cell accuracy") {
  // Monte-Carlo monotonicity check at a deliberately hard setting.
  double small_mean = 0.0, big_mean = 0.0;
  for (std::uint32_t r = 0; r < 10; ++r) {
    small_mean += capacity_cell(tpl(VsaKind::MapB), 64, 8, 250, r) / 10;
    big_mean += capacity_cell(tpl(VsaKind::MapB), 64, 8, 500, r) / 10;
  }
  REQUIRE(big_mean <= small_mean + 0.02);
}

TEST_CASE("approx unbind: no binding means perfect similarity") {
  const auto curves =
      run_approx_unbind({VsaKind::MapC, VsaKind::Hrr, VsaKind::Vtb}, 256, 4,
                        5, 3, 2);
  for (const auto& c : curves) {
    REQUIRE(c.mean[0] == 1.0);
    REQUIRE_FALSE(c.exact_control);
    REQUIRE(c.mean[4] < 1.0);
  }
}

TEST_CASE("approx unbind: exact kinds are flat control curves") {
  const auto curves = run_approx_unbind({VsaKind::Fhrr}, 256, 10, 5, 3, 2);
  REQUIRE(curves[0].exact_control);
  for (double v : curves[0].mean) {
    REQUIRE(v == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("approx unbind: VTB beats HRR on chains") {
  const auto curves = run_approx_unbind(
      {VsaKind::Vtb, VsaKind::Hrr, VsaKind::MapC}, 1024, 12, 8, 5, 2);
  for (std::uint32_t n : {5u, 8u, 12u}) {
    REQUIRE(curves[0].mean[n] >= curves[1].mean[n]);
    REQUIRE(curves[1].mean[n] >= curves[2].mean[n] - 0.01);
  }
}

TEST_CASE("a single bound pair round-trips exactly") {
  for (VsaKind k : {VsaKind::Bsc, VsaKind::Fhrr, VsaKind::BsdcSeg}) {
    double mean = 0.0;
    for (std::uint32_t r = 0; r < 5; ++r) {
      mean += pairs_cell(tpl(k), 256, 1, 100, r) / 5;
    }
    INFO("kind " << kind_name(k));
    REQUIRE(mean == Catch::Approx(1.0));
  }
}

TEST_CASE("pairs grids are reproducible and respect the 2k bound") {
  const std::vector<std::uint32_t> dims{64, 144};
  const std::vector<std::uint32_t> ks{2, 4};
  const auto a = run_bundled_pairs(tpl(VsaKind::Bsc, 9), 100, dims, ks, 3, 2);
  const auto b = run_bundled_pairs(tpl(VsaKind::Bsc, 9), 100, dims, ks, 3, 1);
  REQUIRE(a.accuracy == b.accuracy);
  REQUIRE(a.at(1, 0) >= a.at(0, 0));  // easier at higher dimension
}

TEST_CASE("sweep ordering is consistent with the capacity column") {
  // The item-memory sweep at N=1000 must agree with run_capacity's k=10
  // column on which kind needs fewer dimensions.
  const std::vector<std::uint32_t> dims = default_dims(true);
  const auto fhrr =
      capacity_min_dim(tpl(VsaKind::Fhrr), 10, 1000, dims, 5, 0.99, 2);
  const auto mapb =
      capacity_min_dim(tpl(VsaKind::MapB), 10, 1000, dims, 5, 0.99, 2);
  REQUIRE(fhrr.has_value());
  REQUIRE(mapb.has_value());
  REQUIRE(*fhrr <= *mapb);  // complex bundling is the more efficient one

  const auto sweep_f =
      run_itemmem_sweep(tpl(VsaKind::Fhrr), 10, {1000}, dims, 5, 0.99, 2);
  REQUIRE(sweep_f[0].reachable);
  REQUIRE(sweep_f[0].min_dim == *fhrr);
}
