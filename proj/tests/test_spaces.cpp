#include <catch2/catch_amalgamated.hpp>

#include "hdc/algebra.hpp"
#include "hdc/similarity.hpp"
#include "hdc/spaces.hpp"

using namespace hdc;

TEST_CASE("BSDC-SEG atoms carry one on-bit per segment") {
  auto cfg = VsaConfig::make(VsaKind::BsdcSeg, 12);
  cfg.segments = 4;
  SeededRng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto hv = random_vector(cfg, rng);
    const auto& s = hv.as<SparseBinary>();
    REQUIRE(s.on.size() == 4);
    for (std::uint32_t j = 0; j < 4; ++j) {
      REQUIRE(s.on[j] / 3 == j);  // one bit in each length-3 segment
    }
  }
}

TEST_CASE("BSC atoms are balanced") {
  // Oracle: popcount/D ~ Binomial(D, 1/2)/D; at D=10000 four standard
  // deviations are 4 * 0.5/sqrt(10000) = 0.02, so every draw should sit
  // within 0.5 +- 0.02.
  auto cfg = VsaConfig::make(VsaKind::Bsc, 10000);
  SeededRng rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto hv = random_vector(cfg, rng);
    const double frac =
        double(hv.as<DenseBinary>().popcount()) / double(cfg.dim);
    REQUIRE(frac > 0.48);
    REQUIRE(frac < 0.52);
  }
}

TEST_CASE("FHRR atoms stay in the canonical angle interval") {
  auto cfg = VsaConfig::make(VsaKind::Fhrr, 8);
  SeededRng rng(1);
  const auto hv = random_vector(cfg, rng);
  for (double a : hv.as<AngleVec>().v) {
    REQUIRE(a > -M_PI);
    REQUIRE(a <= M_PI);
  }
}

TEST_CASE("same seed reproduces identical vectors") {
  for (VsaKind k : kAllKinds) {
    const std::uint32_t dim = k == VsaKind::Vtb ? 64 : 60;
    auto cfg = VsaConfig::make(k, dim);
    SeededRng r1(99, {5});
    SeededRng r2(99, {5});
    REQUIRE(random_vector(cfg, r1) == random_vector(cfg, r2));
  }
}

TEST_CASE("binding identities") {
  SeededRng rng(7);

  SECTION("BSC identity is the zero word") {
    const auto id = identity_vector(VsaKind::Bsc, 4);
    REQUIRE(id.as<DenseBinary>().popcount() == 0);
    auto cfg = VsaConfig::make(VsaKind::Bsc, 4);
    const auto x = random_vector(cfg, rng);
    REQUIRE(bind(cfg, id, x) == x);
    REQUIRE(bind(cfg, x, id) == x);
  }

  SECTION("HRR identity is the unit impulse") {
    const auto id = identity_vector(VsaKind::Hrr, 4);
    REQUIRE(id.as<DenseReal>().v == std::vector<double>{1, 0, 0, 0});
    auto cfg = VsaConfig::make(VsaKind::Hrr, 64);
    const auto x = random_vector(cfg, rng);
    const auto y = bind(cfg, x, identity_vector(VsaKind::Hrr, 64));
    for (std::uint32_t i = 0; i < 64; ++i) {
      REQUIRE(y.as<DenseReal>().v[i] ==
              Catch::Approx(x.as<DenseReal>().v[i]).margin(1e-12));
    }
  }

  SECTION("FHRR identity is the zero angle vector") {
    const auto id = identity_vector(VsaKind::Fhrr, 4);
    REQUIRE(id.as<AngleVec>().v == std::vector<double>{0, 0, 0, 0});
    auto cfg = VsaConfig::make(VsaKind::Fhrr, 64);
    const auto x = random_vector(cfg, rng);
    const auto y = bind(cfg, x, id.dim() == 64 ? id : identity_vector(VsaKind::Fhrr, 64));
    for (std::uint32_t i = 0; i < 64; ++i) {
      REQUIRE(std::abs(wrap_angle(y.as<AngleVec>().v[i] -
                                  x.as<AngleVec>().v[i])) < 1e-12);
    }
  }

  SECTION("MAP identities are all-ones") {
    auto cfg = VsaConfig::make(VsaKind::MapB, 32);
    const auto x = random_vector(cfg, rng);
    REQUIRE(bind(cfg, x, identity_vector(VsaKind::MapB, 32)) == x);
  }

  SECTION("BSDC-S identity hashes to zero shift") {
    auto cfg = VsaConfig::make(VsaKind::BsdcS, 64);
    const auto id = identity_vector(VsaKind::BsdcS, 64);
    REQUIRE(sparse_hash(id) == 0);
    const auto x = random_vector(cfg, rng);
    REQUIRE(bind(cfg, id, x) == x);
  }

  SECTION("kinds without a closed-form identity are rejected") {
    REQUIRE_THROWS_AS(identity_vector(VsaKind::Vtb, 16),
                      UnsupportedOperationError);
    REQUIRE_THROWS_AS(identity_vector(VsaKind::Mbat, 16),
                      UnsupportedOperationError);
    REQUIRE_THROWS_AS(identity_vector(VsaKind::BsdcSeg, 16),
                      UnsupportedOperationError);
    REQUIRE_THROWS_AS(identity_vector(VsaKind::BsdcCdt, 16),
                      UnsupportedOperationError);
  }
}

TEST_CASE("density of binary vectors") {
  Hypervector sparse(SparseBinary{10, {1, 5}});
  REQUIRE(density(sparse) == Catch::Approx(0.2));
  Hypervector empty(SparseBinary{10, {}});
  REQUIRE(density(empty) == 0.0);

  auto cfg = VsaConfig::make(VsaKind::BsdcSeg, 100);
  SeededRng rng(2);
  REQUIRE(density(random_vector(cfg, rng)) == Catch::Approx(0.1));

  Hypervector real(DenseReal{{1.0, 2.0}});
  REQUIRE_THROWS_AS(density(real), TypeError);
}

TEST_CASE("fresh sparse vectors keep density at p") {
  // Fixed-cardinality initialization: every atomic vector carries exactly
  // ceil(p*D) on-bits, comfortably inside the binomial 3-sigma band around
  // p*D that a per-bit Bernoulli draw would give.
  auto cfg = VsaConfig::make(VsaKind::BsdcS, 2500);
  const double p = cfg.effective_density();
  const double sigma = std::sqrt(2500 * p * (1 - p));
  SeededRng rng(23);
  for (int t = 0; t < 50; ++t) {
    const auto hv = random_vector(cfg, rng);
    const auto& on = hv.as<SparseBinary>().on;
    REQUIRE(on.size() == std::uint32_t(std::ceil(2500 * p)));
    REQUIRE(std::abs(double(on.size()) - 2500 * p) <= 3 * sigma + 1.0);
    REQUIRE(std::is_sorted(on.begin(), on.end()));
    REQUIRE(std::adjacent_find(on.begin(), on.end()) == on.end());
  }
}

TEST_CASE("quasi-orthogonality of dense random vectors") {
  // A reduced version of the acceptance check: 200 pairs at D=10,000.
  for (VsaKind k : {VsaKind::MapC, VsaKind::MapB}) {
    auto cfg = VsaConfig::make(k, 10000);
    for (int t = 0; t < 200; ++t) {
      SeededRng ra(50, {std::uint64_t(t), 0});
      SeededRng rb(50, {std::uint64_t(t), 1});
      const auto a = random_vector(cfg, ra);
      const auto b = random_vector(cfg, rb);
      REQUIRE(std::abs(similarity(cfg, a, b)) < 0.1);
    }
  }
}
