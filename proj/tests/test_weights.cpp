#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "oracles.hpp"
#include "psets/error.hpp"
#include "psets/weights.hpp"

using namespace psets;

namespace {

Weights halving() { return Weights(ProductWeights({}, GeometricTail{0.5})); }

}  // namespace

TEST_CASE("gamma_of examples") {
  CHECK(gamma_of(halving(), {1, 3}) == doctest::Approx(1.0 / 16).epsilon(1e-15));
  const auto unit = Weights::unit(4);
  CHECK(gamma_of(unit, {2, 4}) == 1.0);
  CHECK(gamma_of(unit, {1, 2, 3, 4}) == 1.0);
  const Weights general(GeneralWeights({{{1}, 0.5}, {{1, 2}, 0.25}}));
  CHECK(gamma_of(general, {2}) == 0.0);
  CHECK(gamma_of(general, {1, 2}) == 0.25);
}

TEST_CASE("product weights are multiplicative on disjoint subsets") {
  const Weights w(ProductWeights({0.9, 0.7, 0.3}, PowerLawTail{2.0, 1.5}));
  const Subset u{1, 4};
  const Subset v{2, 3, 6};
  CHECK(gamma_of(w, {1, 2, 3, 4, 6}) == doctest::Approx(gamma_of(w, u) * gamma_of(w, v)).epsilon(1e-14));
}

TEST_CASE("gamma_tail_sum examples") {
  CHECK(gamma_tail_sum(halving(), 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_tail_sum(halving(), 7) == doctest::Approx(0.0078125).epsilon(1e-15));
  const Weights inverse_square(ProductWeights({}, PowerLawTail{2.0, 1.0}));
  const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  CHECK(std::abs(gamma_tail_sum(inverse_square, 0) - pi2_6) < 1e-10);
}

TEST_CASE("power-law tails agree with long direct summation") {
  for (double b : {1.5, 2.0, 3.0}) {
    for (std::size_t k : {0, 5, 100}) {
      const Weights w(ProductWeights({}, PowerLawTail{b, 1.0}));
      const auto ref = oracle::power_tail_direct(b, k);
      CHECK(std::abs(gamma_tail_sum(w, k) - static_cast<double>(ref)) < 1e-10 * (1 + ref));
    }
  }
}

TEST_CASE("tail sums with exponent t") {
  // Geometric 2^{-j}: (sum_{j>k} 2^{-jt})^{1/t} = 2^{-k} (2^t - 1)^{-1/t}
  for (double t : {0.5, 1.0, 2.0}) {
    for (std::size_t k : {0, 3, 10}) {
      const double expect = std::pow(2.0, -static_cast<double>(k)) * std::pow(std::pow(2.0, t) - 1.0, -1.0 / t);
      CHECK(gamma_tail_sum(halving(), k, t) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
  const Weights harmonic(ProductWeights({}, PowerLawTail{1.0, 1.0}));
  CHECK_THROWS_AS(gamma_tail_sum(harmonic, 0, 1.0), DivergenceError);
  CHECK_NOTHROW(gamma_tail_sum(harmonic, 0, 2.0));
}

TEST_CASE("tail sums are non-increasing and vanish") {
  const Weights w(ProductWeights({1.0, 0.8, 0.8}, PowerLawTail{1.2, 1.0}));
  double prev = gamma_tail_sum(w, 0);
  for (std::size_t k = 1; k < 60; ++k) {
    const double cur = gamma_tail_sum(w, k);
    CHECK(cur <= prev);
    prev = cur;
  }
  CHECK(gamma_tail_sum(w, 1'000'000'000'000) < 0.05);
  CHECK(gamma_tail_sum(Weights::unit(3), 3) == 0.0);
  CHECK(gamma_tail_sum(Weights::unit(3), 1) == 2.0);
}

TEST_CASE("parse_weights examples") {
  const auto w = parse_weights("product\n1 0.5\n2 0.25\ntail geometric 0.5");
  REQUIRE(w.is_product());
  for (std::size_t j = 1; j <= 30; ++j) {
    CHECK(w.product().gamma(j) == std::ldexp(1.0, -static_cast<int>(j)));
  }
  const auto g = parse_weights("general\n1 1.0\n1,2 0.5");
  REQUIRE_FALSE(g.is_product());
  CHECK(gamma_of(g, {1}) == 1.0);
  CHECK(gamma_of(g, {1, 2}) == 0.5);
  CHECK(gamma_of(g, {2}) == 0.0);
  CHECK_THROWS_AS(parse_weights("product\n1 -0.5"), InvalidArgument);
}

TEST_CASE("parse_weights rejects malformed files") {
  CHECK_THROWS_AS(parse_weights(""), InvalidArgument);
  CHECK_THROWS_AS(parse_weights("lattice\n1 1"), InvalidArgument);
  CHECK_THROWS_AS(parse_weights("product\n2 0.5"), InvalidArgument);
  CHECK_THROWS_AS(parse_weights("product\n1 0.5\ntail geometric 0.5\n2 0.25"), InvalidArgument);
  CHECK_THROWS_AS(parse_weights("product\ntail geometric 1.5"), InvalidArgument);
  CHECK_THROWS_AS(parse_weights("general\n2,1 0.5"), InvalidArgument);
  CHECK_THROWS_AS(parse_weights("general\n1 0.5\n1 0.25"), InvalidArgument);
  CHECK_THROWS_AS(parse_weights("product\n1 nan"), InvalidArgument);
  CHECK_NOTHROW(parse_weights("# comment\nproduct   # header\n1 2.5\n"));
}

TEST_CASE("serialize then parse is the identity") {
  const Weights cases[] = {
      halving(),
      Weights::unit(5),
      Weights(ProductWeights({0.1, 0.3333333333333333}, PowerLawTail{2.5, 0.7})),
      Weights(ProductWeights({1.0, 0.5}, ZeroTail{})),
      Weights(GeneralWeights({{{1}, 1.0}, {{1, 2}, 0.1}, {{3}, 2.0 / 3.0}})),
  };
  for (const auto& w : cases) {
    CHECK(parse_weights(serialize_weights(w)) == w);
  }
}

TEST_CASE("weights file loading") {
  const char* path = "test_weights_tmp.txt";
  {
    std::ofstream f(path);
    f << "product\n1 0.5\ntail geometric 0.5\n";
  }
  CHECK(load_weights_file(path) == Weights(ProductWeights({0.5}, GeometricTail{0.5})));
  std::remove(path);
  CHECK_THROWS_AS(load_weights_file("does/not/exist"), InvalidArgument);
}
