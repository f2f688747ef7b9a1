#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "psets/discrepancy.hpp"
#include "psets/error.hpp"
#include "psets/qmc.hpp"

using namespace psets;

namespace {

// V(f) by summing over nonempty u: prod_{j in u} |c_j| prod_{j not in u} (1 + |c_j|/2)
double variation_by_subsets(const std::vector<double>& c) {
  const std::size_t s = c.size();
  double total = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
    double term = 1.0;
    for (std::size_t j = 0; j < s; ++j) term *= (mask >> j) & 1 ? std::abs(c[j]) : 1.0 + std::abs(c[j]) / 2.0;
    total += term;
  }
  return total;
}

}  // namespace

TEST_CASE("constant integrand is exact") {
  const ProductIntegrand one(std::vector<double>{0.0, 0.0, 0.0});
  for (auto kind : {PSetKind::KorobovP, PSetKind::KorobovQ, PSetKind::HuaWangR}) {
    auto est = qmc_integrate(generate(kind, Prime(7), 3), one);
    CHECK(est.estimate == 1.0);
    CHECK(est.abs_error == 0.0);
  }
  CHECK(hk_variation(one) == 0.0);
}

TEST_CASE("one-dimensional linear integrand") {
  for (std::uint64_t p : {2, 5, 13, 97}) {
    for (double c : {1.0, -2.0, 0.5}) {
      auto est = qmc_integrate(generate(PSetKind::KorobovP, Prime(p), 1), ProductIntegrand({c}));
      CHECK(est.abs_error == doctest::Approx(std::abs(c) / (2.0 * static_cast<double>(p))).epsilon(1e-13));
    }
  }
}

TEST_CASE("hk_variation examples") {
  CHECK(hk_variation(ProductIntegrand({2.0})) == 2.0);
  CHECK(hk_variation(ProductIntegrand({1.0, 1.0})) == 4.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> c(1 + rng() % 8);
    for (auto& v : c) v = unif(rng);
    CHECK(hk_variation(ProductIntegrand(c)) == doctest::Approx(variation_by_subsets(c)).epsilon(1e-12));
  }
}

TEST_CASE("Koksma-Hlawka on P_{31,3}") {
  const ProductIntegrand f({1.0, 0.5, 0.25});
  auto ps = generate(PSetKind::KorobovP, Prime(31), 3);
  const double d = star_discrepancy_exact(ps).value;
  CHECK(qmc_integrate(ps, f).abs_error <= d * hk_variation(f));
}

TEST_CASE("Koksma-Hlawka across kinds") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  for (auto kind : {PSetKind::KorobovP, PSetKind::KorobovQ, PSetKind::HuaWangR}) {
    for (std::uint64_t p : {3, 5, 7}) {
      for (std::size_t s : {1, 2, 3}) {
        std::vector<double> c(s);
        for (auto& v : c) v = unif(rng);
        const ProductIntegrand f(c);
        auto ps = generate(kind, Prime(p), s);
        CHECK(qmc_integrate(ps, f).abs_error <= star_discrepancy_exact(ps).value * hk_variation(f) + 1e-15);
      }
    }
  }
}

TEST_CASE("estimate is invariant under point order") {
  auto ps = generate(PSetKind::HuaWangR, Prime(7), 3);
  const ProductIntegrand f({0.3, -1.2, 0.7});
  std::vector<std::size_t> order(ps.size());
  for (std::size_t n = 0; n < order.size(); ++n) order[n] = n;
  std::mt19937_64 rng(1);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::uint64_t> nums;
  for (auto n : order) {
    auto pt = ps.point(n);
    nums.insert(nums.end(), pt.begin(), pt.end());
  }
  const RationalPointSet shuffled(ps.modulus(), ps.dim(), nums);
  CHECK(qmc_integrate(shuffled, f).estimate == doctest::Approx(qmc_integrate(ps, f).estimate).epsilon(1e-15));
}

TEST_CASE("convergence_table examples") {
  const std::vector<Prime> five{Prime(5)};
  auto flat = convergence_table(PSetKind::KorobovP, 2, ProductIntegrand({0.0, 0.0}), five);
  REQUIRE(flat.size() == 1);
  CHECK(flat[0].error == 0.0);
  CHECK(flat[0].p == 5);
  CHECK(flat[0].points == 5);

  CHECK(convergence_table(PSetKind::KorobovP, 2, ProductIntegrand({1.0, 0.5}), {}).empty());

  const std::vector<Prime> primes{Prime(5), Prime(11), Prime(23), Prime(47)};
  auto rows = convergence_table(PSetKind::KorobovP, 2, ProductIntegrand({1.0, 0.5}), primes);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    REQUIRE(r.dstar.has_value());
    CHECK(r.error <= r.kh_bound);
    CHECK(r.kh_bound == doctest::Approx(*r.dstar * hk_variation(ProductIntegrand({1.0, 0.5}))).epsilon(1e-15));
  }
  CHECK(rows[3].error < rows[0].error);

  CHECK_THROWS_AS(convergence_table(PSetKind::KorobovP, 3, ProductIntegrand({1.0, 0.5}), primes),
                  InvalidArgument);
}

TEST_CASE("convergence_table falls back to the explicit bound above the cap") {
  Limits tight;
  tight.max_corner_ops = 50;
  const std::vector<Prime> primes{Prime(11)};
  auto rows = convergence_table(PSetKind::KorobovP, 2, ProductIntegrand({1.0, 0.5}), primes, tight);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].dstar.has_value());
  CHECK(rows[0].error <= rows[0].kh_bound);
}
