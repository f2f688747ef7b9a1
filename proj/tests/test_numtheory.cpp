#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "psets/error.hpp"
#include "psets/numtheory.hpp"

using namespace psets;

TEST_CASE("is_prime small and boundary cases") {
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK(is_prime(2147483647ULL));
  CHECK(oracle::trial_division_is_prime(2147483647ULL));
  CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  CHECK_FALSE(is_prime(18446744073709551615ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(3825123056546413051ULL));
}

TEST_CASE("is_prime agrees with trial division up to 10^6") {
  const std::size_t limit = 1'000'000;
  const auto sieve = oracle::sieve(limit);
  std::size_t mismatches = 0;
  for (std::uint64_t n = 0; n <= limit; ++n) {
    if (is_prime(n) != sieve[n]) ++mismatches;
  }
  CHECK(mismatches == 0);
  for (std::uint64_t n = 0; n <= 20000; ++n) {
    REQUIRE(is_prime(n) == oracle::trial_division_is_prime(n));
  }
}

TEST_CASE("Prime rejects composites") {
  CHECK(Prime(7).value() == 7);
  CHECK_THROWS_AS(Prime(9), InvalidArgument);
  CHECK_THROWS_AS(Prime(1), InvalidArgument);
}

TEST_CASE("next_prime examples") {
  CHECK(next_prime(10).value() == 11);
  CHECK(next_prime(2).value() == 2);
  CHECK(next_prime(90).value() == 97);
  CHECK(next_prime(1).value() == 2);
  CHECK_THROWS_AS(next_prime(18446744073709551558ULL), OverflowError);
}

TEST_CASE("next_prime stays inside the Bertrand window up to 10^6") {
  const auto sieve = oracle::sieve(2'000'000);
  std::uint64_t q = 1'000'000;
  while (!sieve[q]) ++q;
  std::size_t failures = 0;
  for (std::uint64_t n = 1'000'000; n >= 2; --n) {
    if (sieve[n]) q = n;
    const std::uint64_t p = next_prime(n);
    if (p != q || p >= 2 * n) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("next_prime_decimal beyond 64 bits") {
  CHECK(next_prime_decimal("90") == "97");
  CHECK(next_prime_decimal("18446744073709551616") == "18446744073709551629");
  CHECK_THROWS_AS(next_prime_decimal("12x"), InvalidArgument);
}

TEST_CASE("poly_eval_mod examples") {
  const std::vector<std::int64_t> a{1, 1};
  const std::vector<std::int64_t> b{0, 0, 0};
  const std::vector<std::int64_t> c{2, 3, 1};
  CHECK(poly_eval_mod(a, 3, 5) == 4);
  CHECK(poly_eval_mod(b, 7, 11) == 0);
  CHECK(poly_eval_mod(c, 4, 7) == 2);
  const std::vector<std::int64_t> neg{-1};
  CHECK(poly_eval_mod(neg, 0, 7) == 6);
  CHECK(poly_eval_mod(c, 4, 1) == 0);
  CHECK_THROWS_AS(poly_eval_mod(c, 4, 0), InvalidArgument);
}

TEST_CASE("poly_eval_mod matches big-integer evaluation") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t len = 1 + rng() % 40;
    std::vector<std::int64_t> coeffs(len);
    for (auto& v : coeffs) v = static_cast<std::int64_t>(rng());
    const auto x = static_cast<std::int64_t>(rng());
    std::uint64_t m = rng() >> (rng() % 63);
    if (m == 0) m = 1;
    mpz_class acc = 0;
    mpz_class power = 1;
    const mpz_class bx(std::to_string(x));
    for (auto v : coeffs) {
      acc += mpz_class(std::to_string(v)) * power;
      power *= bx;
    }
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), acc.get_mpz_t(), mpz_class(std::to_string(m)).get_mpz_t());
    REQUIRE(std::to_string(poly_eval_mod(coeffs, x, m)) == r.get_str());
  }
}

TEST_CASE("mul_mod and pow_mod") {
  CHECK(mul_mod(18446744073709551557ULL - 1, 18446744073709551557ULL - 1, 18446744073709551557ULL) == 1);
  CHECK(pow_mod(3, 4, 5) == 1);
  CHECK(pow_mod(2, 10, 1000) == 24);
  CHECK(reduce_mod(-3, 5) == 2);
}
