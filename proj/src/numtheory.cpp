#include "psets/numtheory.hpp"

#include <gmpxx.h>

#include <array>
#include <limits>

#include "psets/error.hpp"

namespace psets {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m) noexcept {
  if (a >= 0) return static_cast<std::uint64_t>(a) % m;
  // -(a + 1) avoids negating INT64_MIN.
  const std::uint64_t neg = (static_cast<std::uint64_t>(-(a + 1)) % m + 1) % m;
  return neg == 0 ? 0 : m - neg;
}

namespace {

bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r) noexcept {
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  // These bases are a proven witness set for n < 3.3 * 10^24.
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t b : bases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : bases) {
    if (!miller_rabin_round(n, a, d, r)) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t value) : value_(value) {
  if (!is_prime(value)) {
    throw InvalidArgument(std::to_string(value) + " is not prime");
  }
}

Prime next_prime(std::uint64_t n) {
  if (n <= 2) return Prime(2);
  std::uint64_t c = n | 1;  // first odd candidate >= n
  if (c < n) throw OverflowError("next_prime: no 64-bit prime >= " + std::to_string(n));
  for (;;) {
    if (is_prime(c)) return Prime(c);
    if (c > std::numeric_limits<std::uint64_t>::max() - 2) {
      throw OverflowError("next_prime: no 64-bit prime >= " + std::to_string(n));
    }
    c += 2;
  }
}

std::string next_prime_decimal(const std::string& n) {
  mpz_class value;
  if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos ||
      value.set_str(n, 10) != 0) {
    throw InvalidArgument("next_prime_decimal: not a non-negative integer: '" + n + "'");
  }
  if (mpz_fits_ulong_p(value.get_mpz_t()) != 0) {
    // unsigned long is 64-bit on the supported platforms.
    const std::uint64_t small = mpz_get_ui(value.get_mpz_t());
    if (small <= std::numeric_limits<std::uint64_t>::max() - 58) {
      return std::to_string(next_prime(small).value());
    }
  }
  // mpz_nextprime returns the smallest probable prime strictly greater than
  // its argument.
  mpz_class start = value - 1;
  mpz_class p;
  mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
  return p.get_str(10);
}

std::uint64_t poly_eval_mod(std::span<const std::int64_t> coeffs, std::int64_t x,
                            std::uint64_t modulus) {
  if (modulus == 0) throw InvalidArgument("poly_eval_mod: modulus must be positive");
  const std::uint64_t xr = reduce_mod(x, modulus);
  std::uint64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = mul_mod(acc, xr, modulus);
    const std::uint64_t c = reduce_mod(*it, modulus);
    acc = acc >= modulus - c ? acc - (modulus - c) : acc + c;
  }
  return acc;
}

}  // namespace psets
