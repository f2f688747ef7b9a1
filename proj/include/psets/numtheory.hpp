#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace psets {

/// Deterministic for the whole 64-bit range (Miller-Rabin with the first
/// twelve prime bases).
bool is_prime(std::uint64_t n) noexcept;

/// A value that has passed is_prime.
class Prime {
 public:
  /// Throws InvalidArgument if `value` is not prime.
  explicit Prime(std::uint64_t value);

  std::uint64_t value() const noexcept { return value_; }
  operator std::uint64_t() const noexcept { return value_; }

  friend bool operator==(Prime, Prime) = default;

 private:
  std::uint64_t value_;
};

/// Smallest prime >= n (n = 0 and n = 1 both give 2). Throws OverflowError
/// when no such prime fits in 64 bits.
Prime next_prime(std::uint64_t n);

/// Smallest prime >= n for a non-negative decimal integer of any size.
/// Below 2^64 the answer is certain; above it the result is a probable
/// prime (Baillie-PSW plus Miller-Rabin rounds).
std::string next_prime_decimal(const std::string& n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Reduces a signed integer into [0, m).
std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m) noexcept;

/// (c_0 + c_1 x + ... + c_{d-1} x^{d-1}) mod m by Horner's rule, reducing at
/// every step. Requires m >= 2; an empty coefficient list evaluates to 0.
std::uint64_t poly_eval_mod(std::span<const std::int64_t> coeffs, std::int64_t x,
                            std::uint64_t modulus);

}  // namespace psets
