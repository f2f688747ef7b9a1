#pragma once
// Independent reference computations used only by the tests. None of these
// call into the library routines they are checking.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "psets/pointset.hpp"

namespace oracle {

inline bool trial_division_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<bool> sieve(std::size_t limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (std::size_t i = 2; i * i <= limit; ++i) {
    if (!prime[i]) continue;
    for (std::size_t k = i * i; k <= limit; k += i) prime[k] = false;
  }
  return prime;
}

/// Star discrepancy over the full corner lattice {0, 1, ..., M}^s with exact
/// rational arithmetic and direct counting. The critical corners are a
/// subset of this lattice, so the maximum agrees with the true supremum.
inline mpq_class star_discrepancy_full_lattice(const psets::RationalPointSet& ps) {
  const std::size_t s = ps.dim();
  const std::uint64_t m = ps.modulus();
  std::vector<std::uint64_t> y(s, 0);
  mpq_class best = 0;
  const mpq_class n_points(static_cast<unsigned long>(ps.size()));
  for (;;) {
    mpq_class vol = 1;
    for (std::size_t j = 0; j < s; ++j) {
      vol *= mpq_class(static_cast<unsigned long>(y[j]), static_cast<unsigned long>(m));
    }
    unsigned long open = 0;
    unsigned long closed = 0;
    for (std::size_t n = 0; n < ps.size(); ++n) {
      bool o = true;
      bool c = true;
      for (std::size_t j = 0; j < s; ++j) {
        o = o && ps.numerator(n, j) < y[j];
        c = c && ps.numerator(n, j) <= y[j];
      }
      open += o ? 1 : 0;
      closed += c ? 1 : 0;
    }
    mpq_class a = mpq_class(closed) / n_points - vol;
    mpq_class b = vol - mpq_class(open) / n_points;
    a.canonicalize();
    b.canonicalize();
    if (a > best) best = a;
    if (b > best) best = b;
    std::size_t j = s;
    while (j > 0) {
      --j;
      if (y[j] < m) {
        ++y[j];
        break;
      }
      y[j] = 0;
      if (j == 0) return best;
    }
  }
}

/// e(k/M) via std::polar on the reduced residue.
inline std::complex<double> phase(std::uint64_t k, std::uint64_t m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k % m) / static_cast<double>(m));
}

inline std::uint64_t mod_i128(__int128 v, std::uint64_t m) {
  __int128 r = v % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

/// sum_{n < M} e((h_1 n + ... + h_s n^s)/M) with big-integer powers.
inline std::complex<double> korobov_sum_direct(const std::vector<std::int64_t>& h, std::uint64_t m) {
  std::complex<double> sum = 0.0;
  for (std::uint64_t n = 0; n < m; ++n) {
    mpz_class acc = 0;
    mpz_class power = 1;
    for (std::int64_t hj : h) {
      power *= static_cast<unsigned long>(n);
      acc += mpz_class(std::to_string(hj)) * power;
    }
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(m));
    sum += phase(r.get_ui(), m);
  }
  return sum;
}

/// #{a < p : h_1 + h_2 a + ... + h_s a^{s-1} = 0 mod p}.
inline std::uint64_t root_count(const std::vector<std::int64_t>& h, std::uint64_t p) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < p; ++a) {
    mpz_class acc = 0;
    mpz_class power = 1;
    for (std::int64_t hj : h) {
      acc += mpz_class(std::to_string(hj)) * power;
      power *= static_cast<unsigned long>(a);
    }
    if (mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(p)) != 0) ++count;
  }
  return count;
}

/// sum_{h in C_s*(M)} (1/r(h)) |(1/N) sum_n e(h . y_n / M)| by nested
/// enumeration and per-term std::polar.
inline double frequency_sum_direct(const psets::RationalPointSet& ps) {
  const std::size_t s = ps.dim();
  const auto m = static_cast<std::int64_t>(ps.modulus());
  const std::int64_t lo = -(m - 1) / 2;
  const std::int64_t hi = m / 2;
  std::vector<std::int64_t> h(s, lo);
  double total = 0.0;
  for (;;) {
    bool zero = true;
    double r = 1.0;
    for (auto x : h) {
      zero = zero && x == 0;
      r *= std::max<double>(1.0, std::abs(static_cast<double>(x)));
    }
    if (!zero) {
      std::complex<double> sum = 0.0;
      for (std::size_t n = 0; n < ps.size(); ++n) {
        __int128 dot = 0;
        for (std::size_t j = 0; j < s; ++j) dot += static_cast<__int128>(h[j]) * ps.numerator(n, j);
        sum += phase(mod_i128(dot, ps.modulus()), ps.modulus());
      }
      total += std::abs(sum) / static_cast<double>(ps.size()) / r;
    }
    std::size_t j = s;
    bool done = true;
    while (j > 0) {
      --j;
      if (h[j] < hi) {
        ++h[j];
        done = false;
        break;
      }
      h[j] = lo;
    }
    if (done) return total;
  }
}

/// sum_{j > k} j^{-b}: 10^7 direct terms plus the integral remainder
/// midpoint between int_{J+1}^inf and int_J^inf.
inline long double power_tail_direct(long double b, std::uint64_t k) {
  constexpr std::uint64_t terms = 10'000'000;
  long double sum = 0.0L;
  for (std::uint64_t j = k + terms; j > k; --j) sum += std::pow(static_cast<long double>(j), -b);
  const long double big_j = static_cast<long double>(k + terms);
  const long double upper = std::pow(big_j, 1.0L - b) / (b - 1.0L);
  const long double lower = std::pow(big_j + 1.0L, 1.0L - b) / (b - 1.0L);
  return sum + (upper + lower) / 2.0L;
}

/// max over all nonempty u in [s] of gamma_u (max u) base^{|u|} for product
/// weights given as a finite list gamma_1..gamma_s.
inline std::pair<double, std::uint64_t> explicit_max_term_exhaustive(const std::vector<double>& gamma,
                                                                     double base) {
  const std::size_t s = gamma.size();
  double best = -1.0;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
    double term = 1.0;
    std::size_t max_u = 0;
    for (std::size_t j = 0; j < s; ++j) {
      if ((mask >> j) & 1) {
        term *= gamma[j] * base;
        max_u = j + 1;
      }
    }
    term *= static_cast<double>(max_u);
    if (term > best) {
      best = term;
      best_mask = mask;
    }
  }
  return {best, best_mask};
}

}  // namespace oracle
