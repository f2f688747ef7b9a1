#include "psets/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "psets/discrepancy.hpp"
#include "psets/error.hpp"

namespace psets {

namespace {

constexpr std::uint64_t kMaxRootTable = std::uint64_t{1} << 24;

std::uint64_t sum_modulus(Prime p, int modulus_power) {
  if (modulus_power != 1 && modulus_power != 2) {
    throw InvalidArgument("modulus power must be 1 or 2");
  }
  const std::uint64_t m = modulus_power == 1 ? p.value() : p.value() * p.value();
  if (p.value() > kMaxRootTable || m > kMaxRootTable) {
    throw CapExceeded("exponential sum modulus " + std::to_string(m) + " exceeds 2^24");
  }
  return m;
}

// Neumaier-compensated complex accumulator.
class ComplexAccumulator {
 public:
  void add(std::complex<double> z, double weight = 1.0) {
    add_part(re_, re_c_, weight * z.real());
    add_part(im_, im_c_, weight * z.imag());
  }
  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

ExpSumValue make_value(std::complex<double> v, std::uint64_t terms) {
  return {v, std::abs(v), terms};
}

}  // namespace

std::int64_t centered_low(std::uint64_t modulus) noexcept {
  // (-M/2, M/2]: M even -> -M/2 + 1, M odd -> -(M - 1)/2.
  return -static_cast<std::int64_t>((modulus - 1) / 2);
}

std::int64_t centered_high(std::uint64_t modulus) noexcept {
  return static_cast<std::int64_t>(modulus / 2);
}

double r_weight(std::span<const std::int64_t> h) noexcept {
  double r = 1.0;
  for (std::int64_t x : h) {
    const double a = std::abs(static_cast<double>(x));
    r *= a > 1.0 ? a : 1.0;
  }
  return r;
}

RootTable::RootTable(std::uint64_t modulus) {
  if (modulus < 1) throw InvalidArgument("root table modulus must be positive");
  if (modulus > kMaxRootTable) throw CapExceeded("root table modulus exceeds 2^24");
  roots_.resize(modulus);
  const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(modulus);
  for (std::uint64_t k = 0; k < modulus; ++k) {
    if ((4 * k) % modulus == 0) {
      static constexpr std::complex<double> quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
      roots_[k] = quarter[(4 * k) / modulus];
      continue;
    }
    const long double angle = step * static_cast<long double>(k);
    roots_[k] = {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
  }
}

ExpSumValue korobov_sum(std::span<const std::int64_t> h, Prime p, int modulus_power) {
  if (h.empty()) throw InvalidArgument("korobov_sum: frequency dimension must be >= 1");
  const std::uint64_t m = sum_modulus(p, modulus_power);
  const RootTable roots(m);
  ComplexAccumulator acc;
  for (std::uint64_t n = 0; n < m; ++n) {
    // h_1 n + ... + h_s n^s = n * (h_1 + h_2 n + ... + h_s n^{s-1}).
    const std::uint64_t inner = poly_eval_mod(h, static_cast<std::int64_t>(n), m);
    acc.add(roots[mul_mod(inner, n, m)]);
  }
  return make_value(acc.value(), m);
}

ExpSumValue hua_wang_double_sum(std::span<const std::int64_t> h, Prime p) {
  if (h.empty()) throw InvalidArgument("hua_wang_double_sum: frequency dimension must be >= 1");
  const std::uint64_t m = sum_modulus(p, 1);
  const RootTable roots(m);
  ComplexAccumulator acc;
  for (std::uint64_t a = 0; a < m; ++a) {
    const std::uint64_t value = poly_eval_mod(h, static_cast<std::int64_t>(a), m);
    for (std::uint64_t k = 0; k < m; ++k) acc.add(roots[mul_mod(k, value, m)]);
  }
  return make_value(acc.value(), m * m);
}

SumFamily sum_family_from_label(int label) {
  switch (label) {
    case 3:
      return SumFamily::KorobovModP;
    case 5:
      return SumFamily::KorobovModP2;
    case 6:
      return SumFamily::HuaWangDouble;
    default:
      throw InvalidArgument("sum family label must be 3, 5 or 6");
  }
}

WeilCheckReport weil_bound_check(SumFamily family, Prime p, std::size_t s,
                                 std::uint64_t exhaustive_cap, std::uint64_t seed) {
  if (s == 0) throw InvalidArgument("weil_bound_check: s must be >= 1");
  WeilCheckReport report;
  report.family = family;
  report.p = p.value();
  report.s = s;
  const double sd = static_cast<double>(s);
  const double pd = static_cast<double>(p.value());
  switch (family) {
    case SumFamily::KorobovModP:
      report.modulus = sum_modulus(p, 1);
      report.bound = (sd - 1.0) * std::sqrt(pd);
      break;
    case SumFamily::KorobovModP2:
      report.modulus = sum_modulus(p, 2);
      report.bound = (sd - 1.0) * pd;
      break;
    case SumFamily::HuaWangDouble:
      report.modulus = sum_modulus(p, 1);
      report.bound = (sd - 1.0) * pd;
      break;
  }
  const std::uint64_t m = report.modulus;

  // Number of vectors in C_s(M), saturating.
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < s; ++j) {
    total = total > std::numeric_limits<std::uint64_t>::max() / m ? std::numeric_limits<std::uint64_t>::max()
                                                                  : total * m;
  }
  report.exhaustive = total <= exhaustive_cap;

  const auto evaluate = [&](const Frequency& h) {
    const bool admissible = std::any_of(h.begin(), h.end(), [&](std::int64_t x) {
      return reduce_mod(x, p.value()) != 0;
    });
    if (!admissible) return;
    const double mag = family == SumFamily::HuaWangDouble ? hua_wang_double_sum(h, p).magnitude
                       : family == SumFamily::KorobovModP  ? korobov_sum(h, p, 1).magnitude
                                                           : korobov_sum(h, p, 2).magnitude;
    ++report.vectors_checked;
    if (mag > report.bound + kSumTolerance) ++report.violations;
    double ratio = 0.0;
    if (report.bound > 0.0) {
      ratio = mag / report.bound;
    } else if (mag > kSumTolerance) {
      ratio = std::numeric_limits<double>::infinity();
    }
    report.max_magnitude = std::max(report.max_magnitude, mag);
    if (report.worst_h.empty() || ratio > report.max_ratio + 1e-12) {
      report.max_ratio = ratio;
      report.worst_h = h;
    }
  };

  const std::int64_t lo = centered_low(m);
  const std::int64_t hi = centered_high(m);
  Frequency h(s, lo);
  if (report.exhaustive) {
    for (std::uint64_t step = 0; step < total; ++step) {
      evaluate(h);
      for (std::size_t j = s; j-- > 0;) {
        if (h[j] < hi) {
          ++h[j];
          break;
        }
        h[j] = lo;
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> digit(lo, hi);
    for (std::uint64_t draw = 0; draw < exhaustive_cap; ++draw) {
      for (auto& x : h) x = digit(rng);
      evaluate(h);
    }
  }
  return report;
}

double frequency_sum(const RationalPointSet& ps, const Limits& limits) {
  const std::uint64_t m = ps.modulus();
  const std::size_t s = ps.dim();
  if (m < 2) throw InvalidArgument("frequency_sum: modulus must be >= 2");
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < s; ++j) {
    if (total > limits.max_frequency_vectors / m) {
      throw CapExceeded("frequency enumeration over C_" + std::to_string(s) + "(" +
                        std::to_string(m) + ") exceeds the budget of " +
                        std::to_string(limits.max_frequency_vectors) + " vectors");
    }
    total *= m;
  }
  const RootTable roots(m);

  // Distinct rows with multiplicities.
  std::vector<std::vector<std::uint64_t>> rows(ps.size());
  for (std::size_t n = 0; n < ps.size(); ++n) {
    const auto x = ps.point(n);
    rows[n].assign(x.begin(), x.end());
  }
  std::sort(rows.begin(), rows.end());
  std::vector<std::vector<std::uint64_t>> distinct;
  std::vector<double> counts;
  for (auto& row : rows) {
    if (!distinct.empty() && distinct.back() == row) {
      counts.back() += 1.0;
    } else {
      distinct.push_back(std::move(row));
      counts.push_back(1.0);
    }
  }
  const std::size_t k = distinct.size();

  const std::int64_t lo = centered_low(m);
  const std::int64_t hi = centered_high(m);
  Frequency h(s, lo);
  // phase[i] = h . y_i mod M, updated incrementally: every odometer step of
  // a digit, including the wrap from hi to lo, adds y_{i,j} modulo M.
  std::vector<std::uint64_t> phase(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      phase[i] = (phase[i] + mul_mod(reduce_mod(lo, m), distinct[i][j], m)) % m;
    }
  }

  const double n_points = static_cast<double>(ps.size());
  long double total_sum = 0.0L;
  for (std::uint64_t step = 0; step < total; ++step) {
    const bool zero = std::all_of(h.begin(), h.end(), [](std::int64_t x) { return x == 0; });
    if (!zero) {
      ComplexAccumulator acc;
      for (std::size_t i = 0; i < k; ++i) acc.add(roots[phase[i]], counts[i]);
      total_sum += static_cast<long double>(std::abs(acc.value()) / n_points / r_weight(h));
    }
    for (std::size_t j = s; j-- > 0;) {
      for (std::size_t i = 0; i < k; ++i) {
        phase[i] += distinct[i][j];
        if (phase[i] >= m) phase[i] -= m;
      }
      if (h[j] < hi) {
        ++h[j];
        break;
      }
      h[j] = lo;
    }
  }
  return static_cast<double>(total_sum);
}

double niederreiter_rhs(const RationalPointSet& ps, const Limits& limits) {
  const double s = static_cast<double>(ps.dim());
  const double m = static_cast<double>(ps.modulus());
  return s / m + 0.5 * frequency_sum(ps, limits);
}

WeightedRhs weighted_niederreiter_rhs(const RationalPointSet& ps, const Weights& w,
                                      const Limits& limits) {
  const std::size_t s = ps.dim();
  if (s > limits.max_subset_dim || s >= 64) {
    throw CapExceeded("weighted_niederreiter_rhs: dimension " + std::to_string(s) +
                      " exceeds the subset-enumeration cap");
  }
  const std::uint64_t m = ps.modulus();
  const std::uint64_t full = (std::uint64_t{1} << s) - 1;

  // Budget over all subsets that will actually be enumerated.
  std::uint64_t budget = 0;
  for (std::uint64_t mask = full; mask >= 1; --mask) {
    if (gamma_of(w, subset_from_mask(mask)) == 0.0) continue;
    std::uint64_t count = 1;
    for (int b = std::popcount(mask); b > 0; --b) {
      if (count > limits.max_frequency_vectors / m) {
        count = limits.max_frequency_vectors + 1;
        break;
      }
      count *= m;
    }
    budget += count;
    if (budget > limits.max_frequency_vectors) {
      throw CapExceeded("weighted_niederreiter_rhs: frequency enumeration exceeds the budget of " +
                        std::to_string(limits.max_frequency_vectors) + " vectors");
    }
  }

  WeightedRhs out;
  bool any = false;
  for (std::uint64_t mask = full; mask >= 1; --mask) {
    Subset u = subset_from_mask(mask);
    const double g = gamma_of(w, u);
    if (g == 0.0) continue;
    const double dim_term = g * static_cast<double>(u.size()) / static_cast<double>(m);
    const double sum_term = g * frequency_sum(project(ps, u), limits);
    if (!any || dim_term > out.dimension_term) {
      out.dimension_term = dim_term;
      out.dimension_subset = u;
    }
    if (!any || sum_term > out.sum_term) {
      out.sum_term = sum_term;
      out.sum_subset = u;
    }
    any = true;
  }
  if (!any) {
    out.dimension_subset = subset_from_mask(full);
    out.sum_subset = out.dimension_subset;
  }
  out.value = out.dimension_term + out.sum_term;
  return out;
}

}  // namespace psets
