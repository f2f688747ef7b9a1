#include "psets/bounds.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "psets/error.hpp"
#include "psets/format.hpp"

namespace psets {

namespace {

// H(n) = 1 + 1/2 + ... + 1/n. Past 10^4 the asymptotic series is exact to
// well below double rounding (next term ~ 1/(252 n^6)).
long double harmonic_number(std::uint64_t n) {
  if (n <= 10'000) {
    long double sum = 0.0L;
    for (std::uint64_t h = n; h >= 1; --h) sum += 1.0L / static_cast<long double>(h);
    return sum;
  }
  const long double x = static_cast<long double>(n);
  const long double inv2 = 1.0L / (x * x);
  return std::log(x) + 0.577215664901532860606512090082402431L + 1.0L / (2.0L * x) -
         inv2 * (1.0L / 12.0L - inv2 * (1.0L / 120.0L - inv2 / 252.0L));
}

}  // namespace

double harmonic_sum_exact(std::uint64_t modulus) {
  if (modulus < 2) throw InvalidArgument("harmonic_sum_exact: modulus must be >= 2");
  // C(M) \ {0} = {-(M-1)/2 .. -1} u {1 .. M/2} (integer division).
  return static_cast<double>(harmonic_number((modulus - 1) / 2) + harmonic_number(modulus / 2));
}

double harmonic_sum_estimate(std::uint64_t modulus) {
  if (modulus < 2) throw InvalidArgument("harmonic_sum_estimate: modulus must be >= 2");
  return 2.0 * (1.0 + std::log(static_cast<double>(modulus) / 2.0));
}

double BoundReport::constant(const std::string& name) const {
  for (const auto& [key, v] : constants) {
    if (key == name) return v;
  }
  throw InvalidArgument("bound report has no constant '" + name + "'");
}

BoundShape bound_shape(PSetKind kind) noexcept {
  switch (kind) {
    case PSetKind::KorobovP:
      return {2.0, 4.0, 0.5};
    case PSetKind::KorobovQ:
      return {3.0, 6.0, 1.0};
    case PSetKind::HuaWangR:
      return {2.0, 4.0, 1.0};
  }
  return {0.0, 0.0, 0.0};
}

BoundReport explicit_bound(PSetKind kind, Prime p, std::size_t s, const Weights& w,
                           const Limits& limits) {
  if (s == 0) throw InvalidArgument("explicit_bound: s must be >= 1");
  const BoundShape shape = bound_shape(kind);
  const double pd = static_cast<double>(p.value());
  const double log_p = std::log(pd);
  const double base = shape.base_factor * log_p;
  const double prefactor = shape.prefactor_numerator / std::pow(pd, shape.p_exponent);

  BoundReport report;
  report.kind = kind;
  report.p = p.value();
  report.s = s;

  // log of gamma_u (max u) base^{|u|} for the best subset seen so far.
  double best_log = -std::numeric_limits<double>::infinity();
  if (w.is_product()) {
    if (s > 1'000'000) throw CapExceeded("explicit_bound: s above 10^6");
    const ProductWeights& pw = w.product();
    double prefix_log = 0.0;  // sum over j < m of max(0, log(gamma_j base))
    std::size_t best_m = 0;
    for (std::size_t m = 1; m <= s; ++m) {
      const double factor = pw.gamma(m) * base;
      if (factor > 0.0) {
        const double term = std::log(static_cast<double>(m)) + std::log(factor) + prefix_log;
        if (term > best_log) {
          best_log = term;
          best_m = m;
        }
        if (factor > 1.0) prefix_log += std::log(factor);
      }
    }
    if (best_m > 0) {
      for (std::size_t j = 1; j < best_m; ++j) {
        if (pw.gamma(j) * base > 1.0) report.maximizing_subset.push_back(j);
      }
      report.maximizing_subset.push_back(best_m);
    }
  } else {
    if (s > limits.max_subset_dim) {
      throw CapExceeded("explicit_bound: general weights limited to s <= " +
                        std::to_string(limits.max_subset_dim));
    }
    for (const auto& [u, g] : w.general().entries()) {
      if (u.back() > s || g == 0.0) continue;
      const double term = std::log(g) + std::log(static_cast<double>(u.back())) +
                          static_cast<double>(u.size()) * std::log(base);
      if (term > best_log) {
        best_log = term;
        report.maximizing_subset = u;
      }
    }
  }

  const double max_term = report.maximizing_subset.empty() ? 0.0 : std::exp(best_log);
  if (report.maximizing_subset.empty()) report.maximizing_subset = {1};
  report.value = prefactor * max_term;

  const std::uint64_t modulus = kind == PSetKind::KorobovQ ? p.value() * p.value() : p.value();
  report.constants = {
      {"log_p", log_p},
      {"prefactor", prefactor},
      {"base", base},
      {"max_term", max_term},
      {"harmonic_sum", harmonic_sum_exact(modulus)},
      {"harmonic_estimate", harmonic_sum_estimate(modulus)},
  };
  return report;
}

double EnvelopeParams::constant(PSetKind kind) const noexcept {
  switch (kind) {
    case PSetKind::KorobovP:
      return c_korobov_p;
    case PSetKind::KorobovQ:
      return c_korobov_q;
    case PSetKind::HuaWangR:
      return c_hua_wang_r;
  }
  return 0.0;
}

namespace {

constexpr double kE = std::numbers::e;

// Smallest k >= 0 with passes(k), for a predicate that is monotone in k.
template <class Pred>
std::size_t smallest_passing(Pred passes) {
  if (passes(0)) return 0;
  std::size_t fail = 0;
  std::size_t pass = 1;
  while (!passes(pass)) {
    fail = pass;
    if (pass > (std::size_t{1} << 61)) {
      throw CapExceeded("envelope cutoff search passed 2^62 without meeting the threshold");
    }
    pass *= 2;
  }
  while (pass - fail > 1) {
    const std::size_t mid = fail + (pass - fail) / 2;
    (passes(mid) ? pass : fail) = mid;
  }
  return pass;
}

// sup over x >= lower of (n log x - x delta/2), returned as the maximizing x.
double peak_of_power_times_decay(double n, double delta, double lower) {
  return std::max(lower, 2.0 * n / delta);
}

// c = sup_{x >= log 2} A (a x) max(1, a x)^k e^{-x delta/2}, a = B Gamma_0.
double constant_summable(double prefactor, double a, std::size_t k, double delta) {
  if (a == 0.0) return 0.0;
  const double log2 = std::numbers::ln2;
  const double kd = static_cast<double>(k);
  const auto log_f = [&](double x) {
    const double ax = a * x;
    return std::log(prefactor) + std::log(ax) + kd * std::log(std::max(1.0, ax)) - x * delta / 2.0;
  };
  const double knee = 1.0 / a;  // a x = 1
  double best = -std::numeric_limits<double>::infinity();
  if (knee > log2) {
    // A a x e^{-x delta/2} on [log 2, knee].
    best = std::max(best, log_f(std::clamp(2.0 / delta, log2, knee)));
  }
  best = std::max(best, log_f(peak_of_power_times_decay(kd + 1.0, delta, std::max(log2, knee))));
  return std::exp(best);
}

// c = sup_{x >= log 2} A max(1, b x)^h e^{-x delta/2}, b = B gamma_1.
double constant_power_summable(double prefactor, double b, std::size_t h, double delta) {
  const double log2 = std::numbers::ln2;
  const double hd = static_cast<double>(h);
  const auto log_f = [&](double x) {
    return std::log(prefactor) + hd * std::log(std::max(1.0, b * x)) - x * delta / 2.0;
  };
  double best = log_f(log2);
  if (b > 0.0 && h > 0) {
    const double knee = std::max(log2, 1.0 / b);
    best = std::max(best, log_f(peak_of_power_times_decay(hd, delta, knee)));
  }
  return std::exp(best);
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("delta must lie in (0, 1/2)");
}

}  // namespace

EnvelopeParams envelope_params(const Weights& w, double delta, std::optional<double> t) {
  require_delta(delta);
  if (!w.is_product()) throw InvalidArgument("envelope bound requires product weights");
  const ProductWeights& pw = w.product();
  if (!pw.non_increasing()) throw InvalidArgument("envelope bound requires non-increasing weights");
  if (t && (!(*t > 0.0) || !std::isfinite(*t))) throw InvalidArgument("t must be positive");

  EnvelopeParams out;
  out.delta = delta;
  out.t = t;
  out.gamma_first = pw.gamma(1);
  const double tt = t.value_or(1.0);
  out.threshold = t ? delta / (8.0 * std::exp(tt) * tt) : delta / (8.0 * kE);

  // Gamma_{k,t}; the summable case needs t = 1 and a strict threshold.
  const auto tail = [&](std::size_t k) { return gamma_tail_sum(w, k, tt); };
  const auto passes = [&](std::size_t k) {
    return t ? tail(k) <= out.threshold : tail(k) < out.threshold;
  };
  out.cutoff = smallest_passing(passes);
  out.cutoff_tail = tail(out.cutoff);
  out.previous_tail = out.cutoff == 0 ? std::numeric_limits<double>::quiet_NaN() : tail(out.cutoff - 1);

  if (!t) {
    out.gamma_total = gamma_tail_sum(w, 0, 1.0);
    const auto c_for = [&](PSetKind kind) {
      const BoundShape shape = bound_shape(kind);
      return constant_summable(shape.prefactor_numerator, shape.base_factor * out.gamma_total,
                               out.cutoff, delta);
    };
    out.c_korobov_p = c_for(PSetKind::KorobovP);
    out.c_korobov_q = c_for(PSetKind::KorobovQ);
    out.c_hua_wang_r = c_for(PSetKind::HuaWangR);
    out.certified = true;
  } else {
    try {
      out.gamma_total = gamma_tail_sum(w, 0, 1.0);
    } catch (const DivergenceError&) {
      out.gamma_total = std::numeric_limits<double>::infinity();
    }
    const auto c_for = [&](PSetKind kind) {
      const BoundShape shape = bound_shape(kind);
      return constant_power_summable(shape.prefactor_numerator,
                                     shape.base_factor * out.gamma_first, out.cutoff, delta);
    };
    out.c_korobov_p = c_for(PSetKind::KorobovP);
    out.c_korobov_q = c_for(PSetKind::KorobovQ);
    out.c_hua_wang_r = c_for(PSetKind::HuaWangR);
    out.certified = tt == 1.0;
  }
  return out;
}

double envelope_bound_real(PSetKind kind, long double p, std::size_t s,
                           const EnvelopeParams& params) {
  require_delta(params.delta);
  if (!(p >= 2.0L)) throw InvalidArgument("envelope_bound: p must be >= 2");
  const BoundShape shape = bound_shape(kind);
  const long double exponent = static_cast<long double>(shape.p_exponent) - params.delta;
  long double c = params.constant(kind);
  if (params.scales_with_dimension()) c *= static_cast<long double>(s);
  return static_cast<double>(c / std::pow(p, exponent));
}

double envelope_bound(PSetKind kind, Prime p, std::size_t s, const EnvelopeParams& params) {
  return envelope_bound_real(kind, static_cast<long double>(p.value()), s, params);
}

namespace {

// Exact integer value of a finite, integral, non-negative long double.
mpz_class mpz_from_integral(long double v) {
  int e = 0;
  const long double frac = std::frexp(v, &e);  // v = frac * 2^e, frac in [0.5, 1)
  if (e <= 64) return mpz_class(std::to_string(static_cast<unsigned long long>(v)));
  const auto mantissa = static_cast<unsigned long long>(std::ldexp(frac, 64));
  mpz_class out(std::to_string(mantissa));
  out <<= static_cast<mp_bitcnt_t>(e - 64);
  return out;
}

long double mpz_to_long_double(const mpz_class& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
}

}  // namespace

NMinResult n_min_from_bound(PSetKind kind, double eps, std::size_t s, const Weights& w,
                            double delta, std::optional<double> t) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  if (s == 0) throw InvalidArgument("s must be >= 1");
  const EnvelopeParams params = envelope_params(w, delta, t);
  const BoundShape shape = bound_shape(kind);

  NMinResult out;
  long double c = params.constant(kind);
  if (params.scales_with_dimension()) c *= static_cast<long double>(s);
  out.constant = static_cast<double>(c);
  const long double exponent = 1.0L / (static_cast<long double>(shape.p_exponent) - delta);
  out.exponent = static_cast<double>(exponent);

  // The 1e-15 inflation keeps the bound at M strictly below eps after double
  // rounding; without it the bound can land one ulp above eps.
  const long double target =
      std::ceil(std::pow(c / static_cast<long double>(eps), exponent) * (1.0L + 1e-15L));
  if (!std::isfinite(target)) throw OverflowError("n_min_from_bound: required modulus overflows");
  // Bertrand's window M <= p < 2M needs M >= 2.
  const mpz_class m = target < 2.0L ? mpz_class(2) : mpz_from_integral(target);
  out.m = m.get_str(10);

  const mpz_class p(next_prime_decimal(out.m));
  out.p_value = mpz_to_long_double(p);
  out.achieved = envelope_bound_real(kind, out.p_value, s, params);
  if (!(out.achieved <= eps)) {
    throw InvariantViolation("n_min_from_bound: bound at p = " + p.get_str(10) + " exceeds eps");
  }
  if (p < m || p >= 2 * m) {
    throw InvariantViolation("n_min_from_bound: prime " + p.get_str(10) +
                             " left the Bertrand window [M, 2M)");
  }
  out.p = p.get_str(10);
  out.p_certain = mpz_sizeinbase(p.get_mpz_t(), 2) <= 64;
  out.points = (kind == PSetKind::KorobovP ? p : mpz_class(p * p)).get_str(10);
  return out;
}

}  // namespace psets
