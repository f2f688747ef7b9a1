#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psets/limits.hpp"
#include "psets/numtheory.hpp"
#include "psets/pointset.hpp"
#include "psets/weights.hpp"

namespace psets {

/// sum over h in C(M) \ {0} of 1/|h|.
double harmonic_sum_exact(std::uint64_t modulus);

/// 2 (1 + log(M/2)), an upper bound for harmonic_sum_exact(M).
double harmonic_sum_estimate(std::uint64_t modulus);

struct BoundReport {
  PSetKind kind{};
  std::uint64_t p = 0;
  std::size_t s = 0;
  double value = 0.0;
  Subset maximizing_subset;
  /// Named intermediates in a fixed order, for audit output.
  std::vector<std::pair<std::string, double>> constants;

  /// Looks up a constant by name; throws InvalidArgument when absent.
  double constant(const std::string& name) const;
};

/// Per-kind shape of the explicit bound:
///   value = prefactor * max_u gamma_u (max u) (base_factor * log p)^{|u|}
/// with (prefactor, base_factor) = (2/sqrt p, 4), (3/p, 6), (2/p, 4) for
/// P, Q and R. The p-exponent is 1/2 for P and 1 for Q and R.
struct BoundShape {
  double prefactor_numerator;  // 2 or 3
  double base_factor;          // 4 or 6
  double p_exponent;           // 1/2 or 1
};
BoundShape bound_shape(PSetKind kind) noexcept;

/// Explicit discrepancy bound valid for arbitrary weights (natural log).
///
/// Product weights: for each candidate m = max u the best subset takes m
/// together with every j < m whose factor gamma_j * base * log p exceeds 1,
/// so the maximum costs O(s) and is evaluated in log space (s up to 10^6).
/// General weights: every listed subset with max u <= s is scanned
/// (s <= limits.max_subset_dim).
/// With all relevant weights zero the value is 0 and the subset is {1}.
BoundReport explicit_bound(PSetKind kind, Prime p, std::size_t s, const Weights& w,
                           const Limits& limits = {});

/// Dimension-independent envelope for non-increasing product weights.
///
/// Without t: cutoff = k0, the smallest k >= 0 with Gamma_k < delta/(8e),
/// and for each kind
///   c = sup_{x >= log 2} A (B Gamma_0 x) max(1, B Gamma_0 x)^{k0} e^{-x delta/2}
/// where (A, B) = (2, 4), (3, 6), (2, 4) for P, Q, R. Whenever
/// 4 Gamma_0 log 2 >= 1 this is sup 2 (4 Gamma_0 x)^{k0+1} e^{-x delta/2}
/// for P. The factor past the cutoff, prod_{k0 < j} B gamma_j log p, is at
/// most p^{B Gamma_{k0}} <= p^{delta/2}, which gives
///   D* <= c / p^{e - delta},  e = 1/2 (P) or 1 (Q, R).
///
/// With t: cutoff = h0, the smallest h >= 0 with Gamma_{h,t} <= delta/(8 e^t t),
/// and c = sup_{x >= log 2} A max(1, B gamma_1 x)^{h0} e^{-x delta/2}; the bound
/// gains a factor s. For t != 1 the factor past the cutoff is taken to be at
/// most p^{delta/2} as asserted by the derivation this follows; `certified`
/// is false in that case.
struct EnvelopeParams {
  double delta = 0.0;
  std::optional<double> t;
  std::size_t cutoff = 0;
  double threshold = 0.0;
  /// Gamma_0 (sum of all gamma_j); +inf when only the t-th powers converge.
  double gamma_total = 0.0;
  double gamma_first = 0.0;
  /// Gamma_{cutoff} or Gamma_{cutoff,t}.
  double cutoff_tail = 0.0;
  /// Gamma at cutoff - 1 (NaN when cutoff = 0); >= threshold by minimality.
  double previous_tail = 0.0;
  double c_korobov_p = 0.0;
  double c_korobov_q = 0.0;
  double c_hua_wang_r = 0.0;
  bool certified = true;

  double constant(PSetKind kind) const noexcept;
  bool scales_with_dimension() const noexcept { return t.has_value(); }
};

/// Throws InvalidArgument for delta outside (0, 1/2), t <= 0, general or
/// increasing weights; DivergenceError when the required tail diverges;
/// CapExceeded when the cutoff search passes 2^62.
EnvelopeParams envelope_params(const Weights& w, double delta,
                               std::optional<double> t = std::nullopt);

/// c / p^{e - delta}, times s when the params carry a t.
double envelope_bound(PSetKind kind, Prime p, std::size_t s, const EnvelopeParams& params);
/// Same for a real-valued p (used for primes beyond 64 bits).
double envelope_bound_real(PSetKind kind, long double p, std::size_t s,
                           const EnvelopeParams& params);

struct NMinResult {
  /// ceil((c_eff / eps)^{1/(e - delta)}), at least 2 (decimal).
  std::string m;
  /// Smallest prime >= M whose envelope is <= eps (decimal).
  std::string p;
  /// True when p < 2^64 (primality then certain).
  bool p_certain = true;
  long double p_value = 0.0L;
  /// Points in the set: p (KorobovP) or p^2 (KorobovQ, HuaWangR), decimal.
  std::string points;
  double constant = 0.0;  // c, times s when the params carry a t
  double exponent = 0.0;  // 1 / (e - delta)
  double achieved = 0.0;  // envelope bound at p
};

/// Inverts the envelope bound to the first prime whose bound is at most
/// eps; M <= p < 2M holds for the returned prime.
NMinResult n_min_from_bound(PSetKind kind, double eps, std::size_t s, const Weights& w,
                            double delta, std::optional<double> t = std::nullopt);

}  // namespace psets
