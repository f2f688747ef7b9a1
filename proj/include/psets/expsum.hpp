#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "psets/limits.hpp"
#include "psets/numtheory.hpp"
#include "psets/pointset.hpp"
#include "psets/weights.hpp"

namespace psets {

/// Frequency entries h_j, interpreted modulo the sum's modulus M. The
/// canonical range is C(M) = (-M/2, M/2].
using Frequency = std::vector<std::int64_t>;

/// Smallest and largest element of C(M).
std::int64_t centered_low(std::uint64_t modulus) noexcept;
std::int64_t centered_high(std::uint64_t modulus) noexcept;

/// r(h) = prod_j max(1, |h_j|).
double r_weight(std::span<const std::int64_t> h) noexcept;

/// The M-th roots of unity e^{2 pi i k / M}; the points 1, i, -1, -i are
/// stored exactly.
class RootTable {
 public:
  explicit RootTable(std::uint64_t modulus);
  const std::complex<double>& operator[](std::uint64_t k) const noexcept { return roots_[k]; }
  std::uint64_t modulus() const noexcept { return roots_.size(); }

 private:
  std::vector<std::complex<double>> roots_;
};

struct ExpSumValue {
  std::complex<double> value;
  double magnitude = 0.0;
  std::uint64_t terms = 0;
};

/// sum_{n=0}^{M-1} e((h_1 n + h_2 n^2 + ... + h_s n^s) / M) with M = p or
/// p^2 (modulus_power 1 or 2).
ExpSumValue korobov_sum(std::span<const std::int64_t> h, Prime p, int modulus_power);

/// sum_{a=0}^{p-1} sum_{k=0}^{p-1} e(k (h_1 + h_2 a + ... + h_s a^{s-1}) / p).
/// The inner sum is p or 0, so the value is p times the number of roots of
/// the polynomial modulo p.
ExpSumValue hua_wang_double_sum(std::span<const std::int64_t> h, Prime p);

/// The three exponential-sum families with a (s-1)-type bound.
enum class SumFamily {
  KorobovModP,     // |korobov_sum mod p|   <= (s-1) sqrt(p)
  KorobovModP2,    // |korobov_sum mod p^2| <= (s-1) p
  HuaWangDouble,   // |hua_wang_double_sum| <= (s-1) p
};

/// Maps the lemma labels 3, 5 and 6 used on the command line to families.
SumFamily sum_family_from_label(int label);

struct WeilCheckReport {
  SumFamily family{};
  std::uint64_t p = 0;
  std::size_t s = 0;
  std::uint64_t modulus = 0;
  double bound = 0.0;
  bool exhaustive = true;
  std::uint64_t vectors_checked = 0;
  std::uint64_t violations = 0;
  double max_magnitude = 0.0;
  /// max |S| / bound; for a zero bound it is 0 while every |S| stays within
  /// tolerance and +inf otherwise.
  double max_ratio = 0.0;
  Frequency worst_h;
};

/// Magnitude tolerance used when comparing sums against their bounds.
inline constexpr double kSumTolerance = 1e-9;

/// Checks the family's bound on every h in C_s(M) with p not dividing some
/// h_j, when M^s <= exhaustive_cap. Vectors are visited in odometer order
/// (last coordinate fastest, each running from centered_low to
/// centered_high); the reported worst_h is the first vector whose ratio
/// exceeds all earlier ones by more than 1e-12. Above the cap, exhaustive_cap
/// vectors are drawn uniformly from C_s(M) with mt19937_64(seed) instead.
WeilCheckReport weil_bound_check(SumFamily family, Prime p, std::size_t s,
                                 std::uint64_t exhaustive_cap, std::uint64_t seed = 0);

/// s/M + (1/2) sum_{h in C_s*(M)} (1/r(h)) |(1/N) sum_n e(h . y_n / M)|.
/// Throws CapExceeded when M^s > limits.max_frequency_vectors.
double niederreiter_rhs(const RationalPointSet& ps, const Limits& limits = {});

/// The sum over h alone (no s/M term and no 1/2 factor).
double frequency_sum(const RationalPointSet& ps, const Limits& limits = {});

struct WeightedRhs {
  double value = 0.0;
  double dimension_term = 0.0;  // max_u gamma_u |u| / M
  Subset dimension_subset;
  double sum_term = 0.0;  // max_u gamma_u frequency_sum(P_u)
  Subset sum_subset;
};

/// max_u gamma_u |u|/M + max_u gamma_u frequency_sum(project(ps, u)), the
/// sum taken without a 1/2 factor. Subsets with gamma_u = 0 are skipped;
/// subsets are scanned from [s] downwards in bitmask order, first strict
/// maximum wins.
WeightedRhs weighted_niederreiter_rhs(const RationalPointSet& ps, const Weights& w,
                                      const Limits& limits = {});

}  // namespace psets
