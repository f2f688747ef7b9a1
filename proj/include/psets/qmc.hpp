#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "psets/limits.hpp"
#include "psets/numtheory.hpp"
#include "psets/pointset.hpp"

namespace psets {

/// f(x) = prod_j (1 + c_j (x_j - 1/2)); integral 1 over the unit cube.
class ProductIntegrand {
 public:
  explicit ProductIntegrand(std::vector<double> coefficients);

  std::size_t dim() const noexcept { return coeffs_.size(); }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  double operator()(std::span<const double> x) const;

 private:
  std::vector<double> coeffs_;
};

struct QmcEstimate {
  double estimate = 0.0;
  double abs_error = 0.0;  // |estimate - 1|
};

/// Equal-weight average of f over the points (compensated summation).
QmcEstimate qmc_integrate(const RationalPointSet& ps, const ProductIntegrand& f);

/// Hardy-Krause variation of the product integrand:
/// prod_j (1 + 3|c_j|/2) - prod_j (1 + |c_j|/2).
double hk_variation(const ProductIntegrand& f);

struct ConvergenceRow {
  std::uint64_t p = 0;
  std::uint64_t points = 0;
  double estimate = 0.0;
  double error = 0.0;
  /// Exact star discrepancy when it fit in the corner budget.
  std::optional<double> dstar;
  /// dstar * V(f), or the explicit bound with unit weights times V(f)
  /// when the exact discrepancy was over budget.
  double kh_bound = 0.0;
};

/// One row per prime, in the given order.
std::vector<ConvergenceRow> convergence_table(PSetKind kind, std::size_t s,
                                              const ProductIntegrand& f,
                                              std::span<const Prime> primes,
                                              const Limits& limits = {});

}  // namespace psets
