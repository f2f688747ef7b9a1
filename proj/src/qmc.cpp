#include "psets/qmc.hpp"

#include <cmath>

#include "psets/bounds.hpp"
#include "psets/discrepancy.hpp"
#include "psets/error.hpp"
#include "psets/weights.hpp"

namespace psets {

ProductIntegrand::ProductIntegrand(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw InvalidArgument("integrand needs at least one coefficient");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw InvalidArgument("integrand coefficients must be finite");
  }
}

double ProductIntegrand::operator()(std::span<const double> x) const {
  if (x.size() != coeffs_.size()) throw InvalidArgument("integrand dimension mismatch");
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) v *= 1.0 + coeffs_[j] * (x[j] - 0.5);
  return v;
}

QmcEstimate qmc_integrate(const RationalPointSet& ps, const ProductIntegrand& f) {
  if (ps.dim() != f.dim()) throw InvalidArgument("qmc_integrate: dimension mismatch");
  std::vector<double> x(ps.dim());
  // Neumaier summation.
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t n = 0; n < ps.size(); ++n) {
    for (std::size_t j = 0; j < ps.dim(); ++j) x[j] = ps.coordinate(n, j);
    const double v = f(x);
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  QmcEstimate out;
  out.estimate = (sum + comp) / static_cast<double>(ps.size());
  out.abs_error = std::abs(out.estimate - 1.0);
  return out;
}

double hk_variation(const ProductIntegrand& f) {
  double with = 1.0;
  double without = 1.0;
  for (double c : f.coefficients()) {
    const double a = std::abs(c);
    with *= 1.0 + 1.5 * a;
    without *= 1.0 + 0.5 * a;
  }
  return with - without;
}

std::vector<ConvergenceRow> convergence_table(PSetKind kind, std::size_t s,
                                              const ProductIntegrand& f,
                                              std::span<const Prime> primes,
                                              const Limits& limits) {
  if (f.dim() != s) throw InvalidArgument("convergence_table: integrand dimension mismatch");
  const double variation = hk_variation(f);
  std::vector<ConvergenceRow> rows;
  rows.reserve(primes.size());
  for (Prime p : primes) {
    const RationalPointSet ps = generate(kind, p, s, limits);
    const QmcEstimate est = qmc_integrate(ps, f);
    ConvergenceRow row;
    row.p = p.value();
    row.points = ps.size();
    row.estimate = est.estimate;
    row.error = est.abs_error;
    try {
      row.dstar = star_discrepancy_exact(ps, limits).value;
      row.kh_bound = *row.dstar * variation;
    } catch (const CapExceeded&) {
      row.dstar.reset();
      row.kh_bound = explicit_bound(kind, p, s, Weights::unit(s), limits).value * variation;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace psets
