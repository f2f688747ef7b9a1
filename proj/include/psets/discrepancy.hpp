#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "psets/limits.hpp"
#include "psets/pointset.hpp"
#include "psets/weights.hpp"

namespace psets {

/// Upper corner z of the anchored box [0, z), z in [0,1]^s.
using Box = std::vector<double>;

/// Which count attains a critical-corner value.
///   Open   : vol(y) - #{x : x < y}/N   (box [0, y))
///   Closed : #{x : x <= y}/N - vol(y)  (limit of [0, y + eps))
enum class BoxSide { Open, Closed };

struct DiscrepancyResult {
  double value = 0.0;
  /// Corner numerators over `modulus`; a numerator equal to the modulus is
  /// the coordinate 1.
  std::vector<std::uint64_t> witness;
  std::uint64_t modulus = 1;
  BoxSide side = BoxSide::Open;
  /// Exact mode: value == numerator / denominator (reduced).
  bool exact = false;
  unsigned __int128 numerator = 0;
  unsigned __int128 denominator = 1;

  Box witness_box() const;
  /// "num/den" in exact mode, empty otherwise.
  std::string fraction() const;
};

/// A_N(prod [0, z_j)) / N - prod z_j with strict coordinate comparison
/// x_j < z_j on the correctly rounded coordinates.
double local_discrepancy(const RationalPointSet& ps, std::span<const double> z);

/// Signed local discrepancy at a grid corner given by numerators over the
/// point-set modulus, with the requested count:
/// Open returns A_open/N - vol, Closed returns A_closed/N - vol.
long double corner_local_discrepancy(const RationalPointSet& ps,
                                     std::span<const std::uint64_t> corner, BoxSide side);

/// max over nonempty u of gamma_u |Delta(z_u, 1)|.
double weighted_local_discrepancy(const RationalPointSet& ps, const Weights& w,
                                  std::span<const double> z, const Limits& limits = {});

/// Exact star discrepancy by critical-corner enumeration over
/// prod_j (C_j + {1}), C_j the distinct j-th coordinates.
///
/// Corner counts are integers. Scores are compared as exact 128-bit
/// integers when bit_width(N) + s * bit_width(M) <= 126, otherwise in long
/// double. The witness is the first maximizing corner in lexicographic
/// order, the closed count checked before the open count at each corner.
/// Throws CapExceeded when the corner grid exceeds limits.max_corner_ops.
DiscrepancyResult star_discrepancy_exact(const RationalPointSet& ps, const Limits& limits = {});

/// Certified lower bound on the star discrepancy: the largest critical-corner
/// value seen over `trials` uniformly drawn grid corners (mt19937_64 seeded
/// with `seed`) and over every box anchored at a point of the set.
double star_discrepancy_sampled_lb(const RationalPointSet& ps, std::uint64_t trials,
                                   std::uint64_t seed);

struct WeightedDiscrepancyResult {
  double value = 0.0;
  Subset subset;
  /// Exact star discrepancy of the projection onto `subset`.
  DiscrepancyResult projected;
  /// Full-dimensional witness: projected witness on `subset`, 1 elsewhere.
  Box witness_box(std::size_t dim) const;
};

/// max over nonempty u with gamma_u > 0 of gamma_u * D*(project(ps, u)).
/// Subsets are scanned from [s] downwards in bitmask order and the first
/// strict maximum wins, so with unit weights the witness subset is [s].
/// With every gamma_u = 0 the value is 0 and the subset is [s].
WeightedDiscrepancyResult weighted_star_discrepancy_exact(const RationalPointSet& ps,
                                                          const Weights& w,
                                                          const Limits& limits = {});

/// Subset for a bitmask over coordinates (bit j-1 set <=> j in u).
Subset subset_from_mask(std::uint64_t mask);

}  // namespace psets
