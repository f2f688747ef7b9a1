#pragma once

#include <cstddef>
#include <cstdint>

namespace psets {

/// Work and size budgets shared by the enumeration-heavy operations.
struct Limits {
  /// Upper bound on N * s numerator entries of a generated point set.
  std::uint64_t max_pointset_entries = 10'000'000;
  /// Upper bound on the number of grid corners visited by the exact
  /// star discrepancy (per projection).
  std::uint64_t max_corner_ops = 1'000'000'000;
  /// Upper bound on the number of frequency vectors enumerated by the
  /// Niederreiter-type right-hand sides and the exhaustive sum checks.
  std::uint64_t max_frequency_vectors = 10'000'000;
  /// Largest dimension for which the 2^s coordinate subsets are enumerated.
  std::size_t max_subset_dim = 20;

  /// Defaults, with PSET_DISC_MAX_OPS (a positive integer) replacing the
  /// corner and frequency budgets when set.
  static Limits from_environment();
};

}  // namespace psets
