#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psets/limits.hpp"
#include "psets/numtheory.hpp"

namespace psets {

/// The three p-set constructions.
///   KorobovP : (n, n^2, ..., n^s) / p        for n in [0, p)
///   KorobovQ : (n, n^2, ..., n^s) / p^2      for n in [0, p^2)
///   HuaWangR : (k, a k, ..., a^{s-1} k) / p  for a, k in [0, p)
enum class PSetKind { KorobovP, KorobovQ, HuaWangR };

/// "P", "Q" or "R".
std::string_view kind_letter(PSetKind kind) noexcept;
/// Accepts the letters P/Q/R (either case) and the full enum names.
PSetKind parse_kind(std::string_view text);

/// Nonempty set of 1-based coordinate indices, kept sorted and unique.
using Subset = std::vector<std::size_t>;

/// Throws InvalidArgument unless `u` is nonempty, strictly increasing and
/// within [1, dim].
void validate_subset(const Subset& u, std::size_t dim);

/// "1,3,4"
std::string format_subset(const Subset& u);

/// Multiset of N points in [0,1)^s with coordinates numerator / modulus.
/// Numerators are stored row-major; duplicates are kept.
class RationalPointSet {
 public:
  RationalPointSet(std::uint64_t modulus, std::size_t dim, std::vector<std::uint64_t> numerators,
                   std::optional<PSetKind> kind = std::nullopt);

  std::uint64_t modulus() const noexcept { return modulus_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return size_; }
  std::optional<PSetKind> kind() const noexcept { return kind_; }

  std::span<const std::uint64_t> point(std::size_t n) const noexcept {
    return {numerators_.data() + n * dim_, dim_};
  }
  std::uint64_t numerator(std::size_t n, std::size_t j) const noexcept {
    return numerators_[n * dim_ + j];
  }
  /// numerator / modulus, correctly rounded.
  double coordinate(std::size_t n, std::size_t j) const noexcept {
    return static_cast<double>(numerator(n, j)) / static_cast<double>(modulus_);
  }
  std::span<const std::uint64_t> numerators() const noexcept { return numerators_; }

 private:
  std::uint64_t modulus_;
  std::size_t dim_;
  std::size_t size_;
  std::vector<std::uint64_t> numerators_;
  std::optional<PSetKind> kind_;
};

/// Builds the p-set of the given kind. Throws CapExceeded when N * s exceeds
/// limits.max_pointset_entries and InvalidArgument for s = 0.
RationalPointSet generate(PSetKind kind, Prime p, std::size_t s, const Limits& limits = {});

/// Keeps the coordinates listed in `u` (1-based), preserving order and
/// multiplicity. The result carries no kind tag unless u = [s].
RationalPointSet project(const RationalPointSet& ps, const Subset& u);

}  // namespace psets
