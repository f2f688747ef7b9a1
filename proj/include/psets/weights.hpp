#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psets/pointset.hpp"

namespace psets {

/// gamma_j = 0 beyond the listed prefix.
struct ZeroTail {
  friend bool operator==(const ZeroTail&, const ZeroTail&) = default;
};
/// gamma_{K+i} = gamma_K * ratio^i, where K is the last listed index
/// (gamma_0 = 1 when nothing is listed). ratio in (0, 1).
struct GeometricTail {
  double ratio;
  friend bool operator==(const GeometricTail&, const GeometricTail&) = default;
};
/// gamma_j = scale * j^{-exponent} beyond the listed prefix.
struct PowerLawTail {
  double exponent;
  double scale;
  friend bool operator==(const PowerLawTail&, const PowerLawTail&) = default;
};
using TailRule = std::variant<ZeroTail, GeometricTail, PowerLawTail>;

/// gamma_u = prod_{j in u} gamma_j, with gamma_1..gamma_K listed explicitly
/// and the rest supplied by a tail rule.
class ProductWeights {
 public:
  ProductWeights(std::vector<double> prefix, TailRule tail);

  /// gamma_j for j >= 1.
  double gamma(std::size_t j) const;
  const std::vector<double>& prefix() const noexcept { return prefix_; }
  const TailRule& tail() const noexcept { return tail_; }
  /// gamma_1 >= gamma_2 >= ... over the listed prefix and across the
  /// prefix/tail junction. Tails are non-increasing by construction.
  bool non_increasing() const;

  friend bool operator==(const ProductWeights&, const ProductWeights&) = default;

 private:
  std::vector<double> prefix_;
  TailRule tail_;
};

/// Explicit gamma_u per subset; unlisted subsets weigh 0.
class GeneralWeights {
 public:
  explicit GeneralWeights(std::map<Subset, double> entries);

  double gamma(const Subset& u) const;
  const std::map<Subset, double>& entries() const noexcept { return entries_; }

  friend bool operator==(const GeneralWeights&, const GeneralWeights&) = default;

 private:
  std::map<Subset, double> entries_;
};

class Weights {
 public:
  Weights(ProductWeights w) : model_(std::move(w)) {}
  Weights(GeneralWeights w) : model_(std::move(w)) {}

  /// gamma_1 = ... = gamma_s = 1 and zero beyond: the classical, unweighted
  /// case in dimension s.
  static Weights unit(std::size_t s);

  bool is_product() const noexcept { return std::holds_alternative<ProductWeights>(model_); }
  const ProductWeights& product() const;
  const GeneralWeights& general() const;

  friend bool operator==(const Weights&, const Weights&) = default;

 private:
  std::variant<ProductWeights, GeneralWeights> model_;
};

/// gamma_u for a nonempty subset u.
double gamma_of(const Weights& w, const Subset& u);

/// Gamma_{k,t} = (sum_{j > k} gamma_j^t)^{1/t}; Gamma_k = Gamma_{k,1}.
/// Exact for zero and geometric tails. Power-law tails are summed directly
/// for a few thousand terms and closed with an Euler-Maclaurin remainder
/// whose truncation error is below 1e-15 relative.
/// Throws DivergenceError when the tail sum diverges and InvalidArgument
/// for general weights or t <= 0.
double gamma_tail_sum(const Weights& w, std::size_t k, double t = 1.0);

/// Parses the line-based weight-file format:
///
///     product                 general
///     1 0.5                   1 1.0
///     2 0.25                  1,2 0.5
///     tail geometric 0.5      # comment
///
/// Product indices start at 1 and increase by one; the optional final
/// "tail" line is one of "zero", "geometric <r>", "powerlaw <a> <c>".
/// Errors carry the 1-based line number.
Weights parse_weights(std::string_view text);

/// Inverse of parse_weights (17 significant digits).
std::string serialize_weights(const Weights& w);

/// Reads and parses a weight file.
Weights load_weights_file(const std::string& path);

}  // namespace psets
