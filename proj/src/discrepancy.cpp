#include "psets/discrepancy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "psets/error.hpp"
#include "psets/format.hpp"

namespace psets {

Box DiscrepancyResult::witness_box() const {
  Box z(witness.size());
  for (std::size_t j = 0; j < witness.size(); ++j) {
    z[j] = static_cast<double>(witness[j]) / static_cast<double>(modulus);
  }
  return z;
}

std::string DiscrepancyResult::fraction() const {
  if (!exact) return {};
  if (denominator == 1) return format_u128(numerator);
  return format_u128(numerator) + "/" + format_u128(denominator);
}

Box WeightedDiscrepancyResult::witness_box(std::size_t dim) const {
  Box z(dim, 1.0);
  const Box inner = projected.witness_box();
  for (std::size_t i = 0; i < subset.size() && i < inner.size(); ++i) z[subset[i] - 1] = inner[i];
  return z;
}

Subset subset_from_mask(std::uint64_t mask) {
  Subset u;
  for (std::size_t j = 0; mask != 0; ++j, mask >>= 1) {
    if (mask & 1) u.push_back(j + 1);
  }
  return u;
}

double local_discrepancy(const RationalPointSet& ps, std::span<const double> z) {
  if (z.size() != ps.dim()) throw InvalidArgument("local_discrepancy: box dimension mismatch");
  double volume = 1.0;
  for (double zj : z) {
    if (!(zj >= 0.0 && zj <= 1.0)) throw InvalidArgument("local_discrepancy: box outside [0,1]^s");
    volume *= zj;
  }
  std::size_t inside = 0;
  for (std::size_t n = 0; n < ps.size(); ++n) {
    bool in = true;
    for (std::size_t j = 0; j < ps.dim() && in; ++j) in = ps.coordinate(n, j) < z[j];
    inside += in ? 1 : 0;
  }
  return static_cast<double>(inside) / static_cast<double>(ps.size()) - volume;
}

long double corner_local_discrepancy(const RationalPointSet& ps,
                                     std::span<const std::uint64_t> corner, BoxSide side) {
  if (corner.size() != ps.dim()) throw InvalidArgument("corner dimension mismatch");
  long double volume = 1.0L;
  for (std::uint64_t y : corner) {
    if (y > ps.modulus()) throw InvalidArgument("corner numerator exceeds the modulus");
    volume *= static_cast<long double>(y) / static_cast<long double>(ps.modulus());
  }
  std::size_t count = 0;
  for (std::size_t n = 0; n < ps.size(); ++n) {
    bool in = true;
    for (std::size_t j = 0; j < ps.dim() && in; ++j) {
      const std::uint64_t x = ps.numerator(n, j);
      in = side == BoxSide::Open ? x < corner[j] : x <= corner[j];
    }
    count += in ? 1 : 0;
  }
  return static_cast<long double>(count) / static_cast<long double>(ps.size()) - volume;
}

double weighted_local_discrepancy(const RationalPointSet& ps, const Weights& w,
                                  std::span<const double> z, const Limits& limits) {
  const std::size_t s = ps.dim();
  if (z.size() != s) throw InvalidArgument("weighted_local_discrepancy: box dimension mismatch");
  if (s > limits.max_subset_dim || s >= 64) {
    throw CapExceeded("weighted_local_discrepancy: dimension " + std::to_string(s) +
                      " exceeds the subset-enumeration cap");
  }
  double best = 0.0;
  Box zu(s);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
    const Subset u = subset_from_mask(mask);
    const double g = gamma_of(w, u);
    if (g == 0.0) continue;
    for (std::size_t j = 0; j < s; ++j) zu[j] = (mask >> j) & 1 ? z[j] : 1.0;
    best = std::max(best, g * std::abs(local_discrepancy(ps, zu)));
  }
  return best;
}

namespace {

// Sorted distinct values of each coordinate plus the modulus (coordinate 1).
std::vector<std::vector<std::uint64_t>> corner_grid(const RationalPointSet& ps) {
  std::vector<std::vector<std::uint64_t>> grid(ps.dim());
  for (std::size_t j = 0; j < ps.dim(); ++j) {
    auto& g = grid[j];
    g.reserve(ps.size() + 1);
    for (std::size_t n = 0; n < ps.size(); ++n) g.push_back(ps.numerator(n, j));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    g.push_back(ps.modulus());
  }
  return grid;
}

std::uint64_t saturating_corner_count(const std::vector<std::vector<std::uint64_t>>& grid) {
  std::uint64_t total = 1;
  for (const auto& g : grid) {
    if (total > std::numeric_limits<std::uint64_t>::max() / g.size()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= g.size();
  }
  return total;
}

// Scores in exact mode are integers scaled by N * M^s; in floating mode they
// are the discrepancy values themselves.
struct ExactArith {
  using Score = __int128;
  using Volume = __int128;
  __int128 n_points;
  __int128 m_pow_s;
  std::uint64_t modulus;
  Volume unit() const { return 1; }
  Volume scale(Volume v, std::uint64_t y) const { return v * static_cast<__int128>(y); }
  Score closed(std::size_t count, Volume v) const {
    return static_cast<__int128>(count) * m_pow_s - n_points * v;
  }
  Score open(std::size_t count, Volume v) const {
    return n_points * v - static_cast<__int128>(count) * m_pow_s;
  }
  static Score lowest() { return std::numeric_limits<__int128>::min(); }
};

struct FloatArith {
  using Score = long double;
  using Volume = long double;
  long double n_points;
  std::uint64_t modulus;
  Volume unit() const { return 1.0L; }
  Volume scale(Volume v, std::uint64_t y) const {
    return v * (static_cast<long double>(y) / static_cast<long double>(modulus));
  }
  Score closed(std::size_t count, Volume v) const {
    return static_cast<long double>(count) / n_points - v;
  }
  Score open(std::size_t count, Volume v) const {
    return v - static_cast<long double>(count) / n_points;
  }
  static Score lowest() { return -std::numeric_limits<long double>::infinity(); }
};

template <class Arith>
class CornerSearch {
 public:
  using Score = typename Arith::Score;
  using Volume = typename Arith::Volume;

  CornerSearch(const RationalPointSet& ps, std::vector<std::vector<std::uint64_t>> grid, Arith arith)
      : ps_(ps), grid_(std::move(grid)), arith_(arith), columns_(ps.dim()),
        closed_(ps.dim()), open_(ps.dim()), corner_(ps.dim()), witness_(ps.dim()) {
    for (std::size_t j = 0; j < ps.dim(); ++j) {
      columns_[j].resize(ps.size());
      for (std::size_t n = 0; n < ps.size(); ++n) columns_[j][n] = ps.numerator(n, j);
    }
  }

  void run() {
    std::vector<std::uint32_t> all(ps_.size());
    std::iota(all.begin(), all.end(), 0U);
    visit(0, all, all, arith_.unit());
  }

  Score best() const { return best_; }
  BoxSide side() const { return side_; }
  const std::vector<std::uint64_t>& witness() const { return witness_; }

 private:
  void visit(std::size_t j, std::span<const std::uint32_t> closed_in,
             std::span<const std::uint32_t> open_in, Volume volume) {
    const auto& col = columns_[j];
    auto& closed = closed_[j];
    auto& open = open_[j];
    closed.assign(closed_in.begin(), closed_in.end());
    open.assign(open_in.begin(), open_in.end());
    const auto by_coord = [&col](std::uint32_t a, std::uint32_t b) { return col[a] < col[b]; };
    std::sort(closed.begin(), closed.end(), by_coord);
    std::sort(open.begin(), open.end(), by_coord);

    const bool leaf = j + 1 == ps_.dim();
    std::size_t ic = 0;
    std::size_t io = 0;
    for (std::uint64_t y : grid_[j]) {
      while (ic < closed.size() && col[closed[ic]] <= y) ++ic;
      while (io < open.size() && col[open[io]] < y) ++io;
      corner_[j] = y;
      const Volume v = arith_.scale(volume, y);
      if (leaf) {
        const Score sc = arith_.closed(ic, v);
        if (sc > best_) record(sc, BoxSide::Closed);
        const Score so = arith_.open(io, v);
        if (so > best_) record(so, BoxSide::Open);
      } else {
        visit(j + 1, std::span(closed).first(ic), std::span(open).first(io), v);
      }
    }
  }

  void record(Score score, BoxSide side) {
    best_ = score;
    side_ = side;
    witness_ = corner_;
  }

  const RationalPointSet& ps_;
  std::vector<std::vector<std::uint64_t>> grid_;
  Arith arith_;
  std::vector<std::vector<std::uint64_t>> columns_;
  std::vector<std::vector<std::uint32_t>> closed_;
  std::vector<std::vector<std::uint32_t>> open_;
  std::vector<std::uint64_t> corner_;
  std::vector<std::uint64_t> witness_;
  Score best_ = Arith::lowest();
  BoxSide side_ = BoxSide::Open;
};

unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    const unsigned __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

DiscrepancyResult star_discrepancy_exact(const RationalPointSet& ps, const Limits& limits) {
  if (ps.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw CapExceeded("star_discrepancy_exact: too many points");
  }
  auto grid = corner_grid(ps);
  const std::uint64_t corners = saturating_corner_count(grid);
  if (corners > limits.max_corner_ops) {
    throw CapExceeded("star_discrepancy_exact: " +
                      (corners == std::numeric_limits<std::uint64_t>::max()
                           ? std::string("more than 2^64")
                           : std::to_string(corners)) +
                      " corners exceed the budget of " + std::to_string(limits.max_corner_ops));
  }

  DiscrepancyResult result;
  result.modulus = ps.modulus();
  const std::size_t s = ps.dim();
  const unsigned bits = static_cast<unsigned>(std::bit_width(ps.size())) +
                        static_cast<unsigned>(s) * static_cast<unsigned>(std::bit_width(ps.modulus()));
  if (s <= 126 && bits <= 126) {
    __int128 m_pow_s = 1;
    for (std::size_t j = 0; j < s; ++j) m_pow_s *= static_cast<__int128>(ps.modulus());
    const ExactArith arith{static_cast<__int128>(ps.size()), m_pow_s, ps.modulus()};
    CornerSearch<ExactArith> search(ps, std::move(grid), arith);
    search.run();
    const auto num = static_cast<unsigned __int128>(search.best());
    const auto den = static_cast<unsigned __int128>(arith.n_points * m_pow_s);
    const unsigned __int128 g = num == 0 ? den : gcd_u128(num, den);
    result.exact = true;
    result.numerator = num / g;
    result.denominator = den / g;
    result.value = static_cast<double>(static_cast<long double>(result.numerator) /
                                       static_cast<long double>(result.denominator));
    result.side = search.side();
    result.witness = search.witness();
  } else {
    const FloatArith arith{static_cast<long double>(ps.size()), ps.modulus()};
    CornerSearch<FloatArith> search(ps, std::move(grid), arith);
    search.run();
    result.value = static_cast<double>(search.best());
    result.side = search.side();
    result.witness = search.witness();
  }
  return result;
}

double star_discrepancy_sampled_lb(const RationalPointSet& ps, std::uint64_t trials,
                                   std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("star_discrepancy_sampled_lb: trials must be >= 1");
  const auto grid = corner_grid(ps);
  const std::size_t s = ps.dim();
  std::vector<std::uint64_t> corner(s);

  long double best = 0.0L;
  const auto consider = [&] {
    best = std::max(best, corner_local_discrepancy(ps, corner, BoxSide::Closed));
    best = std::max(best, -corner_local_discrepancy(ps, corner, BoxSide::Open));
  };

  for (std::size_t n = 0; n < ps.size(); ++n) {
    const auto x = ps.point(n);
    std::copy(x.begin(), x.end(), corner.begin());
    consider();
  }

  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (std::size_t j = 0; j < s; ++j) {
      std::uniform_int_distribution<std::size_t> pick(0, grid[j].size() - 1);
      corner[j] = grid[j][pick(rng)];
    }
    consider();
  }
  return static_cast<double>(best);
}

WeightedDiscrepancyResult weighted_star_discrepancy_exact(const RationalPointSet& ps,
                                                          const Weights& w,
                                                          const Limits& limits) {
  const std::size_t s = ps.dim();
  if (s > limits.max_subset_dim || s >= 64) {
    throw CapExceeded("weighted_star_discrepancy_exact: dimension " + std::to_string(s) +
                      " exceeds the subset-enumeration cap of " +
                      std::to_string(limits.max_subset_dim));
  }
  const std::uint64_t full = (std::uint64_t{1} << s) - 1;
  WeightedDiscrepancyResult result;
  bool found = false;
  for (std::uint64_t mask = full; mask >= 1; --mask) {
    Subset u = subset_from_mask(mask);
    const double g = gamma_of(w, u);
    if (g == 0.0) continue;
    DiscrepancyResult d = star_discrepancy_exact(project(ps, u), limits);
    const double weighted = g * d.value;
    if (!found || weighted > result.value) {
      found = true;
      result.value = weighted;
      result.subset = std::move(u);
      result.projected = std::move(d);
    }
  }
  if (!found) {
    result.value = 0.0;
    result.subset = subset_from_mask(full);
    result.projected.modulus = ps.modulus();
    result.projected.witness.assign(s, ps.modulus());
    result.projected.exact = true;
  }
  return result;
}

}  // namespace psets
