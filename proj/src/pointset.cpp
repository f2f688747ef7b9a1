#include "psets/pointset.hpp"

#include <algorithm>

#include "psets/error.hpp"

namespace psets {

std::string_view kind_letter(PSetKind kind) noexcept {
  switch (kind) {
    case PSetKind::KorobovP:
      return "P";
    case PSetKind::KorobovQ:
      return "Q";
    case PSetKind::HuaWangR:
      return "R";
  }
  return "?";
}

PSetKind parse_kind(std::string_view text) {
  if (text == "P" || text == "p" || text == "KorobovP") return PSetKind::KorobovP;
  if (text == "Q" || text == "q" || text == "KorobovQ") return PSetKind::KorobovQ;
  if (text == "R" || text == "r" || text == "HuaWangR") return PSetKind::HuaWangR;
  throw InvalidArgument("unknown point-set kind '" + std::string(text) + "' (expected P, Q or R)");
}

void validate_subset(const Subset& u, std::size_t dim) {
  if (u.empty()) throw InvalidArgument("coordinate subset must be nonempty");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 1 || u[i] > dim) {
      throw InvalidArgument("coordinate index " + std::to_string(u[i]) + " outside [1, " +
                            std::to_string(dim) + "]");
    }
    if (i > 0 && u[i] <= u[i - 1]) {
      throw InvalidArgument("coordinate subset must be strictly increasing");
    }
  }
}

std::string format_subset(const Subset& u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(u[i]);
  }
  return out;
}

namespace {

struct KindShape {
  std::uint64_t modulus;
  std::uint64_t count;
};

KindShape shape_of(PSetKind kind, std::uint64_t p) {
  switch (kind) {
    case PSetKind::KorobovP:
      return {p, p};
    case PSetKind::KorobovQ:
      return {p * p, p * p};
    case PSetKind::HuaWangR:
      return {p, p * p};
  }
  return {0, 0};
}

}  // namespace

RationalPointSet::RationalPointSet(std::uint64_t modulus, std::size_t dim,
                                   std::vector<std::uint64_t> numerators,
                                   std::optional<PSetKind> kind)
    : modulus_(modulus), dim_(dim), size_(0), numerators_(std::move(numerators)), kind_(kind) {
  if (modulus_ < 1) throw InvalidArgument("point set modulus must be positive");
  if (dim_ < 1) throw InvalidArgument("point set dimension must be positive");
  if (numerators_.size() % dim_ != 0) {
    throw InvalidArgument("numerator count is not a multiple of the dimension");
  }
  size_ = numerators_.size() / dim_;
  if (size_ == 0) throw InvalidArgument("point set must contain at least one point");
  if (std::any_of(numerators_.begin(), numerators_.end(),
                  [this](std::uint64_t v) { return v >= modulus_; })) {
    throw InvalidArgument("numerator outside [0, modulus)");
  }
  if (kind_) {
    // The kind's modulus is p or p^2; recover p from N for the check.
    const bool ok = [&] {
      switch (*kind_) {
        case PSetKind::KorobovP:
          return size_ == modulus_;
        case PSetKind::KorobovQ:
          return size_ == modulus_ && size_ >= 4;
        case PSetKind::HuaWangR:
          return size_ == modulus_ * modulus_;
      }
      return false;
    }();
    if (!ok) throw InvalidArgument("point count and modulus do not match the kind tag");
  }
}

RationalPointSet generate(PSetKind kind, Prime p, std::size_t s, const Limits& limits) {
  if (s == 0) throw InvalidArgument("dimension s must be >= 1");
  const std::uint64_t pv = p.value();
  if (pv > (std::uint64_t{1} << 31)) throw CapExceeded("prime too large for point generation");
  const auto [modulus, count] = shape_of(kind, pv);
  if (count > limits.max_pointset_entries / s) {
    throw CapExceeded("point set would hold " + std::to_string(count) + " x " + std::to_string(s) +
                      " entries, over the cap of " + std::to_string(limits.max_pointset_entries));
  }

  std::vector<std::uint64_t> nums;
  nums.reserve(count * s);
  switch (kind) {
    case PSetKind::KorobovP:
    case PSetKind::KorobovQ:
      for (std::uint64_t n = 0; n < count; ++n) {
        const std::uint64_t base = n % modulus;
        std::uint64_t power = base;
        for (std::size_t j = 0; j < s; ++j) {
          nums.push_back(power);
          power = mul_mod(power, base, modulus);
        }
      }
      break;
    case PSetKind::HuaWangR:
      for (std::uint64_t a = 0; a < pv; ++a) {
        for (std::uint64_t k = 0; k < pv; ++k) {
          std::uint64_t v = k;
          for (std::size_t j = 0; j < s; ++j) {
            nums.push_back(v);
            v = mul_mod(v, a, modulus);
          }
        }
      }
      break;
  }
  return RationalPointSet(modulus, s, std::move(nums), kind);
}

RationalPointSet project(const RationalPointSet& ps, const Subset& u) {
  validate_subset(u, ps.dim());
  if (u.size() == ps.dim()) return ps;
  std::vector<std::uint64_t> nums;
  nums.reserve(ps.size() * u.size());
  for (std::size_t n = 0; n < ps.size(); ++n) {
    for (std::size_t j : u) nums.push_back(ps.numerator(n, j - 1));
  }
  return RationalPointSet(ps.modulus(), u.size(), std::move(nums));
}

}  // namespace psets
