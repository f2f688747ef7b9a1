#include "psets/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

#include "psets/error.hpp"

namespace psets {

Limits Limits::from_environment() {
  Limits limits;
  const char* raw = std::getenv("PSET_DISC_MAX_OPS");
  if (raw == nullptr || *raw == '\0') return limits;
  const std::string_view text(raw);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw InvalidArgument("PSET_DISC_MAX_OPS must be a positive integer");
  }
  limits.max_corner_ops = value;
  limits.max_frequency_vectors = value;
  return limits;
}

}  // namespace psets
