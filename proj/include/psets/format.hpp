#pragma once

#include <string>

namespace psets {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_shortest(double v);

/// `v` with 17 significant digits (always round-trips).
std::string format_sig17(double v);

/// `v` with a fixed number of digits after the decimal point.
std::string format_fixed(double v, int digits);

/// Decimal rendering of a 128-bit unsigned integer.
std::string format_u128(unsigned __int128 v);

}  // namespace psets
