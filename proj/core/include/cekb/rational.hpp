#pragma once

#include <gmpxx.h>
#include <optional>
#include <string>

namespace cekb {

// Exact rational scalar used everywhere a certified value is produced.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "3/4", "0.25", ".5", "1", "1." into an exact rational.
std::optional<Rat> parse_rational(const std::string& text);

// "m/n" with canonical sign, "0"/"1" without denominator.
std::string rat_to_string(const Rat& r);

// Exact decimal rendering when the denominator divides 10^max_digits,
// otherwise a rounded rendering prefixed by "~".
std::string rat_to_decimal(const Rat& r, int max_digits = 12);

// Decimal string if it is exact within 12 digits, else "m/n".
std::string rat_compact(const Rat& r);

inline double rat_to_double(const Rat& r) { return r.get_d(); }

}  // namespace cekb
