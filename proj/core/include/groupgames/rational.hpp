#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace gg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Builds p/q, rejecting q == 0. The result is stored reduced with a
/// positive denominator.
Rat make_rat(const Int& num, const Int& den);

/// Parses "p/q" or a plain integer literal, with optional leading sign.
Rat parse_rat(const std::string& text);
Int parse_int(const std::string& text);

/// Canonical serialization: reduced "p/q", or "p" when the denominator is 1.
std::string rat_to_string(const Rat& value);
std::string int_to_string(const Int& value);

double rat_to_double(const Rat& value);

/// Fixed-format decimal rendering used for report annotations; deterministic
/// across platforms (round-half-even on an exact rational, no FP involved).
std::string rat_to_decimal_string(const Rat& value, int digits = 12);

/// Floored quotient/remainder; the modulus must be positive and the
/// remainder lands in [0, m).
Int floor_div(const Int& value, const Int& modulus);
Int mod_floor(const Int& value, const Int& modulus);
std::int64_t mod_floor_i64(std::int64_t value, std::int64_t modulus);

Int rat_floor(const Rat& value);

/// value - floor(value), always in [0, 1).
Rat frac_mod1(const Rat& value);

Int gcd(Int a, Int b);
std::int64_t lcm_i64(std::int64_t a, std::int64_t b);

}  // namespace gg
