#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace cayley {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Parses "7", "-3/4" or decimal notation such as "1.25" into an exact rational.
Rat rat_from_string(const std::string& text);

/// Canonical text form: "p" when the denominator is one, "p/q" otherwise.
std::string rat_to_string(const Rat& value);

Int rat_num(const Rat& value);
Int rat_den(const Rat& value);

/// Floor division and the matching nonnegative remainder.
Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);

/// Largest integer <= value.
Int rat_floor(const Rat& value);
/// Smallest integer >= value.
Int rat_ceil(const Rat& value);

IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_neg(const IntVec& a);
Int vec_dot(const IntVec& a, const IntVec& b);
Rat rat_dot(const RatVec& a, const IntVec& b);
Rat rat_dot(const RatVec& a, const RatVec& b);
RatVec to_rat_vec(const IntVec& a);

std::string vec_to_string(const IntVec& a);
std::string vec_to_string(const RatVec& a);

}  // namespace cayley
