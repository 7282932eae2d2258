#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace nsbox {

/// Exact rational scalar. All polytope geometry in this library is done with
/// these; floating point only enters the relative-entropy solver.
using Rational = mpq_class;

/// Parses "num", "-num" or "num/den" (den > 0 after sign normalization).
/// Throws Error{shape_mismatch} on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Reduced textual form: "3", "-1/2", "0".
std::string to_string(const Rational& q);

/// q == num/den with machine integers, canonicalized.
Rational make_rational(long num, long den = 1);

inline double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const std::vector<Rational>& v);

}  // namespace nsbox
