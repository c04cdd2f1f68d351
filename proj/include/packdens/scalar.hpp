#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace packdens {

// Exact rational coordinate type. gmpxx keeps every value in reduced form
// with a positive denominator, so == is structural.
using Scalar = mpq_class;

// Parses "3", "-1.25", "2.5e-3" or "7/4" without loss.
// Throws std::invalid_argument on malformed text or a zero denominator.
Scalar parse_scalar(std::string_view text);

// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& value);

// Correctly truncated to the 64-bit long double mantissa.
long double to_long_double(const Scalar& value);

}  // namespace packdens
