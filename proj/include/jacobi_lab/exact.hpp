#pragma once

#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace jacobi {

using Rational = boost::multiprecision::cpp_rational;

/// Parses a plain decimal literal ("-1.25", "3", "2.5e-3") into an exact rational.
/// Throws ParseError on anything else.
Rational parse_decimal(std::string_view text);

}  // namespace jacobi
