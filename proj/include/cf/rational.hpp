#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace cf {

/// Exact rational used for breakpoints, weights and measures.
using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", "p" or a finite decimal such as "-0.125". Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always "p/q" with q > 0, e.g. "3/1", "-1/2".
std::string format_rational(const Rational& value);

}  // namespace cf
