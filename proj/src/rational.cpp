#include "cf/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace cf {

namespace {

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(text.substr(0, slash), text);
    std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) {
      throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    }
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative) int_part.remove_prefix(1);
    if (frac_part.empty() || frac_part.size() > 15 || frac_part.front() == '-' ||
        frac_part.front() == '+') {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    std::int64_t frac = parse_int(frac_part, text);
    Rational value = Rational(whole) + Rational(frac, scale);
    return negative ? -value : value;
  }
  return Rational(parse_int(text, text));
}

std::string format_rational(const Rational& value) {
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

}  // namespace cf
