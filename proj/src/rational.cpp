#include "padic/rational.hpp"

#include <cctype>
#include <charconv>

namespace padic {

namespace {

std::int64_t parse_i64(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("rational: bad integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

Rat parse_rational(std::string_view text, bool* was_decimal) {
  if (was_decimal) *was_decimal = false;
  if (text.empty()) throw std::invalid_argument("rational: empty input");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rat(parse_i64(text.substr(0, slash)), parse_i64(text.substr(slash + 1)));
  }

  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rat(parse_i64(text));

  if (was_decimal) *was_decimal = true;
  const bool neg = !text.empty() && text.front() == '-';
  std::string_view whole = text.substr(neg ? 1 : 0, dot - (neg ? 1 : 0));
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 17)
    throw std::invalid_argument("rational: bad decimal '" + std::string(text) + "'");
  std::int64_t num = whole.empty() ? 0 : parse_i64(whole);
  std::int64_t den = 1;
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("rational: bad decimal '" + std::string(text) + "'");
    if (num > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
      throw std::overflow_error("rational: decimal too long");
    num = num * 10 + (c - '0');
    den *= 10;
  }
  return Rat(neg ? -num : num, den);
}

}  // namespace padic
