#include "fwrank/weight.hpp"

#include <limits>
#include <stdexcept>

namespace fwrank {

std::int64_t WeightScale::units_per_one() const {
  if (digits < 0 || digits > 9) {
    throw std::invalid_argument("weight precision must be between 0 and 9 digits");
  }
  std::int64_t f = 1;
  for (int i = 0; i < digits; ++i) f *= 10;
  return f;
}

double WeightScale::to_real(Weight w) const {
  return static_cast<double>(w.units) / static_cast<double>(units_per_one());
}

bool WeightScale::parse(std::string_view text, Weight& out) const {
  const std::int64_t factor = units_per_one();
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max() / 10;

  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::int64_t whole = 0;
  std::size_t whole_digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    if (whole > kMax) return false;
    whole = whole * 10 + (text[i] - '0');
    ++i;
    ++whole_digits;
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  std::size_t frac_seen = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      const int d = text[i] - '0';
      if (frac_digits < digits) {
        frac = frac * 10 + d;
        ++frac_digits;
      } else if (d != 0) {
        return false;  // not representable at this precision
      }
      ++i;
      ++frac_seen;
    }
  }
  if (i != text.size() || (whole_digits == 0 && frac_seen == 0)) return false;
  for (; frac_digits < digits; ++frac_digits) frac *= 10;

  if (whole > (std::numeric_limits<std::int64_t>::max() - frac) / factor) return false;
  const std::int64_t units = whole * factor + frac;
  out = Weight{negative ? -units : units};
  return true;
}

std::string WeightScale::format(Weight w) const {
  const std::int64_t factor = units_per_one();
  std::string s;
  std::int64_t u = w.units;
  if (u < 0) {
    s.push_back('-');
    u = -u;
  }
  s += std::to_string(u / factor);
  std::int64_t frac = u % factor;
  if (frac != 0) {
    std::string digits_str = std::to_string(frac);
    digits_str.insert(0, static_cast<std::size_t>(digits) - digits_str.size(), '0');
    while (!digits_str.empty() && digits_str.back() == '0') digits_str.pop_back();
    s.push_back('.');
    s += digits_str;
  }
  return s;
}

}  // namespace fwrank
