#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace fwrank {

/// Exact fixed-point edge weight.
///
/// The value is an integer count of units, where one unit is 10^-digits of a
/// real weight and `digits` is the precision chosen at load time (see
/// WeightScale). Stored edge weights are never negative; sums and differences
/// may be, since the same type carries signed gains.
struct Weight {
  std::int64_t units = 0;

  constexpr Weight() = default;
  constexpr explicit Weight(std::int64_t u) : units(u) {}

  constexpr Weight& operator+=(Weight o) { units += o.units; return *this; }
  constexpr Weight& operator-=(Weight o) { units -= o.units; return *this; }
  friend constexpr Weight operator+(Weight a, Weight b) { return Weight{a.units + b.units}; }
  friend constexpr Weight operator-(Weight a, Weight b) { return Weight{a.units - b.units}; }
  friend constexpr Weight operator-(Weight a) { return Weight{-a.units}; }
  friend constexpr auto operator<=>(Weight, Weight) = default;
};

/// Decimal precision of a graph's weights: `digits` fractional decimal digits.
struct WeightScale {
  int digits = 2;

  [[nodiscard]] std::int64_t units_per_one() const;
  [[nodiscard]] double to_real(Weight w) const;

  /// Parses a plain decimal string ("12", "2.5", "+3.25"). Returns false on any
  /// syntax error, on more fractional digits than the precision holds (unless
  /// they are zeros), or on overflow. Negative values parse; callers reject them.
  [[nodiscard]] bool parse(std::string_view text, Weight& out) const;

  /// Exact decimal rendering; trailing fractional zeros are dropped.
  [[nodiscard]] std::string format(Weight w) const;

  friend bool operator==(WeightScale, WeightScale) = default;
};

}  // namespace fwrank
