#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bilanz {

/// Exact decimal monetary amount with two fractional digits, stored as cents.
/// Accounting identities are checked on these values, so no binary floats are
/// involved until the scoring boundary.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_cents(std::int64_t cents) { return Money(cents); }
  static constexpr Money from_units(std::int64_t units) { return Money(units * 100); }

  /// Parses "130490", "130,490", "-1,234.56", "+7.5". Thousands separators are
  /// stripped; at most two fractional digits are accepted.
  /// Throws ParseError otherwise.
  static Money parse(std::string_view text);

  constexpr std::int64_t cents() const { return cents_; }
  constexpr double units() const { return static_cast<double>(cents_) / 100.0; }
  constexpr bool is_zero() const { return cents_ == 0; }

  /// "130490" or "-1234.56"; no separators, fraction printed only when nonzero.
  std::string str() const;

  friend constexpr Money operator+(Money a, Money b) { return Money(a.cents_ + b.cents_); }
  friend constexpr Money operator-(Money a, Money b) { return Money(a.cents_ - b.cents_); }
  constexpr Money operator-() const { return Money(-cents_); }
  Money& operator+=(Money other) {
    cents_ += other.cents_;
    return *this;
  }
  Money& operator-=(Money other) {
    cents_ -= other.cents_;
    return *this;
  }

  friend constexpr auto operator<=>(Money, Money) = default;

 private:
  explicit constexpr Money(std::int64_t cents) : cents_(cents) {}

  std::int64_t cents_ = 0;
};

}  // namespace bilanz
