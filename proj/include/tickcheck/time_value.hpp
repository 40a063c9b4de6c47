#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tickcheck {

/// Exact nonnegative rational time, or INF.
///
/// Finite values are kept in lowest terms, so equal times have identical
/// representations and can be hashed directly.
class TimeValue {
 public:
  TimeValue() = default;
  TimeValue(long value);  // NOLINT: integer literals are times

  static TimeValue infinity();
  /// Throws std::domain_error for negative values or a zero denominator.
  static TimeValue rational(const mpq_class& value);
  static TimeValue rational(long numerator, long denominator);
  /// Accepts `12`, `3/4`, `2.5` and `INF`.
  static TimeValue parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  bool is_zero() const { return !infinite_ && sgn(value_) == 0; }
  bool is_integer() const;

  /// Precondition: finite.
  const mpq_class& value() const;

  std::string str() const;
  std::size_t hash() const;

  friend TimeValue operator+(const TimeValue& a, const TimeValue& b);
  friend TimeValue operator*(const TimeValue& a, const TimeValue& b);
  TimeValue& operator+=(const TimeValue& other);

  friend std::strong_ordering operator<=>(const TimeValue& a, const TimeValue& b);
  friend bool operator==(const TimeValue& a, const TimeValue& b);

 private:
  bool infinite_ = false;
  mpq_class value_{0};
};

TimeValue min(const TimeValue& a, const TimeValue& b);
TimeValue max(const TimeValue& a, const TimeValue& b);
/// Truncated subtraction: max(a - b, 0). INF monus finite is INF; anything monus INF is 0.
TimeValue monus(const TimeValue& a, const TimeValue& b);
/// a - b; throws std::domain_error when the result would be negative.
TimeValue subtract(const TimeValue& a, const TimeValue& b);

std::ostream& operator<<(std::ostream& os, const TimeValue& t);

}  // namespace tickcheck

template <>
struct std::hash<tickcheck::TimeValue> {
  std::size_t operator()(const tickcheck::TimeValue& t) const noexcept { return t.hash(); }
};
