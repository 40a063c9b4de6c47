#include "tickcheck/time_value.hpp"

#include <functional>
#include <ostream>
#include <stdexcept>

namespace tickcheck {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_natural(std::string_view s) {
  if (!all_digits(s)) throw std::domain_error("malformed time literal '" + std::string(s) + "'");
  return mpz_class(std::string(s), 10);
}

}  // namespace

TimeValue::TimeValue(long value) : value_(value) {
  if (value < 0) throw std::domain_error("negative time");
}

TimeValue TimeValue::infinity() {
  TimeValue t;
  t.infinite_ = true;
  return t;
}

TimeValue TimeValue::rational(const mpq_class& value) {
  mpq_class v(value);
  v.canonicalize();
  if (sgn(v) < 0) throw std::domain_error("negative time");
  TimeValue t;
  t.value_ = std::move(v);
  return t;
}

TimeValue TimeValue::rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  return rational(mpq_class(numerator, denominator));
}

TimeValue TimeValue::parse(std::string_view text) {
  if (text == "INF") return infinity();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_natural(text.substr(0, slash));
    mpz_class den = parse_natural(text.substr(slash + 1));
    if (den == 0) throw std::domain_error("zero denominator in '" + std::string(text) + "'");
    return rational(mpq_class(num, den));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    mpz_class num = parse_natural(whole);
    mpz_class f = parse_natural(frac);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    return rational(mpq_class(num * den + f, den));
  }
  return rational(mpq_class(parse_natural(text)));
}

bool TimeValue::is_integer() const { return !infinite_ && value_.get_den() == 1; }

const mpq_class& TimeValue::value() const {
  if (infinite_) throw std::domain_error("INF has no rational value");
  return value_;
}

std::string TimeValue::str() const {
  if (infinite_) return "INF";
  return value_.get_str();
}

std::size_t TimeValue::hash() const {
  if (infinite_) return 0x9e3779b97f4a7c15ULL;
  return std::hash<std::string>{}(value_.get_str(16));
}

TimeValue operator+(const TimeValue& a, const TimeValue& b) {
  if (a.infinite_ || b.infinite_) return TimeValue::infinity();
  TimeValue t;
  t.value_ = a.value_ + b.value_;
  return t;
}

TimeValue operator*(const TimeValue& a, const TimeValue& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("0 * INF is undefined");
    return TimeValue::infinity();
  }
  TimeValue t;
  t.value_ = a.value_ * b.value_;
  return t;
}

TimeValue& TimeValue::operator+=(const TimeValue& other) {
  *this = *this + other;
  return *this;
}

std::strong_ordering operator<=>(const TimeValue& a, const TimeValue& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const TimeValue& a, const TimeValue& b) { return (a <=> b) == 0; }

TimeValue min(const TimeValue& a, const TimeValue& b) { return b < a ? b : a; }
TimeValue max(const TimeValue& a, const TimeValue& b) { return a < b ? b : a; }

TimeValue monus(const TimeValue& a, const TimeValue& b) {
  if (b.is_infinite()) return TimeValue{};
  if (a.is_infinite()) return a;
  if (a <= b) return TimeValue{};
  return TimeValue::rational(a.value() - b.value());
}

TimeValue subtract(const TimeValue& a, const TimeValue& b) {
  if (b.is_infinite()) {
    throw std::domain_error("cannot subtract INF");
  }
  if (a.is_infinite()) return a;
  if (a < b) throw std::domain_error("negative time " + a.str() + " - " + b.str());
  return TimeValue::rational(a.value() - b.value());
}

std::ostream& operator<<(std::ostream& os, const TimeValue& t) { return os << t.str(); }

}  // namespace tickcheck
