#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>
#include <vector>

#include "tickcheck/time_value.hpp"

namespace tickcheck {

class AttrValue;

struct EnumValue {
  std::string type;
  std::string variant;
};

struct ObjectId {
  std::string name;
};

/// A parameterized enum variant such as `stopBreathing(2000)`.
struct RecordValue {
  std::string type;
  std::string ctor;
  std::vector<AttrValue> args;
};

/// Attribute, message-argument and expression value.
class AttrValue {
 public:
  enum class Kind { Time, Int, Bool, Enum, Oid, Record };

  AttrValue() : storage_(false) {}
  AttrValue(TimeValue t) : storage_(std::move(t)) {}  // NOLINT
  AttrValue(mpz_class i) : storage_(std::move(i)) {}  // NOLINT
  AttrValue(bool b) : storage_(b) {}                  // NOLINT
  AttrValue(EnumValue e) : storage_(std::move(e)) {}  // NOLINT
  AttrValue(ObjectId o) : storage_(std::move(o)) {}   // NOLINT
  AttrValue(RecordValue r) : storage_(std::move(r)) {}  // NOLINT

  static AttrValue integer(long v) { return AttrValue(mpz_class(v)); }
  static AttrValue oid(std::string name) { return AttrValue(ObjectId{std::move(name)}); }

  Kind kind() const { return static_cast<Kind>(storage_.index()); }
  bool is_numeric() const { return kind() == Kind::Time || kind() == Kind::Int; }

  const TimeValue& as_time_exact() const { return std::get<TimeValue>(storage_); }
  const mpz_class& as_int() const { return std::get<mpz_class>(storage_); }
  bool as_bool() const { return std::get<bool>(storage_); }
  const EnumValue& as_enum() const { return std::get<EnumValue>(storage_); }
  const ObjectId& as_oid() const { return std::get<ObjectId>(storage_); }
  const RecordValue& as_record() const { return std::get<RecordValue>(storage_); }

  /// Numeric value as a time; throws EvalError for negative integers or non-numbers.
  TimeValue to_time() const;

  /// Surface syntax, e.g. `5/2`, `INF`, `breathing`, `stopBreathing(2000)`.
  std::string str() const;
  /// Canonical encoding used for state keys. Kind-tagged and unambiguous.
  void encode(std::string& out) const;

 private:
  std::variant<TimeValue, mpz_class, bool, EnumValue, ObjectId, RecordValue> storage_;
};

/// Value equality where Int and Time compare numerically.
bool same_value(const AttrValue& a, const AttrValue& b);

}  // namespace tickcheck
