#include "tickcheck/value.hpp"

#include "tickcheck/errors.hpp"

namespace tickcheck {

TimeValue AttrValue::to_time() const {
  switch (kind()) {
    case Kind::Time:
      return as_time_exact();
    case Kind::Int:
      if (sgn(as_int()) < 0) throw EvalError("negative integer " + str() + " used as a time");
      return TimeValue::rational(mpq_class(as_int()));
    default:
      throw EvalError("expected a number, got '" + str() + "'");
  }
}

std::string AttrValue::str() const {
  switch (kind()) {
    case Kind::Time:
      return as_time_exact().str();
    case Kind::Int:
      return as_int().get_str();
    case Kind::Bool:
      return as_bool() ? "true" : "false";
    case Kind::Enum:
      return as_enum().variant;
    case Kind::Oid:
      return as_oid().name;
    case Kind::Record: {
      const auto& r = as_record();
      std::string out = r.ctor + "(";
      for (std::size_t i = 0; i < r.args.size(); ++i) {
        if (i) out += ", ";
        out += r.args[i].str();
      }
      return out + ")";
    }
  }
  return {};
}

void AttrValue::encode(std::string& out) const {
  switch (kind()) {
    case Kind::Time:
      out += 't';
      out += as_time_exact().str();
      return;
    case Kind::Int:
      out += 'i';
      out += as_int().get_str();
      return;
    case Kind::Bool:
      out += as_bool() ? "b1" : "b0";
      return;
    case Kind::Enum:
      out += 'e';
      out += as_enum().variant;
      return;
    case Kind::Oid:
      out += 'o';
      out += as_oid().name;
      return;
    case Kind::Record: {
      const auto& r = as_record();
      out += 'r';
      out += r.ctor;
      out += '(';
      for (std::size_t i = 0; i < r.args.size(); ++i) {
        if (i) out += ',';
        r.args[i].encode(out);
      }
      out += ')';
      return;
    }
  }
}

bool same_value(const AttrValue& a, const AttrValue& b) {
  using K = AttrValue::Kind;
  if (a.is_numeric() && b.is_numeric()) {
    if (a.kind() == K::Int && b.kind() == K::Int) return a.as_int() == b.as_int();
    if (a.kind() == K::Int && sgn(a.as_int()) < 0) return false;
    if (b.kind() == K::Int && sgn(b.as_int()) < 0) return false;
    return a.to_time() == b.to_time();
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case K::Bool:
      return a.as_bool() == b.as_bool();
    case K::Enum:
      return a.as_enum().variant == b.as_enum().variant && a.as_enum().type == b.as_enum().type;
    case K::Oid:
      return a.as_oid().name == b.as_oid().name;
    case K::Record: {
      const auto& x = a.as_record();
      const auto& y = b.as_record();
      if (x.ctor != y.ctor || x.args.size() != y.args.size()) return false;
      for (std::size_t i = 0; i < x.args.size(); ++i) {
        if (!same_value(x.args[i], y.args[i])) return false;
      }
      return true;
    }
    default:
      return false;
  }
}

}  // namespace tickcheck
