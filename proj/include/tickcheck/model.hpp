#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tickcheck/errors.hpp"
#include "tickcheck/state.hpp"
#include "tickcheck/value.hpp"

namespace tickcheck {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// `< O : C | a : t, ... >` on the left of a rule, in delta/mte heads and in
/// `exists`. Unmentioned attributes are unconstrained.
struct ObjectPattern {
  ExprPtr oid;
  std::string cls;
  std::vector<std::pair<std::string, ExprPtr>> attrs;
  SourcePos pos;
};

/// `m(t, ...)`; `delay` is only set in `mte(dly(m(...), D))` heads.
struct MessagePattern {
  std::string name;
  std::vector<ExprPtr> args;
  ExprPtr delay;
  SourcePos pos;
};

struct ElemPattern {
  std::variant<ObjectPattern, MessagePattern> v;
};

enum class ExprKind {
  Literal,
  Ident,  // unresolved name, replaced during elaboration
  Var,
  Const,
  OidConst,
  EnumConst,
  Ctor,   // parameterized enum variant
  Unary,
  Binary,
  Call,   // min / max / monus
  If,
  Exists,
  PropAtom,
};

enum class Op { Add, Sub, Mul, Div, Lt, Le, Gt, Ge, Eq, Ne, And, Or, Not, Neg };

/// Which state a proposition atom is evaluated on: the current one, or the
/// pre-/post-state of the rule application whose guard contains it.
enum class PropScope { Sat, Pre, Post };

struct Expr {
  ExprKind kind = ExprKind::Literal;
  SourcePos pos;
  AttrValue literal;
  std::string name;
  Op op = Op::Add;
  PropScope scope = PropScope::Sat;
  std::vector<ExprPtr> args;
  std::shared_ptr<const ElemPattern> pattern;
};

struct ObjectEffect {
  ExprPtr oid;
  std::string cls;
  std::vector<std::pair<std::string, ExprPtr>> updates;
  SourcePos pos;
};

/// `m(args)` (delay 0), `dly(m(args), d)` or `dly(m(args), {d1, d2})`.
struct MessageEmit {
  std::string name;
  std::vector<ExprPtr> args;
  std::vector<ExprPtr> delays;
  bool choice = false;
  SourcePos pos;
};

struct ElemEffect {
  std::variant<ObjectEffect, MessageEmit> v;
};

struct EnumVariant {
  std::string name;
  std::vector<std::string> params;
};

struct EnumDecl {
  std::string name;
  std::vector<EnumVariant> variants;
  SourcePos pos;
};

struct AttrDecl {
  std::string name;
  std::string type;
};

struct ClassDecl {
  std::string name;
  std::vector<AttrDecl> attrs;
  SourcePos pos;

  const AttrDecl* find(const std::string& attr) const;
};

struct MsgDecl {
  std::string name;
  std::vector<std::string> params;
  SourcePos pos;
};

struct VarDecl {
  std::vector<std::string> names;
  std::string type;
  SourcePos pos;
};

struct ConstDecl {
  std::string name;
  std::string type;
  ExprPtr value;
  SourcePos pos;
};

struct RuleDecl {
  std::string label;
  std::vector<ElemPattern> lhs;
  std::vector<ElemEffect> rhs;
  ExprPtr guard;  // may be null
  SourcePos pos;
  /// Set on observer-instrumented variants: index of the original rule.
  std::optional<std::size_t> origin;
};

struct DeltaDecl {
  ObjectPattern pattern;
  std::string time_var;
  ObjectEffect result;
  SourcePos pos;
};

struct MteDecl {
  ElemPattern pattern;
  ExprPtr value;
  SourcePos pos;
};

struct PropDecl {
  std::string name;
  std::vector<std::string> params;
  ExprPtr predicate;
  SourcePos pos;
};

struct InitDecl {
  std::string name;
  std::vector<ElemEffect> elements;
  SourcePos pos;
};

/// A flat object-oriented real-time system: declarations plus the tables
/// derived from them during elaboration.
struct Model {
  std::vector<EnumDecl> enums;
  std::vector<ClassDecl> classes;
  std::vector<MsgDecl> messages;
  std::vector<VarDecl> vars;
  std::vector<ConstDecl> consts;
  std::vector<RuleDecl> rules;
  std::vector<DeltaDecl> deltas;
  std::vector<MteDecl> mtes;
  std::vector<PropDecl> props;
  std::vector<InitDecl> inits;

  // Derived by elaborate().
  std::map<std::string, std::string> var_types;
  std::map<std::string, AttrValue> const_values;
  std::map<std::string, Configuration> init_configs;

  const ClassDecl* find_class(const std::string& name) const;
  const MsgDecl* find_message(const std::string& name) const;
  const EnumDecl* find_enum(const std::string& name) const;
  const PropDecl* find_prop(const std::string& name) const;
  /// Enum declaring `variant`, with the variant itself.
  std::optional<std::pair<const EnumDecl*, const EnumVariant*>> find_variant(const std::string& variant) const;
  const Configuration& init(const std::string& name = "default") const;
};

struct ParseOptions {
  /// Permit `#`-prefixed oids and classes (instrumented models only).
  bool allow_reserved = false;
  /// Constant overrides, applied before elaboration: name -> literal text.
  std::map<std::string, std::string> params;
};

/// Parses, resolves and validates a model. Throws ModelError carrying every
/// diagnostic if anything is wrong.
Model parse_model(std::string_view source, const ParseOptions& options = {});

/// Like parse_model but returns diagnostics instead of throwing.
std::vector<Diagnostic> check_model(std::string_view source, const ParseOptions& options = {});

/// Re-runs name resolution, type checking and init evaluation over the
/// declaration lists. Used after programmatic edits (instrumentation).
void elaborate(Model& model, const ParseOptions& options = {});

/// Flatness diagnostics: object creation or deletion, oid or class change.
std::vector<Diagnostic> validate_flatness(const Model& model);

/// Parses a standalone boolean state predicate (search conditions) against a model.
ExprPtr parse_predicate(const Model& model, std::string_view text);

/// DSL rendering that parse_model accepts back.
std::string print_model(const Model& model);
std::string print_expr(const Expr& e);

}  // namespace tickcheck
