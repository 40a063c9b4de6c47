#include <set>

#include "lexer.hpp"
#include "tickcheck/expr_build.hpp"
#include "tickcheck/model.hpp"

namespace tickcheck {

namespace {

using detail::Tok;
using detail::Token;

struct SyntaxError {
  Diagnostic diag;
};

const std::set<std::string> kKeywords = {"class", "enum", "msg", "var",  "vars", "const", "rl",    "crl", "delta",
                                         "mte",   "prop", "init", "if",  "then", "else",  "fi",    "and", "or",
                                         "not",   "true", "false", "INF", "dly", "exists", "none"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Model parse_model(std::vector<Diagnostic>& diags) {
    Model m;
    while (!(peek().kind == Tok::End)) {
      std::size_t start = pos_;
      try {
        parse_decl(m);
      } catch (const SyntaxError& e) {
        diags.push_back(e.diag);
        // Resynchronize after the next terminating period.
        if (pos_ == start) ++pos_;
        while (peek().kind != Tok::End && !peek().is(".")) ++pos_;
        if (peek().is(".")) ++pos_;
      }
    }
    return m;
  }

  ExprPtr parse_standalone_expr() {
    auto e = expr(false);
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "' after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(std::string_view s) {
    if (peek().is(s)) {
      next();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError{Diagnostic{Diagnostic::Kind::Syntax, peek().pos, msg}};
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "' but found '" + describe(peek()) + "'");
  }
  static std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : t.text; }
  std::string ident() {
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) {
      fail("expected identifier but found '" + describe(peek()) + "'");
    }
    return next().text;
  }

  void parse_decl(Model& m) {
    const Token& t = peek();
    SourcePos pos = t.pos;
    if (t.is("enum")) {
      next();
      EnumDecl d;
      d.pos = pos;
      d.name = ident();
      expect("=");
      do {
        EnumVariant v;
        v.name = ident();
        if (accept("(")) {
          do v.params.push_back(ident());
          while (accept(","));
          expect(")");
        }
        d.variants.push_back(std::move(v));
      } while (accept("|"));
      expect(".");
      m.enums.push_back(std::move(d));
    } else if (t.is("class")) {
      next();
      ClassDecl d;
      d.pos = pos;
      d.name = ident();
      if (accept("|")) {
        do {
          AttrDecl a;
          a.name = ident();
          expect(":");
          a.type = ident();
          d.attrs.push_back(std::move(a));
        } while (accept(","));
      }
      expect(".");
      m.classes.push_back(std::move(d));
    } else if (t.is("msg")) {
      next();
      MsgDecl d;
      d.pos = pos;
      d.name = ident();
      if (accept("(")) {
        do d.params.push_back(ident());
        while (accept(","));
        expect(")");
      }
      expect(".");
      m.messages.push_back(std::move(d));
    } else if (t.is("var") || t.is("vars")) {
      next();
      VarDecl d;
      d.pos = pos;
      do d.names.push_back(ident());
      while (!peek().is(":") && peek().kind != Tok::End);
      expect(":");
      d.type = ident();
      expect(".");
      m.vars.push_back(std::move(d));
    } else if (t.is("const")) {
      next();
      ConstDecl d;
      d.pos = pos;
      d.name = ident();
      expect(":");
      d.type = ident();
      expect("=");
      d.value = expr(false);
      expect(".");
      m.consts.push_back(std::move(d));
    } else if (t.is("rl") || t.is("crl")) {
      next();
      RuleDecl r;
      r.pos = pos;
      expect("[");
      r.label = ident();
      expect("]");
      expect(":");
      if (!accept("none")) {
        while (!peek().is("=>")) {
          if (peek().kind == Tok::End) fail("expected '=>'");
          r.lhs.push_back(elem_pattern());
        }
      }
      expect("=>");
      if (!accept("none")) {
        while (!peek().is("if") && !peek().is(".")) {
          if (peek().kind == Tok::End) fail("expected '.'");
          r.rhs.push_back(elem_effect(true));
        }
      }
      if (accept("if")) r.guard = expr(false);
      expect(".");
      m.rules.push_back(std::move(r));
    } else if (t.is("delta")) {
      next();
      DeltaDecl d;
      d.pos = pos;
      expect("(");
      d.pattern = object_pattern();
      expect(",");
      d.time_var = ident();
      expect(")");
      expect("=");
      if (!peek().is("<")) fail("expected an object after '=' in delta equation");
      d.result = std::get<ObjectEffect>(elem_effect(false).v);
      expect(".");
      m.deltas.push_back(std::move(d));
    } else if (t.is("mte")) {
      next();
      MteDecl d;
      d.pos = pos;
      expect("(");
      if (peek().is("<")) {
        d.pattern.v = object_pattern();
      } else if (accept("dly")) {
        expect("(");
        MessagePattern mp = message_pattern();
        expect(",");
        mp.delay = expr(false);
        expect(")");
        d.pattern.v = std::move(mp);
      } else {
        d.pattern.v = message_pattern();
      }
      expect(")");
      expect("=");
      d.value = expr(false);
      expect(".");
      m.mtes.push_back(std::move(d));
    } else if (t.is("prop")) {
      next();
      PropDecl d;
      d.pos = pos;
      d.name = ident();
      if (accept("(")) {
        do d.params.push_back(ident());
        while (accept(","));
        expect(")");
      }
      expect(":=");
      d.predicate = expr(false);
      expect(".");
      m.props.push_back(std::move(d));
    } else if (t.is("init")) {
      next();
      InitDecl d;
      d.pos = pos;
      d.name = peek().is(":=") ? "default" : ident();
      expect(":=");
      if (!accept("none")) {
        while (!peek().is(".")) {
          if (peek().kind == Tok::End) fail("expected '.'");
          d.elements.push_back(elem_effect(false));
        }
      }
      expect(".");
      m.inits.push_back(std::move(d));
    } else {
      fail("expected a declaration but found '" + describe(t) + "'");
    }
  }

  ObjectPattern object_pattern() {
    ObjectPattern p;
    p.pos = peek().pos;
    expect("<");
    p.oid = primary(true);
    expect(":");
    p.cls = ident();
    if (accept("|")) {
      if (!peek().is(">")) {
        do {
          std::string a = ident();
          expect(":");
          p.attrs.emplace_back(std::move(a), expr(true));
        } while (accept(","));
      }
    }
    expect(">");
    return p;
  }

  MessagePattern message_pattern() {
    MessagePattern p;
    p.pos = peek().pos;
    p.name = ident();
    if (accept("(")) {
      if (!peek().is(")")) {
        do p.args.push_back(expr(false));
        while (accept(","));
      }
      expect(")");
    }
    return p;
  }

  ElemPattern elem_pattern() {
    if (peek().is("<")) return ElemPattern{object_pattern()};
    return ElemPattern{message_pattern()};
  }

  ElemEffect elem_effect(bool allow_choice) {
    if (peek().is("<")) {
      ObjectPattern p = object_pattern();
      ObjectEffect e;
      e.pos = p.pos;
      e.oid = p.oid;
      e.cls = p.cls;
      e.updates = std::move(p.attrs);
      return ElemEffect{std::move(e)};
    }
    MessageEmit e;
    e.pos = peek().pos;
    if (accept("dly")) {
      expect("(");
      MessagePattern mp = message_pattern();
      e.name = mp.name;
      e.args = mp.args;
      expect(",");
      if (peek().is("{")) {
        if (!allow_choice) fail("delay choice sets are only allowed in rule effects");
        next();
        e.choice = true;
        do e.delays.push_back(expr(false));
        while (accept(","));
        expect("}");
      } else {
        e.delays.push_back(expr(false));
      }
      expect(")");
    } else {
      MessagePattern mp = message_pattern();
      e.name = mp.name;
      e.args = mp.args;
    }
    return ElemEffect{std::move(e)};
  }

  // Expressions. `no_gt` is set inside `< ... >` where '>' closes the object.
  ExprPtr expr(bool no_gt) { return or_expr(no_gt); }

  ExprPtr or_expr(bool no_gt) {
    auto lhs = and_expr(no_gt);
    while (peek().is("or")) {
      next();
      lhs = build::binary(Op::Or, lhs, and_expr(no_gt));
    }
    return lhs;
  }

  ExprPtr and_expr(bool no_gt) {
    auto lhs = not_expr(no_gt);
    while (peek().is("and")) {
      next();
      lhs = build::binary(Op::And, lhs, not_expr(no_gt));
    }
    return lhs;
  }

  ExprPtr not_expr(bool no_gt) {
    if (peek().is("not")) {
      SourcePos pos = next().pos;
      auto e = std::make_shared<Expr>(*build::negate(not_expr(no_gt)));
      e->pos = pos;
      return e;
    }
    return cmp_expr(no_gt);
  }

  ExprPtr cmp_expr(bool no_gt) {
    auto lhs = add_expr(no_gt);
    static const std::pair<const char*, Op> ops[] = {{"<=", Op::Le}, {">=", Op::Ge}, {"<", Op::Lt}, {">", Op::Gt},
                                                     {"==", Op::Eq}, {"!=", Op::Ne}, {"=/=", Op::Ne}};
    for (const auto& [text, op] : ops) {
      if (peek().is(text)) {
        if (no_gt && op == Op::Gt) break;
        SourcePos pos = next().pos;
        auto e = std::make_shared<Expr>(*build::binary(op, lhs, add_expr(no_gt)));
        e->pos = pos;
        return e;
      }
    }
    return lhs;
  }

  ExprPtr add_expr(bool no_gt) {
    auto lhs = mul_expr(no_gt);
    while (peek().is("+") || peek().is("-")) {
      Op op = next().text == "+" ? Op::Add : Op::Sub;
      lhs = build::binary(op, lhs, mul_expr(no_gt));
    }
    return lhs;
  }

  ExprPtr mul_expr(bool no_gt) {
    auto lhs = unary_expr(no_gt);
    while (peek().is("*") || peek().is("/")) {
      Op op = next().text == "*" ? Op::Mul : Op::Div;
      lhs = build::binary(op, lhs, unary_expr(no_gt));
    }
    return lhs;
  }

  ExprPtr unary_expr(bool no_gt) {
    if (peek().is("-")) {
      SourcePos pos = next().pos;
      if (peek().kind == Tok::Number && peek().text.find_first_of("./") == std::string::npos) {
        auto e = std::make_shared<Expr>();
        e->pos = pos;
        e->literal = AttrValue(mpz_class("-" + next().text, 10));
        return e;
      }
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::Unary;
      e->op = Op::Neg;
      e->pos = pos;
      e->args = {unary_expr(no_gt)};
      return e;
    }
    return primary(no_gt);
  }

  ExprPtr primary(bool no_gt) {
    const Token& t = peek();
    SourcePos pos = t.pos;
    auto mk = [&](ExprKind kind) {
      auto e = std::make_shared<Expr>();
      e->kind = kind;
      e->pos = pos;
      return e;
    };
    if (t.kind == Tok::Number) {
      std::string text = next().text;
      auto e = mk(ExprKind::Literal);
      if (text.find_first_of("./") == std::string::npos) {
        e->literal = AttrValue(mpz_class(text, 10));
      } else {
        try {
          e->literal = AttrValue(TimeValue::parse(text));
        } catch (const std::exception& ex) {
          throw SyntaxError{Diagnostic{Diagnostic::Kind::Syntax, pos, ex.what()}};
        }
      }
      return e;
    }
    if (t.is("true") || t.is("false")) {
      auto e = mk(ExprKind::Literal);
      e->literal = AttrValue(next().text == "true");
      return e;
    }
    if (t.is("INF")) {
      next();
      auto e = mk(ExprKind::Literal);
      e->literal = AttrValue(TimeValue::infinity());
      return e;
    }
    if (t.is("(")) {
      next();
      auto e = expr(false);
      expect(")");
      return e;
    }
    if (t.is("if")) {
      next();
      auto e = mk(ExprKind::If);
      e->args.push_back(expr(false));
      expect("then");
      e->args.push_back(expr(false));
      expect("else");
      e->args.push_back(expr(false));
      expect("fi");
      return e;
    }
    if (t.is("exists")) {
      next();
      auto e = mk(ExprKind::Exists);
      e->pattern = std::make_shared<ElemPattern>(elem_pattern());
      if (accept(":")) e->args.push_back(expr(no_gt));
      return e;
    }
    if (t.kind == Tok::Ident && (t.text == "sat" || t.text == "pre" || t.text == "post") && peek(1).is("(")) {
      auto e = mk(ExprKind::PropAtom);
      std::string which = next().text;
      e->scope = which == "sat" ? PropScope::Sat : which == "pre" ? PropScope::Pre : PropScope::Post;
      expect("(");
      e->name = ident();
      if (accept("(")) {
        do e->args.push_back(expr(false));
        while (accept(","));
        expect(")");
      }
      expect(")");
      return e;
    }
    if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
      std::string name = next().text;
      if (accept("(")) {
        bool builtin = name == "min" || name == "max" || name == "monus";
        auto e = mk(builtin ? ExprKind::Call : ExprKind::Ctor);
        e->name = std::move(name);
        if (!peek().is(")")) {
          do e->args.push_back(expr(false));
          while (accept(","));
        }
        expect(")");
        return e;
      }
      auto e = mk(ExprKind::Ident);
      e->name = std::move(name);
      return e;
    }
    fail("expected an expression but found '" + describe(t) + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

namespace detail {

Model parse_declarations(std::string_view source, std::vector<Diagnostic>& diags) {
  std::vector<Token> toks;
  try {
    toks = tokenize(source);
  } catch (const ModelError& e) {
    diags.insert(diags.end(), e.diagnostics().begin(), e.diagnostics().end());
    return {};
  }
  Parser p(std::move(toks));
  return p.parse_model(diags);
}

ExprPtr parse_expression(std::string_view source) {
  Parser p(tokenize(source));
  try {
    return p.parse_standalone_expr();
  } catch (const SyntaxError& e) {
    throw ModelError({e.diag});
  }
}

}  // namespace detail

}  // namespace tickcheck
