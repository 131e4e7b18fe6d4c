#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "table.hpp"
#include "transform.hpp"
#include "var.hpp"

namespace orbital {

/// Relational expressions over named tables. Projection is an action by a
/// partial identity, so there is no separate node for it.
class Expr {
 public:
  enum class Kind { TableRef, Join, Act, Diag, Top, Bottom };
  using Ptr = std::shared_ptr<const Expr>;

  static Ptr table(std::string name) { return make(Kind::TableRef, [&](Expr& e) { e.name_ = std::move(name); }); }
  static Ptr join(Ptr l, Ptr r) {
    return make(Kind::Join, [&](Expr& e) {
      e.lhs_ = std::move(l);
      e.rhs_ = std::move(r);
    });
  }
  static Ptr act(Ptr base, Transform lam) {
    return make(Kind::Act, [&](Expr& e) {
      e.lhs_ = std::move(base);
      e.lam_ = std::move(lam);
    });
  }
  static Ptr project(Ptr base, const VarSet& y) { return act(std::move(base), partial_identity(y)); }
  static Ptr diag(Var x, Var y) {
    return make(Kind::Diag, [&](Expr& e) {
      e.x_ = x;
      e.y_ = y;
    });
  }
  static Ptr top() { return make(Kind::Top, [](Expr&) {}); }
  static Ptr bottom() { return make(Kind::Bottom, [](Expr&) {}); }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const Ptr& lhs() const noexcept { return lhs_; }
  const Ptr& rhs() const noexcept { return rhs_; }
  const Transform& transform() const noexcept { return lam_; }
  Var x() const noexcept { return x_; }
  Var y() const noexcept { return y_; }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::TableRef: return a.name_ == b.name_;
      case Kind::Join: return *a.lhs_ == *b.lhs_ && *a.rhs_ == *b.rhs_;
      case Kind::Act: return a.lam_ == b.lam_ && *a.lhs_ == *b.lhs_;
      case Kind::Diag: return a.x_ == b.x_ && a.y_ == b.y_;
      case Kind::Top:
      case Kind::Bottom: return true;
    }
    return false;
  }

 private:
  explicit Expr(Kind k) : kind_(k) {}

  template <class F>
  static Ptr make(Kind k, F&& fill) {
    auto e = std::shared_ptr<Expr>(new Expr(k));
    fill(*e);
    return e;
  }

  Kind kind_;
  std::string name_;
  Ptr lhs_, rhs_;
  Transform lam_;
  Var x_{1}, y_{1};
};

/// Syntax error with the byte offset where it was detected and the tokens
/// that would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::set<std::string> expected, std::string found)
      : Error(render(position, expected, found)), position_(position), expected_(std::move(expected)), found_(std::move(found)) {}

  std::size_t position() const noexcept { return position_; }
  const std::set<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  static std::string render(std::size_t pos, const std::set<std::string>& expected, const std::string& found) {
    std::string out = "parse error at offset " + std::to_string(pos) + ": found " + found + ", expected ";
    bool first = true;
    for (auto const& e : expected) {
      out += (first ? "" : " | ") + e;
      first = false;
    }
    return out;
  }

  std::size_t position_;
  std::set<std::string> expected_;
  std::string found_;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) { lex(); }

  Expr::Ptr parse() {
    auto e = expr();
    if (cur().kind != Tok::End) fail({"JOIN", "'.'", "end of input"});
    return e;
  }

 private:
  enum class Tok { Ident, LParen, RParen, LBrace, RBrace, Comma, Dot, Arrow, End };
  struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
  };

  void lex() {
    std::size_t i = 0;
    while (true) {
      while (i < src_.size() && std::isspace(static_cast<unsigned char>(src_[i]))) ++i;
      if (i >= src_.size()) break;
      char c = src_[i];
      std::size_t start = i;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_')) ++i;
        toks_.push_back({Tok::Ident, std::string(src_.substr(start, i - start)), start});
        continue;
      }
      if (c == '-' && i + 1 < src_.size() && src_[i + 1] == '>') {
        toks_.push_back({Tok::Arrow, "->", start});
        i += 2;
        continue;
      }
      Tok k;
      switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case ',': k = Tok::Comma; break;
        case '.': k = Tok::Dot; break;
        default: throw ParseError(start, {"a name", "'('", "'{'", "'}'", "','", "'.'", "'->'"}, "'" + std::string(1, c) + "'");
      }
      toks_.push_back({k, std::string(1, c), start});
      ++i;
    }
    toks_.push_back({Tok::End, "", src_.size()});
  }

  const Token& cur() const { return toks_[at_]; }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token& t = cur();
    throw ParseError(t.pos, std::move(expected), t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
  }

  static bool keyword(const std::string& s) { return s == "JOIN" || s == "TOP" || s == "BOTTOM" || s == "DIAG"; }

  bool accept_word(std::string_view w) {
    if (cur().kind == Tok::Ident && cur().text == w) {
      ++at_;
      return true;
    }
    return false;
  }

  bool accept(Tok k) {
    if (cur().kind == k) {
      ++at_;
      return true;
    }
    return false;
  }

  void expect(Tok k, const char* shown) {
    if (!accept(k)) fail({shown});
  }

  Var var() {
    if (cur().kind == Tok::Ident) {
      try {
        Var v = parse_var(cur().text);
        ++at_;
        return v;
      } catch (const Error&) {
      }
    }
    fail({"a variable x<digits>"});
  }

  Expr::Ptr expr() {
    auto e = term();
    while (accept_word("JOIN")) e = Expr::join(e, term());
    return e;
  }

  Expr::Ptr term() {
    auto e = primary();
    while (accept(Tok::Dot)) {
      if (accept_word("rename")) {
        expect(Tok::LBrace, "'{'");
        std::vector<Transform::value_type> pairs;
        std::set<Var> seen;
        if (!accept(Tok::RBrace)) {
          do {
            std::size_t pos = cur().pos;
            Var y = var();
            if (!seen.insert(y).second) throw ParseError(pos, {"a variable not yet renamed"}, "'" + y.str() + "'");
            expect(Tok::Arrow, "'->'");
            pairs.emplace_back(y, var());
          } while (accept(Tok::Comma));
          if (!accept(Tok::RBrace)) fail({"','", "'}'"});
        }
        e = Expr::act(e, Transform(std::move(pairs)));
      } else if (accept_word("project")) {
        expect(Tok::LBrace, "'{'");
        std::vector<Var> xs;
        if (!accept(Tok::RBrace)) {
          do {
            xs.push_back(var());
          } while (accept(Tok::Comma));
          if (!accept(Tok::RBrace)) fail({"','", "'}'"});
        }
        e = Expr::project(e, VarSet(std::move(xs)));
      } else {
        fail({"rename", "project"});
      }
    }
    return e;
  }

  Expr::Ptr primary() {
    if (accept(Tok::LParen)) {
      auto e = expr();
      if (!accept(Tok::RParen)) fail({"JOIN", "'.'", "')'"});
      return e;
    }
    if (accept_word("TOP")) return Expr::top();
    if (accept_word("BOTTOM")) return Expr::bottom();
    if (accept_word("DIAG")) {
      expect(Tok::LParen, "'('");
      Var x = var();
      expect(Tok::Comma, "','");
      Var y = var();
      expect(Tok::RParen, "')'");
      return Expr::diag(x, y);
    }
    if (cur().kind == Tok::Ident && !keyword(cur().text)) {
      std::string name = cur().text;
      ++at_;
      return Expr::table(std::move(name));
    }
    fail({"a table name", "DIAG", "TOP", "BOTTOM", "'('"});
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

}  // namespace detail

/// expr := term ('JOIN' term)*, left associative;
/// term := primary ('.' ('rename{' pairs '}' | 'project{' vars '}'))*;
/// primary := NAME | 'DIAG(' var ',' var ')' | 'TOP' | 'BOTTOM' | '(' expr ')'.
inline Expr::Ptr parse_expr(std::string_view src) { return detail::ExprParser(src).parse(); }

/// Prints with the parentheses needed to parse back to the same tree.
inline std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::TableRef: return e.name();
    case Expr::Kind::Top: return "TOP";
    case Expr::Kind::Bottom: return "BOTTOM";
    case Expr::Kind::Diag: return "DIAG(" + e.x().str() + "," + e.y().str() + ")";
    case Expr::Kind::Join: {
      std::string r = to_string(*e.rhs());
      if (e.rhs()->kind() == Expr::Kind::Join) r = "(" + r + ")";
      return to_string(*e.lhs()) + " JOIN " + r;
    }
    case Expr::Kind::Act: {
      std::string b = to_string(*e.lhs());
      if (e.lhs()->kind() == Expr::Kind::Join) b = "(" + b + ")";
      const Transform& f = e.transform();
      if (f.is_partial_identity()) {
        std::string vs = f.domain().str();  // "{x1,x2}"
        return b + ".project" + vs;
      }
      std::string body;
      for (auto const& [y, z] : f) body += (body.empty() ? "" : ", ") + y.str() + "->" + z.str();
      return b + ".rename{" + body + "}";
    }
  }
  return {};
}

inline std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << to_string(e); }

using TableEnv = std::map<std::string, Table<std::string>>;

/// Evaluates over the ground set `ground`; every referenced table must be
/// bound and share that ground set.
inline Table<std::string> eval(const Expr& e, const TableEnv& env, const GroundPtr<std::string>& ground) {
  switch (e.kind()) {
    case Expr::Kind::TableRef: {
      auto it = env.find(e.name());
      if (it == env.end()) throw Error("unbound table name '" + e.name() + "'");
      if (!(*it->second.ground() == *ground)) throw Error("table '" + e.name() + "' is over another ground set");
      return it->second;
    }
    case Expr::Kind::Join: return natural_join(eval(*e.lhs(), env, ground), eval(*e.rhs(), env, ground));
    case Expr::Kind::Act: return act_table(eval(*e.lhs(), env, ground), e.transform());
    case Expr::Kind::Diag: return diagonal(e.x(), e.y(), ground);
    case Expr::Kind::Top: return top(ground);
    case Expr::Kind::Bottom: return bottom(ground);
  }
  throw Error("unknown expression");
}

}  // namespace orbital
