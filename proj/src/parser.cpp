#include <cctype>

#include "boxarith/syntax.hpp"

namespace boxarith {

namespace {

bool is_keyword(const std::string& w) {
  return w == "bot" || w == "box" || w == "forall" || w == "exists" || w == "prf" || w == "code";
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Formula whole_formula() {
    auto f = formula();
    ws();
    if (p_ != s_.size()) fail("trailing input");
    return f;
  }

  Term whole_term() {
    auto t = term();
    ws();
    if (p_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  std::string_view s_;
  std::size_t p_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, p_); }

  void ws() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }

  bool peek(std::string_view lit) {
    ws();
    return s_.substr(p_, lit.size()) == lit;
  }

  bool eat(std::string_view lit) {
    if (!peek(lit)) return false;
    p_ += lit.size();
    return true;
  }

  void expect(std::string_view lit) {
    if (!eat(lit)) fail("expected '" + std::string(lit) + "'");
  }

  // reads [a-z][a-z0-9_]* without consuming it
  std::string peek_word() {
    ws();
    std::size_t q = p_;
    if (q >= s_.size() || !(s_[q] >= 'a' && s_[q] <= 'z')) return {};
    while (q < s_.size() &&
           ((s_[q] >= 'a' && s_[q] <= 'z') || (s_[q] >= '0' && s_[q] <= '9') || s_[q] == '_'))
      ++q;
    return std::string(s_.substr(p_, q - p_));
  }

  bool eat_word(const std::string& w) {
    if (peek_word() != w) return false;
    p_ += w.size();
    return true;
  }

  std::string ident() {
    auto w = peek_word();
    if (w.empty()) fail("expected identifier");
    if (is_keyword(w)) fail("keyword '" + w + "' used as variable");
    if (w == "in" && p_ + 2 < s_.size() && s_[p_ + 2] == 'W') fail("expected identifier");
    p_ += w.size();
    return w;
  }

  Term term() {
    ws();
    if (p_ >= s_.size()) fail("expected term");
    char c = s_[p_];
    if (c == '0') {
      ++p_;
      if (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_])))
        fail("numerals are written #n");
      return zero();
    }
    if (c == '#') {
      ++p_;
      std::size_t q = p_;
      while (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) ++q;
      if (q == p_) fail("expected digits after #");
      std::string digits(s_.substr(p_, q - p_));
      if (digits.size() > 1 && digits[0] == '0') fail("leading zero in numeral");
      p_ = q;
      return num(Nat(digits));
    }
    if (c == 'S') {
      ++p_;
      expect("(");
      auto t = term();
      expect(")");
      return succ(t);
    }
    if (c == '(') {
      ++p_;
      auto a = term();
      bool plus;
      if (eat("+")) plus = true;
      else if (eat("*")) plus = false;
      else fail("expected + or *");
      auto b = term();
      expect(")");
      return plus ? add(a, b) : mul(a, b);
    }
    if (peek_word() == "code") {
      p_ += 4;
      expect("[");
      auto f = formula();
      expect("]");
      expect("{");
      std::map<std::string, Term> m;
      if (!eat("}")) {
        do {
          auto v = ident();
          expect(":=");
          auto t = term();
          if (!m.emplace(v, t).second) fail("duplicate code substitution for " + v);
        } while (eat(","));
        expect("}");
      }
      try {
        return code_sub(f, std::move(m));
      } catch (const ParseError&) {
        throw;
      } catch (const DomainError& e) {
        fail(e.what());
      }
    }
    return var(ident());
  }

  Formula relation_after(Term a) {
    if (eat("<=")) return le(a, term());
    if (peek("<-")) fail("expected relation");
    if (eat("<")) return lt(a, term());
    if (eat("=")) return eq(a, term());
    fail("expected =, <= or <");
  }

  Formula quantifier(bool universal) {
    auto v = ident();
    if (peek("<") && !peek("<=") && !peek("<-")) {
      ++p_;
      std::size_t at = p_;
      auto bound = term();
      if (occurs_in(v, bound)) throw ParseError("bound variable " + v + " occurs in its bound", at);
      auto body = primary();
      return universal ? all_lt(v, bound, body) : some_lt(v, bound, body);
    }
    auto body = primary();
    return universal ? all(v, body) : some(v, body);
  }

  Formula primary() {
    ws();
    if (p_ >= s_.size()) fail("expected formula");
    if (eat("~")) return neg(primary());
    auto w = peek_word();
    if (w == "bot") { p_ += 3; return bot(); }
    if (w == "box") { p_ += 3; return box(primary()); }
    if (w == "forall") { p_ += 6; return quantifier(true); }
    if (w == "exists") { p_ += 6; return quantifier(false); }
    if (w == "prf") {
      p_ += 3;
      expect("[");
      auto tag = peek_word();
      if (tag == "pa" && s_.substr(p_, 3) == "paB") tag = "paB";
      auto l = logic_from_tag(tag);
      if (!l) fail("unknown theory tag");
      p_ += tag.size();
      expect("]");
      expect("(");
      auto x = term();
      expect(",");
      auto y = term();
      expect(")");
      return prf(*l, x, y);
    }
    if (w == "in" && s_.substr(p_, 4) == "inW(") {
      p_ += 4;
      auto x = term();
      expect(",");
      auto y = term();
      expect(")");
      return inw(x, y);
    }
    if (s_[p_] == '(') {
      std::size_t save = p_;
      try {
        auto t = term();
        return relation_after(t);
      } catch (const ParseError&) {
        p_ = save;
      }
      ++p_;
      auto a = formula();
      Formula r;
      if (eat("&")) r = conj(a, formula());
      else if (eat("|")) r = disj(a, formula());
      else if (eat("<->")) r = iff(a, formula());
      else if (eat("->")) r = imp(a, formula());
      else r = a;
      expect(")");
      return r;
    }
    auto t = term();
    return relation_after(t);
  }

  Formula formula() { return primary(); }
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).whole_formula(); }

Term parse_term(std::string_view text) { return Parser(text).whole_term(); }

}  // namespace boxarith
