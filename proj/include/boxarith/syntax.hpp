// Terms and formulas of first-order arithmetic with a box operator.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace boxarith {

using Nat = boost::multiprecision::cpp_int;

/// Raised for inputs outside an operation's domain.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DomainError {
 public:
  ParseError(std::string msg, std::size_t pos);
  std::size_t pos;
};

enum class Logic : std::uint8_t { PA_Box, K, K4, KT, S4, S41, Triv, GL, Ver };

std::string logic_tag(Logic l);
std::optional<Logic> logic_from_tag(std::string_view tag);
const std::vector<Logic>& all_logics();

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

/// A base logic plus extra axiom sentences.
struct TheoryId {
  Logic base = Logic::PA_Box;
  std::vector<Formula> extra;
};

struct TermNode;
struct FormulaNode;
using Term = std::shared_ptr<const TermNode>;
using Formula = std::shared_ptr<const FormulaNode>;

enum class TermKind : std::uint8_t { Zero, Var, Succ, Add, Mul, Num, CodeSub };

struct TermNode {
  TermKind kind;
  std::string name;  // Var
  Nat value;         // Num
  Term lhs, rhs;     // Succ keeps its argument in lhs
  Formula coded;     // CodeSub: the formula whose dotted code this is
  std::vector<std::pair<std::string, Term>> subst;  // CodeSub, sorted by name
  std::size_t hash = 0;
};

enum class FKind : std::uint8_t {
  Bot, Eq, Le, Lt, Prf, InW,
  Not, And, Or, Imp, Iff,
  Forall, Exists, BForall, BExists,
  Box
};

struct FormulaNode {
  FKind kind;
  Term t1, t2;  // atom arguments; t1 is the bound of a bounded quantifier
  Logic theory = Logic::PA_Box;  // Prf
  Formula a, b;
  std::string var;
  std::size_t hash = 0;
};

// term builders
Term zero();
Term var(std::string name);
Term succ(Term t);
Term add(Term a, Term b);
Term mul(Term a, Term b);
Term num(Nat n);
Term numeral(const Nat& n);
/// Dotted code of f; the map must cover exactly the free variables of f.
Term code_sub(Formula f, std::map<std::string, Term> subst);

// formula builders
Formula bot();
Formula eq(Term a, Term b);
Formula le(Term a, Term b);
Formula lt(Term a, Term b);
Formula prf(Logic thy, Term x, Term y);
Formula inw(Term x, Term y);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula all(std::string v, Formula body);
Formula some(std::string v, Formula body);
/// Throws DomainError when v occurs in the bound.
Formula all_lt(std::string v, Term bound, Formula body);
Formula some_lt(std::string v, Term bound, Formula body);
Formula box(Formula f);
Formula top();  // ~bot

/// Right-nested conjunction; the empty list gives ~bot.
Formula big_and(const std::vector<Formula>& fs);
/// Right-nested disjunction; the empty list gives bot.
Formula big_or(const std::vector<Formula>& fs);

bool equal(const Term& a, const Term& b);
bool equal(const Formula& a, const Formula& b);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f->hash; }
};
struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return equal(a, b); }
};

bool is_atom(const Formula& f);
bool is_binder(FKind k);
bool is_bool(FKind k);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

std::set<std::string> term_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
/// Every variable name occurring anywhere, bound ones included.
std::set<std::string> all_vars(const Formula& f);
bool is_sentence(const Formula& f);
bool occurs_in(const std::string& v, const Term& t);

Term substitute(const Term& t, const std::string& v, const Term& s);
/// Replaces free occurrences of v; shadowed occurrences stay.
Formula substitute(const Formula& f, const std::string& v, const Term& t);
/// Simultaneous replacement of free variables.
Formula substitute_all(const Formula& f, const std::map<std::string, Term>& m);
/// No free occurrence of v sits under a binder of a variable of t.
bool substitutable(const Formula& f, const std::string& v, const Term& t);

int modal_depth(const Formula& f);
std::size_t formula_size(const Formula& f);

/// Fresh names v_k above every index already used.
class FreshSupply {
 public:
  FreshSupply() = default;
  explicit FreshSupply(const Formula& f) { avoid(f); }
  void avoid(const Formula& f);
  void avoid(const std::string& name);
  std::string next();

 private:
  long long next_ = 0;
};

}  // namespace boxarith
