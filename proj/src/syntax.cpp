#include "boxarith/syntax.hpp"

#include <algorithm>
#include <functional>

namespace boxarith {

ParseError::ParseError(std::string msg, std::size_t p)
    : DomainError("parse error at " + std::to_string(p) + ": " + msg), pos(p) {}

namespace {

const std::vector<std::pair<Logic, const char*>> kTags = {
    {Logic::PA_Box, "paB"}, {Logic::K, "k"},       {Logic::K4, "k4"},
    {Logic::KT, "kt"},      {Logic::S4, "s4"},     {Logic::S41, "s41"},
    {Logic::Triv, "triv"},  {Logic::GL, "gl"},     {Logic::Ver, "ver"}};

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t nat_hash(const Nat& n) {
  if (n <= Nat(UINT64_MAX)) return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(n));
  return std::hash<std::string>{}(n.str());
}

Term finish(TermNode n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 131 + 7;
  switch (n.kind) {
    case TermKind::Zero: break;
    case TermKind::Var: h = mix(h, std::hash<std::string>{}(n.name)); break;
    case TermKind::Num: h = mix(h, nat_hash(n.value)); break;
    case TermKind::Succ: h = mix(h, n.lhs->hash); break;
    case TermKind::Add:
    case TermKind::Mul: h = mix(mix(h, n.lhs->hash), n.rhs->hash); break;
    case TermKind::CodeSub:
      h = mix(h, n.coded->hash);
      for (auto& [k, t] : n.subst) h = mix(mix(h, std::hash<std::string>{}(k)), t->hash);
      break;
  }
  n.hash = h;
  return std::make_shared<const TermNode>(std::move(n));
}

Formula finish(FormulaNode n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 977 + 13;
  if (n.t1) h = mix(h, n.t1->hash);
  if (n.t2) h = mix(h, n.t2->hash);
  if (n.kind == FKind::Prf) h = mix(h, static_cast<std::size_t>(n.theory));
  if (n.a) h = mix(h, n.a->hash);
  if (n.b) h = mix(h, n.b->hash);
  if (!n.var.empty()) h = mix(h, std::hash<std::string>{}(n.var));
  n.hash = h;
  return std::make_shared<const FormulaNode>(std::move(n));
}

Formula atom(FKind k, Term a, Term b) {
  FormulaNode n{k};
  n.t1 = std::move(a);
  n.t2 = std::move(b);
  return finish(std::move(n));
}

Formula unary(FKind k, Formula a) {
  FormulaNode n{k};
  n.a = std::move(a);
  return finish(std::move(n));
}

Formula binary(FKind k, Formula a, Formula b) {
  FormulaNode n{k};
  n.a = std::move(a);
  n.b = std::move(b);
  return finish(std::move(n));
}

}  // namespace

std::string logic_tag(Logic l) {
  for (auto& [k, s] : kTags)
    if (k == l) return s;
  return "?";
}

std::optional<Logic> logic_from_tag(std::string_view tag) {
  for (auto& [k, s] : kTags)
    if (tag == s) return k;
  return std::nullopt;
}

const std::vector<Logic>& all_logics() {
  static const std::vector<Logic> v = [] {
    std::vector<Logic> r;
    for (auto& [k, s] : kTags) r.push_back(k);
    return r;
  }();
  return v;
}

Term zero() {
  static const Term z = finish(TermNode{TermKind::Zero});
  return z;
}

Term var(std::string name) {
  TermNode n{TermKind::Var};
  n.name = std::move(name);
  return finish(std::move(n));
}

Term succ(Term t) {
  TermNode n{TermKind::Succ};
  n.lhs = std::move(t);
  return finish(std::move(n));
}

Term add(Term a, Term b) {
  TermNode n{TermKind::Add};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return finish(std::move(n));
}

Term mul(Term a, Term b) {
  TermNode n{TermKind::Mul};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return finish(std::move(n));
}

Term num(Nat v) {
  if (v < 0) throw DomainError("negative numeral");
  TermNode n{TermKind::Num};
  n.value = std::move(v);
  return finish(std::move(n));
}

Term numeral(const Nat& n) { return num(n); }

Term code_sub(Formula f, std::map<std::string, Term> subst) {
  auto fv = free_vars(f);
  if (fv.size() != subst.size())
    throw DomainError("code substitution must cover exactly the free variables of " + to_string(f));
  for (auto& [k, t] : subst)
    if (!fv.count(k)) throw DomainError("code substitution names non-free variable " + k);
  TermNode n{TermKind::CodeSub};
  n.coded = std::move(f);
  n.subst.assign(subst.begin(), subst.end());
  return finish(std::move(n));
}

Formula bot() {
  static const Formula b = finish(FormulaNode{FKind::Bot});
  return b;
}
Formula top() {
  static const Formula t = neg(bot());
  return t;
}
Formula eq(Term a, Term b) { return atom(FKind::Eq, std::move(a), std::move(b)); }
Formula le(Term a, Term b) { return atom(FKind::Le, std::move(a), std::move(b)); }
Formula lt(Term a, Term b) { return atom(FKind::Lt, std::move(a), std::move(b)); }
Formula inw(Term a, Term b) { return atom(FKind::InW, std::move(a), std::move(b)); }
Formula prf(Logic thy, Term x, Term y) {
  FormulaNode n{FKind::Prf};
  n.theory = thy;
  n.t1 = std::move(x);
  n.t2 = std::move(y);
  return finish(std::move(n));
}
Formula neg(Formula f) { return unary(FKind::Not, std::move(f)); }
Formula box(Formula f) { return unary(FKind::Box, std::move(f)); }
Formula conj(Formula a, Formula b) { return binary(FKind::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return binary(FKind::Or, std::move(a), std::move(b)); }
Formula imp(Formula a, Formula b) { return binary(FKind::Imp, std::move(a), std::move(b)); }
Formula iff(Formula a, Formula b) { return binary(FKind::Iff, std::move(a), std::move(b)); }

Formula all(std::string v, Formula body) {
  FormulaNode n{FKind::Forall};
  n.var = std::move(v);
  n.a = std::move(body);
  return finish(std::move(n));
}

Formula some(std::string v, Formula body) {
  FormulaNode n{FKind::Exists};
  n.var = std::move(v);
  n.a = std::move(body);
  return finish(std::move(n));
}

static Formula bounded(FKind k, std::string v, Term bound, Formula body) {
  if (occurs_in(v, bound))
    throw DomainError("bound variable " + v + " occurs in its bound " + to_string(bound));
  FormulaNode n{k};
  n.var = std::move(v);
  n.t1 = std::move(bound);
  n.a = std::move(body);
  return finish(std::move(n));
}

Formula all_lt(std::string v, Term bound, Formula body) {
  return bounded(FKind::BForall, std::move(v), std::move(bound), std::move(body));
}
Formula some_lt(std::string v, Term bound, Formula body) {
  return bounded(FKind::BExists, std::move(v), std::move(bound), std::move(body));
}

Formula big_and(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = conj(fs[i], acc);
  return acc;
}

Formula big_or(const std::vector<Formula>& fs) {
  if (fs.empty()) return bot();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = disj(fs[i], acc);
  return acc;
}

bool equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Zero: return true;
    case TermKind::Var: return a->name == b->name;
    case TermKind::Num: return a->value == b->value;
    case TermKind::Succ: return equal(a->lhs, b->lhs);
    case TermKind::Add:
    case TermKind::Mul: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case TermKind::CodeSub:
      if (!equal(a->coded, b->coded) || a->subst.size() != b->subst.size()) return false;
      for (std::size_t i = 0; i < a->subst.size(); ++i)
        if (a->subst[i].first != b->subst[i].first || !equal(a->subst[i].second, b->subst[i].second))
          return false;
      return true;
  }
  return false;
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  if (a->var != b->var) return false;
  if (a->kind == FKind::Prf && a->theory != b->theory) return false;
  if ((a->t1 != nullptr) != (b->t1 != nullptr) || (a->t1 && !equal(a->t1, b->t1))) return false;
  if ((a->t2 != nullptr) != (b->t2 != nullptr) || (a->t2 && !equal(a->t2, b->t2))) return false;
  if ((a->a != nullptr) != (b->a != nullptr) || (a->a && !equal(a->a, b->a))) return false;
  if ((a->b != nullptr) != (b->b != nullptr) || (a->b && !equal(a->b, b->b))) return false;
  return true;
}

bool is_atom(const Formula& f) {
  switch (f->kind) {
    case FKind::Eq: case FKind::Le: case FKind::Lt: case FKind::Prf: case FKind::InW: return true;
    default: return false;
  }
}

bool is_binder(FKind k) {
  return k == FKind::Forall || k == FKind::Exists || k == FKind::BForall || k == FKind::BExists;
}

bool is_bool(FKind k) {
  return k == FKind::Bot || k == FKind::Not || k == FKind::And || k == FKind::Or ||
         k == FKind::Imp || k == FKind::Iff;
}

// printing

static void print(const Term& t, std::string& out);
static void print(const Formula& f, std::string& out);

static void print(const Term& t, std::string& out) {
  switch (t->kind) {
    case TermKind::Zero: out += '0'; return;
    case TermKind::Var: out += t->name; return;
    case TermKind::Num: out += '#'; out += t->value.str(); return;
    case TermKind::Succ: out += "S("; print(t->lhs, out); out += ')'; return;
    case TermKind::Add:
    case TermKind::Mul:
      out += '(';
      print(t->lhs, out);
      out += t->kind == TermKind::Add ? '+' : '*';
      print(t->rhs, out);
      out += ')';
      return;
    case TermKind::CodeSub:
      out += "code[";
      print(t->coded, out);
      out += "]{";
      for (std::size_t i = 0; i < t->subst.size(); ++i) {
        if (i) out += ',';
        out += t->subst[i].first;
        out += ":=";
        print(t->subst[i].second, out);
      }
      out += '}';
      return;
  }
}

static void print(const Formula& f, std::string& out) {
  auto bin = [&](const char* op) {
    out += '(';
    print(f->a, out);
    out += op;
    print(f->b, out);
    out += ')';
  };
  auto rel = [&](const char* op) {
    print(f->t1, out);
    out += op;
    print(f->t2, out);
  };
  switch (f->kind) {
    case FKind::Bot: out += "bot"; return;
    case FKind::Eq: rel("="); return;
    case FKind::Le: rel("<="); return;
    case FKind::Lt: rel("<"); return;
    case FKind::Prf:
      out += "prf[" + logic_tag(f->theory) + "](";
      print(f->t1, out);
      out += ',';
      print(f->t2, out);
      out += ')';
      return;
    case FKind::InW:
      out += "inW(";
      print(f->t1, out);
      out += ',';
      print(f->t2, out);
      out += ')';
      return;
    case FKind::Not: out += '~'; print(f->a, out); return;
    case FKind::And: bin(" & "); return;
    case FKind::Or: bin(" | "); return;
    case FKind::Imp: bin(" -> "); return;
    case FKind::Iff: bin(" <-> "); return;
    case FKind::Forall:
    case FKind::Exists:
      out += f->kind == FKind::Forall ? "forall " : "exists ";
      out += f->var;
      out += ' ';
      print(f->a, out);
      return;
    case FKind::BForall:
    case FKind::BExists:
      out += f->kind == FKind::BForall ? "forall " : "exists ";
      out += f->var;
      out += " < ";
      print(f->t1, out);
      out += ' ';
      print(f->a, out);
      return;
    case FKind::Box: out += "box "; print(f->a, out); return;
  }
}

std::string to_string(const Term& t) {
  std::string s;
  print(t, s);
  return s;
}

std::string to_string(const Formula& f) {
  std::string s;
  print(f, s);
  return s;
}

// variables

static void collect_term_vars(const Term& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var: out.insert(t->name); return;
    case TermKind::Succ: collect_term_vars(t->lhs, out); return;
    case TermKind::Add:
    case TermKind::Mul:
      collect_term_vars(t->lhs, out);
      collect_term_vars(t->rhs, out);
      return;
    case TermKind::CodeSub:
      for (auto& [k, s] : t->subst) collect_term_vars(s, out);
      return;
    default: return;
  }
}

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> s;
  collect_term_vars(t, s);
  return s;
}

bool occurs_in(const std::string& v, const Term& t) { return term_vars(t).count(v) > 0; }

static void collect_free(const Formula& f, std::set<std::string>& out) {
  if (f->t1) collect_term_vars(f->t1, out);
  if (f->t2) collect_term_vars(f->t2, out);
  if (is_binder(f->kind)) {
    std::set<std::string> inner;
    collect_free(f->a, inner);
    inner.erase(f->var);
    out.insert(inner.begin(), inner.end());
    return;
  }
  if (f->a) collect_free(f->a, out);
  if (f->b) collect_free(f->b, out);
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> s;
  collect_free(f, s);
  return s;
}

static void collect_all_term(const Term& t, std::set<std::string>& out);

static void collect_all(const Formula& f, std::set<std::string>& out) {
  if (f->t1) collect_all_term(f->t1, out);
  if (f->t2) collect_all_term(f->t2, out);
  if (!f->var.empty()) out.insert(f->var);
  if (f->a) collect_all(f->a, out);
  if (f->b) collect_all(f->b, out);
}

static void collect_all_term(const Term& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var: out.insert(t->name); return;
    case TermKind::Succ: collect_all_term(t->lhs, out); return;
    case TermKind::Add:
    case TermKind::Mul:
      collect_all_term(t->lhs, out);
      collect_all_term(t->rhs, out);
      return;
    case TermKind::CodeSub:
      collect_all(t->coded, out);
      for (auto& [k, s] : t->subst) collect_all_term(s, out);
      return;
    default: return;
  }
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> s;
  collect_all(f, s);
  return s;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

// substitution

Term substitute(const Term& t, const std::string& v, const Term& s) {
  switch (t->kind) {
    case TermKind::Zero:
    case TermKind::Num: return t;
    case TermKind::Var: return t->name == v ? s : t;
    case TermKind::Succ: {
      auto a = substitute(t->lhs, v, s);
      return a == t->lhs ? t : succ(a);
    }
    case TermKind::Add:
    case TermKind::Mul: {
      auto a = substitute(t->lhs, v, s);
      auto b = substitute(t->rhs, v, s);
      if (a == t->lhs && b == t->rhs) return t;
      return t->kind == TermKind::Add ? add(a, b) : mul(a, b);
    }
    case TermKind::CodeSub: {
      bool changed = false;
      std::map<std::string, Term> m;
      for (auto& [k, u] : t->subst) {
        auto w = substitute(u, v, s);
        changed |= w != u;
        m.emplace(k, w);
      }
      return changed ? code_sub(t->coded, std::move(m)) : t;
    }
  }
  return t;
}

static Formula rebuild(const Formula& f, Term t1, Term t2, Formula a, Formula b) {
  if (t1 == f->t1 && t2 == f->t2 && a == f->a && b == f->b) return f;
  FormulaNode n{f->kind};
  n.t1 = std::move(t1);
  n.t2 = std::move(t2);
  n.theory = f->theory;
  n.a = std::move(a);
  n.b = std::move(b);
  n.var = f->var;
  return finish(std::move(n));
}

Formula substitute_all(const Formula& f, const std::map<std::string, Term>& m) {
  if (m.empty()) return f;
  auto sub_term = [&](const Term& t) -> Term {
    if (!t) return t;
    Term r = t;
    // simultaneous: terms in the map are never themselves rewritten
    std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
      switch (u->kind) {
        case TermKind::Zero:
        case TermKind::Num: return u;
        case TermKind::Var: {
          auto it = m.find(u->name);
          return it == m.end() ? u : it->second;
        }
        case TermKind::Succ: {
          auto a = go(u->lhs);
          return a == u->lhs ? u : succ(a);
        }
        case TermKind::Add:
        case TermKind::Mul: {
          auto a = go(u->lhs);
          auto b = go(u->rhs);
          if (a == u->lhs && b == u->rhs) return u;
          return u->kind == TermKind::Add ? add(a, b) : mul(a, b);
        }
        case TermKind::CodeSub: {
          bool changed = false;
          std::map<std::string, Term> mm;
          for (auto& [k, w] : u->subst) {
            auto x = go(w);
            changed |= x != w;
            mm.emplace(k, x);
          }
          return changed ? code_sub(u->coded, std::move(mm)) : u;
        }
      }
      return u;
    };
    r = go(t);
    return r;
  };
  if (is_binder(f->kind)) {
    Term bound = f->t1 ? sub_term(f->t1) : nullptr;
    Formula body = f->a;
    if (m.count(f->var)) {
      auto inner = m;
      inner.erase(f->var);
      body = substitute_all(f->a, inner);
    } else {
      body = substitute_all(f->a, m);
    }
    if (bound && occurs_in(f->var, bound))
      throw DomainError("substitution puts " + f->var + " into its own bound");
    return rebuild(f, bound, nullptr, body, nullptr);
  }
  return rebuild(f, sub_term(f->t1), sub_term(f->t2), f->a ? substitute_all(f->a, m) : nullptr,
                 f->b ? substitute_all(f->b, m) : nullptr);
}

Formula substitute(const Formula& f, const std::string& v, const Term& t) {
  return substitute_all(f, {{v, t}});
}

static bool subst_ok(const Formula& f, const std::string& v, const std::set<std::string>& tv,
                     bool under) {
  if (f->kind == FKind::Bot) return true;
  if (is_atom(f)) {
    if (!under) return true;
    return !(occurs_in(v, f->t1) || occurs_in(v, f->t2));
  }
  if (is_binder(f->kind)) {
    if (f->t1 && under && occurs_in(v, f->t1)) return false;
    if (f->var == v) return true;
    return subst_ok(f->a, v, tv, under || tv.count(f->var) > 0);
  }
  if (f->a && !subst_ok(f->a, v, tv, under)) return false;
  if (f->b && !subst_ok(f->b, v, tv, under)) return false;
  return true;
}

bool substitutable(const Formula& f, const std::string& v, const Term& t) {
  return subst_ok(f, v, term_vars(t), false);
}

int modal_depth(const Formula& f) {
  int d = 0;
  if (f->a) d = std::max(d, modal_depth(f->a));
  if (f->b) d = std::max(d, modal_depth(f->b));
  return f->kind == FKind::Box ? d + 1 : d;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  if (f->a) n += formula_size(f->a);
  if (f->b) n += formula_size(f->b);
  return n;
}

void FreshSupply::avoid(const std::string& name) {
  if (name.size() < 3 || name[0] != 'v' || name[1] != '_') return;
  long long k = 0;
  for (std::size_t i = 2; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return;
    if (k > 1'000'000'000LL) return;
    k = k * 10 + (name[i] - '0');
  }
  next_ = std::max(next_, k + 1);
}

void FreshSupply::avoid(const Formula& f) {
  for (auto& v : all_vars(f)) avoid(v);
}

std::string FreshSupply::next() { return "v_" + std::to_string(next_++); }

}  // namespace boxarith
