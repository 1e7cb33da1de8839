#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "boxarith/classes.hpp"
#include "boxarith/kernel.hpp"

namespace boxarith {

namespace {

const std::vector<std::string> kCommon = {"Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "LE", "LT", "IND",
                                          "EQR", "EQS", "UI", "EI", "QD", "ED", "BQ", "TAUT",
                                          "ARITH", "BEXP", "W"};

bool is_zero(const Term& t) { return t->kind == TermKind::Zero; }

// Matching of phi against psi where psi = phi[x := t]; binds t on first sight.
struct InstanceMatcher {
  const std::string& x;
  Term t;

  bool term(const Term& a, const Term& b, const std::set<std::string>& bound) {
    if (a->kind == TermKind::Var && a->name == x && !bound.count(x)) {
      if (!t) {
        t = b;
        return true;
      }
      return equal(t, b);
    }
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case TermKind::Zero: return true;
      case TermKind::Var: return a->name == b->name;
      case TermKind::Num: return a->value == b->value;
      case TermKind::Succ: return term(a->lhs, b->lhs, bound);
      case TermKind::Add:
      case TermKind::Mul: return term(a->lhs, b->lhs, bound) && term(a->rhs, b->rhs, bound);
      case TermKind::CodeSub:
        if (!equal(a->coded, b->coded) || a->subst.size() != b->subst.size()) return false;
        for (std::size_t i = 0; i < a->subst.size(); ++i)
          if (a->subst[i].first != b->subst[i].first || !term(a->subst[i].second, b->subst[i].second, bound))
            return false;
        return true;
    }
    return false;
  }

  bool formula(const Formula& a, const Formula& b, std::set<std::string>& bound) {
    if (a->kind != b->kind || a->var != b->var) return false;
    if (a->kind == FKind::Prf && a->theory != b->theory) return false;
    if (a->t1 && !term(a->t1, b->t1, bound)) return false;
    if (a->t2 && !term(a->t2, b->t2, bound)) return false;
    bool binds = is_binder(a->kind);
    bool added = binds && bound.insert(a->var).second;
    bool ok = (!a->a || formula(a->a, b->a, bound)) && (!a->b || formula(a->b, b->b, bound));
    if (added) bound.erase(a->var);
    return ok;
  }
};

// psi is phi with x replaced by some substitutable term
bool is_instance(const Formula& phi, const std::string& x, const Formula& psi) {
  InstanceMatcher m{x, nullptr};
  std::set<std::string> bound;
  if (!m.formula(phi, psi, bound)) return false;
  if (!m.t) return equal(phi, psi);
  return substitutable(phi, x, m.t) && equal(substitute(phi, x, m.t), psi);
}

// b arises from a by replacing some occurrences of t by s
bool replaces(const Term& a, const Term& b, const Term& t, const Term& s) {
  if (equal(a, b)) return true;
  if (equal(a, t) && equal(b, s)) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Succ: return replaces(a->lhs, b->lhs, t, s);
    case TermKind::Add:
    case TermKind::Mul: return replaces(a->lhs, b->lhs, t, s) && replaces(a->rhs, b->rhs, t, s);
    case TermKind::CodeSub:
      if (!equal(a->coded, b->coded) || a->subst.size() != b->subst.size()) return false;
      for (std::size_t i = 0; i < a->subst.size(); ++i)
        if (a->subst[i].first != b->subst[i].first || !replaces(a->subst[i].second, b->subst[i].second, t, s))
          return false;
      return true;
    default: return false;
  }
}

bool is_imp(const Formula& f) { return f->kind == FKind::Imp; }
bool is_box(const Formula& f) { return f->kind == FKind::Box; }

bool match_scheme(const std::string& tag, const std::string& data, const Formula& f, Registry* reg) {
  if (tag == "Q1")
    return f->kind == FKind::Not && f->a->kind == FKind::Eq && f->a->t1->kind == TermKind::Succ &&
           is_zero(f->a->t2);
  if (tag == "Q2") {
    if (!is_imp(f) || f->a->kind != FKind::Eq || f->b->kind != FKind::Eq) return false;
    auto& l = f->a;
    return l->t1->kind == TermKind::Succ && l->t2->kind == TermKind::Succ && equal(l->t1->lhs, f->b->t1) &&
           equal(l->t2->lhs, f->b->t2);
  }
  if (tag == "Q3")
    return f->kind == FKind::Eq && f->t1->kind == TermKind::Add && is_zero(f->t1->rhs) && equal(f->t1->lhs, f->t2);
  if (tag == "Q4") {
    if (f->kind != FKind::Eq || f->t1->kind != TermKind::Add || f->t1->rhs->kind != TermKind::Succ) return false;
    auto want = succ(add(f->t1->lhs, f->t1->rhs->lhs));
    return equal(f->t2, want);
  }
  if (tag == "Q5")
    return f->kind == FKind::Eq && f->t1->kind == TermKind::Mul && is_zero(f->t1->rhs) && is_zero(f->t2);
  if (tag == "Q6") {
    if (f->kind != FKind::Eq || f->t1->kind != TermKind::Mul || f->t1->rhs->kind != TermKind::Succ) return false;
    auto want = add(mul(f->t1->lhs, f->t1->rhs->lhs), f->t1->lhs);
    return equal(f->t2, want);
  }
  if (tag == "LE") {
    if (f->kind != FKind::Iff || f->a->kind != FKind::Le || f->b->kind != FKind::Exists) return false;
    auto& z = f->b->var;
    auto& t = f->a->t1;
    auto& s = f->a->t2;
    if (occurs_in(z, t) || occurs_in(z, s)) return false;
    return equal(f->b->a, eq(add(t, var(z)), s));
  }
  if (tag == "LT") {
    if (f->kind != FKind::Iff || f->a->kind != FKind::Lt) return false;
    return equal(f->b, le(succ(f->a->t1), f->a->t2));
  }
  if (tag == "IND") {
    if (!is_imp(f) || f->a->kind != FKind::And || f->b->kind != FKind::Forall) return false;
    auto& x = f->b->var;
    auto& phi = f->b->a;
    auto& step = f->a->b;
    if (!equal(f->a->a, substitute(phi, x, zero()))) return false;
    if (step->kind != FKind::Forall || step->var != x || !is_imp(step->a)) return false;
    return equal(step->a->a, phi) && equal(step->a->b, substitute(phi, x, succ(var(x))));
  }
  if (tag == "EQR") return f->kind == FKind::Eq && equal(f->t1, f->t2);
  if (tag == "EQS") {
    if (!is_imp(f) || f->a->kind != FKind::Eq || !is_imp(f->b)) return false;
    auto& t = f->a->t1;
    auto& s = f->a->t2;
    auto& a = f->b->a;
    auto& b = f->b->b;
    if (!is_atom(a) || a->kind != b->kind) return false;
    if (a->kind == FKind::Prf && a->theory != b->theory) return false;
    return replaces(a->t1, b->t1, t, s) && replaces(a->t2, b->t2, t, s);
  }
  if (tag == "UI") return is_imp(f) && f->a->kind == FKind::Forall && is_instance(f->a->a, f->a->var, f->b);
  if (tag == "EI") return is_imp(f) && f->b->kind == FKind::Exists && is_instance(f->b->a, f->b->var, f->a);
  if (tag == "QD") {
    if (!is_imp(f) || f->a->kind != FKind::Forall || !is_imp(f->a->a) || !is_imp(f->b)) return false;
    auto& x = f->a->var;
    auto& phi = f->a->a->a;
    auto& psi = f->a->a->b;
    return !free_vars(phi).count(x) && equal(f->b->a, phi) && equal(f->b->b, all(x, psi));
  }
  if (tag == "ED") {
    if (!is_imp(f) || f->a->kind != FKind::Forall || !is_imp(f->a->a) || !is_imp(f->b)) return false;
    auto& x = f->a->var;
    auto& phi = f->a->a->a;
    auto& psi = f->a->a->b;
    return !free_vars(psi).count(x) && equal(f->b->a, some(x, phi)) && equal(f->b->b, psi);
  }
  if (tag == "BQ") {
    if (f->kind != FKind::Iff) return false;
    auto& q = f->a;
    if (q->kind == FKind::BForall)
      return equal(f->b, all(q->var, imp(lt(var(q->var), q->t1), q->a)));
    if (q->kind == FKind::BExists)
      return equal(f->b, some(q->var, conj(lt(var(q->var), q->t1), q->a)));
    return false;
  }
  if (tag == "TAUT") return tautology(f);
  if (tag == "ARITH") {
    auto atom = f->kind == FKind::Not ? f->a : f;
    bool positive = f->kind != FKind::Not;
    if (atom->kind != FKind::Eq && atom->kind != FKind::Le && atom->kind != FKind::Lt &&
        atom->kind != FKind::Prf)
      return false;
    if (!is_sentence(f)) return false;
    Model m;
    m.registry = reg;
    return eval_sentence(atom, m) == (positive ? TV::True : TV::False);
  }
  if (tag == "BEXP") {
    if (f->kind != FKind::Iff || !is_sentence(f)) return false;
    auto& q = f->a;
    if (q->kind != FKind::BForall && q->kind != FKind::BExists) return false;
    Nat k = eval_term(q->t1, {}, reg);
    if (k > 100000) return false;
    std::vector<Formula> parts;
    for (Nat i = 0; i < k; ++i) parts.push_back(substitute(q->a, q->var, num(i)));
    return equal(f->b, q->kind == FKind::BForall ? big_and(parts) : big_or(parts));
  }
  if (tag == "W") {
    if (f->kind != FKind::InW || !is_sentence(f) || !reg) return false;
    Model m;
    m.registry = reg;
    try {
      m.budget = std::stoull(data);
    } catch (...) {
      return false;
    }
    return registry_membership(eval_term(f->t1, {}, reg), eval_term(f->t2, {}, reg), m) == TV::True;
  }
  if (tag == "K") {
    if (!is_imp(f) || !is_box(f->a) || !is_imp(f->a->a) || !is_imp(f->b)) return false;
    return equal(f->b->a, box(f->a->a->a)) && equal(f->b->b, box(f->a->a->b));
  }
  if (tag == "4") return is_imp(f) && is_box(f->a) && equal(f->b, box(f->a));
  if (tag == "T") return is_imp(f) && is_box(f->a) && equal(f->a->a, f->b);
  if (tag == "GL") {
    if (!is_imp(f) || !is_box(f->a) || !is_box(f->b)) return false;
    auto& a = f->b->a;
    return equal(f->a->a, imp(box(a), a));
  }
  if (tag == "TRIV") return f->kind == FKind::Iff && is_box(f->a) && equal(f->a->a, f->b);
  if (tag == "VER") return is_box(f) && f->a->kind == FKind::Bot;
  if (tag == "S41") {
    if (!is_imp(f)) return false;
    auto& d = f->a;  // ~box ~A
    return d->kind == FKind::Not && is_box(d->a) && d->a->a->kind == FKind::Not && equal(f->b, box(d));
  }
  return false;
}

// signed tableau over the Boolean skeleton; atoms are the maximal non-Boolean parts
struct Tableau {
  using Signed = std::pair<Formula, bool>;
  using Assignment = std::unordered_map<Formula, bool, FormulaHash, FormulaEq>;

  static bool closes(std::vector<Signed> todo, Assignment val) {
    std::vector<Signed> branching;
    while (!todo.empty() || !branching.empty()) {
      if (todo.empty()) {
        auto [f, sign] = branching.back();
        branching.pop_back();
        std::vector<std::vector<Signed>> alts;
        switch (f->kind) {
          case FKind::And: alts = {{{f->a, false}}, {{f->b, false}}}; break;
          case FKind::Or: alts = {{{f->a, true}}, {{f->b, true}}}; break;
          case FKind::Imp: alts = {{{f->a, false}}, {{f->b, true}}}; break;
          case FKind::Iff:
            if (sign) alts = {{{f->a, true}, {f->b, true}}, {{f->a, false}, {f->b, false}}};
            else alts = {{{f->a, true}, {f->b, false}}, {{f->a, false}, {f->b, true}}};
            break;
          default: break;
        }
        for (auto& alt : alts) {
          auto next = branching;
          next.insert(next.end(), alt.begin(), alt.end());
          if (!closes(std::move(next), val)) return false;
        }
        return true;
      }
      auto [f, sign] = todo.back();
      todo.pop_back();
      switch (f->kind) {
        case FKind::Bot:
          if (sign) return true;
          break;
        case FKind::Not: todo.push_back({f->a, !sign}); break;
        case FKind::And:
          if (sign) {
            todo.push_back({f->a, true});
            todo.push_back({f->b, true});
          } else {
            branching.push_back({f, sign});
          }
          break;
        case FKind::Or:
          if (!sign) {
            todo.push_back({f->a, false});
            todo.push_back({f->b, false});
          } else {
            branching.push_back({f, sign});
          }
          break;
        case FKind::Imp:
          if (!sign) {
            todo.push_back({f->a, true});
            todo.push_back({f->b, false});
          } else {
            branching.push_back({f, sign});
          }
          break;
        case FKind::Iff: branching.push_back({f, sign}); break;
        default: {
          auto [it, fresh] = val.emplace(f, sign);
          if (!fresh && it->second != sign) return true;
        }
      }
      // pending branch points are re-queued as plain items once their atoms settle
      if (todo.empty()) {
        // a branch point already decided by the assignment needs no split
        for (std::size_t i = 0; i < branching.size();) {
          auto r = decided(branching[i].first, val);
          if (r && *r == branching[i].second) {
            branching.erase(branching.begin() + static_cast<std::ptrdiff_t>(i));
          } else if (r) {
            return true;
          } else {
            ++i;
          }
        }
      }
    }
    return false;
  }

  static std::optional<bool> decided(const Formula& f, const Assignment& val) {
    switch (f->kind) {
      case FKind::Bot: return false;
      case FKind::Not: {
        auto a = decided(f->a, val);
        if (a) return !*a;
        return std::nullopt;
      }
      case FKind::And:
      case FKind::Or:
      case FKind::Imp:
      case FKind::Iff: {
        auto a = decided(f->a, val);
        if (f->kind == FKind::And && a == false) return false;
        if (f->kind == FKind::Or && a == true) return true;
        if (f->kind == FKind::Imp && a == false) return true;
        auto b = decided(f->b, val);
        if (f->kind == FKind::And && b == false) return false;
        if (f->kind == FKind::Or && b == true) return true;
        if (f->kind == FKind::Imp && b == true) return true;
        if (!a || !b) return std::nullopt;
        switch (f->kind) {
          case FKind::And: return *a && *b;
          case FKind::Or: return *a || *b;
          case FKind::Imp: return !*a || *b;
          default: return *a == *b;
        }
      }
      default: {
        auto it = val.find(f);
        if (it == val.end()) return std::nullopt;
        return it->second;
      }
    }
  }
};

thread_local std::set<std::pair<std::string, std::size_t>> in_progress;

bool check_registry_proof(const TheoryId& t, std::size_t code, Registry& reg);

Verdict check_lines(const TheoryId& t, const Proof& p, Registry& reg) {
  if (p.lines.empty()) return {false, 0, "empty proof"};
  auto fail = [](std::size_t i, std::string msg) { return Verdict{false, i, std::move(msg)}; };
  auto tags = scheme_tags(t.base);
  for (std::size_t n = 0; n < p.lines.size(); ++n) {
    auto& line = p.lines[n];
    auto& f = line.formula;
    auto& j = line.just;
    auto earlier = [&](std::size_t i) { return i < n; };
    switch (j.kind) {
      case JKind::Axiom:
        if (std::find(tags.begin(), tags.end(), j.tag) == tags.end())
          return fail(n, "scheme " + j.tag + " is not part of the theory");
        if (!instance_of(j.tag, j.data, f, &reg)) return fail(n, "not an instance of scheme " + j.tag);
        break;
      case JKind::Extra:
        if (j.i >= t.extra.size() || !equal(t.extra[j.i], f)) return fail(n, "not the named extra axiom");
        break;
      case JKind::MP: {
        if (!earlier(j.i) || !earlier(j.j)) return fail(n, "dangling reference");
        auto& major = p.lines[j.j].formula;
        if (!is_imp(major) || !equal(major->a, p.lines[j.i].formula) || !equal(major->b, f))
          return fail(n, "modus ponens shapes do not match");
        break;
      }
      case JKind::Gen:
        if (!earlier(j.i)) return fail(n, "dangling reference");
        if (f->kind != FKind::Forall || f->var != j.var || !equal(f->a, p.lines[j.i].formula))
          return fail(n, "generalization shape does not match");
        break;
      case JKind::Nec:
        if (!earlier(j.i)) return fail(n, "dangling reference");
        if (!is_box(f) || !equal(f->a, p.lines[j.i].formula)) return fail(n, "necessitation shape does not match");
        break;
      case JKind::Cited:
        if (!reg.is_proof(j.i)) return fail(n, "cited code is not a proof");
        if (!equal(reg.decode_proof(j.i).conclusion(), f)) return fail(n, "cited proof concludes something else");
        if (!check_registry_proof(t, j.i, reg)) return fail(n, "cited proof does not check");
        break;
    }
  }
  return {true, 0, {}};
}

bool check_registry_proof(const TheoryId& t, std::size_t code, Registry& reg) {
  auto key = theory_key(t, reg);
  if (auto v = reg.verdict(key, code)) return *v;
  if (!in_progress.insert({key, code}).second) return false;
  bool ok;
  try {
    ok = check_lines(t, reg.decode_proof(code), reg).ok;
  } catch (...) {
    in_progress.erase({key, code});
    throw;
  }
  in_progress.erase({key, code});
  reg.set_verdict(key, code, ok);
  return ok;
}

}  // namespace

std::vector<std::string> scheme_tags(Logic l) {
  auto out = kCommon;
  auto add = [&](std::initializer_list<const char*> xs) {
    for (auto x : xs) out.emplace_back(x);
  };
  switch (l) {
    case Logic::PA_Box: break;
    case Logic::K: add({"K"}); break;
    case Logic::K4: add({"K", "4"}); break;
    case Logic::KT: add({"K", "T"}); break;
    case Logic::S4: add({"K", "T", "4"}); break;
    case Logic::S41: add({"K", "T", "4", "S41"}); break;
    case Logic::Triv: add({"K", "TRIV", "T", "4"}); break;
    case Logic::GL: add({"K", "GL", "4"}); break;
    case Logic::Ver: add({"K", "VER", "4"}); break;
  }
  return out;
}

bool has_scheme(Logic l, const std::string& tag) {
  auto tags = scheme_tags(l);
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

bool is_maximal(Logic l) { return l == Logic::Triv || l == Logic::Ver; }

std::string theory_key(const TheoryId& t, Registry& reg) {
  auto key = logic_tag(t.base);
  for (auto& e : t.extra) key += "+" + std::to_string(reg.code_of(e));
  return key;
}

TheoryId theory_from_key(const std::string& key, const Registry& reg) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '+')) parts.push_back(part);
  if (parts.empty()) throw DomainError("empty theory key");
  auto l = logic_from_tag(parts[0]);
  if (!l) throw DomainError("unknown theory tag " + parts[0]);
  TheoryId t{*l, {}};
  for (std::size_t i = 1; i < parts.size(); ++i) t.extra.push_back(reg.decode_formula(Nat(parts[i])));
  return t;
}

bool instance_of(const std::string& tag, const std::string& data, const Formula& f, Registry* reg) {
  for (Formula g = f;; g = g->a) {
    if (match_scheme(tag, data, g, reg)) return true;
    if (g->kind != FKind::Forall) return false;
  }
}

std::optional<std::string> is_axiom(const TheoryId& t, const Formula& f, Registry* reg) {
  for (auto& tag : scheme_tags(t.base)) {
    if (tag == "W" && !reg) continue;
    if (instance_of(tag, tag == "W" ? "64" : "", f, reg)) return tag;
  }
  return std::nullopt;
}

bool tautology(const Formula& f) { return Tableau::closes({{f, false}}, {}); }

Verdict check_proof(const TheoryId& t, const Proof& p, Registry& reg) {
  try {
    return check_lines(t, p, reg);
  } catch (const DomainError& e) {
    return {false, 0, e.what()};
  }
}

bool prf_holds(Registry& reg, Logic thy, const Nat& x, const Nat& y) {
  if (!reg.is_proof(y) || !reg.is_formula(x)) return false;
  auto& p = reg.decode_proof(y);
  if (!equal(p.conclusion(), reg.decode_formula(x))) return false;
  return check_registry_proof(TheoryId{thy, {}}, static_cast<std::size_t>(y), reg);
}

std::optional<std::size_t> pr_search(Registry& reg, const TheoryId& t, std::size_t formula_code,
                                     std::uint64_t budget) {
  if (!reg.is_formula(formula_code)) return std::nullopt;
  auto target = reg.decode_formula(formula_code);
  std::size_t n = reg.size();
  for (std::size_t i = 0; i < n && i <= budget; ++i) {
    if (!reg.is_proof(i)) continue;
    if (!equal(reg.decode_proof(i).conclusion(), target)) continue;
    if (check_registry_proof(t, i, reg)) return i;
  }
  return std::nullopt;
}

}  // namespace boxarith
