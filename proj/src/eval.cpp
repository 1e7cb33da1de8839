#include "boxarith/eval.hpp"

#include "boxarith/classes.hpp"
#include "boxarith/kernel.hpp"

namespace boxarith {

TV tv_of(bool b) { return b ? TV::True : TV::False; }

TV tv_not(TV a) {
  if (a == TV::Unknown) return a;
  return a == TV::True ? TV::False : TV::True;
}

TV tv_and(TV a, TV b) {
  if (a == TV::False || b == TV::False) return TV::False;
  if (a == TV::True && b == TV::True) return TV::True;
  return TV::Unknown;
}

TV tv_or(TV a, TV b) {
  if (a == TV::True || b == TV::True) return TV::True;
  if (a == TV::False && b == TV::False) return TV::False;
  return TV::Unknown;
}

TV tv_imp(TV a, TV b) { return tv_or(tv_not(a), b); }

TV tv_iff(TV a, TV b) {
  if (a == TV::Unknown || b == TV::Unknown) return TV::Unknown;
  return tv_of(a == b);
}

std::string to_string(TV v) {
  switch (v) {
    case TV::True: return "true";
    case TV::False: return "false";
    case TV::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Triv: return "triv";
    case Flavor::Ver: return "ver";
    case Flavor::Prov: return "prov";
  }
  return "?";
}

Nat eval_term(const Term& t, const Env& env, Registry* reg) {
  switch (t->kind) {
    case TermKind::Zero: return 0;
    case TermKind::Num: return t->value;
    case TermKind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw DomainError("unbound variable " + t->name);
      return it->second;
    }
    case TermKind::Succ: return eval_term(t->lhs, env, reg) + 1;
    case TermKind::Add: return eval_term(t->lhs, env, reg) + eval_term(t->rhs, env, reg);
    case TermKind::Mul: return eval_term(t->lhs, env, reg) * eval_term(t->rhs, env, reg);
    case TermKind::CodeSub:
      if (!reg) throw DomainError("code term needs a registry");
      return code_sub_value(*reg, t, env);
  }
  return 0;
}

namespace {

thread_local int membership_depth = 0;

struct Evaluator {
  const Model& m;
  Env env;

  Nat term(const Term& t) { return eval_term(t, env, m.registry); }

  TV scope(const std::string& v, const Nat& value, const Formula& body) {
    auto it = env.find(v);
    std::optional<Nat> saved;
    if (it != env.end()) saved = it->second;
    env[v] = value;
    TV r = go(body);
    if (saved) env[v] = *saved;
    else env.erase(v);
    return r;
  }

  TV go(const Formula& f) {
    switch (f->kind) {
      case FKind::Bot: return TV::False;
      case FKind::Eq: return tv_of(term(f->t1) == term(f->t2));
      case FKind::Le: return tv_of(term(f->t1) <= term(f->t2));
      case FKind::Lt: return tv_of(term(f->t1) < term(f->t2));
      case FKind::Prf: {
        Nat x = term(f->t1), y = term(f->t2);
        if (!m.registry) return TV::False;
        return tv_of(prf_holds(*m.registry, f->theory, x, y));
      }
      case FKind::InW: {
        Nat x = term(f->t1), y = term(f->t2);
        if (m.enumerator) return m.enumerator(x, y, m.budget);
        return registry_membership(x, y, m);
      }
      case FKind::Not: return tv_not(go(f->a));
      case FKind::And: {
        TV a = go(f->a);
        if (a == TV::False) return a;
        return tv_and(a, go(f->b));
      }
      case FKind::Or: {
        TV a = go(f->a);
        if (a == TV::True) return a;
        return tv_or(a, go(f->b));
      }
      case FKind::Imp: {
        TV a = go(f->a);
        if (a == TV::False) return TV::True;
        return tv_imp(a, go(f->b));
      }
      case FKind::Iff: return tv_iff(go(f->a), go(f->b));
      case FKind::Exists: {
        for (std::uint64_t n = 0; n <= m.budget; ++n)
          if (scope(f->var, n, f->a) == TV::True) return TV::True;
        return TV::Unknown;
      }
      case FKind::Forall: {
        for (std::uint64_t n = 0; n <= m.budget; ++n)
          if (scope(f->var, n, f->a) == TV::False) return TV::False;
        return TV::Unknown;
      }
      case FKind::BExists: {
        Nat k = term(f->t1);
        TV acc = TV::False;
        for (Nat n = 0; n < k; ++n) {
          acc = tv_or(acc, scope(f->var, n, f->a));
          if (acc == TV::True) break;
        }
        return acc;
      }
      case FKind::BForall: {
        Nat k = term(f->t1);
        TV acc = TV::True;
        for (Nat n = 0; n < k; ++n) {
          acc = tv_and(acc, scope(f->var, n, f->a));
          if (acc == TV::False) break;
        }
        return acc;
      }
      case FKind::Box:
        switch (m.flavor) {
          case Flavor::Triv: return go(f->a);
          case Flavor::Ver: return TV::True;
          case Flavor::Prov: {
            if (!m.registry) throw DomainError("provability model needs a registry");
            std::map<std::string, Term> numerals;
            for (auto& v : free_vars(f->a)) {
              auto it = env.find(v);
              if (it == env.end()) throw DomainError("unbound variable " + v);
              numerals.emplace(v, num(it->second));
            }
            auto code = m.registry->code_of(substitute_all(f->a, numerals));
            return pr_search(*m.registry, m.theory, code, m.budget) ? TV::True : TV::Unknown;
          }
        }
    }
    return TV::Unknown;
  }
};

}  // namespace

TV eval_sentence(const Formula& f, const Model& m) {
  Evaluator e{m, m.env};
  return e.go(f);
}

TV registry_membership(const Nat& x, const Nat& y, const Model& m) {
  if (!m.registry || !m.registry->is_formula(y)) return TV::False;
  auto theta = m.registry->decode_formula(y);
  auto fv = free_vars(theta);
  if (fv.size() != 1 || !is_la(theta) || !is_sigma1(theta)) return TV::False;
  if (membership_depth > 8) return TV::Unknown;
  ++membership_depth;
  Model inner = m;
  inner.flavor = Flavor::Triv;
  inner.env.clear();
  TV r;
  try {
    r = eval_sentence(substitute(theta, *fv.begin(), num(x)), inner);
  } catch (...) {
    --membership_depth;
    throw;
  }
  --membership_depth;
  return r;
}

}  // namespace boxarith
