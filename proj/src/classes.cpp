#include "boxarith/classes.hpp"

#include "boxarith/eval.hpp"

namespace boxarith {

namespace {

FormulaClass compute(const Formula& f) {
  FormulaClass c;
  auto both = [&](Cls k, const FormulaClass& a, const FormulaClass& b) {
    if (a.has(k) && b.has(k)) c.set(k);
  };
  switch (f->kind) {
    case FKind::Bot:
    case FKind::Eq:
    case FKind::Le:
    case FKind::Lt:
    case FKind::Prf:
      c.set(Cls::LA);
      c.set(Cls::Delta0);
      c.set(Cls::Sigma1);
      c.set(Cls::DeltaB);
      c.set(Cls::SigmaB);
      return c;
    case FKind::InW:
      c.set(Cls::LA);
      c.set(Cls::Sigma1);
      c.set(Cls::SigmaB);
      return c;
    case FKind::Box:
      c.set(Cls::B);
      c.set(Cls::DeltaB);
      c.set(Cls::SigmaB);
      return c;
    case FKind::Not: {
      auto a = compute(f->a);
      if (a.has(Cls::LA)) c.set(Cls::LA);
      if (a.has(Cls::Delta0)) {
        c.set(Cls::Delta0);
        c.set(Cls::Sigma1);
        c.set(Cls::DeltaB);
        c.set(Cls::SigmaB);
      }
      return c;
    }
    case FKind::Imp:
    case FKind::Iff: {
      auto a = compute(f->a), b = compute(f->b);
      both(Cls::LA, a, b);
      if (a.has(Cls::Delta0) && b.has(Cls::Delta0)) {
        c.set(Cls::Delta0);
        c.set(Cls::Sigma1);
        c.set(Cls::DeltaB);
        c.set(Cls::SigmaB);
      }
      return c;
    }
    case FKind::And:
    case FKind::Or: {
      auto a = compute(f->a), b = compute(f->b);
      for (auto k : {Cls::LA, Cls::Delta0, Cls::Sigma1, Cls::DeltaB, Cls::SigmaB}) both(k, a, b);
      return c;
    }
    case FKind::BForall:
    case FKind::BExists: {
      auto a = compute(f->a);
      for (auto k : {Cls::LA, Cls::Delta0, Cls::Sigma1, Cls::DeltaB, Cls::SigmaB})
        if (a.has(k)) c.set(k);
      return c;
    }
    case FKind::Exists: {
      auto a = compute(f->a);
      for (auto k : {Cls::LA, Cls::Sigma1, Cls::SigmaB})
        if (a.has(k)) c.set(k);
      return c;
    }
    case FKind::Forall: {
      auto a = compute(f->a);
      if (a.has(Cls::LA)) c.set(Cls::LA);
      return c;
    }
  }
  return c;
}

void require(bool ok, const char* what, const Formula& f) {
  if (!ok) throw DomainError(std::string("not a ") + what + " formula: " + to_string(f));
}

}  // namespace

std::string FormulaClass::to_string() const {
  static const char* names[] = {"LA", "Delta0", "Sigma1", "B", "DeltaB", "SigmaB"};
  std::string out;
  for (std::size_t i = 0; i < 6; ++i) {
    if (!bits.test(i)) continue;
    if (!out.empty()) out += ',';
    out += names[i];
  }
  return out.empty() ? "none" : out;
}

FormulaClass classify(const Formula& f) { return compute(f); }
bool is_la(const Formula& f) { return compute(f).has(Cls::LA); }
bool is_delta0(const Formula& f) { return compute(f).has(Cls::Delta0); }
bool is_sigma1(const Formula& f) { return compute(f).has(Cls::Sigma1); }
bool is_delta_b(const Formula& f) { return compute(f).has(Cls::DeltaB); }
bool is_sigma_b(const Formula& f) { return compute(f).has(Cls::SigmaB); }

// ---- positive Sigma1 form ----

namespace {

struct Positive {
  FreshSupply fresh;

  // exists u (a + u = b), with S(u) when strict
  Formula gap(const Term& a, const Term& b, bool strict) {
    auto u = fresh.next();
    Term d = strict ? succ(var(u)) : var(u);
    return some(u, eq(add(a, d), b));
  }

  Formula go(const Formula& f, bool negated) {
    switch (f->kind) {
      case FKind::Bot:
        return negated ? eq(zero(), zero()) : eq(zero(), succ(zero()));
      case FKind::Eq:
        if (!negated) return f;
        return disj(gap(f->t1, f->t2, true), gap(f->t2, f->t1, true));
      case FKind::Lt:
        if (!negated) return gap(f->t1, f->t2, true);
        return disj(eq(f->t1, f->t2), gap(f->t2, f->t1, true));
      case FKind::Le:
        if (!negated) return gap(f->t1, f->t2, false);
        return gap(f->t2, f->t1, true);
      case FKind::Prf:
      case FKind::InW:
        if (negated) throw DomainError("negated structured atom has no positive form: " + to_string(f));
        return f;
      case FKind::Not: return go(f->a, !negated);
      case FKind::And:
        return negated ? disj(go(f->a, true), go(f->b, true)) : conj(go(f->a, false), go(f->b, false));
      case FKind::Or:
        return negated ? conj(go(f->a, true), go(f->b, true)) : disj(go(f->a, false), go(f->b, false));
      case FKind::Imp:
        return negated ? conj(go(f->a, false), go(f->b, true)) : disj(go(f->a, true), go(f->b, false));
      case FKind::Iff:
        if (negated)
          return disj(conj(go(f->a, false), go(f->b, true)), conj(go(f->a, true), go(f->b, false)));
        return disj(conj(go(f->a, false), go(f->b, false)), conj(go(f->a, true), go(f->b, true)));
      case FKind::BForall:
        return negated ? some_lt(f->var, f->t1, go(f->a, true)) : all_lt(f->var, f->t1, go(f->a, false));
      case FKind::BExists:
        return negated ? all_lt(f->var, f->t1, go(f->a, true)) : some_lt(f->var, f->t1, go(f->a, false));
      case FKind::Exists:
        if (!negated) return some(f->var, go(f->a, false));
        break;
      default: break;
    }
    throw DomainError("not a Sigma1 formula: " + to_string(f));
  }
};

}  // namespace

Formula positive_sigma1_form(const Formula& f) {
  require(is_sigma1(f), "Sigma1", f);
  Positive p{FreshSupply(f)};
  return p.go(f, false);
}

// ---- Sigma(B) to exists Delta(B) ----

namespace {

struct ToExistsDeltaB {
  FreshSupply fresh;

  ExistsDeltaB go(const Formula& f) {
    if (is_delta0(f) || f->kind == FKind::Box) return {fresh.next(), f};
    switch (f->kind) {
      case FKind::And:
      case FKind::Or: {
        auto l = go(f->a), r = go(f->b);
        auto v = fresh.next();
        auto m = f->kind == FKind::And ? conj(l.psi, r.psi) : disj(l.psi, r.psi);
        return {v, some_lt(l.v, var(v), some_lt(r.v, var(v), m))};
      }
      case FKind::Exists: {
        auto in = go(f->a);
        auto v = fresh.next();
        return {v, some_lt(f->var, var(v), some_lt(in.v, var(v), in.psi))};
      }
      case FKind::BExists: {
        auto in = go(f->a);
        auto v = fresh.next();
        return {v, some_lt(f->var, f->t1, some_lt(in.v, var(v), in.psi))};
      }
      case FKind::BForall: {
        auto in = go(f->a);
        auto v = fresh.next();
        return {v, all_lt(f->var, f->t1, some_lt(in.v, var(v), in.psi))};
      }
      default: break;
    }
    throw DomainError("no Delta(B) matrix for " + to_string(f));
  }
};

}  // namespace

ExistsDeltaB sigma_b_to_exists_delta_b(const Formula& f) {
  require(is_sigma_b(f), "Sigma(B)", f);
  ToExistsDeltaB t{FreshSupply(f)};
  return t.go(f);
}

// ---- Delta(B) sentence as a disjunction of boxes ----

namespace {

std::vector<Formula> boxes(const Formula& f, Registry* reg) {
  if (is_delta0(f)) {
    Model m;
    m.registry = reg;
    if (eval_sentence(f, m) == TV::True) return {eq(zero(), zero())};
    return {};
  }
  switch (f->kind) {
    case FKind::Box: return {f->a};
    case FKind::Or: {
      auto l = boxes(f->a, reg), r = boxes(f->b, reg);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case FKind::And: {
      auto l = boxes(f->a, reg), r = boxes(f->b, reg);
      std::vector<Formula> out;
      for (auto& x : l)
        for (auto& y : r) out.push_back(conj(x, y));
      return out;
    }
    case FKind::BExists: {
      Nat k = eval_term(f->t1, {}, reg);
      std::vector<Formula> out;
      for (Nat i = 0; i < k; ++i) {
        auto part = boxes(substitute(f->a, f->var, num(i)), reg);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    case FKind::BForall: {
      Nat k = eval_term(f->t1, {}, reg);
      if (k == 0) return {eq(zero(), zero())};
      auto acc = boxes(substitute(f->a, f->var, num(0)), reg);
      for (Nat i = 1; i < k && !acc.empty(); ++i) {
        auto part = boxes(substitute(f->a, f->var, num(i)), reg);
        std::vector<Formula> next;
        for (auto& x : acc)
          for (auto& y : part) next.push_back(conj(x, y));
        acc = std::move(next);
      }
      return acc;
    }
    default: break;
  }
  throw DomainError("not a Delta(B) formula: " + to_string(f));
}

}  // namespace

std::vector<Formula> delta_b_sentence_to_boxes(const Formula& f, Registry* reg) {
  require(is_delta_b(f), "Delta(B)", f);
  if (!is_sentence(f)) throw DomainError("not a sentence: " + to_string(f));
  return boxes(f, reg);
}

// ---- minus and star ----

namespace {

Formula minus_rec(const Formula& f) {
  if (is_sigma1(f)) return f;
  switch (f->kind) {
    case FKind::Box: return f->a;
    case FKind::And: return conj(minus_rec(f->a), minus_rec(f->b));
    case FKind::Or: return disj(minus_rec(f->a), minus_rec(f->b));
    case FKind::Exists: return some(f->var, minus_rec(f->a));
    case FKind::BForall: return all_lt(f->var, f->t1, minus_rec(f->a));
    case FKind::BExists: return some_lt(f->var, f->t1, minus_rec(f->a));
    default: break;
  }
  throw DomainError("not a Sigma(B) formula: " + to_string(f));
}

struct Star {
  FreshSupply fresh;

  Starred go(const Formula& f) {
    if (is_delta0(f) || f->kind == FKind::Box) return {f, {}};
    switch (f->kind) {
      case FKind::And: {
        auto l = go(f->a), r = go(f->b);
        l.fresh.insert(l.fresh.end(), r.fresh.begin(), r.fresh.end());
        return {conj(l.psi, r.psi), l.fresh};
      }
      case FKind::Or: {
        auto l = go(f->a), r = go(f->b);
        auto w = fresh.next();
        auto psi = disj(conj(eq(var(w), zero()), l.psi), conj(neg(eq(var(w), zero())), r.psi));
        l.fresh.insert(l.fresh.end(), r.fresh.begin(), r.fresh.end());
        l.fresh.push_back(w);
        return {psi, l.fresh};
      }
      case FKind::BForall: {
        auto in = go(f->a);
        return {all_lt(f->var, f->t1, in.psi), in.fresh};
      }
      case FKind::BExists: {
        auto in = go(f->a);
        auto w = fresh.next();
        in.fresh.push_back(w);
        return {some_lt(f->var, f->t1, conj(eq(var(f->var), var(w)), in.psi)), in.fresh};
      }
      default: break;
    }
    throw DomainError("not a Delta(B) formula: " + to_string(f));
  }
};

}  // namespace

Formula minus(const Formula& f) {
  require(is_sigma_b(f), "Sigma(B)", f);
  return minus_rec(f);
}

Starred star(const Formula& f) {
  require(is_delta_b(f), "Delta(B)", f);
  Star s{FreshSupply(f)};
  return s.go(f);
}

}  // namespace boxarith
