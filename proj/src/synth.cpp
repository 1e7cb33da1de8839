#include <unordered_map>

#include "boxarith/classes.hpp"
#include "boxarith/kernel.hpp"

namespace boxarith {

// ---- ProofBuilder ----

std::size_t ProofBuilder::add(const Formula& f, Justification j) {
  auto it = seen_.find(f);
  if (it != seen_.end()) return it->second;
  lines_.push_back({f, std::move(j)});
  seen_.emplace(f, lines_.size() - 1);
  return lines_.size() - 1;
}

std::size_t ProofBuilder::axiom(const Formula& f, const std::string& tag, const std::string& data) {
  return add(f, Justification::axiom(tag, data));
}

std::size_t ProofBuilder::mp(std::size_t minor, std::size_t major) {
  auto& m = formula(major);
  if (m->kind != FKind::Imp || !equal(m->a, formula(minor)))
    throw DomainError("modus ponens mismatch: " + to_string(m) + " against " + to_string(formula(minor)));
  return add(m->b, Justification::mp(minor, major));
}

std::size_t ProofBuilder::nec(std::size_t i) { return add(box(formula(i)), Justification::nec(i)); }

std::size_t ProofBuilder::gen(std::size_t i, const std::string& v) {
  return add(all(v, formula(i)), Justification::gen(i, v));
}

std::size_t ProofBuilder::cite(std::size_t proof_code, const Formula& f) {
  return add(f, Justification::cited(proof_code));
}

std::size_t ProofBuilder::splice(const Proof& p) {
  std::vector<std::size_t> map(p.lines.size());
  for (std::size_t n = 0; n < p.lines.size(); ++n) {
    auto j = p.lines[n].just;
    switch (j.kind) {
      case JKind::MP:
        j.i = map.at(j.i);
        j.j = map.at(j.j);
        break;
      case JKind::Gen:
      case JKind::Nec: j.i = map.at(j.i); break;
      default: break;
    }
    map[n] = add(p.lines[n].formula, j);
  }
  if (map.empty()) throw DomainError("cannot splice the empty proof");
  return map.back();
}

std::size_t ProofBuilder::from_taut(const std::vector<std::size_t>& premises, const Formula& c) {
  Formula t = c;
  for (auto it = premises.rbegin(); it != premises.rend(); ++it) t = imp(formula(*it), t);
  auto cur = taut(t);
  for (auto p : premises) cur = mp(p, cur);
  return cur;
}

std::size_t ProofBuilder::box_from_taut(const std::vector<std::size_t>& boxed, const Formula& c) {
  std::vector<Formula> inner;
  for (auto b : boxed) {
    if (formula(b)->kind != FKind::Box) throw DomainError("box_from_taut needs boxed premises");
    inner.push_back(formula(b)->a);
  }
  Formula t = c;
  for (auto it = inner.rbegin(); it != inner.rend(); ++it) t = imp(*it, t);
  auto cur = nec(taut(t));  // box(P1 -> rest)
  for (std::size_t k = 0; k < boxed.size(); ++k) {
    auto& body = formula(cur)->a;  // P -> R
    auto kax = axiom(imp(box(body), imp(box(body->a), box(body->b))), "K");
    cur = mp(boxed[k], mp(cur, kax));
  }
  return cur;
}

Proof ProofBuilder::finish(std::size_t i) const {
  Proof p;
  p.lines.assign(lines_.begin(), lines_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  return p;
}

// ---- closed term equations ----

namespace {

// from a = b and b = c (as lines) derive a = c
std::size_t chain(ProofBuilder& b, std::size_t ab, std::size_t bc) {
  auto& l = b.formula(ab);
  auto& r = b.formula(bc);
  auto target = eq(l->t1, r->t2);
  auto eqs = b.axiom(imp(r, imp(l, target)), "EQS");
  return b.mp(ab, b.mp(bc, eqs));
}

// from s = s' derive ctx = ctx' where ctx' replaces s by s' in ctx (line holding ctx = ctx is made by EQR)
std::size_t congruence(ProofBuilder& b, std::size_t ss, const Term& whole, const Term& replaced) {
  auto refl = b.axiom(eq(whole, whole), "EQR");
  auto target = eq(whole, replaced);
  auto eqs = b.axiom(imp(b.formula(ss), imp(b.formula(refl), target)), "EQS");
  return b.mp(refl, b.mp(ss, eqs));
}

std::pair<Nat, std::size_t> term_eq(ProofBuilder& b, const Term& t, Registry* reg) {
  switch (t->kind) {
    case TermKind::Num: return {t->value, b.axiom(eq(t, t), "EQR")};
    case TermKind::Zero: return {0, b.axiom(eq(t, num(0)), "ARITH")};
    case TermKind::CodeSub: {
      Nat v = eval_term(t, {}, reg);
      return {v, b.axiom(eq(t, num(v)), "ARITH")};
    }
    case TermKind::Var: throw DomainError("term is not closed: " + to_string(t));
    case TermKind::Succ: {
      auto [m, l] = term_eq(b, t->lhs, reg);
      auto step = congruence(b, l, t, succ(num(m)));
      auto lit = b.axiom(eq(succ(num(m)), num(m + 1)), "ARITH");
      return {m + 1, chain(b, step, lit)};
    }
    case TermKind::Add:
    case TermKind::Mul: {
      bool is_add = t->kind == TermKind::Add;
      auto mk = [&](Term x, Term y) { return is_add ? add(x, y) : mul(x, y); };
      auto [p, lp] = term_eq(b, t->lhs, reg);
      auto [q, lq] = term_eq(b, t->rhs, reg);
      auto s1 = congruence(b, lp, t, mk(num(p), t->rhs));
      auto s2 = congruence(b, lq, mk(num(p), t->rhs), mk(num(p), num(q)));
      Nat v = is_add ? Nat(p + q) : Nat(p * q);
      auto lit = b.axiom(eq(mk(num(p), num(q)), num(v)), "ARITH");
      return {v, chain(b, chain(b, s1, s2), lit)};
    }
  }
  throw DomainError("unknown term");
}

Model standard(Registry* reg) {
  Model m;
  m.registry = reg;
  return m;
}

bool holds(const Formula& f, Registry* reg) { return eval_sentence(f, standard(reg)) == TV::True; }

std::vector<Formula> instances(const Formula& q, const Nat& k) {
  std::vector<Formula> out;
  for (Nat i = 0; i < k; ++i) out.push_back(substitute(q->a, q->var, num(i)));
  return out;
}

// Q <-> big_and / big_or of the instances
std::size_t bexp(ProofBuilder& b, const Formula& q, const std::vector<Formula>& parts) {
  auto body = q->kind == FKind::BForall ? big_and(parts) : big_or(parts);
  return b.axiom(iff(q, body), "BEXP");
}

std::vector<std::size_t> plus(std::vector<std::size_t> xs, std::size_t y) {
  xs.push_back(y);
  return xs;
}

}  // namespace

TermEq prove_term_eq(const Term& t, Registry* reg) {
  ProofBuilder b;
  auto [v, line] = term_eq(b, t, reg);
  return {v, b.finish(line)};
}

// ---- Delta0 ----

std::size_t prove_delta0(ProofBuilder& b, const Formula& f, Registry* reg);

std::size_t refute_delta0(ProofBuilder& b, const Formula& f, Registry* reg) {
  auto nf = neg(f);
  switch (f->kind) {
    case FKind::Bot: return b.taut(nf);
    case FKind::Eq:
    case FKind::Le:
    case FKind::Lt:
    case FKind::Prf:
      if (holds(f, reg)) break;
      return b.axiom(nf, "ARITH");
    case FKind::Not: return b.from_taut({prove_delta0(b, f->a, reg)}, nf);
    case FKind::And: {
      auto side = holds(f->a, reg) ? f->b : f->a;
      return b.from_taut({refute_delta0(b, side, reg)}, nf);
    }
    case FKind::Or: return b.from_taut({refute_delta0(b, f->a, reg), refute_delta0(b, f->b, reg)}, nf);
    case FKind::Imp: return b.from_taut({prove_delta0(b, f->a, reg), refute_delta0(b, f->b, reg)}, nf);
    case FKind::Iff: {
      bool a = holds(f->a, reg);
      auto la = a ? prove_delta0(b, f->a, reg) : refute_delta0(b, f->a, reg);
      auto lb = a ? refute_delta0(b, f->b, reg) : prove_delta0(b, f->b, reg);
      return b.from_taut({la, lb}, nf);
    }
    case FKind::BForall:
    case FKind::BExists: {
      auto parts = instances(f, eval_term(f->t1, {}, reg));
      auto ax = bexp(b, f, parts);
      if (f->kind == FKind::BForall) {
        for (auto& p : parts)
          if (!holds(p, reg)) return b.from_taut({refute_delta0(b, p, reg), ax}, nf);
        break;
      }
      std::vector<std::size_t> ls;
      for (auto& p : parts) ls.push_back(refute_delta0(b, p, reg));
      return b.from_taut(plus(ls, ax), nf);
    }
    default: break;
  }
  throw DomainError("cannot refute " + to_string(f));
}

std::size_t prove_delta0(ProofBuilder& b, const Formula& f, Registry* reg) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Le:
    case FKind::Lt:
    case FKind::Prf:
      if (!holds(f, reg)) break;
      return b.axiom(f, "ARITH");
    case FKind::Not: return refute_delta0(b, f->a, reg);
    case FKind::And: return b.from_taut({prove_delta0(b, f->a, reg), prove_delta0(b, f->b, reg)}, f);
    case FKind::Or: {
      auto side = holds(f->a, reg) ? f->a : f->b;
      return b.from_taut({prove_delta0(b, side, reg)}, f);
    }
    case FKind::Imp:
      if (!holds(f->a, reg)) return b.from_taut({refute_delta0(b, f->a, reg)}, f);
      return b.from_taut({prove_delta0(b, f->b, reg)}, f);
    case FKind::Iff: {
      bool a = holds(f->a, reg);
      auto la = a ? prove_delta0(b, f->a, reg) : refute_delta0(b, f->a, reg);
      auto lb = a ? prove_delta0(b, f->b, reg) : refute_delta0(b, f->b, reg);
      return b.from_taut({la, lb}, f);
    }
    case FKind::BForall:
    case FKind::BExists: {
      auto parts = instances(f, eval_term(f->t1, {}, reg));
      auto ax = bexp(b, f, parts);
      if (f->kind == FKind::BExists) {
        for (auto& p : parts)
          if (holds(p, reg)) return b.from_taut({prove_delta0(b, p, reg), ax}, f);
        break;
      }
      std::vector<std::size_t> ls;
      for (auto& p : parts) ls.push_back(prove_delta0(b, p, reg));
      return b.from_taut(plus(ls, ax), f);
    }
    default: break;
  }
  throw DomainError("cannot prove " + to_string(f));
}

// ---- Sigma1 and Sigma(B) sentences ----

namespace {

// Truth certificates at a budget: Delta0 by evaluation, inW by the
// enumerator, boxes by a registry proof of the boxed sentence itself.
struct Certifier {
  std::uint64_t budget;
  Registry* reg;
  const TheoryId* theory;  // null: no boxes allowed
  std::unordered_map<Formula, bool, FormulaHash, FormulaEq> memo;

  bool ok(const Formula& f) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    bool r = compute(f);
    memo.emplace(f, r);
    return r;
  }

  std::optional<std::size_t> box_proof(const Formula& f) {
    if (!theory || !reg) return std::nullopt;
    return pr_search(*reg, *theory, reg->code_of(f), budget);
  }

  bool member(const Formula& f) {
    if (!reg) return false;
    Model m = standard(reg);
    m.budget = budget;
    return registry_membership(eval_term(f->t1, {}, reg), eval_term(f->t2, {}, reg), m) == TV::True;
  }

  bool compute(const Formula& f) {
    if (is_delta0(f)) return holds(f, reg);
    switch (f->kind) {
      case FKind::InW: return member(f);
      case FKind::Box: return box_proof(f).has_value();
      case FKind::And: return ok(f->a) && ok(f->b);
      case FKind::Or: return ok(f->a) || ok(f->b);
      case FKind::Exists:
        for (std::uint64_t n = 0; n <= budget; ++n)
          if (ok(substitute(f->a, f->var, num(n)))) return true;
        return false;
      case FKind::BForall:
        for (auto& p : instances(f, eval_term(f->t1, {}, reg)))
          if (!ok(p)) return false;
        return true;
      case FKind::BExists:
        for (auto& p : instances(f, eval_term(f->t1, {}, reg)))
          if (ok(p)) return true;
        return false;
      default: return false;
    }
  }

  // f must be certified
  std::size_t build(ProofBuilder& b, const Formula& f) {
    if (is_delta0(f)) return prove_delta0(b, f, reg);
    switch (f->kind) {
      case FKind::InW: return b.axiom(f, "W", std::to_string(budget));
      case FKind::Box: return b.cite(*box_proof(f), f);
      case FKind::And: return b.from_taut({build(b, f->a), build(b, f->b)}, f);
      case FKind::Or: return b.from_taut({build(b, ok(f->a) ? f->a : f->b)}, f);
      case FKind::Exists:
        for (std::uint64_t n = 0; n <= budget; ++n) {
          auto inst = substitute(f->a, f->var, num(n));
          if (!ok(inst)) continue;
          auto l = build(b, inst);
          return b.mp(l, b.axiom(imp(inst, f), "EI"));
        }
        break;
      case FKind::BForall:
      case FKind::BExists: {
        auto parts = instances(f, eval_term(f->t1, {}, reg));
        auto ax = bexp(b, f, parts);
        if (f->kind == FKind::BExists) {
          for (auto& p : parts)
            if (ok(p)) return b.from_taut({build(b, p), ax}, f);
          break;
        }
        std::vector<std::size_t> ls;
        for (auto& p : parts) ls.push_back(build(b, p));
        return b.from_taut(plus(ls, ax), f);
      }
      default: break;
    }
    throw DomainError("no certificate for " + to_string(f));
  }
};

}  // namespace

std::optional<Proof> prove_true_sigma1(const Formula& sigma, std::uint64_t budget, Registry* reg) {
  if (!is_sigma1(sigma)) throw DomainError("not a Sigma1 formula: " + to_string(sigma));
  if (!is_sentence(sigma)) throw DomainError("not a sentence: " + to_string(sigma));
  Certifier c{budget, reg, nullptr, {}};
  if (!c.ok(sigma)) return std::nullopt;
  ProofBuilder b;
  return b.finish(c.build(b, sigma));
}

std::optional<Proof> prove_true_sigma_b(const Formula& phi, const TheoryId& t, Registry& reg,
                                        std::uint64_t budget) {
  if (!is_sigma_b(phi)) throw DomainError("not a Sigma(B) formula: " + to_string(phi));
  if (!is_sentence(phi)) throw DomainError("not a sentence: " + to_string(phi));
  Certifier c{budget, &reg, &t, {}};
  if (!c.ok(phi)) return std::nullopt;
  ProofBuilder b;
  return b.finish(c.build(b, phi));
}

// ---- deduction for boxed assumptions ----

namespace {

bool positive_boxed(const Formula& f) {
  switch (f->kind) {
    case FKind::Box: return is_sentence(f);
    case FKind::And:
    case FKind::Or: return positive_boxed(f->a) && positive_boxed(f->b);
    default: return false;
  }
}

// line proving s -> box s
std::size_t lift(ProofBuilder& b, const Formula& s) {
  if (s->kind == FKind::Box) return b.axiom(imp(s, box(s)), "4");
  auto la = lift(b, s->a);
  auto lb = lift(b, s->b);
  auto k = [&](const Formula& p, const Formula& q) {  // box(p -> q) -> (box p -> box q)
    return b.axiom(imp(box(imp(p, q)), imp(box(p), box(q))), "K");
  };
  if (s->kind == FKind::And) {
    auto inner = imp(s->b, s);  // b -> (a & b)
    auto n = b.nec(b.taut(imp(s->a, inner)));
    auto k1 = b.mp(n, k(s->a, inner));  // box a -> box(b -> a&b)
    auto k2 = k(s->b, s);
    return b.from_taut({la, lb, k1, k2}, imp(s, box(s)));
  }
  auto na = b.mp(b.nec(b.taut(imp(s->a, s))), k(s->a, s));
  auto nb = b.mp(b.nec(b.taut(imp(s->b, s))), k(s->b, s));
  return b.from_taut({la, lb, na, nb}, imp(s, box(s)));
}

}  // namespace

Proof boxed_deduction(const TheoryId& t, const std::vector<Formula>& x, const Proof& p) {
  if (x.empty()) return p;
  if (!has_scheme(t.base, "4") || !has_scheme(t.base, "K"))
    throw DomainError("deduction for boxed assumptions needs schemes K and 4");
  for (auto& s : x)
    if (!positive_boxed(s)) throw DomainError("assumption outside the boxed fragment: " + to_string(s));
  if (p.lines.empty()) throw DomainError("empty proof");
  auto s = big_and(x);
  std::size_t own = t.extra.size();
  ProofBuilder b;
  std::vector<std::size_t> map(p.lines.size());
  std::optional<std::size_t> lift_line;
  for (std::size_t n = 0; n < p.lines.size(); ++n) {
    auto& f = p.lines[n].formula;
    auto& j = p.lines[n].just;
    auto goal = imp(s, f);
    switch (j.kind) {
      case JKind::Axiom:
      case JKind::Cited:
        map[n] = b.from_taut({b.add(f, j)}, goal);
        break;
      case JKind::Extra:
        if (j.i < own) map[n] = b.from_taut({b.add(f, j)}, goal);
        else map[n] = b.taut(goal);
        break;
      case JKind::MP: map[n] = b.from_taut({map.at(j.i), map.at(j.j)}, goal); break;
      case JKind::Gen: {
        auto g = b.gen(map.at(j.i), j.var);
        auto qd = b.axiom(imp(b.formula(g), goal), "QD");
        map[n] = b.mp(g, qd);
        break;
      }
      case JKind::Nec: {
        auto prev = b.formula(map.at(j.i));  // s -> a
        auto nl = b.nec(map.at(j.i));
        auto k = b.axiom(imp(box(prev), imp(box(s), box(prev->b))), "K");
        auto step = b.mp(nl, k);
        if (!lift_line) lift_line = lift(b, s);
        map[n] = b.from_taut({*lift_line, step}, goal);
        break;
      }
    }
  }
  return b.finish(map.back());
}

// ---- extraction through star and minus ----

namespace {

struct Extractor {
  ProofBuilder& b;
  Registry& reg;
  Extraction& out;

  // line proves box chi, chi = (phi*)^- with numerals in place
  std::optional<std::size_t> go(const Formula& phi, const Formula& chi, std::size_t line) {
    if (is_delta0(phi)) {
      if (holds(phi, &reg)) return prove_delta0(b, phi, &reg);
      out.inconsistency = true;
      out.note = "false Delta0 leaf " + to_string(phi);
      return std::nullopt;
    }
    switch (phi->kind) {
      case FKind::Box: return line;
      case FKind::And: {
        auto la = go(phi->a, chi->a, b.box_from_taut({line}, chi->a));
        if (!la) return la;
        auto lb = go(phi->b, chi->b, b.box_from_taut({line}, chi->b));
        if (!lb) return lb;
        return b.from_taut({*la, *lb}, phi);
      }
      case FKind::Or: {
        auto& test = chi->a->a;  // #r = 0
        Nat r = eval_term(test->t1, {}, &reg);
        bool left = r == 0;
        auto fact = b.nec(left ? b.axiom(test, "ARITH") : b.axiom(neg(test), "ARITH"));
        auto sub = left ? chi->a->b : chi->b->b;
        auto l = go(left ? phi->a : phi->b, sub, b.box_from_taut({line, fact}, sub));
        if (!l) return l;
        return b.from_taut({*l}, phi);
      }
      case FKind::BForall: {
        Nat k = eval_term(phi->t1, {}, &reg);
        auto chis = instances(chi, k);
        auto nb = b.nec(bexp(b, chi, chis));
        auto phis = instances(phi, k);
        std::vector<std::size_t> ls;
        for (std::size_t i = 0; i < phis.size(); ++i) {
          auto l = go(phis[i], chis[i], b.box_from_taut({line, nb}, chis[i]));
          if (!l) return l;
          ls.push_back(*l);
        }
        return b.from_taut(plus(ls, bexp(b, phi, phis)), phi);
      }
      case FKind::BExists: {
        Nat k = eval_term(phi->t1, {}, &reg);
        auto& witness = chi->a->a->t2;  // x = #q
        Nat q = eval_term(witness, {}, &reg);
        if (q >= k) {
          out.inconsistency = true;
          out.note = "witness " + q.str() + " outside the bound " + k.str();
          return std::nullopt;
        }
        auto chis = instances(chi, k);
        std::vector<std::size_t> premises{line, b.nec(bexp(b, chi, chis))};
        for (Nat i = 0; i < k; ++i)
          if (i != q) premises.push_back(b.nec(b.axiom(neg(eq(num(i), num(q))), "ARITH")));
        auto qi = static_cast<std::size_t>(q);
        auto sub = chis[qi]->b;
        auto l = go(substitute(phi->a, phi->var, num(q)), sub, b.box_from_taut(premises, sub));
        if (!l) return l;
        auto phis = instances(phi, k);
        return b.from_taut({*l, bexp(b, phi, phis)}, phi);
      }
      default: break;
    }
    throw DomainError("not a Delta(B) sentence: " + to_string(phi));
  }
};

}  // namespace

Extraction extract_from_star_minus(const TheoryId& t, const Formula& phi, const std::vector<Nat>& p,
                                   const Proof& q, Registry& reg) {
  if (!is_delta_b(phi) || !is_sentence(phi)) throw DomainError("not a Delta(B) sentence: " + to_string(phi));
  if (!has_scheme(t.base, "K")) throw DomainError("extraction needs scheme K");
  auto st = star(phi);
  if (st.fresh.size() != p.size())
    throw DomainError("expected " + std::to_string(st.fresh.size()) + " numbers, got " + std::to_string(p.size()));
  std::map<std::string, Term> m;
  for (std::size_t i = 0; i < p.size(); ++i) m.emplace(st.fresh[i], num(p[i]));
  auto chi = substitute_all(minus(st.psi), m);
  if (q.lines.empty() || !equal(q.conclusion(), box(chi)))
    throw DomainError("proof does not conclude " + to_string(box(chi)));
  auto v = check_proof(t, q, reg);
  if (!v.ok) throw DomainError("proof does not check: " + v.message);
  Extraction out;
  ProofBuilder b;
  auto line = b.splice(q);
  Extractor e{b, reg, out};
  if (auto l = e.go(phi, chi, line)) out.proof = b.finish(*l);
  return out;
}

}  // namespace boxarith
