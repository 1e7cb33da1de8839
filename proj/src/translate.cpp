#include "boxarith/translate.hpp"

namespace boxarith {

namespace {

template <class BoxCase>
Formula homomorphic(const Formula& f, BoxCase&& on_box) {
  auto rec = [&](const Formula& g) { return homomorphic(g, on_box); };
  switch (f->kind) {
    case FKind::Bot:
    case FKind::Eq:
    case FKind::Le:
    case FKind::Lt:
    case FKind::Prf:
    case FKind::InW: return f;
    case FKind::Not: return neg(rec(f->a));
    case FKind::And: return conj(rec(f->a), rec(f->b));
    case FKind::Or: return disj(rec(f->a), rec(f->b));
    case FKind::Imp: return imp(rec(f->a), rec(f->b));
    case FKind::Iff: return iff(rec(f->a), rec(f->b));
    case FKind::Forall: return all(f->var, rec(f->a));
    case FKind::Exists: return some(f->var, rec(f->a));
    case FKind::BForall: return all_lt(f->var, f->t1, rec(f->a));
    case FKind::BExists: return some_lt(f->var, f->t1, rec(f->a));
    case FKind::Box: return on_box(f);
  }
  return f;
}

}  // namespace

std::optional<PrMode> pr_mode_from_tag(std::string_view tag) {
  if (tag == "pi") return PrMode::Pi;
  if (tag == "piprime" || tag == "pi_prime") return PrMode::PiPrime;
  if (tag == "rho") return PrMode::Rho;
  return std::nullopt;
}

Formula alpha(const Formula& f) {
  return homomorphic(f, [](const Formula& b) { return alpha(b->a); });
}

Formula beta(const Formula& f) {
  return homomorphic(f, [](const Formula&) { return eq(zero(), zero()); });
}

Formula pr_formula(Logic thy, const Term& code, FreshSupply& fresh) {
  auto y = fresh.next();
  return some(y, prf(thy, code, var(y)));
}

Term code_term(Registry& reg, const Formula& f) {
  auto fv = free_vars(f);
  if (fv.empty()) return num(reg.code_of(f));
  std::map<std::string, Term> m;
  for (auto& v : fv) m.emplace(v, var(v));
  return code_sub(f, std::move(m));
}

Formula pr_translate(const PrVariant& v, const Formula& f, Registry& reg) {
  FreshSupply fresh(f);
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    return homomorphic(g, [&](const Formula& b) -> Formula {
      switch (v.mode) {
        case PrMode::Pi: return pr_formula(v.theory, code_term(reg, b->a), fresh);
        case PrMode::PiPrime: return conj(pr_formula(v.theory, code_term(reg, b->a), fresh), go(b->a));
        case PrMode::Rho: return pr_formula(v.theory, code_term(reg, b), fresh);
      }
      return b;
    });
  };
  return go(f);
}

}  // namespace boxarith
