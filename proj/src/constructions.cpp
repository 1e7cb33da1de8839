#include "boxarith/constructions.hpp"

#include "boxarith/classes.hpp"
#include "boxarith/translate.hpp"

namespace boxarith {

namespace {

// Names for the quantified and code variables, clear of the parameters.
struct Names {
  FreshSupply fresh;
  std::set<std::string> taken;

  explicit Names(const std::vector<Formula>& params) {
    for (auto& p : params) {
      fresh.avoid(p);
      for (auto& v : all_vars(p)) taken.insert(v);
    }
  }

  std::string pick(const std::string& want) {
    if (!taken.count(want)) {
      taken.insert(want);
      fresh.avoid(want);
      return want;
    }
    auto v = fresh.next();
    taken.insert(v);
    return v;
  }
};

Formula at(const Formula& delta, const std::string& x) {
  auto fv = free_vars(delta);
  if (fv.empty()) return delta;
  return substitute(delta, *fv.begin(), var(x));
}

void require_delta(const Formula& delta) {
  if (!is_delta0(delta) || free_vars(delta).size() > 1)
    throw DomainError("expected a Delta0 formula with one free variable: " + to_string(delta));
}

void require_sentence(const Formula& f) {
  if (!is_sentence(f)) throw DomainError("expected a sentence: " + to_string(f));
}

std::string only_free_var(const Formula& phi) {
  auto fv = free_vars(phi);
  if (fv.size() != 1) throw DomainError("expected exactly one free variable: " + to_string(phi));
  return *fv.begin();
}

Formula not_prf(Logic thy, const std::string& code, const std::string& y) {
  return neg(prf(thy, var(code), var(y)));
}

Gallery assemble(const FixedPoints& fp, const std::vector<std::string>& names,
                 const std::vector<std::string>& derived_names) {
  Gallery g;
  for (std::size_t i = 0; i < names.size(); ++i) g.entries.push_back({names[i], fp.sentences[i], fp.codes[i]});
  for (std::size_t i = 0; i < derived_names.size(); ++i)
    g.entries.push_back({derived_names[i], fp.derived[i], fp.derived_codes[i]});
  return g;
}

}  // namespace

const GalleryEntry& Gallery::at(const std::string& name) const {
  for (auto& e : entries)
    if (e.name == name) return e;
  throw DomainError("no gallery entry " + name);
}

const std::vector<std::string>& gallery_kinds() {
  static const std::vector<std::string> kinds = {"lemma42_pair", "prop44_pair", "prop47_xi", "prop52_sigma",
                                                 "thm56_psi",    "godel_sentence", "wmt_instance"};
  return kinds;
}

Gallery godel_sentence(Registry& reg, Logic thy) {
  Names n({});
  auto c = n.pick("c");
  auto y = n.pick("y");
  auto ctx = neg(some(y, prf(thy, var(c), var(y))));
  return assemble(fixed_points(reg, {ctx}, {c}), {"psi"}, {});
}

Gallery lemma42_pair(Registry& reg, Logic thy, const Formula& delta, const Formula& phi) {
  require_delta(delta);
  require_sentence(phi);
  Names n({delta, phi});
  auto x = n.pick("x"), y = n.pick("y");
  auto c0 = n.pick("c0"), c1 = n.pick("c1"), d0 = n.pick("d0"), d1 = n.pick("d1");
  auto psi0 = some(x, conj(disj(at(delta, x), prf(thy, var(d0), var(x))), all_lt(y, var(x), not_prf(thy, d1, y))));
  auto psi1 = some(y, conj(prf(thy, var(d1), var(y)),
                           all_lt(x, succ(var(y)), conj(neg(at(delta, x)), not_prf(thy, d0, x)))));
  std::vector<DerivedSentence> derived = {
      {d0, [](const std::vector<Formula>& s) { return box(s[1]); }},
      {d1, [phi](const std::vector<Formula>& s) { return box(disj(phi, s[0])); }},
  };
  auto fp = fixed_points(reg, {psi0, psi1}, {c0, c1}, derived);
  return assemble(fp, {"psi0", "psi1"}, {"box_psi1", "box_phi_or_psi0"});
}

Gallery prop44_pair(Registry& reg, Logic thy, const Formula& delta) {
  require_delta(delta);
  Names n({delta});
  auto x = n.pick("x"), y = n.pick("y");
  auto c0 = n.pick("c0"), c1 = n.pick("c1"), d = n.pick("d");
  auto sigma0 = some(x, conj(disj(at(delta, x), prf(thy, var(c1), var(x))), all_lt(y, var(x), not_prf(thy, d, y))));
  auto sigma1 = some(y, conj(prf(thy, var(d), var(y)),
                             all_lt(x, succ(var(y)), conj(neg(at(delta, x)), not_prf(thy, c1, x)))));
  std::vector<DerivedSentence> derived = {{d, [](const std::vector<Formula>& s) { return box(s[0]); }}};
  auto fp = fixed_points(reg, {sigma0, sigma1}, {c0, c1}, derived);
  return assemble(fp, {"sigma0", "sigma1"}, {"box_sigma0"});
}

Gallery prop47_xi(Registry& reg, Logic thy, const Formula& delta, const std::vector<Formula>& psis) {
  require_delta(delta);
  if (psis.empty()) throw DomainError("need at least one sentence");
  for (auto& p : psis) require_sentence(p);
  auto params = psis;
  params.push_back(delta);
  Names n(params);
  auto x = n.pick("x"), y = n.pick("y"), d = n.pick("d");
  auto race = some(x, conj(at(delta, x), all_lt(y, var(x), not_prf(thy, d, y))));
  std::vector<Formula> ctx;
  std::vector<std::string> vars, names;
  for (std::size_t i = 0; i < psis.size(); ++i) {
    ctx.push_back(disj(psis[i], race));
    vars.push_back(n.pick("c" + std::to_string(i)));
    names.push_back("xi" + std::to_string(i));
  }
  std::vector<DerivedSentence> derived = {{d, [](const std::vector<Formula>& s) {
                                             std::vector<Formula> boxes;
                                             for (auto& f : s) boxes.push_back(box(f));
                                             return big_or(boxes);
                                           }}};
  auto fp = fixed_points(reg, ctx, vars, derived);
  return assemble(fp, names, {"box_disjunction"});
}

Gallery prop52_sigma(Registry& reg, Logic thy, const Formula& delta, const Formula& phi) {
  require_delta(delta);
  require_sentence(phi);
  Names n({delta, phi});
  auto x = n.pick("x"), y = n.pick("y"), c = n.pick("c"), d = n.pick("d");
  auto sigma = some(x, conj(at(delta, x), all_lt(y, var(x), not_prf(thy, d, y))));
  std::vector<DerivedSentence> derived = {{d, [phi](const std::vector<Formula>& s) { return disj(phi, s[0]); }}};
  auto fp = fixed_points(reg, {sigma}, {c}, derived);
  return assemble(fp, {"sigma"}, {"phi_or_sigma"});
}

Gallery thm56_psi(Registry& reg, Logic thy, const Formula& phi) {
  auto x = only_free_var(phi);
  Names n({phi});
  auto y = n.pick("y"), c = n.pick("c");
  auto psi = some(x, conj(box(phi), all_lt(y, var(x), not_prf(thy, c, y))));
  return assemble(fixed_points(reg, {psi}, {c}), {"psi"}, {});
}

Gallery wmt_instance(Registry& reg, Logic thy, const Formula& phi) {
  auto x = only_free_var(phi);
  Names n({phi});
  auto y = n.pick("y");
  auto schema = some(y, all(x, iff(box(phi), inw(var(x), var(y)))));
  FreshSupply z(phi);
  auto theta = pr_formula(thy, code_term(reg, phi), z);
  auto e = reg.code_of(theta);
  auto instance = all(x, iff(box(phi), inw(var(x), num(e))));
  Gallery g;
  g.entries.push_back({"schema", schema, reg.code_of(schema)});
  g.entries.push_back({"instance", instance, reg.code_of(instance)});
  g.entries.push_back({"enumerator", theta, e});
  return g;
}

std::vector<Nat> prf_targets(const Formula& f) {
  std::vector<Nat> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g->kind == FKind::Prf && g->t1->kind == TermKind::Num) out.push_back(g->t1->value);
    if (g->a) walk(g->a);
    if (g->b) walk(g->b);
  };
  walk(f);
  return out;
}

std::string to_string(DpVerdict v) {
  switch (v) {
    case DpVerdict::Left: return "left";
    case DpVerdict::Right: return "right";
    case DpVerdict::CounterexampleCandidate: return "counterexample-candidate";
    case DpVerdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

std::optional<std::size_t> lookup(TheoremStore& store, const TheoryId& t, const Formula& f, std::uint64_t budget) {
  auto p = store.proof_of(t, f);
  if (p && *p <= budget) return p;
  return std::nullopt;
}

}  // namespace

DpReport check_dp(TheoremStore& store, const TheoryId& t, const Formula& phi, const Formula& psi,
                  std::uint64_t budget) {
  DpReport r;
  r.box_elim_closed = store.box_elim_closed(t);
  auto d = lookup(store, t, disj(phi, psi), budget);
  if (!d) return r;
  if (auto p = lookup(store, t, phi, budget)) {
    r.verdict = DpVerdict::Left;
    r.proof = p;
  } else if (auto q = lookup(store, t, psi, budget)) {
    r.verdict = DpVerdict::Right;
    r.proof = q;
  } else if (equal(phi, psi)) {
    ProofBuilder b;
    auto l = b.from_taut({b.cite(*d, disj(phi, psi))}, phi);
    r.verdict = DpVerdict::Left;
    r.proof = store.registry().code_of(b.finish(l));
  } else {
    r.verdict = DpVerdict::CounterexampleCandidate;
  }
  return r;
}

DpReport check_dc(TheoremStore& store, const TheoryId& t, const Formula& phi, std::uint64_t budget) {
  DpReport r;
  r.box_elim_closed = store.box_elim_closed(t);
  if (auto p = lookup(store, t, phi, budget)) {
    r.verdict = DpVerdict::Left;
    r.proof = p;
  }
  return r;
}

std::optional<std::size_t> rosser_refutation(Registry& reg, Logic thy, std::size_t target, const Formula& delta,
                                             std::uint64_t budget) {
  require_delta(delta);
  for (std::size_t p = 0; p < reg.size() && p <= budget; ++p) {
    if (!prf_holds(reg, thy, target, p)) continue;
    Names n({delta});
    auto x = n.pick("x");
    auto none_below = all_lt(x, num(Nat(p) + 1), neg(at(delta, x)));
    Model m;
    m.registry = &reg;
    if (eval_sentence(none_below, m) == TV::True) return p;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace boxarith
