#include <gtest/gtest.h>

#include <filesystem>

#include "boxarith/classes.hpp"
#include "boxarith/eval.hpp"
#include "boxarith/kernel.hpp"
#include "boxarith/translate.hpp"
#include "gen.hpp"

using namespace boxarith;

namespace {

const TheoryId kK{Logic::K, {}};
const TheoryId kK4{Logic::K4, {}};
const TheoryId kKT{Logic::KT, {}};

Formula P(const char* s) { return parse_formula(s); }

Proof proof_of_box_00() {
  return parse_proof(
      "ax EQR @ forall x x=x ; ax UI @ (forall x x=x -> 0=0) ; mp 0 1 @ 0=0 ; nec 2 @ box 0=0");
}

// Least witness below the limit by brute force, or -1.
int least_witness(const Formula& body, const std::string& v, int limit) {
  for (int n = 0; n <= limit; ++n) {
    Model m;
    if (eval_sentence(substitute(body, v, num(n)), m) == TV::True) return n;
  }
  return -1;
}

}  // namespace

TEST(IsAxiom, Examples) {
  EXPECT_EQ(is_axiom(kK, P("(box (x=0 -> y=0) -> (box x=0 -> box y=0))")), "K");
  EXPECT_EQ(is_axiom(kK, P("(box x=0 -> x=0)")), std::nullopt);
  EXPECT_EQ(is_axiom(TheoryId{Logic::Ver, {}}, P("box bot")), "VER");
  EXPECT_EQ(is_axiom(TheoryId{Logic::GL, {}}, P("(box (box x=0 -> x=0) -> box x=0)")), "GL");
  EXPECT_EQ(is_axiom(TheoryId{Logic::Triv, {}}, P("(box x=0 <-> x=0)")), "TRIV");
  EXPECT_EQ(is_axiom(kK, P("forall y (box (y=0 -> x=0) -> (box y=0 -> box x=0))")), "K");
}

TEST(IsAxiom, Tautologies) {
  EXPECT_TRUE(tautology(P("(box x=0 | ~box x=0)")));
  EXPECT_FALSE(tautology(P("(box x=0 -> x=0)")));
  EXPECT_TRUE(tautology(P("((exists x x=0 & bot) -> 0=S(0))")));
}

TEST(IsAxiom, MakinsonCeilings) {
  EXPECT_TRUE(is_maximal(Logic::Triv));
  EXPECT_TRUE(is_maximal(Logic::Ver));
  EXPECT_FALSE(is_maximal(Logic::GL));
  for (auto l : all_logics())
    if (l != Logic::PA_Box) EXPECT_TRUE(has_scheme(l, "K"));
  EXPECT_FALSE(has_scheme(Logic::PA_Box, "K"));
}

TEST(CheckProof, Examples) {
  Registry reg;
  auto p = proof_of_box_00();
  EXPECT_TRUE(check_proof(kK, p, reg).ok);
  auto q = p;
  q.lines[3].just = Justification::axiom("T");
  auto v = check_proof(kK, q, reg);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.line, 3u);
  EXPECT_FALSE(check_proof(kK, Proof{}, reg).ok);
}

TEST(CheckProof, DanglingAndShapeErrors) {
  Registry reg;
  EXPECT_FALSE(check_proof(kK, parse_proof("mp 0 1 @ 0=0"), reg).ok);
  EXPECT_FALSE(check_proof(kK, parse_proof("ax TAUT @ (0=0 -> 0=0) ; mp 0 0 @ 0=0"), reg).ok);
  EXPECT_FALSE(check_proof(kK, parse_proof("ax TAUT @ (0=0 -> 0=0) ; gen 0 x @ forall y (0=0 -> 0=0)"), reg).ok);
}

TEST(CheckProof, ProofTextRoundTrip) {
  auto p = proof_of_box_00();
  EXPECT_EQ(to_string(parse_proof(to_string(p))), to_string(p));
}

TEST(CheckProof, ExtraAxioms) {
  Registry reg;
  TheoryId t{Logic::K, {P("box bot")}};
  EXPECT_TRUE(check_proof(t, parse_proof("extra 0 @ box bot ; nec 0 @ box box bot"), reg).ok);
  EXPECT_FALSE(check_proof(kK, parse_proof("extra 0 @ box bot"), reg).ok);
}

TEST(TermEq, Examples) {
  Registry reg;
  auto a = prove_term_eq(parse_term("(S(0)+S(0))"));
  EXPECT_EQ(a.value, 2);
  EXPECT_TRUE(check_proof(kK, a.proof, reg).ok);
  EXPECT_TRUE(equal(a.proof.conclusion(), eq(parse_term("(S(0)+S(0))"), num(2))));
  auto z = prove_term_eq(zero());
  EXPECT_EQ(z.value, 0);
  auto m = prove_term_eq(parse_term("(#3*#2)"));
  EXPECT_EQ(m.value, 6);
  EXPECT_TRUE(check_proof(kK, m.proof, reg).ok);
}

TEST(ProveSigma1, Examples) {
  Registry reg;
  auto p = prove_true_sigma1(P("exists y (S(0)+S(y))=S(S(S(0)))"), 64);
  ASSERT_TRUE(p);
  EXPECT_TRUE(check_proof(kK, *p, reg).ok);
  EXPECT_TRUE(prove_true_sigma1(P("0=0"), 64));
  EXPECT_FALSE(prove_true_sigma1(P("0=S(0)"), 64));
  EXPECT_THROW(prove_true_sigma1(P("forall x x=x"), 64), DomainError);
}

TEST(ProveSigma1, CompleteAtBudget) {
  testgen::Gen g(51);
  Registry reg;
  int found = 0;
  for (int i = 0; i < 200 && found < 60; ++i) {
    auto body = g.delta0({"y"}, 3);
    int w = least_witness(body, "y", 20);
    auto s = some("y", body);
    auto p = prove_true_sigma1(s, 20);
    if (w >= 0) {
      ++found;
      ASSERT_TRUE(p) << to_string(s);
      ASSERT_TRUE(check_proof(kK, *p, reg).ok) << to_string(s);
      ASSERT_TRUE(equal(p->conclusion(), s));
    } else {
      ASSERT_FALSE(p) << to_string(s);
    }
  }
  EXPECT_GT(found, 20);
}

TEST(ProveSigmaB, Examples) {
  Registry reg;
  EXPECT_FALSE(prove_true_sigma_b(P("box 0=0"), kK, reg, 64));
  TheoremStore store(reg);
  store.record(kK, parse_proof("ax EQR @ 0=0"));
  EXPECT_FALSE(prove_true_sigma_b(P("box 0=0"), kK, reg, 64));  // boxes need a proof of the box itself
  store.record(kK, parse_proof("ax EQR @ 0=0 ; nec 0 @ box 0=0"));
  auto p = prove_true_sigma_b(P("box 0=0"), kK, reg, 64);
  ASSERT_TRUE(p);
  EXPECT_TRUE(check_proof(kK, *p, reg).ok);
  auto left = prove_true_sigma_b(P("(exists x x=#2 | box bot)"), kK, reg, 64);
  ASSERT_TRUE(left);
  EXPECT_TRUE(check_proof(kK, *left, reg).ok);
  EXPECT_FALSE(prove_true_sigma_b(P("box bot"), kK, reg, 64));
  EXPECT_THROW(prove_true_sigma_b(P("~box bot"), kK, reg, 64), DomainError);
}

TEST(BoxedDeduction, AxiomFourInstance) {
  Registry reg;
  auto p = parse_proof("extra 0 @ box bot ; nec 0 @ box box bot");
  auto d = boxed_deduction(kK4, {P("box bot")}, p);
  EXPECT_TRUE(equal(d.conclusion(), P("(box bot -> box box bot)")));
  EXPECT_TRUE(check_proof(kK4, d, reg).ok);
}

TEST(BoxedDeduction, EmptySetIsIdentity) {
  auto p = proof_of_box_00();
  EXPECT_EQ(to_string(boxed_deduction(kK4, {}, p)), to_string(p));
}

TEST(BoxedDeduction, DisjunctionOfBoxes) {
  Registry reg;
  auto sigma = P("(box 0=0 | box bot)");
  auto p = parse_proof("extra 0 @ " + to_string(sigma) + " ; nec 0 @ box " + to_string(sigma));
  auto d = boxed_deduction(kK4, {sigma}, p);
  auto v = check_proof(kK4, d, reg);
  EXPECT_TRUE(v.ok) << v.message;
  EXPECT_TRUE(equal(d.conclusion(), imp(sigma, box(sigma))));
  EXPECT_THROW(boxed_deduction(kK4, {P("~box bot")}, p), DomainError);
  EXPECT_THROW(boxed_deduction(kKT, {sigma}, p), DomainError);
}

namespace {

// box of (phi*)^- with the fresh variables set to p
Formula boxed_chi(const Formula& phi, const std::vector<int>& p) {
  auto st = star(phi);
  std::map<std::string, Term> m;
  for (std::size_t i = 0; i < st.fresh.size(); ++i) m.emplace(st.fresh[i], num(p.at(i)));
  return box(substitute_all(minus(st.psi), m));
}

std::vector<Nat> nats(const std::vector<int>& p) { return {p.begin(), p.end()}; }

}  // namespace

TEST(Extract, BoxLeaf) {
  Registry reg;
  auto phi = P("box (0=0 -> 0=0)");
  auto target = boxed_chi(phi, {});
  ProofBuilder b;
  auto l = b.taut(target->a);
  auto q = b.finish(b.nec(l));
  auto r = extract_from_star_minus(kK, phi, {}, q, reg);
  ASSERT_TRUE(r.proof) << r.note;
  EXPECT_TRUE(equal(r.proof->conclusion(), phi));
  EXPECT_TRUE(check_proof(kK, *r.proof, reg).ok);
}

TEST(Extract, Delta0Leaf) {
  Registry reg;
  auto q = parse_proof("ax EQR @ 0=0 ; nec 0 @ box 0=0");
  auto r = extract_from_star_minus(kK, P("0=0"), {}, q, reg);
  ASSERT_TRUE(r.proof);
  EXPECT_TRUE(check_proof(kK, *r.proof, reg).ok);
}

TEST(Extract, DisjunctionBranches) {
  for (int w : {0, 1}) {
    Registry reg;
    auto phi = P("(box (0=0 -> 0=0) | box bot)");
    auto target = boxed_chi(phi, {w});
    TheoryId t{Logic::K, {target}};
    auto q = parse_proof("extra 0 @ " + to_string(target));
    auto r = extract_from_star_minus(t, phi, nats({w}), q, reg);
    ASSERT_TRUE(r.proof) << r.note;
    EXPECT_TRUE(equal(r.proof->conclusion(), phi));
    EXPECT_TRUE(check_proof(t, *r.proof, reg).ok);
  }
}

TEST(Extract, WrongArityAndConclusionRejected) {
  Registry reg;
  auto phi = P("(box 0=0 | box bot)");
  auto q = parse_proof("ax EQR @ 0=0 ; nec 0 @ box 0=0");
  EXPECT_THROW(extract_from_star_minus(kK, phi, {}, q, reg), DomainError);
  EXPECT_THROW(extract_from_star_minus(kK, phi, nats({0}), q, reg), DomainError);
}

TEST(Extract, FalseLeafSignalsInconsistency) {
  Registry reg;
  auto q = parse_proof("extra 0 @ box 0=S(0)");
  TheoryId t{Logic::K, {P("box 0=S(0)")}};
  auto r = extract_from_star_minus(t, P("0=S(0)"), {}, q, reg);
  EXPECT_FALSE(r.proof);
  EXPECT_TRUE(r.inconsistency);
}

TEST(Store, RecordAndSearch) {
  Registry reg;
  TheoremStore store(reg);
  EXPECT_FALSE(pr_search(reg, kK, reg.code_of(P("box 0=0")), 100));
  auto [fc, pc] = store.record(kK, proof_of_box_00());
  EXPECT_EQ(pr_search(reg, kK, fc, 100), pc);
  EXPECT_FALSE(pr_search(reg, kK, fc, pc - 1));
  EXPECT_THROW(store.record(kK, parse_proof("ax T @ (box 0=0 -> 0=0)")), DomainError);
}

TEST(Store, NecCloseChecks) {
  Registry reg;
  TheoremStore store(reg);
  store.record(kK, proof_of_box_00());
  store.nec_close(kK, 3);
  EXPECT_TRUE(store.nec_closed(kK, 3));
  auto p = store.proof_of(kK, P("box box 0=0"));
  ASSERT_TRUE(p);
  EXPECT_TRUE(prf_holds(reg, Logic::K, reg.code_of(P("box box 0=0")), *p));
  EXPECT_TRUE(store.proof_of(kK, P("box box box 0=0")));
  EXPECT_FALSE(store.proof_of(kK, P("box box box box 0=0")));
}

TEST(Store, BoxElimCloseNeedsT) {
  Registry reg;
  TheoremStore store(reg);
  store.record(kKT, proof_of_box_00());
  EXPECT_FALSE(store.box_elim_closed(kKT));
  store.box_elim_close(kKT);
  EXPECT_TRUE(store.box_elim_closed(kKT));
  store.record(kK, proof_of_box_00());
  EXPECT_THROW(store.box_elim_close(kK), DomainError);
}

TEST(Store, PrfAgreement) {
  Registry reg;
  TheoremStore store(reg);
  auto [fc, pc] = store.record(kK, proof_of_box_00());
  for (std::size_t x = 0; x < reg.size(); ++x)
    for (std::size_t y = 0; y < reg.size(); ++y) {
      bool want = reg.is_proof(y) && reg.is_formula(x) && check_proof(kK, reg.decode_proof(y), reg).ok &&
                  equal(reg.decode_proof(y).conclusion(), reg.decode_formula(x));
      ASSERT_EQ(prf_holds(reg, Logic::K, x, y), want);
    }
  EXPECT_TRUE(prf_holds(reg, Logic::K, fc, pc));
}

TEST(Store, PersistAndReload) {
  auto dir = std::filesystem::temp_directory_path() / "boxarith_store_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "s.store").string();
  std::string journal;
  std::string text;
  {
    Registry reg;
    TheoremStore store(reg);
    store.record(kK, proof_of_box_00());
    store.nec_close(kK, 2);
    store.save(path);
    text = store.serialize();
    journal = reg.journal();
  }
  auto reg = Registry::replay(journal);
  auto back = TheoremStore::load(reg, path);
  EXPECT_EQ(back.serialize(), text);
  EXPECT_EQ(text.rfind("boxarithstore v1\n", 0), 0u);
  EXPECT_THROW(TheoremStore::parse(reg, "nonsense"), DomainError);
  std::filesystem::remove_all(dir);
}
