#include <gtest/gtest.h>

#include <functional>

#include "boxarith/classes.hpp"
#include "boxarith/coding.hpp"
#include "boxarith/eval.hpp"
#include "gen.hpp"

using namespace boxarith;

namespace {

// Every numeral occurring as a term in f.
void numerals(const Formula& f, std::vector<Nat>& out) {
  std::function<void(const Term&)> term = [&](const Term& t) {
    if (!t) return;
    if (t->kind == TermKind::Num) out.push_back(t->value);
    term(t->lhs);
    term(t->rhs);
  };
  term(f->t1);
  term(f->t2);
  if (f->a) numerals(f->a, out);
  if (f->b) numerals(f->b, out);
}

}  // namespace

TEST(Registry, FirstInternIsZero) {
  Registry reg;
  EXPECT_EQ(reg.code_of(bot()), 0u);
  EXPECT_TRUE(equal(reg.decode_formula(0), bot()));
}

TEST(Registry, Idempotent) {
  Registry reg;
  auto f = parse_formula("box exists x x=0");
  auto c = reg.code_of(f);
  reg.code_of(bot());
  EXPECT_EQ(reg.code_of(f), c);
  EXPECT_EQ(reg.find(f), c);
}

TEST(Registry, ProofRoundTrip) {
  Registry reg;
  testgen::Gen g(31);
  for (int i = 0; i < 100; ++i) {
    Proof p;
    int n = 1 + g.pick(4);
    for (int j = 0; j < n; ++j) p.lines.push_back({g.any({}, 3), Justification::axiom("TAUT")});
    if (n > 1) p.lines.back().just = Justification::mp(0, 0);
    auto c = reg.code_of(p);
    ASSERT_TRUE(reg.is_proof(c));
    ASSERT_EQ(to_string(reg.decode_proof(c)), to_string(p));
  }
}

TEST(Registry, UnboundHandleErrors) {
  Registry reg;
  auto h = reg.reserve();
  EXPECT_EQ(reg.unbound_count(), 1u);
  EXPECT_THROW(reg.decode(h), DomainError);
  EXPECT_THROW(reg.decode(Nat(999)), DomainError);
  reg.bind(h, bot());
  EXPECT_EQ(reg.unbound_count(), 0u);
  EXPECT_THROW(reg.bind(h, bot()), DomainError);
}

TEST(Registry, IndicesIncrease) {
  Registry reg;
  std::size_t last = 0;
  for (int i = 0; i < 20; ++i) {
    auto c = reg.code_of(eq(num(i), num(i)));
    if (i) EXPECT_GT(c, last);
    last = c;
  }
}

TEST(CodeSubValue, Examples) {
  Registry reg;
  auto xx = eq(var("x"), var("x"));
  auto t = code_sub(xx, {{"x", var("x")}});
  EXPECT_EQ(code_sub_value(reg, t, {{"x", 2}}), Nat(reg.code_of(eq(num(2), num(2)))));
  auto bx = box(eq(var("x"), zero()));
  auto u = code_sub(bx, {{"x", var("x")}});
  EXPECT_EQ(code_sub_value(reg, u, {{"x", 0}}), Nat(reg.code_of(box(eq(num(0), zero())))));
  auto closed = code_sub(bot(), {});
  EXPECT_EQ(code_sub_value(reg, closed, {}), Nat(reg.code_of(bot())));
  EXPECT_THROW(code_sub_value(reg, t, {}), DomainError);
}

TEST(CodeSubValue, MatchesEval) {
  Registry reg;
  auto t = code_sub(box(eq(var("x"), var("x"))), {{"x", add(var("y"), num(1))}});
  EXPECT_EQ(eval_term(t, {{"y", 4}}, &reg), Nat(reg.code_of(box(eq(num(5), num(5))))));
}

TEST(Numeral, Examples) {
  EXPECT_EQ(to_string(numeral(0)), "#0");
  EXPECT_EQ(eval_term(numeral(3), {}, nullptr), 3);
  Registry reg;
  auto f = parse_formula("exists y y=y");
  auto n = eval_term(numeral(reg.code_of(f)), {}, nullptr);
  EXPECT_TRUE(equal(reg.decode_formula(n), f));
}

TEST(FixedPoints, VacuousContext) {
  Registry reg;
  auto fp = fixed_points(reg, {parse_formula("0=0")}, {"c"});
  EXPECT_EQ(to_string(fp.sentences[0]), "0=0");
  EXPECT_EQ(fp.codes[0], reg.code_of(fp.sentences[0]));
}

TEST(FixedPoints, GodelSentence) {
  Registry reg;
  auto fp = fixed_points(reg, {parse_formula("~exists y prf[k](c,y)")}, {"c"});
  auto psi = fp.sentences[0];
  EXPECT_EQ(reg.code_of(psi), fp.codes[0]);
  std::vector<Nat> ns;
  numerals(psi, ns);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(ns[0], Nat(fp.codes[0]));
}

TEST(FixedPoints, CrossReferences) {
  Registry reg;
  auto s0 = parse_formula("exists x ((x=#1 | prf[k](c1,x)) & forall y < x ~prf[k](c0,y))");
  auto s1 = parse_formula("exists y (prf[k](c0,y) & forall x < S(y) (~x=#1 & ~prf[k](c1,x)))");
  auto fp = fixed_points(reg, {s0, s1}, {"c0", "c1"});
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(reg.code_of(fp.sentences[i]), fp.codes[i]);
    EXPECT_TRUE(is_sentence(fp.sentences[i]));
  }
  EXPECT_TRUE(equal(fp.sentences[0], substitute_all(s0, {{"c0", num(fp.codes[0])}, {"c1", num(fp.codes[1])}})));
  EXPECT_TRUE(is_sigma1(fp.sentences[0]));
}

TEST(FixedPoints, RejectsUndeclaredVariable) {
  Registry reg;
  EXPECT_THROW(fixed_points(reg, {parse_formula("c=z")}, {"c"}), DomainError);
}

TEST(FixedPoints, ExactnessAndClassPreservation) {
  testgen::Gen g(32);
  for (int i = 0; i < 100; ++i) {
    Registry reg;
    int k = 1 + g.pick(3);
    std::vector<std::string> vars;
    for (int j = 0; j < k; ++j) vars.push_back("c" + std::to_string(j));
    std::vector<Formula> ctx;
    for (int j = 0; j < k; ++j) {
      auto body = g.sigma_b({}, 2);
      auto y = "y";
      auto c = vars[g.pick(k)];
      ctx.push_back(disj(body, some(y, prf(Logic::K, var(c), var(y)))));
    }
    auto fp = fixed_points(reg, ctx, vars);
    std::map<std::string, Term> m;
    for (int j = 0; j < k; ++j) m.emplace(vars[j], num(reg.code_of(fp.sentences[j])));
    for (int j = 0; j < k; ++j) {
      ASSERT_TRUE(equal(fp.sentences[j], substitute_all(ctx[j], m)));
      ASSERT_EQ(fp.codes[j], reg.code_of(fp.sentences[j]));
      if (is_sigma_b(ctx[j])) ASSERT_TRUE(is_sigma_b(fp.sentences[j]));
    }
  }
}

TEST(Pairing, BoundsAndInverse) {
  for (int x = 0; x < 30; ++x)
    for (int y = 0; y < 30; ++y) {
      auto z = pair(x, y);
      ASSERT_GE(z, x);
      ASSERT_GE(z, y);
      auto [a, b] = unpair(z);
      ASSERT_EQ(a, x);
      ASSERT_EQ(b, y);
    }
  std::vector<Nat> xs = {3, 0, 7, 12};
  EXPECT_EQ(untuple(tuple(xs), 4), xs);
}

TEST(Journal, ReplayReproducesCodes) {
  Registry reg;
  reg.code_of(parse_formula("box 0=0"));
  auto fp = fixed_points(reg, {parse_formula("~exists y prf[gl](c,y)")}, {"c"});
  Proof p;
  p.lines.push_back({parse_formula("(0=0 -> 0=0)"), Justification::axiom("TAUT")});
  reg.code_of(p);
  auto text = reg.journal();
  auto back = Registry::replay(text);
  EXPECT_EQ(back.journal(), text);
  EXPECT_EQ(back.size(), reg.size());
  EXPECT_EQ(back.find(fp.sentences[0]), fp.codes[0]);
  auto bad = text;
  bad[bad.size() - 3] ^= 1;
  EXPECT_THROW(Registry::replay(bad), DomainError);
}
