#include <gtest/gtest.h>

#include "boxarith/classes.hpp"
#include "boxarith/eval.hpp"
#include "boxarith/kernel.hpp"
#include "boxarith/translate.hpp"
#include "gen.hpp"

using namespace boxarith;

namespace {

Formula P(const char* s) { return parse_formula(s); }

const TheoryId kK{Logic::K, {}};

// A K store holding a few true Delta0 sentences, closed under nec to depth 2.
struct Seeded {
  Registry reg;
  TheoremStore store{reg};
  std::vector<Formula> pool;

  Seeded() {
    for (const char* s : {"0=0", "S(0)=S(0)", "~0=S(0)", "(#2+#1)=#3"}) {
      auto f = P(s);
      store.record(kK, *prove_true_sigma1(f, 16));
      pool.push_back(box(f));
      pool.push_back(box(box(f)));
    }
    store.nec_close(kK, 2);
    pool.push_back(box(P("bot")));
    pool.push_back(box(P("#2=#3")));
    budget = reg.size();
  }

  // every proof is already interned; later codes are formulas only
  std::uint64_t budget = 0;

  TV eval(const Formula& f) {
    Model m;
    m.registry = &reg;
    m.theory = kK;
    m.budget = budget;
    return eval_sentence(f, m);
  }
};

}  // namespace

TEST(Alpha, Examples) {
  EXPECT_EQ(to_string(alpha(P("box 0=0"))), "0=0");
  EXPECT_EQ(to_string(alpha(P("forall x box x=x"))), "forall x x=x");
  EXPECT_EQ(to_string(alpha(P("box box (x=0 | box bot)"))), "(x=0 | bot)");
}

TEST(Beta, Examples) {
  EXPECT_EQ(to_string(beta(P("box bot"))), "0=0");
  EXPECT_EQ(to_string(beta(P("(box x=0 | y=0)"))), "(0=0 | y=0)");
  EXPECT_EQ(to_string(beta(P("~box box bot"))), "~0=0");
}

TEST(PrTranslate, PiOnOpenBox) {
  Registry reg;
  auto f = pr_translate({PrMode::Pi, Logic::K}, P("box x=0"), reg);
  ASSERT_EQ(f->kind, FKind::Exists);
  auto want = some(f->var, prf(Logic::K, code_sub(P("x=0"), {{"x", var("x")}}), var(f->var)));
  EXPECT_TRUE(equal(f, want)) << to_string(f);
  EXPECT_NE(f->var, "x");
}

TEST(PrTranslate, PiPrimeOnClosedBox) {
  Registry reg;
  auto a = P("box 0=0");
  auto f = pr_translate({PrMode::PiPrime, Logic::K4}, box(a), reg);
  ASSERT_EQ(f->kind, FKind::And);
  EXPECT_TRUE(equal(f->a, some(f->a->var, prf(Logic::K4, num(reg.code_of(a)), var(f->a->var)))));
  EXPECT_EQ(f->b->kind, FKind::And);
  EXPECT_TRUE(equal(f->b->b, P("0=0")));
}

TEST(PrTranslate, RhoCodesTheBox) {
  Registry reg;
  auto a = P("box 0=S(0)");
  auto f = pr_translate({PrMode::Rho, Logic::GL}, a, reg);
  EXPECT_TRUE(equal(f, some(f->var, prf(Logic::GL, num(reg.code_of(a)), var(f->var)))));
}

TEST(PrTranslate, FreshWitnessesAreDistinct) {
  Registry reg;
  auto f = pr_translate({PrMode::Pi, Logic::K}, P("(box 0=0 & box bot)"), reg);
  EXPECT_NE(f->a->var, f->b->var);
}

TEST(PrTranslate, IdentityOnArithmetic) {
  testgen::Gen g(71);
  Registry reg;
  for (int i = 0; i < 200; ++i) {
    auto f = g.sigma1({"x"}, 3);
    ASSERT_TRUE(is_la(f));
    EXPECT_TRUE(equal(alpha(f), f));
    EXPECT_TRUE(equal(beta(f), f));
    for (auto mode : {PrMode::Pi, PrMode::PiPrime, PrMode::Rho})
      EXPECT_TRUE(equal(pr_translate({mode, Logic::K}, f, reg), f));
  }
}

TEST(PrTranslate, ModeTags) {
  EXPECT_EQ(pr_mode_from_tag("pi"), PrMode::Pi);
  EXPECT_EQ(pr_mode_from_tag("piprime"), PrMode::PiPrime);
  EXPECT_EQ(pr_mode_from_tag("pi_prime"), PrMode::PiPrime);
  EXPECT_EQ(pr_mode_from_tag("rho"), PrMode::Rho);
  EXPECT_FALSE(pr_mode_from_tag("alpha"));
}

TEST(PrTranslate, PiPrimeImpliesPi) {
  Seeded s;
  testgen::Gen g(72);
  g.box_pool = s.pool;
  int truths = 0;
  for (int i = 0; i < 80; ++i) {
    auto phi = testgen::close_exists(g.sigma_b({}, 3));
    auto pp = pr_translate({PrMode::PiPrime, Logic::K}, phi, s.reg);
    auto pi = pr_translate({PrMode::Pi, Logic::K}, phi, s.reg);
    if (s.eval(pp) == TV::True) {
      ++truths;
      EXPECT_EQ(s.eval(pi), TV::True) << to_string(phi);
    }
  }
  EXPECT_GT(truths, 10);
}

TEST(PrTranslate, PiAndRhoOnClosedStores) {
  Seeded s;
  ASSERT_TRUE(s.store.nec_closed(kK, 2));
  testgen::Gen g(73);
  // depth-1 boxes only, so the nec closure covers every box read by rho
  std::vector<Formula> pool;
  for (auto& b : s.pool)
    if (b->a->kind != FKind::Box) pool.push_back(b);
  g.box_pool = pool;
  int truths = 0;
  for (int i = 0; i < 80; ++i) {
    auto phi = testgen::close_exists(g.sigma_b({}, 3));
    auto pi = pr_translate({PrMode::Pi, Logic::K}, phi, s.reg);
    auto rho = pr_translate({PrMode::Rho, Logic::K}, phi, s.reg);
    if (s.eval(pi) == TV::True) {
      ++truths;
      EXPECT_EQ(s.eval(rho), TV::True) << to_string(phi);
    }
  }
  EXPECT_GT(truths, 10);
}
