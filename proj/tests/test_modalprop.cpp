#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "boxarith/modalprop.hpp"
#include "boxarith/syntax.hpp"
#include "gen.hpp"

using namespace boxarith::modal;

namespace {

PF M(const char* s) { return parse_prop(s); }

// Independent model checker over an adjacency matrix and bitmask valuation.
struct Frame {
  int n;
  std::vector<std::vector<bool>> r;
};

bool sat(const Frame& f, const std::map<std::string, unsigned>& val, int w, PF a) {
  switch (a->kind) {
    case PKind::Var: return (val.at(a->name) >> w) & 1u;
    case PKind::Bot: return false;
    case PKind::Not: return !sat(f, val, w, a->a);
    case PKind::And: return sat(f, val, w, a->a) && sat(f, val, w, a->b);
    case PKind::Or: return sat(f, val, w, a->a) || sat(f, val, w, a->b);
    case PKind::Imp: return !sat(f, val, w, a->a) || sat(f, val, w, a->b);
    case PKind::Iff: return sat(f, val, w, a->a) == sat(f, val, w, a->b);
    case PKind::Box:
      for (int v = 0; v < f.n; ++v)
        if (f.r[w][v] && !sat(f, val, v, a->a)) return false;
      return true;
  }
  return false;
}

bool frame_fits(ModalLogic l, const Frame& f) {
  for (int u = 0; u < f.n; ++u)
    for (int v = 0; v < f.n; ++v)
      for (int w = 0; w < f.n; ++w) {
        bool trans = !(f.r[u][v] && f.r[v][w]) || f.r[u][w];
        if ((l == ModalLogic::K4 || l == ModalLogic::S4 || l == ModalLogic::GL) && !trans) return false;
      }
  for (int u = 0; u < f.n; ++u) {
    if ((l == ModalLogic::KT || l == ModalLogic::S4) && !f.r[u][u]) return false;
    if (l == ModalLogic::GL && f.r[u][u]) return false;
  }
  return true;
}

// Some frame of the logic with at most max_n worlds falsifies a somewhere.
bool small_countermodel(ModalLogic l, PF a, int max_n) {
  auto vars = prop_vars(a);
  for (int n = 1; n <= max_n; ++n) {
    int edges = n * n;
    for (unsigned mask = 0; mask < (1u << edges); ++mask) {
      Frame f{n, std::vector<std::vector<bool>>(n, std::vector<bool>(n))};
      for (int e = 0; e < edges; ++e) f.r[e / n][e % n] = (mask >> e) & 1u;
      if (!frame_fits(l, f)) continue;
      unsigned vals = 1u << (n * vars.size());
      for (unsigned vm = 0; vm < vals; ++vm) {
        std::map<std::string, unsigned> val;
        for (std::size_t i = 0; i < vars.size(); ++i) val[vars[i]] = (vm >> (i * n)) & ((1u << n) - 1);
        for (int w = 0; w < n; ++w)
          if (!sat(f, val, w, a)) return true;
      }
    }
  }
  return false;
}

// Truth table over the formula read classically, boxes replaced as given.
bool classical_taut(PF a, bool boxes_true) {
  auto vars = prop_vars(a);
  std::function<bool(PF, unsigned)> ev = [&](PF f, unsigned m) -> bool {
    switch (f->kind) {
      case PKind::Var: {
        auto i = std::find(vars.begin(), vars.end(), f->name) - vars.begin();
        return (m >> i) & 1u;
      }
      case PKind::Bot: return false;
      case PKind::Not: return !ev(f->a, m);
      case PKind::And: return ev(f->a, m) && ev(f->b, m);
      case PKind::Or: return ev(f->a, m) || ev(f->b, m);
      case PKind::Imp: return !ev(f->a, m) || ev(f->b, m);
      case PKind::Iff: return ev(f->a, m) == ev(f->b, m);
      case PKind::Box: return boxes_true ? true : ev(f->a, m);
    }
    return false;
  };
  for (unsigned m = 0; m < (1u << vars.size()); ++m)
    if (!ev(a, m)) return false;
  return true;
}

bool model_falsifies(ModalLogic l, PF a, const KripkeModel& km) {
  Frame f{static_cast<int>(km.worlds), km.r};
  if (!frame_fits(l, f)) return false;
  if (l == ModalLogic::Triv)
    for (std::size_t u = 0; u < km.worlds; ++u)
      for (std::size_t v = 0; v < km.worlds; ++v)
        if (km.r[u][v] != (u == v)) return false;
  if (l == ModalLogic::Ver)
    for (auto& row : km.r)
      for (bool b : row)
        if (b) return false;
  std::map<std::string, unsigned> val;
  for (auto& v : prop_vars(a)) val[v] = 0;
  for (std::size_t w = 0; w < km.worlds; ++w)
    for (auto& v : km.val[w])
      if (val.count(v)) val[v] |= 1u << w;
  return !sat(f, val, 0, a);
}

}  // namespace

TEST(Decide, Examples) {
  auto gl = decide(ModalLogic::GL, M("box (box p -> p) -> box p"));
  EXPECT_TRUE(gl.provable);
  EXPECT_TRUE(gl.certificate);
  EXPECT_TRUE(verify(ModalLogic::GL, M("box (box p -> p) -> box p"), gl));

  auto k = decide(ModalLogic::K, M("box p -> p"));
  EXPECT_FALSE(k.provable);
  ASSERT_TRUE(k.countermodel);
  EXPECT_TRUE(model_falsifies(ModalLogic::K, M("box p -> p"), *k.countermodel));

  EXPECT_TRUE(decide(ModalLogic::Triv, M("box p <-> p")).provable);
  EXPECT_TRUE(provable(ModalLogic::Ver, M("box bot")));
  EXPECT_FALSE(provable(ModalLogic::GL, M("box bot")));
  EXPECT_TRUE(provable(ModalLogic::K4, M("box p -> box box p")));
  EXPECT_FALSE(provable(ModalLogic::K, M("box p -> box box p")));
  EXPECT_TRUE(provable(ModalLogic::KT, M("box p -> p")));
  EXPECT_FALSE(provable(ModalLogic::KT, M("box p -> box box p")));
  EXPECT_TRUE(provable(ModalLogic::S4, M("box p -> box box p")));
  EXPECT_FALSE(provable(ModalLogic::S4, M("box (box p -> p) -> box p")));
  EXPECT_TRUE(provable(ModalLogic::K, M("box (p -> q) -> box p -> box q")));
  EXPECT_FALSE(provable(ModalLogic::GL, M("box p -> p")));
}

TEST(Decide, CountermodelsNeedMoreThanOneWorld) {
  // K4 refutes this only on a two-step chain
  auto a = M("box p -> box box p");
  auto d = decide(ModalLogic::K, a);
  ASSERT_TRUE(d.countermodel);
  EXPECT_GE(d.countermodel->worlds, 3u);
  EXPECT_TRUE(model_falsifies(ModalLogic::K, a, *d.countermodel));
  auto l = M("~box bot -> ~box box bot");
  auto g = decide(ModalLogic::GL, l);
  EXPECT_FALSE(g.provable);
  ASSERT_TRUE(g.countermodel);
  EXPECT_TRUE(model_falsifies(ModalLogic::GL, l, *g.countermodel));
}

TEST(Decide, RandomFormulasVerifiedBothWays) {
  boxarith::testgen::Gen g(91);
  for (auto l : {ModalLogic::K, ModalLogic::K4, ModalLogic::KT, ModalLogic::S4, ModalLogic::GL}) {
    int yes = 0, no = 0;
    for (int i = 0; i < 150; ++i) {
      auto a = g.prop(1 + g.pick(9), 2);
      auto d = decide(l, a);
      ASSERT_TRUE(verify(l, a, d)) << logic_tag(l) << " " << to_string(a);
      if (d.provable) {
        ++yes;
        ASSERT_TRUE(d.certificate);
        ASSERT_TRUE(verify_certificate(l, a, *d.certificate));
        // soundness against every frame with at most two worlds
        ASSERT_FALSE(small_countermodel(l, a, 2)) << logic_tag(l) << " " << to_string(a);
      } else {
        ++no;
        ASSERT_TRUE(d.countermodel);
        ASSERT_TRUE(model_falsifies(l, a, *d.countermodel)) << logic_tag(l) << " " << to_string(a);
      }
      ASSERT_EQ(provable(l, a), d.provable);
    }
    EXPECT_GT(yes, 5) << logic_tag(l);
    EXPECT_GT(no, 5) << logic_tag(l);
  }
}

TEST(Decide, TamperedCertificateFails) {
  auto a = M("box p & box q -> box (p & q)");
  auto d = decide(ModalLogic::K, a);
  ASSERT_TRUE(d.certificate);
  EXPECT_FALSE(verify_certificate(ModalLogic::K, M("box p -> box (p & q)"), *d.certificate));
  auto t = *d.certificate;
  t.children.clear();
  t.rule = Rule::Clash;
  EXPECT_FALSE(verify_certificate(ModalLogic::K, a, t));
}

TEST(Decide, TrivAndVerReductions) {
  boxarith::testgen::Gen g(92);
  for (int i = 0; i < 300; ++i) {
    auto a = g.prop(1 + g.pick(11), 3);
    EXPECT_EQ(provable(ModalLogic::Triv, a), classical_taut(a, false)) << to_string(a);
    EXPECT_EQ(provable(ModalLogic::Ver, a), classical_taut(a, true)) << to_string(a);
    for (auto l : {ModalLogic::Triv, ModalLogic::Ver}) {
      auto d = decide(l, a);
      EXPECT_TRUE(verify(l, a, d));
      if (!d.provable) {
        ASSERT_TRUE(d.countermodel);
        EXPECT_EQ(d.countermodel->worlds, 1u);
        EXPECT_TRUE(model_falsifies(l, a, *d.countermodel));
      }
    }
  }
}

TEST(Decide, MakinsonSanity) {
  boxarith::testgen::Gen g(93);
  int k_theorems = 0;
  for (int i = 0; i < 400; ++i) {
    auto a = g.prop(1 + g.pick(9), 2);
    if (!provable(ModalLogic::K, a)) continue;
    ++k_theorems;
    EXPECT_TRUE(provable(ModalLogic::Triv, a)) << to_string(a);
    EXPECT_TRUE(provable(ModalLogic::Ver, a)) << to_string(a);
    for (auto l : {ModalLogic::K4, ModalLogic::KT, ModalLogic::S4, ModalLogic::GL})
      EXPECT_TRUE(provable(l, a)) << logic_tag(l) << " " << to_string(a);
  }
  EXPECT_GT(k_theorems, 20);
}

TEST(Scan, GlHasNoViolationsAtSizeSix) {
  auto r = mdp_scan(ModalLogic::GL, 6, 1);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.formulas, enumerate_formulas(6, 1).size());
  EXPECT_GT(r.classes, 1u);
}

TEST(Scan, VerAndTrivViolations) {
  auto ver = mdp_scan(ModalLogic::Ver, 4, 1);
  bool bot_pair = false;
  for (auto& [a, b] : ver.violations)
    if (a == pbot() || b == pbot()) bot_pair = true;
  EXPECT_TRUE(bot_pair);
  auto triv = mdp_scan(ModalLogic::Triv, 4, 1);
  ASSERT_FALSE(triv.violations.empty());
  for (auto& [a, b] : triv.violations) {
    EXPECT_TRUE(provable(ModalLogic::Triv, por(pbox(a), pbox(b))));
    EXPECT_FALSE(provable(ModalLogic::Triv, a));
    EXPECT_FALSE(provable(ModalLogic::Triv, b));
  }
  EXPECT_TRUE(provable(ModalLogic::Triv, M("box p | box ~p")));
  EXPECT_FALSE(provable(ModalLogic::Triv, M("p")));
}

TEST(Scan, EnumerationCounts) {
  // size 1: p, bot; size 2: ~x, box x for each of those
  EXPECT_EQ(enumerate_formulas(1, 1).size(), 2u);
  EXPECT_EQ(enumerate_formulas(2, 1).size(), 6u);
  EXPECT_EQ(enumerate_formulas(1, 2).size(), 3u);
  auto fs = enumerate_formulas(4, 2);
  std::set<PF> uniq(fs.begin(), fs.end());
  EXPECT_EQ(uniq.size(), fs.size());
  for (auto f : fs) EXPECT_LE(f->size, 4u);
}

TEST(Parser, PrecedenceAndErrors) {
  EXPECT_EQ(M("p & q | r -> s"), pimp(por(pand(pvar("p"), pvar("q")), pvar("r")), pvar("s")));
  EXPECT_EQ(M("p -> q -> r"), pimp(pvar("p"), pimp(pvar("q"), pvar("r"))));
  EXPECT_EQ(M("box ~p"), pbox(pnot(pvar("p"))));
  EXPECT_EQ(M("top"), pnot(pbot()));
  EXPECT_EQ(parse_prop(to_string(M("box (p <-> ~q) & r"))), M("box (p <-> ~q) & r"));
  EXPECT_THROW(parse_prop("p &"), boxarith::ParseError);
  EXPECT_THROW(parse_prop("(p"), boxarith::ParseError);
  EXPECT_EQ(modal_logic_from_tag("gl"), ModalLogic::GL);
  EXPECT_FALSE(modal_logic_from_tag("s41"));
  EXPECT_EQ(modal_logics().size(), 7u);
}

TEST(Parser, RoundTripRandom) {
  boxarith::testgen::Gen g(94);
  for (int i = 0; i < 300; ++i) {
    auto a = g.prop(1 + g.pick(12), 3);
    EXPECT_EQ(parse_prop(to_string(a)), a) << to_string(a);
  }
}
