// Seeded random generators for terms, formulas of each class, and
// propositional modal formulas.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "boxarith/modalprop.hpp"
#include "boxarith/syntax.hpp"

namespace boxarith::testgen {

using Vars = std::vector<std::string>;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// Small values only: numerals up to 3, shallow S, + and *.
  Term term(const Vars& vars, int depth = 2);
  Formula atom(const Vars& vars);
  Formula delta0(const Vars& vars, int depth);
  Formula sigma1(const Vars& vars, int depth);
  Formula delta_b(const Vars& vars, int depth);
  Formula sigma_b(const Vars& vars, int depth);
  /// Full language; at most `unbounded` unbounded quantifiers along any path.
  Formula any(const Vars& vars, int depth, int unbounded = 2);

  /// Boxes are drawn from this pool when non-empty, else generated.
  std::vector<Formula> box_pool;

  modal::PF prop(int size, int vars);

 private:
  std::mt19937_64 rng_;
  int counter_ = 0;

  std::string fresh_name(const Vars& vars);
  Term bound(const Vars& vars);
  Formula boxed(const Vars& vars, int depth);
};

/// Sentences: each generator closed at the top.
Formula close_exists(const Formula& f);

}  // namespace boxarith::testgen
