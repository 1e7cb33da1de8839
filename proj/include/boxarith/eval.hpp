// Standard-model evaluation with three readings of the box.
#pragma once

#include <functional>
#include <map>
#include <string>

#include "boxarith/coding.hpp"
#include "boxarith/syntax.hpp"

namespace boxarith {

enum class TV : std::uint8_t { False, True, Unknown };

TV tv_not(TV a);
TV tv_and(TV a, TV b);
TV tv_or(TV a, TV b);
TV tv_imp(TV a, TV b);
TV tv_iff(TV a, TV b);
TV tv_of(bool b);
std::string to_string(TV v);

/// Triv reads box A as A, Ver as true, Prov as a proof search in the registry.
enum class Flavor : std::uint8_t { Triv, Ver, Prov };
std::string to_string(Flavor f);

using Env = std::map<std::string, Nat>;

/// Membership x in W_y at a witness budget.
using WEnumerator = std::function<TV(const Nat& x, const Nat& y, std::uint64_t budget)>;

struct Model {
  Flavor flavor = Flavor::Triv;
  std::uint64_t budget = 64;
  Env env;
  TheoryId theory;              // Prov
  Registry* registry = nullptr;  // needed for codes, Prf and Prov
  WEnumerator enumerator;       // empty: W_y is read off the registry
};

/// Throws DomainError on an unbound variable or a code term without registry.
Nat eval_term(const Term& t, const Env& env, Registry* reg);

TV eval_sentence(const Formula& f, const Model& m);

/// The default enumerator: y codes a formula with one free variable v and
/// x is in W_y when that formula holds at #x.
TV registry_membership(const Nat& x, const Nat& y, const Model& m);

}  // namespace boxarith
