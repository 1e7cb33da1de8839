// Self-referential sentences built by the fixed point construction, and the
// disjunction-property audits over a theorem store.
#pragma once

#include <string>
#include <vector>

#include "boxarith/coding.hpp"
#include "boxarith/kernel.hpp"
#include "boxarith/syntax.hpp"

namespace boxarith {

struct GalleryEntry {
  std::string name;
  Formula sentence;
  std::size_t code = 0;
};

struct Gallery {
  std::vector<GalleryEntry> entries;  // the fixed points, then the sentences whose codes they mention
  const GalleryEntry& at(const std::string& name) const;
};

/// Gallery kinds by tag.
const std::vector<std::string>& gallery_kinds();

/// psi <-> ~exists y prf(psi, y)
Gallery godel_sentence(Registry& reg, Logic thy);
/// Rosser pair racing a Delta0 witness for delta against proofs of box psi1
/// and box(phi | psi0). delta has one free variable.
Gallery lemma42_pair(Registry& reg, Logic thy, const Formula& delta, const Formula& phi);
/// Sigma1 pair racing delta and proofs of sigma1 against proofs of box sigma0.
Gallery prop44_pair(Registry& reg, Logic thy, const Formula& delta);
/// xi_i <-> psi_i | exists x (delta(x) & forall y < x ~prf(box xi_0 | ... , y))
Gallery prop47_xi(Registry& reg, Logic thy, const Formula& delta, const std::vector<Formula>& psis);
/// sigma <-> exists x (delta(x) & forall y < x ~prf(phi | sigma, y))
Gallery prop52_sigma(Registry& reg, Logic thy, const Formula& delta, const Formula& phi);
/// psi <-> exists x (box phi(x) & forall y < x ~prf(psi, y)); phi has one free variable.
Gallery thm56_psi(Registry& reg, Logic thy, const Formula& phi);
/// The WMT schema for phi(x) and its instance at e, the code of the
/// formula exists z prf(code of phi(x dotted), z).
Gallery wmt_instance(Registry& reg, Logic thy, const Formula& phi);

/// Codes appearing as the first argument of numeral Prf atoms.
std::vector<Nat> prf_targets(const Formula& f);

enum class DpVerdict : std::uint8_t { Left, Right, CounterexampleCandidate, Unknown };
std::string to_string(DpVerdict v);

struct DpReport {
  DpVerdict verdict = DpVerdict::Unknown;
  /// every recorded box A has A recorded
  bool box_elim_closed = false;
  std::optional<std::size_t> proof;  // proof code of the disjunct reported
};

/// Proofs with codes above the budget are not consulted.
DpReport check_dp(TheoremStore& store, const TheoryId& t, const Formula& phi, const Formula& psi,
                  std::uint64_t budget);
/// Left when phi is recorded; unknown otherwise.
DpReport check_dc(TheoremStore& store, const TheoryId& t, const Formula& phi, std::uint64_t budget);

/// A proof p of the sentence with code target such that delta fails at
/// every x <= p: this certifies the negation of the matching Rosser sentence.
std::optional<std::size_t> rosser_refutation(Registry& reg, Logic thy, std::size_t target, const Formula& delta,
                                             std::uint64_t budget);

}  // namespace boxarith
