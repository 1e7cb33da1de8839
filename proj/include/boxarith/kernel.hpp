// Theories PA(L), proof checking, proof synthesis and the theorem store.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "boxarith/coding.hpp"
#include "boxarith/eval.hpp"
#include "boxarith/proof.hpp"
#include "boxarith/syntax.hpp"

namespace boxarith {

/// Scheme tags available in a theory; the arithmetic and logical schemes
/// are shared by all of them.
std::vector<std::string> scheme_tags(Logic l);
bool has_scheme(Logic l, const std::string& tag);
/// Logics whose maximal consistent extensions are Triv or Ver; a fact, not a proof.
bool is_maximal(Logic l);

/// Stable key of a theory: its tag, then "+code" per extra axiom.
std::string theory_key(const TheoryId& t, Registry& reg);
TheoryId theory_from_key(const std::string& key, const Registry& reg);

/// Does f instantiate scheme `tag`? reg is needed for codes and Prf atoms.
bool instance_of(const std::string& tag, const std::string& data, const Formula& f, Registry* reg);
/// First matching scheme of the theory, if any.
std::optional<std::string> is_axiom(const TheoryId& t, const Formula& f, Registry* reg = nullptr);

bool tautology(const Formula& f);

struct Verdict {
  bool ok = false;
  std::size_t line = 0;  // first failing line when !ok
  std::string message;
};

Verdict check_proof(const TheoryId& t, const Proof& p, Registry& reg);

/// Exact Prf: y codes a proof checking under thy whose conclusion has code x.
bool prf_holds(Registry& reg, Logic thy, const Nat& x, const Nat& y);
/// Smallest proof code at most budget proving the formula with this code.
std::optional<std::size_t> pr_search(Registry& reg, const TheoryId& t, std::size_t formula_code,
                                     std::uint64_t budget);

class ProofBuilder {
 public:
  /// Appends a line, or returns an earlier line with the same formula.
  std::size_t add(const Formula& f, Justification j);
  std::size_t axiom(const Formula& f, const std::string& tag, const std::string& data = {});
  std::size_t taut(const Formula& f) { return axiom(f, "TAUT"); }
  std::size_t mp(std::size_t minor, std::size_t major);
  std::size_t nec(std::size_t i);
  std::size_t gen(std::size_t i, const std::string& v);
  std::size_t cite(std::size_t proof_code, const Formula& f);
  /// Copies p's lines; returns the index of its last line.
  std::size_t splice(const Proof& p);
  /// From lines P1..Pn derive C through the tautology P1 -> ... -> Pn -> C.
  std::size_t from_taut(const std::vector<std::size_t>& premises, const Formula& c);
  /// From lines box P1..box Pn derive box C through the same tautology, using K.
  std::size_t box_from_taut(const std::vector<std::size_t>& boxed, const Formula& c);
  const Formula& formula(std::size_t i) const { return lines_.at(i).formula; }
  std::size_t size() const { return lines_.size(); }
  /// The proof, ending in line i.
  Proof finish(std::size_t i) const;

 private:
  std::vector<ProofLine> lines_;
  std::unordered_map<Formula, std::size_t, FormulaHash, FormulaEq> seen_;
};

/// n = value of t together with a proof of t = #n.
struct TermEq {
  Nat value;
  Proof proof;
};
TermEq prove_term_eq(const Term& t, Registry* reg = nullptr);

/// Proof of a true closed Delta0 sentence, or of its negation when false.
std::size_t prove_delta0(ProofBuilder& b, const Formula& f, Registry* reg);
std::size_t refute_delta0(ProofBuilder& b, const Formula& f, Registry* reg);

std::optional<Proof> prove_true_sigma1(const Formula& sigma, std::uint64_t budget,
                                       Registry* reg = nullptr);
/// Boxes are discharged by proofs found in the registry within the budget.
std::optional<Proof> prove_true_sigma_b(const Formula& phi, const TheoryId& t, Registry& reg,
                                        std::uint64_t budget);

/// From a proof in T + X (X appended after T's own extra axioms) build a proof
/// in T of big_and(X) -> phi. Members of X must be and/or combinations of
/// boxed sentences and T must prove scheme 4.
Proof boxed_deduction(const TheoryId& t, const std::vector<Formula>& x, const Proof& p);

struct Extraction {
  std::optional<Proof> proof;
  /// Set when a false Delta0 leaf or an out-of-range witness shows T proves box bot.
  bool inconsistency = false;
  std::string note;
};
/// q proves box (phi*)^-(p); the result proves phi.
Extraction extract_from_star_minus(const TheoryId& t, const Formula& phi,
                                   const std::vector<Nat>& p, const Proof& q, Registry& reg);

/// Recorded theorems per theory, backed by the registry's proofs.
class TheoremStore {
 public:
  explicit TheoremStore(Registry& reg) : reg_(&reg) {}

  Registry& registry() const { return *reg_; }

  /// Throws DomainError when the proof does not check.
  std::pair<std::size_t, std::size_t> record(const TheoryId& t, const Proof& p);
  std::optional<std::size_t> proof_of(const TheoryId& t, const Formula& f) const;
  std::vector<std::pair<std::size_t, std::size_t>> entries(const TheoryId& t) const;
  std::vector<std::string> theory_keys() const;
  std::size_t size() const;

  /// Records box A for every recorded A of modal depth below the horizon, repeatedly.
  void nec_close(const TheoryId& t, int horizon);
  /// Records A for every recorded box A; needs scheme T in the theory.
  void box_elim_close(const TheoryId& t);
  /// Largest h such that every recorded A of depth below h has box A recorded; -1 if unbounded.
  int nec_horizon(const TheoryId& t) const;
  bool nec_closed(const TheoryId& t, int horizon) const;
  bool box_elim_closed(const TheoryId& t) const;

  std::string serialize() const;
  static TheoremStore parse(Registry& reg, std::string_view text);
  void save(const std::string& path) const;
  static TheoremStore load(Registry& reg, const std::string& path);

 private:
  Registry* reg_;
  std::map<std::string, std::set<std::pair<std::size_t, std::size_t>>> buckets_;

  std::string key(const TheoryId& t) const { return theory_key(t, *reg_); }
  void insert(const std::string& key, std::size_t f, std::size_t p);
};

}  // namespace boxarith
