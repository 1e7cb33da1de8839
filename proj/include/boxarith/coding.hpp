// Goedel numbering by interning, with forward references for fixed points.
#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "boxarith/proof.hpp"
#include "boxarith/syntax.hpp"

namespace boxarith {

/// Append-only table of formulas and proofs. Writes take a lock; readers
/// that race with writers must hold their own snapshot.
class Registry {
 public:
  using Object = std::variant<Formula, Proof>;

  Registry();
  Registry(Registry&&) noexcept;
  Registry& operator=(Registry&&) noexcept;

  std::size_t code_of(const Formula& f);
  std::size_t code_of(const Proof& p);
  std::optional<std::size_t> find(const Formula& f) const;
  std::optional<std::size_t> find(const Proof& p) const;

  /// Throws DomainError on an unknown or unbound index.
  const Object& decode(const Nat& n) const;
  Formula decode_formula(const Nat& n) const;
  const Proof& decode_proof(const Nat& n) const;
  bool is_formula(const Nat& n) const;
  bool is_proof(const Nat& n) const;

  std::size_t reserve();
  void bind(std::size_t handle, const Formula& f);
  std::size_t unbound_count() const;

  std::size_t size() const { return table_.size(); }

  std::string journal() const;
  void save_journal(const std::string& path) const;
  static Registry replay(std::string_view journal_text);
  static Registry load_journal(const std::string& path);

  // memo for proof verdicts, keyed by theory key and proof index
  std::optional<bool> verdict(const std::string& theory_key, std::size_t index) const;
  void set_verdict(const std::string& theory_key, std::size_t index, bool ok);

 private:
  std::deque<std::optional<Object>> table_;
  std::deque<std::string> texts_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::pair<std::string, std::size_t>, bool> verdicts_;
  std::unique_ptr<std::mutex> mu_;

  std::size_t intern(std::string key, Object obj);
};

std::uint64_t fnv1a(std::string_view s);

/// Code of the coded formula with numerals for the values of its substitution.
Nat code_sub_value(Registry& reg, const Term& t, const std::map<std::string, Nat>& env);

/// A sentence built from the fixed points; its code can be named by `var`
/// inside the contexts.
struct DerivedSentence {
  std::string var;
  std::function<Formula(const std::vector<Formula>&)> build;
};

struct FixedPoints {
  std::vector<Formula> sentences;
  std::vector<std::size_t> codes;
  std::vector<Formula> derived;
  std::vector<std::size_t> derived_codes;
};

/// psi_i is literally phi_i with #code(psi_j) for x_j (and #code(d_m) for the
/// derived variables).
FixedPoints fixed_points(Registry& reg, const std::vector<Formula>& contexts,
                         const std::vector<std::string>& vars,
                         const std::vector<DerivedSentence>& derived = {});

/// Cantor pairing; both components are at most the pair.
Nat pair(const Nat& x, const Nat& y);
std::pair<Nat, Nat> unpair(const Nat& z);
/// <a0, <a1, ... a_{n-1}>>; a single element is itself.
Nat tuple(const std::vector<Nat>& xs);
std::vector<Nat> untuple(const Nat& z, std::size_t n);

}  // namespace boxarith
