// Syntactic classes LA, Delta0, Sigma1, B, Delta(B), Sigma(B) and the normal forms.
#pragma once

#include <bitset>
#include <string>
#include <vector>

#include "boxarith/coding.hpp"
#include "boxarith/syntax.hpp"

namespace boxarith {

enum class Cls : std::uint8_t { LA, Delta0, Sigma1, B, DeltaB, SigmaB };

struct FormulaClass {
  std::bitset<6> bits;
  bool has(Cls c) const { return bits.test(static_cast<std::size_t>(c)); }
  void set(Cls c) { bits.set(static_cast<std::size_t>(c)); }
  bool operator==(const FormulaClass&) const = default;
  /// Comma separated, in the order LA,Delta0,Sigma1,B,DeltaB,SigmaB.
  std::string to_string() const;
};

FormulaClass classify(const Formula& f);
bool is_la(const Formula& f);
bool is_delta0(const Formula& f);
bool is_sigma1(const Formula& f);
bool is_delta_b(const Formula& f);
bool is_sigma_b(const Formula& f);

/// Sigma1 formula without ~, -> or <->, whose arithmetic atoms are equations.
Formula positive_sigma1_form(const Formula& f);

struct ExistsDeltaB {
  std::string v;
  Formula psi;
};
ExistsDeltaB sigma_b_to_exists_delta_b(const Formula& f);

/// psi_0..psi_{k-1} with phi <-> box psi_0 | ... | box psi_{k-1}; k = 0 means bot.
std::vector<Formula> delta_b_sentence_to_boxes(const Formula& f, Registry* reg = nullptr);

Formula minus(const Formula& f);

struct Starred {
  Formula psi;
  std::vector<std::string> fresh;
};
Starred star(const Formula& f);

}  // namespace boxarith
