// Hilbert-style proof objects and their one-line text form.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "boxarith/syntax.hpp"

namespace boxarith {

enum class JKind : std::uint8_t { Axiom, Extra, MP, Gen, Nec, Cited };

struct Justification {
  JKind kind = JKind::Axiom;
  std::string tag;   // Axiom: scheme tag
  std::string data;  // Axiom: instantiation data, may be empty
  std::size_t i = 0, j = 0;  // Extra index; MP minor i, major j; Gen/Nec premise i; Cited proof code i
  std::string var;   // Gen

  static Justification axiom(std::string tag, std::string data = {});
  static Justification extra(std::size_t i);
  static Justification mp(std::size_t minor, std::size_t major);
  static Justification gen(std::size_t i, std::string v);
  static Justification nec(std::size_t i);
  static Justification cited(std::size_t proof_code);
};

struct ProofLine {
  Formula formula;
  Justification just;
};

struct Proof {
  std::vector<ProofLine> lines;
  /// Last line's formula; throws on the empty proof.
  const Formula& conclusion() const;
};

std::string to_string(const Justification& j);
/// Lines joined by " ; ", each written as "<justification> @ <formula>".
std::string to_string(const Proof& p);
Proof parse_proof(std::string_view text);

}  // namespace boxarith
