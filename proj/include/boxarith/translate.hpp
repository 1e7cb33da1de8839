// Box-free translations: alpha, beta and the provability readings pi, pi', rho.
#pragma once

#include "boxarith/coding.hpp"
#include "boxarith/syntax.hpp"

namespace boxarith {

enum class PrMode : std::uint8_t { Pi, PiPrime, Rho };

struct PrVariant {
  PrMode mode = PrMode::Pi;
  Logic theory = Logic::K;
};

std::optional<PrMode> pr_mode_from_tag(std::string_view tag);

/// Erases every box.
Formula alpha(const Formula& f);
/// Replaces every boxed subformula by 0=0.
Formula beta(const Formula& f);

/// exists y prf[thy](code, y) with y a fresh name from the supply.
Formula pr_formula(Logic thy, const Term& code, FreshSupply& fresh);

/// Code term for f: a numeral when f is closed, a dotted code otherwise.
Term code_term(Registry& reg, const Formula& f);

Formula pr_translate(const PrVariant& v, const Formula& f, Registry& reg);

}  // namespace boxarith
