// Golden CLI command suite. Commands run in order against one store; the
// runner adds --format machine and --store.
#pragma once

#include <string>
#include <vector>

namespace boxarith::golden {

using Argv = std::vector<std::string>;

inline const std::vector<Argv>& suite() {
  static const std::vector<Argv> s = {
      {"classify", "box bot"},
      {"classify", "exists x x=0"},
      {"normalize", "--rule", "possigma1", "~x=0"},
      {"normalize", "--rule", "s2d", "exists x box x=x"},
      {"normalize", "--rule", "boxes", "(box 0=0 & box bot)"},
      {"normalize", "--rule", "minus", "(box box 0=0 | box bot)"},
      {"normalize", "--rule", "star", "(box 0=0 | box bot)"},
      {"translate", "--mode", "alpha", "box (0=0 | box bot)"},
      {"translate", "--mode", "beta", "box bot"},
      {"translate", "--mode", "pi", "box x=0"},
      {"translate", "--mode", "piprime", "box box 0=0"},
      {"translate", "--mode", "rho", "box 0=S(0)"},
      {"diag", "--var", "c", "~exists y prf[k](c,y)"},
      {"diag", "--var", "a", "--var", "b", "exists y prf[k4](b,y)", "~exists y prf[k4](a,y)"},
      {"prove", "exists y (S(0)+S(y))=#3"},
      {"prove", "0=0"},
      {"prove", "0=S(0)"},
      {"store", "record", "ax EQR @ forall x x=x ; ax UI @ (forall x x=x -> 0=0) ; mp 0 1 @ 0=0 ; nec 2 @ box 0=0"},
      {"store", "nec-close", "--horizon", "2"},
      {"prove", "(box 0=0 | box bot)"},
      {"check", "ax EQR @ 0=0 ; nec 0 @ box 0=0"},
      {"check", "ax T @ (box 0=0 -> 0=0)"},
      {"eval", "--model", "triv", "forall x < #3 box (x=x | bot)"},
      {"eval", "--model", "ver", "~box bot"},
      {"eval", "--model", "prov", "box box 0=0"},
      {"eval", "--model", "prov", "exists x box x=0"},
      {"gallery", "--kind", "godel_sentence"},
      {"gallery", "--kind", "prop44_pair", "--delta", "x=#9"},
      {"gallery", "--kind", "thm56_psi", "--phi", "box x=x"},
      {"gallery", "--kind", "wmt_instance", "--phi", "x=0"},
      {"audit-dp", "box 0=0", "box bot"},
      {"audit-dc", "box 0=0"},
      {"store", "list"},
      {"store", "audit"},
      {"decide", "--logic", "gl", "box (box p -> p) -> box p"},
      {"decide", "--logic", "k", "box p -> box box p"},
      {"scan-mdp", "--logic", "triv", "--size", "4", "--vars", "1"},
  };
  return s;
}

/// Commands that leave the store and journal unchanged.
inline bool is_query(const Argv& a) {
  if (a[0] == "prove" || a[0] == "diag" || a[0] == "gallery" || a[0] == "translate" || a[0] == "audit-dp")
    return false;  // these intern new codes
  if (a[0] == "store") return a[1] == "list" || a[1] == "audit";
  return a[0] == "classify" || a[0] == "decide" || a[0] == "scan-mdp" || a[0] == "check";
}

}  // namespace boxarith::golden
