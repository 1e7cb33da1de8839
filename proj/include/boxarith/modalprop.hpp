// Propositional modal logics: tableau deciders, Kripke countermodels and the
// modal disjunction scan.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boxarith::modal {

enum class PKind : std::uint8_t { Var, Bot, Not, And, Or, Imp, Iff, Box };

struct PNode;
using PF = const PNode*;

/// Hash-consed: structurally equal formulas are the same pointer.
struct PNode {
  PKind kind;
  std::string name;  // Var
  PF a = nullptr, b = nullptr;
  std::uint32_t id = 0;
  std::uint32_t size = 1;
};

PF pvar(const std::string& name);
PF pbot();
PF pnot(PF a);
PF pand(PF a, PF b);
PF por(PF a, PF b);
PF pimp(PF a, PF b);
PF piff(PF a, PF b);
PF pbox(PF a);

std::string to_string(PF f);
/// Prefix ~ and box bind tightest, then &, |, -> (to the right), <->.
PF parse_prop(std::string_view text);
std::vector<std::string> prop_vars(PF f);

enum class ModalLogic : std::uint8_t { K, K4, KT, S4, GL, Triv, Ver };
std::string logic_tag(ModalLogic l);
std::optional<ModalLogic> modal_logic_from_tag(std::string_view tag);
const std::vector<ModalLogic>& modal_logics();

struct KripkeModel {
  std::size_t worlds = 0;
  std::vector<std::vector<bool>> r;           // r[u][v]: v is accessible from u
  std::vector<std::vector<std::string>> val;  // true variables per world
  void resize(std::size_t n);
};

bool holds(const KripkeModel& m, std::size_t w, PF f);
/// Reflexivity, transitivity, irreflexivity or emptiness as the logic demands.
bool frame_ok(ModalLogic l, const KripkeModel& m);

enum class Rule : std::uint8_t { Clash, Alpha, Beta, Reflect, Modal };

/// A closed tableau for {~A}. Each node carries its formula set.
struct ClosedTableau {
  std::vector<PF> set;
  Rule rule = Rule::Clash;
  PF principal = nullptr;
  std::vector<ClosedTableau> children;
};

struct Decision {
  bool provable = false;
  std::optional<ClosedTableau> certificate;  // provable, tableau logics
  std::optional<KripkeModel> countermodel;   // not provable; A fails at world 0
};

Decision decide(ModalLogic l, PF a);
/// Provability alone, without certificate or countermodel.
bool provable(ModalLogic l, PF a);

/// Checks a closed tableau rule by rule.
bool verify_certificate(ModalLogic l, PF a, const ClosedTableau& t);
/// Countermodel is a frame of the logic falsifying A, or the certificate
/// checks, or (Triv, Ver) no one-world model falsifies A.
bool verify(ModalLogic l, PF a, const Decision& d);

struct MdpReport {
  std::size_t formulas = 0;
  std::size_t classes = 0;
  std::size_t unprovable_classes = 0;
  std::size_t pairs = 0;
  std::size_t decider_calls = 0;
  std::vector<std::pair<PF, PF>> violations;  // box A | box B provable, neither A nor B
};

/// All formulas with at most `size` nodes over `vars` variables, bot and the
/// connectives ~, box, &, |, ->.
std::vector<PF> enumerate_formulas(std::size_t size, std::size_t vars);
MdpReport mdp_scan(ModalLogic l, std::size_t size, std::size_t vars);

}  // namespace boxarith::modal
