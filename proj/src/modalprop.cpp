#include "boxarith/modalprop.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "boxarith/syntax.hpp"

namespace boxarith::modal {

// ---------------------------------------------------------------------------
// Formulas

namespace {

struct Interner {
  std::mutex mu;
  std::deque<PNode> nodes;
  std::map<std::tuple<PKind, std::string, std::uint32_t, std::uint32_t>, PF> table;

  PF make(PKind k, const std::string& name, PF a, PF b) {
    std::lock_guard lock(mu);
    auto key = std::make_tuple(k, name, a ? a->id : 0u, b ? b->id : 0u);
    auto it = table.find(key);
    if (it != table.end()) return it->second;
    PNode n{k, name, a, b, static_cast<std::uint32_t>(nodes.size() + 1), 1};
    if (a) n.size += a->size;
    if (b) n.size += b->size;
    nodes.push_back(std::move(n));
    PF p = &nodes.back();
    table.emplace(key, p);
    return p;
  }
};

Interner& interner() {
  static Interner i;
  return i;
}

}  // namespace

PF pvar(const std::string& name) { return interner().make(PKind::Var, name, nullptr, nullptr); }
PF pbot() { return interner().make(PKind::Bot, "", nullptr, nullptr); }
PF pnot(PF a) { return interner().make(PKind::Not, "", a, nullptr); }
PF pand(PF a, PF b) { return interner().make(PKind::And, "", a, b); }
PF por(PF a, PF b) { return interner().make(PKind::Or, "", a, b); }
PF pimp(PF a, PF b) { return interner().make(PKind::Imp, "", a, b); }
PF piff(PF a, PF b) { return interner().make(PKind::Iff, "", a, b); }
PF pbox(PF a) { return interner().make(PKind::Box, "", a, nullptr); }

std::string to_string(PF f) {
  switch (f->kind) {
    case PKind::Var: return f->name;
    case PKind::Bot: return "bot";
    case PKind::Not: return "~" + to_string(f->a);
    case PKind::Box: return "box " + to_string(f->a);
    case PKind::And: return "(" + to_string(f->a) + " & " + to_string(f->b) + ")";
    case PKind::Or: return "(" + to_string(f->a) + " | " + to_string(f->b) + ")";
    case PKind::Imp: return "(" + to_string(f->a) + " -> " + to_string(f->b) + ")";
    case PKind::Iff: return "(" + to_string(f->a) + " <-> " + to_string(f->b) + ")";
  }
  return "?";
}

namespace {

class PropParser {
 public:
  explicit PropParser(std::string_view s) : s_(s) {}

  PF parse() {
    auto f = iff_level();
    skip();
    if (i_ != s_.size()) fail("unexpected input");
    return f;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " in modal formula", i_);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) != tok) return false;
    i_ += tok.size();
    return true;
  }

  std::string ident() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    return std::string(s_.substr(i_, j - i_));
  }

  PF iff_level() {
    auto l = imp_level();
    while (eat("<->")) l = piff(l, imp_level());
    return l;
  }

  PF imp_level() {
    auto l = or_level();
    if (eat("->")) return pimp(l, imp_level());
    return l;
  }

  PF or_level() {
    auto l = and_level();
    while (eat("|")) l = por(l, and_level());
    return l;
  }

  PF and_level() {
    auto l = unary();
    while (eat("&")) l = pand(l, unary());
    return l;
  }

  PF unary() {
    if (eat("~")) return pnot(unary());
    if (eat("(")) {
      auto f = iff_level();
      if (!eat(")")) fail("expected )");
      return f;
    }
    auto id = ident();
    if (id.empty() || !std::islower(static_cast<unsigned char>(id[0]))) fail("expected a formula");
    i_ += id.size();
    if (id == "box") return pbox(unary());
    if (id == "bot") return pbot();
    if (id == "top") return pnot(pbot());
    return pvar(id);
  }
};

}  // namespace

PF parse_prop(std::string_view text) { return PropParser(text).parse(); }

std::vector<std::string> prop_vars(PF f) {
  std::set<std::string> out;
  std::function<void(PF)> walk = [&](PF g) {
    if (g->kind == PKind::Var) out.insert(g->name);
    if (g->a) walk(g->a);
    if (g->b) walk(g->b);
  };
  walk(f);
  return {out.begin(), out.end()};
}

std::string logic_tag(ModalLogic l) {
  switch (l) {
    case ModalLogic::K: return "k";
    case ModalLogic::K4: return "k4";
    case ModalLogic::KT: return "kt";
    case ModalLogic::S4: return "s4";
    case ModalLogic::GL: return "gl";
    case ModalLogic::Triv: return "triv";
    case ModalLogic::Ver: return "ver";
  }
  return "?";
}

const std::vector<ModalLogic>& modal_logics() {
  static const std::vector<ModalLogic> all = {ModalLogic::K,  ModalLogic::K4,   ModalLogic::KT, ModalLogic::S4,
                                              ModalLogic::GL, ModalLogic::Triv, ModalLogic::Ver};
  return all;
}

std::optional<ModalLogic> modal_logic_from_tag(std::string_view tag) {
  for (auto l : modal_logics())
    if (logic_tag(l) == tag) return l;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Kripke semantics

void KripkeModel::resize(std::size_t n) {
  worlds = n;
  r.assign(n, std::vector<bool>(n, false));
  val.assign(n, {});
}

bool holds(const KripkeModel& m, std::size_t w, PF f) {
  switch (f->kind) {
    case PKind::Var: return std::find(m.val[w].begin(), m.val[w].end(), f->name) != m.val[w].end();
    case PKind::Bot: return false;
    case PKind::Not: return !holds(m, w, f->a);
    case PKind::And: return holds(m, w, f->a) && holds(m, w, f->b);
    case PKind::Or: return holds(m, w, f->a) || holds(m, w, f->b);
    case PKind::Imp: return !holds(m, w, f->a) || holds(m, w, f->b);
    case PKind::Iff: return holds(m, w, f->a) == holds(m, w, f->b);
    case PKind::Box:
      for (std::size_t v = 0; v < m.worlds; ++v)
        if (m.r[w][v] && !holds(m, v, f->a)) return false;
      return true;
  }
  return false;
}

namespace {

bool reflexive(const KripkeModel& m) {
  for (std::size_t u = 0; u < m.worlds; ++u)
    if (!m.r[u][u]) return false;
  return true;
}

bool irreflexive(const KripkeModel& m) {
  for (std::size_t u = 0; u < m.worlds; ++u)
    if (m.r[u][u]) return false;
  return true;
}

bool transitive(const KripkeModel& m) {
  for (std::size_t u = 0; u < m.worlds; ++u)
    for (std::size_t v = 0; v < m.worlds; ++v)
      if (m.r[u][v])
        for (std::size_t w = 0; w < m.worlds; ++w)
          if (m.r[v][w] && !m.r[u][w]) return false;
  return true;
}

bool empty_relation(const KripkeModel& m) {
  for (auto& row : m.r)
    for (bool b : row)
      if (b) return false;
  return true;
}

bool identity_relation(const KripkeModel& m) {
  for (std::size_t u = 0; u < m.worlds; ++u)
    for (std::size_t v = 0; v < m.worlds; ++v)
      if (m.r[u][v] != (u == v)) return false;
  return true;
}

}  // namespace

bool frame_ok(ModalLogic l, const KripkeModel& m) {
  if (m.r.size() != m.worlds || m.val.size() != m.worlds) return false;
  for (auto& row : m.r)
    if (row.size() != m.worlds) return false;
  switch (l) {
    case ModalLogic::K: return true;
    case ModalLogic::KT: return reflexive(m);
    case ModalLogic::K4: return transitive(m);
    case ModalLogic::S4: return reflexive(m) && transitive(m);
    // finite, transitive and irreflexive: conversely well-founded
    case ModalLogic::GL: return transitive(m) && irreflexive(m);
    case ModalLogic::Triv: return identity_relation(m);
    case ModalLogic::Ver: return empty_relation(m);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Tableaux

namespace {

using Set = std::vector<PF>;  // sorted by id, no repeats

bool by_id(PF a, PF b) { return a->id < b->id; }

bool has(const Set& s, PF f) { return std::binary_search(s.begin(), s.end(), f, by_id); }

Set with(const Set& s, std::initializer_list<PF> add) {
  Set out = s;
  for (PF f : add)
    if (!has(out, f)) out.insert(std::lower_bound(out.begin(), out.end(), f, by_id), f);
  return out;
}

Set make_set(std::vector<PF> v) {
  std::sort(v.begin(), v.end(), by_id);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool clash(const Set& s) {
  for (PF f : s) {
    if (f->kind == PKind::Bot) return true;
    if (f->kind == PKind::Not && has(s, f->a)) return true;
  }
  return false;
}

bool tableau_logic(ModalLogic l) { return l != ModalLogic::Triv && l != ModalLogic::Ver; }
bool reflects(ModalLogic l) { return l == ModalLogic::KT || l == ModalLogic::S4; }
bool transitive_logic(ModalLogic l) {
  return l == ModalLogic::K4 || l == ModalLogic::S4 || l == ModalLogic::GL;
}

// Components of a conjunctive formula, or nothing.
std::optional<std::vector<PF>> alpha_parts(PF f) {
  switch (f->kind) {
    case PKind::And: return std::vector<PF>{f->a, f->b};
    case PKind::Not:
      switch (f->a->kind) {
        case PKind::Not: return std::vector<PF>{f->a->a};
        case PKind::Or: return std::vector<PF>{pnot(f->a->a), pnot(f->a->b)};
        case PKind::Imp: return std::vector<PF>{f->a->a, pnot(f->a->b)};
        default: return std::nullopt;
      }
    default: return std::nullopt;
  }
}

std::optional<std::pair<std::vector<PF>, std::vector<PF>>> beta_parts(PF f) {
  using V = std::vector<PF>;
  switch (f->kind) {
    case PKind::Or: return std::make_pair(V{f->a}, V{f->b});
    case PKind::Imp: return std::make_pair(V{pnot(f->a)}, V{f->b});
    case PKind::Iff: return std::make_pair(V{f->a, f->b}, V{pnot(f->a), pnot(f->b)});
    case PKind::Not:
      switch (f->a->kind) {
        case PKind::And: return std::make_pair(V{pnot(f->a->a)}, V{pnot(f->a->b)});
        case PKind::Iff: return std::make_pair(V{f->a->a, pnot(f->a->b)}, V{pnot(f->a->a), f->a->b});
        default: return std::nullopt;
      }
    default: return std::nullopt;
  }
}

Set add_all(const Set& s, const std::vector<PF>& add) {
  Set out = s;
  for (PF f : add)
    if (!has(out, f)) out.insert(std::lower_bound(out.begin(), out.end(), f, by_id), f);
  return out;
}

bool contains_all(const Set& s, const std::vector<PF>& v) {
  return std::all_of(v.begin(), v.end(), [&](PF f) { return has(s, f); });
}

Set successor(ModalLogic l, const Set& s, PF a) {
  std::vector<PF> out{pnot(a)};
  if (l == ModalLogic::GL) out.push_back(pbox(a));
  for (PF f : s) {
    if (f->kind != PKind::Box) continue;
    out.push_back(f->a);
    if (transitive_logic(l)) out.push_back(f);
  }
  return make_set(out);
}

enum class Step : std::uint8_t { None, Alpha, Reflect, Beta };

struct Pick {
  Step step = Step::None;
  PF principal = nullptr;
};

// Alpha first, then reflection, then branching.
Pick next_step(ModalLogic l, const Set& s) {
  for (PF f : s)
    if (auto p = alpha_parts(f); p && !contains_all(s, *p)) return {Step::Alpha, f};
  if (reflects(l))
    for (PF f : s)
      if (f->kind == PKind::Box && !has(s, f->a)) return {Step::Reflect, f};
  for (PF f : s)
    if (auto p = beta_parts(f); p && !contains_all(s, p->first) && !contains_all(s, p->second))
      return {Step::Beta, f};
  return {};
}

struct World {
  Set label;
  std::vector<std::size_t> succ;
};

class Prover {
 public:
  explicit Prover(ModalLogic l) : l_(l) {}

  /// World index of a model root for the set, or nothing when closed.
  std::optional<std::size_t> explore(const Set& core) {
    path_.clear();
    worlds_.clear();
    return explore(core, core);
  }

  ClosedTableau refute(const Set& core) {
    path_.clear();
    return refute(core, core);
  }

  KripkeModel model(std::size_t root) const {
    // renumber so the root is world 0
    std::vector<std::size_t> order{root};
    for (std::size_t i = 0; i < worlds_.size(); ++i)
      if (i != root) order.push_back(i);
    std::vector<std::size_t> pos(worlds_.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    KripkeModel m;
    m.resize(worlds_.size());
    for (std::size_t i = 0; i < worlds_.size(); ++i) {
      for (PF f : worlds_[i].label)
        if (f->kind == PKind::Var) m.val[pos[i]].push_back(f->name);
      for (auto j : worlds_[i].succ) m.r[pos[i]][pos[j]] = true;
    }
    if (reflects(l_))
      for (std::size_t u = 0; u < m.worlds; ++u) m.r[u][u] = true;
    if (transitive_logic(l_))
      for (std::size_t k = 0; k < m.worlds; ++k)
        for (std::size_t u = 0; u < m.worlds; ++u)
          if (m.r[u][k])
            for (std::size_t v = 0; v < m.worlds; ++v)
              if (m.r[k][v]) m.r[u][v] = true;
    return m;
  }

 private:
  ModalLogic l_;
  std::vector<std::pair<Set, std::size_t>> path_;  // cores of the open ancestors and their worlds
  std::vector<World> worlds_;
  std::set<Set> unsat_;

  std::optional<std::size_t> blocked(const Set& core) const {
    if (!transitive_logic(l_) || l_ == ModalLogic::GL) return std::nullopt;
    for (auto& [c, w] : path_)
      if (c == core) return w;
    return std::nullopt;
  }

  std::optional<std::size_t> explore(const Set& core, const Set& s) {
    if (clash(s) || unsat_.count(s)) return std::nullopt;
    auto pick = next_step(l_, s);
    switch (pick.step) {
      case Step::Alpha: return settle(s, explore(core, add_all(s, *alpha_parts(pick.principal))));
      case Step::Reflect: return settle(s, explore(core, with(s, {pick.principal->a})));
      case Step::Beta: {
        auto parts = *beta_parts(pick.principal);
        auto mark = worlds_.size();
        if (auto w = explore(core, add_all(s, parts.first))) return w;
        worlds_.resize(mark);
        return settle(s, explore(core, add_all(s, parts.second)));
      }
      case Step::None: break;
    }
    auto w = worlds_.size();
    worlds_.push_back({s, {}});
    path_.emplace_back(core, w);
    for (PF f : s) {
      if (f->kind != PKind::Not || f->a->kind != PKind::Box) continue;
      auto next = successor(l_, s, f->a->a);
      if (auto b = blocked(next)) {
        worlds_[w].succ.push_back(*b);
        continue;
      }
      auto child = explore(next, next);
      if (!child) {
        path_.pop_back();
        worlds_.resize(w);
        unsat_.insert(s);
        return std::nullopt;
      }
      worlds_[w].succ.push_back(*child);
    }
    path_.pop_back();
    return w;
  }

  std::optional<std::size_t> settle(const Set& s, std::optional<std::size_t> r) {
    if (!r) unsat_.insert(s);
    return r;
  }

  bool closes_under_path(const Set& core) {
    auto saved_worlds = worlds_.size();
    auto r = explore(core, core);
    worlds_.resize(saved_worlds);
    return !r;
  }

  ClosedTableau refute(const Set& core, const Set& s) {
    ClosedTableau t;
    t.set = s;
    if (clash(s)) return t;
    auto pick = next_step(l_, s);
    t.principal = pick.principal;
    switch (pick.step) {
      case Step::Alpha:
        t.rule = Rule::Alpha;
        t.children.push_back(refute(core, add_all(s, *alpha_parts(pick.principal))));
        return t;
      case Step::Reflect:
        t.rule = Rule::Reflect;
        t.children.push_back(refute(core, with(s, {pick.principal->a})));
        return t;
      case Step::Beta: {
        auto parts = *beta_parts(pick.principal);
        t.rule = Rule::Beta;
        t.children.push_back(refute(core, add_all(s, parts.first)));
        t.children.push_back(refute(core, add_all(s, parts.second)));
        return t;
      }
      case Step::None: break;
    }
    path_.emplace_back(core, 0);
    for (PF f : s) {
      if (f->kind != PKind::Not || f->a->kind != PKind::Box) continue;
      auto next = successor(l_, s, f->a->a);
      if (blocked(next) || !closes_under_path(next)) continue;
      t.rule = Rule::Modal;
      t.principal = f;
      t.children.push_back(refute(next, next));
      path_.pop_back();
      return t;
    }
    path_.pop_back();
    throw std::logic_error("refuting an open tableau");
  }
};

// One-world semantics: box A is A under Triv and true under Ver.
bool one_world(ModalLogic l, PF f, const std::set<std::string>& val) {
  switch (f->kind) {
    case PKind::Var: return val.count(f->name) > 0;
    case PKind::Bot: return false;
    case PKind::Not: return !one_world(l, f->a, val);
    case PKind::And: return one_world(l, f->a, val) && one_world(l, f->b, val);
    case PKind::Or: return one_world(l, f->a, val) || one_world(l, f->b, val);
    case PKind::Imp: return !one_world(l, f->a, val) || one_world(l, f->b, val);
    case PKind::Iff: return one_world(l, f->a, val) == one_world(l, f->b, val);
    case PKind::Box: return l == ModalLogic::Ver || one_world(l, f->a, val);
  }
  return false;
}

std::optional<std::set<std::string>> one_world_counter(ModalLogic l, PF a) {
  auto vars = prop_vars(a);
  if (vars.size() > 20) throw DomainError("too many variables for a truth table");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    std::set<std::string> val;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (mask >> i & 1) val.insert(vars[i]);
    if (!one_world(l, a, val)) return val;
  }
  return std::nullopt;
}

}  // namespace

Decision decide(ModalLogic l, PF a) {
  Decision d;
  if (!tableau_logic(l)) {
    auto val = one_world_counter(l, a);
    d.provable = !val;
    if (val) {
      KripkeModel m;
      m.resize(1);
      m.r[0][0] = l == ModalLogic::Triv;
      m.val[0].assign(val->begin(), val->end());
      d.countermodel = std::move(m);
    }
    return d;
  }
  Prover p(l);
  Set root{pnot(a)};
  auto w = p.explore(root);
  d.provable = !w;
  if (w)
    d.countermodel = p.model(*w);
  else
    d.certificate = p.refute(root);
  return d;
}

bool provable(ModalLogic l, PF a) {
  if (!tableau_logic(l)) return !one_world_counter(l, a);
  Prover p(l);
  return !p.explore(Set{pnot(a)});
}

// ---------------------------------------------------------------------------
// Certificate checking, kept apart from the prover's own rule tables

namespace {

bool member(const std::vector<PF>& s, PF f) { return std::find(s.begin(), s.end(), f) != s.end(); }

bool same_set(std::vector<PF> a, std::vector<PF> b) {
  auto key = [](PF f) { return f->id; };
  std::sort(a.begin(), a.end(), [&](PF x, PF y) { return key(x) < key(y); });
  std::sort(b.begin(), b.end(), [&](PF x, PF y) { return key(x) < key(y); });
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

std::vector<PF> plus(std::vector<PF> s, std::initializer_list<PF> add) {
  s.insert(s.end(), add.begin(), add.end());
  return s;
}

bool check_node(ModalLogic l, const ClosedTableau& t) {
  auto& s = t.set;
  switch (t.rule) {
    case Rule::Clash:
      if (!t.children.empty()) return false;
      for (PF f : s)
        if (f->kind == PKind::Bot || (f->kind == PKind::Not && member(s, f->a))) return true;
      return false;
    case Rule::Alpha: {
      PF f = t.principal;
      if (!f || !member(s, f) || t.children.size() != 1) return false;
      std::vector<PF> want;
      if (f->kind == PKind::And)
        want = plus(s, {f->a, f->b});
      else if (f->kind == PKind::Not && f->a->kind == PKind::Not)
        want = plus(s, {f->a->a});
      else if (f->kind == PKind::Not && f->a->kind == PKind::Or)
        want = plus(s, {pnot(f->a->a), pnot(f->a->b)});
      else if (f->kind == PKind::Not && f->a->kind == PKind::Imp)
        want = plus(s, {f->a->a, pnot(f->a->b)});
      else
        return false;
      return same_set(want, t.children[0].set) && check_node(l, t.children[0]);
    }
    case Rule::Beta: {
      PF f = t.principal;
      if (!f || !member(s, f) || t.children.size() != 2) return false;
      std::vector<PF> left, right;
      if (f->kind == PKind::Or) {
        left = plus(s, {f->a});
        right = plus(s, {f->b});
      } else if (f->kind == PKind::Imp) {
        left = plus(s, {pnot(f->a)});
        right = plus(s, {f->b});
      } else if (f->kind == PKind::Iff) {
        left = plus(s, {f->a, f->b});
        right = plus(s, {pnot(f->a), pnot(f->b)});
      } else if (f->kind == PKind::Not && f->a->kind == PKind::And) {
        left = plus(s, {pnot(f->a->a)});
        right = plus(s, {pnot(f->a->b)});
      } else if (f->kind == PKind::Not && f->a->kind == PKind::Iff) {
        left = plus(s, {f->a->a, pnot(f->a->b)});
        right = plus(s, {pnot(f->a->a), f->a->b});
      } else {
        return false;
      }
      return same_set(left, t.children[0].set) && same_set(right, t.children[1].set) &&
             check_node(l, t.children[0]) && check_node(l, t.children[1]);
    }
    case Rule::Reflect: {
      PF f = t.principal;
      if (l != ModalLogic::KT && l != ModalLogic::S4) return false;
      if (!f || f->kind != PKind::Box || !member(s, f) || t.children.size() != 1) return false;
      return same_set(plus(s, {f->a}), t.children[0].set) && check_node(l, t.children[0]);
    }
    case Rule::Modal: {
      PF f = t.principal;
      if (!f || f->kind != PKind::Not || f->a->kind != PKind::Box || !member(s, f) || t.children.size() != 1)
        return false;
      PF a = f->a->a;
      std::vector<PF> want{pnot(a)};
      if (l == ModalLogic::GL) want.push_back(f->a);
      bool keep_boxes = l == ModalLogic::K4 || l == ModalLogic::S4 || l == ModalLogic::GL;
      for (PF g : s)
        if (g->kind == PKind::Box) {
          want.push_back(g->a);
          if (keep_boxes) want.push_back(g);
        }
      return same_set(want, t.children[0].set) && check_node(l, t.children[0]);
    }
  }
  return false;
}

}  // namespace

bool verify_certificate(ModalLogic l, PF a, const ClosedTableau& t) {
  if (!tableau_logic(l)) return false;
  return same_set(t.set, {pnot(a)}) && check_node(l, t);
}

bool verify(ModalLogic l, PF a, const Decision& d) {
  if (d.provable) {
    if (d.countermodel) return false;
    if (tableau_logic(l)) return d.certificate && verify_certificate(l, a, *d.certificate);
    // every one-world frame of the logic, every valuation
    auto vars = prop_vars(a);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
      KripkeModel m;
      m.resize(1);
      m.r[0][0] = l == ModalLogic::Triv;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (mask >> i & 1) m.val[0].push_back(vars[i]);
      if (!holds(m, 0, a)) return false;
    }
    return true;
  }
  if (!d.countermodel) return false;
  auto& m = *d.countermodel;
  return m.worlds > 0 && frame_ok(l, m) && !holds(m, 0, a);
}

// ---------------------------------------------------------------------------
// Modal disjunction scan

std::vector<PF> enumerate_formulas(std::size_t size, std::size_t vars) {
  static const char* names[] = {"p", "q", "r", "s"};
  std::vector<std::vector<PF>> by_size(size + 1);
  if (size == 0) return {};
  for (std::size_t i = 0; i < vars; ++i)
    by_size[1].push_back(pvar(i < 4 ? names[i] : "p" + std::to_string(i)));
  by_size[1].push_back(pbot());
  for (std::size_t n = 2; n <= size; ++n) {
    for (PF a : by_size[n - 1]) {
      by_size[n].push_back(pnot(a));
      by_size[n].push_back(pbox(a));
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
      for (PF a : by_size[i])
        for (PF b : by_size[n - 1 - i]) {
          by_size[n].push_back(pand(a, b));
          by_size[n].push_back(por(a, b));
          by_size[n].push_back(pimp(a, b));
        }
  }
  std::vector<PF> out;
  for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

namespace {

// Truth of a formula at every point of a fixed sample of finite models of the
// logic. Equal sampled truth is necessary for equivalence, full truth for
// provability.
class Sample {
 public:
  using Bits = std::vector<std::uint64_t>;

  Sample(ModalLogic l, std::size_t vars) {
    std::size_t max_worlds = 3;
    while (max_worlds > 1 && estimate(l, max_worlds, vars) > 16384) --max_worlds;
    for (std::size_t n = 1; n <= max_worlds; ++n) add_frames(l, n, vars);
    words_ = (succ_.size() + 63) / 64;
  }

  Bits var(std::size_t i) const {
    Bits b(words_, 0);
    for (std::size_t p = 0; p < succ_.size(); ++p)
      if (val_[p] >> i & 1) set(b, p);
    return b;
  }
  Bits bot() const { return Bits(words_, 0); }
  Bits neg(const Bits& a) const {
    Bits b(words_);
    for (std::size_t i = 0; i < words_; ++i) b[i] = ~a[i];
    trim(b);
    return b;
  }
  Bits both(const Bits& a, const Bits& c) const {
    Bits b(words_);
    for (std::size_t i = 0; i < words_; ++i) b[i] = a[i] & c[i];
    return b;
  }
  Bits either(const Bits& a, const Bits& c) const {
    Bits b(words_);
    for (std::size_t i = 0; i < words_; ++i) b[i] = a[i] | c[i];
    return b;
  }
  Bits implies(const Bits& a, const Bits& c) const { return either(neg(a), c); }
  Bits box(const Bits& a) const {
    Bits b(words_, 0);
    for (std::size_t p = 0; p < succ_.size(); ++p) {
      bool ok = true;
      for (auto q : succ_[p])
        if (!(a[q / 64] >> (q % 64) & 1)) {
          ok = false;
          break;
        }
      if (ok) set(b, p);
    }
    return b;
  }
  bool full(const Bits& a) const { return a == neg(bot()); }

 private:
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::uint64_t> val_;
  std::size_t words_ = 0;

  static void set(Bits& b, std::size_t p) { b[p / 64] |= std::uint64_t{1} << (p % 64); }

  void trim(Bits& b) const {
    auto extra = words_ * 64 - succ_.size();
    if (extra && words_) b.back() &= ~std::uint64_t{0} >> extra;
  }

  static std::size_t estimate(ModalLogic l, std::size_t n, std::size_t vars) {
    std::size_t frames = 0;
    for_frames(l, n, [&](const KripkeModel&) { ++frames; });
    return frames * n * (std::size_t{1} << (n * vars));
  }

  template <class F>
  static void for_frames(ModalLogic l, std::size_t n, F&& f) {
    KripkeModel m;
    m.resize(n);
    for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << (n * n)); ++rel) {
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) m.r[u][v] = rel >> (u * n + v) & 1;
      if (frame_ok(l, m)) f(m);
    }
  }

  void add_frames(ModalLogic l, std::size_t n, std::size_t vars) {
    for_frames(l, n, [&](const KripkeModel& m) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << (n * vars)); ++v) {
        auto base = succ_.size();
        for (std::size_t u = 0; u < n; ++u) {
          std::vector<std::size_t> s;
          for (std::size_t w = 0; w < n; ++w)
            if (m.r[u][w]) s.push_back(base + w);
          succ_.push_back(std::move(s));
          val_.push_back(v >> (u * vars) & ((std::uint64_t{1} << vars) - 1));
        }
      }
    });
  }
};

struct BitsHash {
  std::size_t operator()(const Sample::Bits& b) const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : b) h = (h ^ w) * 1099511628211ull;
    return h;
  }
};

}  // namespace

MdpReport mdp_scan(ModalLogic l, std::size_t size, std::size_t vars) {
  MdpReport rep;
  auto formulas = enumerate_formulas(size, vars);
  rep.formulas = formulas.size();
  Sample sample(l, vars);

  std::unordered_map<std::uint32_t, Sample::Bits> truth;
  std::vector<std::string> var_names;
  for (std::size_t i = 0; i < vars; ++i) var_names.push_back(to_string(formulas[i]));
  auto bits_of = [&](PF f) -> const Sample::Bits& {
    auto it = truth.find(f->id);
    if (it != truth.end()) return it->second;
    Sample::Bits b;
    switch (f->kind) {
      case PKind::Var:
        b = sample.var(std::find(var_names.begin(), var_names.end(), f->name) - var_names.begin());
        break;
      case PKind::Bot: b = sample.bot(); break;
      case PKind::Not: b = sample.neg(truth.at(f->a->id)); break;
      case PKind::Box: b = sample.box(truth.at(f->a->id)); break;
      case PKind::And: b = sample.both(truth.at(f->a->id), truth.at(f->b->id)); break;
      case PKind::Or: b = sample.either(truth.at(f->a->id), truth.at(f->b->id)); break;
      case PKind::Imp: b = sample.implies(truth.at(f->a->id), truth.at(f->b->id)); break;
      case PKind::Iff: b = sample.neg(sample.either(sample.both(truth.at(f->a->id), sample.neg(truth.at(f->b->id))),
                                                    sample.both(truth.at(f->b->id), sample.neg(truth.at(f->a->id)))));
        break;
    }
    return truth.emplace(f->id, std::move(b)).first->second;
  };

  auto prove = [&](PF f) {
    ++rep.decider_calls;
    return provable(l, f);
  };

  // one representative per provable-equivalence class
  std::unordered_map<Sample::Bits, std::vector<PF>, BitsHash> buckets;
  std::vector<PF> reps;
  for (PF f : formulas) {
    auto& b = bits_of(f);
    auto& bucket = buckets[b];
    bool found = false;
    for (PF r : bucket)
      if (prove(piff(f, r))) {
        found = true;
        break;
      }
    if (!found) {
      bucket.push_back(f);
      reps.push_back(f);
    }
  }
  rep.classes = reps.size();

  std::vector<PF> open;
  std::vector<Sample::Bits> boxed;
  for (PF r : reps) {
    if (sample.full(bits_of(r)) && prove(r)) continue;
    open.push_back(r);
    boxed.push_back(sample.box(bits_of(r)));
  }
  rep.unprovable_classes = open.size();

  for (std::size_t i = 0; i < open.size(); ++i)
    for (std::size_t j = i; j < open.size(); ++j) {
      ++rep.pairs;
      if (!sample.full(sample.either(boxed[i], boxed[j]))) continue;
      if (prove(por(pbox(open[i]), pbox(open[j])))) rep.violations.emplace_back(open[i], open[j]);
    }
  return rep;
}

}  // namespace boxarith::modal
