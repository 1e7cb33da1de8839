#include "boxarith/coding.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "boxarith/eval.hpp"

namespace boxarith {

namespace {

constexpr const char* kJournalMagic = "boxarith-journal v1";

std::string formula_key(const Formula& f) { return "F" + to_string(f); }
std::string proof_key(const Proof& p) { return "P" + to_string(p); }

std::size_t as_index(const Nat& n, std::size_t size) {
  if (n < 0 || n >= Nat(size)) throw DomainError("code " + n.str() + " is not bound");
  return static_cast<std::size_t>(n);
}

}  // namespace

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Registry::Registry() : mu_(std::make_unique<std::mutex>()) {}
Registry::Registry(Registry&&) noexcept = default;
Registry& Registry::operator=(Registry&&) noexcept = default;

std::size_t Registry::intern(std::string key, Object obj) {
  std::lock_guard<std::mutex> lock(*mu_);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  std::size_t i = table_.size();
  table_.emplace_back(std::move(obj));
  texts_.push_back(key);
  index_.emplace(std::move(key), i);
  return i;
}

std::size_t Registry::code_of(const Formula& f) { return intern(formula_key(f), f); }
std::size_t Registry::code_of(const Proof& p) { return intern(proof_key(p), p); }

std::optional<std::size_t> Registry::find(const Formula& f) const {
  auto it = index_.find(formula_key(f));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Registry::find(const Proof& p) const {
  auto it = index_.find(proof_key(p));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Registry::Object& Registry::decode(const Nat& n) const {
  auto i = as_index(n, table_.size());
  if (!table_[i]) throw DomainError("code " + n.str() + " is reserved but unbound");
  return *table_[i];
}

Formula Registry::decode_formula(const Nat& n) const {
  auto& o = decode(n);
  if (auto f = std::get_if<Formula>(&o)) return *f;
  throw DomainError("code " + n.str() + " is a proof, not a formula");
}

const Proof& Registry::decode_proof(const Nat& n) const {
  auto& o = decode(n);
  if (auto p = std::get_if<Proof>(&o)) return *p;
  throw DomainError("code " + n.str() + " is a formula, not a proof");
}

bool Registry::is_formula(const Nat& n) const {
  if (n < 0 || n >= Nat(table_.size())) return false;
  auto& o = table_[static_cast<std::size_t>(n)];
  return o && std::holds_alternative<Formula>(*o);
}

bool Registry::is_proof(const Nat& n) const {
  if (n < 0 || n >= Nat(table_.size())) return false;
  auto& o = table_[static_cast<std::size_t>(n)];
  return o && std::holds_alternative<Proof>(*o);
}

std::size_t Registry::reserve() {
  std::lock_guard<std::mutex> lock(*mu_);
  table_.emplace_back(std::nullopt);
  texts_.emplace_back();
  return table_.size() - 1;
}

void Registry::bind(std::size_t h, const Formula& f) {
  std::lock_guard<std::mutex> lock(*mu_);
  if (h >= table_.size() || table_[h]) throw DomainError("handle " + std::to_string(h) + " is not an open reservation");
  auto key = formula_key(f);
  if (index_.count(key))
    throw DomainError("fixed point " + to_string(f) + " already has code " + std::to_string(index_.at(key)));
  table_[h] = f;
  texts_[h] = key;
  index_.emplace(std::move(key), h);
}

std::size_t Registry::unbound_count() const {
  std::size_t n = 0;
  for (auto& o : table_) n += !o;
  return n;
}

std::optional<bool> Registry::verdict(const std::string& key, std::size_t index) const {
  auto it = verdicts_.find({key, index});
  if (it == verdicts_.end()) return std::nullopt;
  return it->second;
}

void Registry::set_verdict(const std::string& key, std::size_t index, bool ok) {
  std::lock_guard<std::mutex> lock(*mu_);
  verdicts_[{key, index}] = ok;
}

std::string Registry::journal() const {
  if (unbound_count()) throw DomainError("registry has unbound reservations");
  std::string body;
  for (std::size_t i = 0; i < texts_.size(); ++i) {
    const auto& k = texts_[i];
    body += std::to_string(i);
    body += '\t';
    body += k[0] == 'F' ? "formula" : "proof";
    body += '\t';
    body.append(k, 1);
    body += '\n';
  }
  std::ostringstream head;
  head << kJournalMagic << '\t' << texts_.size() << '\t' << std::hex << std::setw(16)
       << std::setfill('0') << fnv1a(body) << '\n';
  return head.str() + body;
}

void Registry::save_journal(const std::string& path) const {
  auto text = journal();
  auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + tmp);
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

Registry Registry::replay(std::string_view text) {
  auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw DomainError("journal lacks a header");
  std::string head(text.substr(0, nl));
  std::string_view body = text.substr(nl + 1);
  std::istringstream hs(head);
  std::string magic1, magic2, hex;
  std::size_t count = 0;
  std::getline(hs, magic1, '\t');
  hs >> count >> hex;
  if (magic1 != kJournalMagic) throw DomainError("not a boxarith journal");
  std::ostringstream want;
  want << std::hex << std::setw(16) << std::setfill('0') << fnv1a(body);
  if (want.str() != hex) throw DomainError("journal checksum mismatch");
  Registry r;
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto end = body.find('\n', pos);
    if (end == std::string_view::npos) end = body.size();
    std::string_view line = body.substr(pos, end - pos);
    pos = end + 1;
    auto t1 = line.find('\t');
    auto t2 = line.find('\t', t1 + 1);
    if (t1 == std::string_view::npos || t2 == std::string_view::npos)
      throw DomainError("malformed journal line");
    std::size_t i = std::stoull(std::string(line.substr(0, t1)));
    auto kind = line.substr(t1 + 1, t2 - t1 - 1);
    auto payload = line.substr(t2 + 1);
    std::size_t got;
    if (kind == "formula") got = r.code_of(parse_formula(payload));
    else if (kind == "proof") got = r.code_of(parse_proof(payload));
    else throw DomainError("unknown journal record kind");
    if (got != i) throw DomainError("journal replay diverged at record " + std::to_string(i));
  }
  if (r.size() != count) throw DomainError("journal record count mismatch");
  return r;
}

Registry Registry::load_journal(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return replay(ss.str());
}

Nat code_sub_value(Registry& reg, const Term& t, const std::map<std::string, Nat>& env) {
  if (t->kind != TermKind::CodeSub) throw DomainError("not a code term");
  std::map<std::string, Term> m;
  for (auto& [k, s] : t->subst) m.emplace(k, num(eval_term(s, env, &reg)));
  return reg.code_of(substitute_all(t->coded, m));
}

FixedPoints fixed_points(Registry& reg, const std::vector<Formula>& contexts,
                         const std::vector<std::string>& vars,
                         const std::vector<DerivedSentence>& derived) {
  std::size_t k = contexts.size();
  if (vars.size() != k) throw DomainError("need one code variable per context");
  std::set<std::string> allowed(vars.begin(), vars.end());
  for (auto& d : derived) allowed.insert(d.var);
  if (allowed.size() != k + derived.size()) throw DomainError("code variables must be distinct");
  for (auto& c : contexts)
    for (auto& v : free_vars(c))
      if (!allowed.count(v)) throw DomainError("free variable " + v + " outside the declared list");

  FixedPoints out;
  out.sentences.resize(k);
  out.codes.resize(k);
  std::vector<bool> dependent(k);
  bool any_dependent = false;
  for (std::size_t i = 0; i < k; ++i) {
    dependent[i] = !free_vars(contexts[i]).empty();
    any_dependent |= dependent[i];
    if (!dependent[i]) {
      out.sentences[i] = contexts[i];
      out.codes[i] = reg.code_of(contexts[i]);
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    if (dependent[i]) out.codes[i] = reg.reserve();
  std::vector<std::size_t> dcodes(derived.size());
  if (any_dependent)
    for (auto& c : dcodes) c = reg.reserve();

  std::map<std::string, Term> m;
  for (std::size_t i = 0; i < k; ++i) m.emplace(vars[i], num(out.codes[i]));
  if (any_dependent)
    for (std::size_t j = 0; j < derived.size(); ++j) m.emplace(derived[j].var, num(dcodes[j]));

  for (std::size_t i = 0; i < k; ++i) {
    if (!dependent[i]) continue;
    out.sentences[i] = substitute_all(contexts[i], m);
    reg.bind(out.codes[i], out.sentences[i]);
  }
  for (std::size_t j = 0; j < derived.size(); ++j) {
    auto d = derived[j].build(out.sentences);
    out.derived.push_back(d);
    if (any_dependent) reg.bind(dcodes[j], d);
    else dcodes[j] = reg.code_of(d);
  }
  out.derived_codes = dcodes;
  return out;
}

Nat pair(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Nat, Nat> unpair(const Nat& z) {
  // largest w with w(w+1)/2 <= z
  Nat w = (boost::multiprecision::sqrt(Nat(8 * z + 1)) - 1) / 2;
  while (w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  Nat y = z - w * (w + 1) / 2;
  return {w - y, y};
}

Nat tuple(const std::vector<Nat>& xs) {
  if (xs.empty()) return 0;
  Nat acc = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = pair(xs[i], acc);
  return acc;
}

std::vector<Nat> untuple(const Nat& z, std::size_t n) {
  std::vector<Nat> out;
  if (n == 0) return out;
  Nat rest = z;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto [a, b] = unpair(rest);
    out.push_back(a);
    rest = b;
  }
  out.push_back(rest);
  return out;
}

}  // namespace boxarith
