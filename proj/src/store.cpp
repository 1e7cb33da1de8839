#include <filesystem>
#include <fstream>
#include <sstream>

#include "boxarith/kernel.hpp"

namespace boxarith {

namespace {
constexpr const char* kStoreMagic = "boxarithstore v1";
}

void TheoremStore::insert(const std::string& key, std::size_t f, std::size_t p) { buckets_[key].insert({f, p}); }

std::pair<std::size_t, std::size_t> TheoremStore::record(const TheoryId& t, const Proof& p) {
  auto v = check_proof(t, p, *reg_);
  if (!v.ok) throw DomainError("proof rejected at line " + std::to_string(v.line) + ": " + v.message);
  auto fc = reg_->code_of(p.conclusion());
  auto pc = reg_->code_of(p);
  auto k = key(t);
  reg_->set_verdict(k, pc, true);
  insert(k, fc, pc);
  return {fc, pc};
}

std::optional<std::size_t> TheoremStore::proof_of(const TheoryId& t, const Formula& f) const {
  auto fc = reg_->find(f);
  if (!fc) return std::nullopt;
  auto it = buckets_.find(key(t));
  if (it == buckets_.end()) return std::nullopt;
  auto e = it->second.lower_bound({*fc, 0});
  if (e == it->second.end() || e->first != *fc) return std::nullopt;
  return e->second;
}

std::vector<std::pair<std::size_t, std::size_t>> TheoremStore::entries(const TheoryId& t) const {
  auto it = buckets_.find(key(t));
  if (it == buckets_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::vector<std::string> TheoremStore::theory_keys() const {
  std::vector<std::string> out;
  for (auto& [k, _] : buckets_) out.push_back(k);
  return out;
}

std::size_t TheoremStore::size() const {
  std::size_t n = 0;
  for (auto& [_, b] : buckets_) n += b.size();
  return n;
}

void TheoremStore::nec_close(const TheoryId& t, int horizon) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [fc, pc] : entries(t)) {
      auto f = reg_->decode_formula(fc);
      if (modal_depth(f) >= horizon || proof_of(t, box(f))) continue;
      ProofBuilder b;
      auto l = b.nec(b.cite(pc, f));
      record(t, b.finish(l));
      changed = true;
    }
  }
}

void TheoremStore::box_elim_close(const TheoryId& t) {
  if (!has_scheme(t.base, "T")) throw DomainError("box elimination closure needs scheme T");
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [fc, pc] : entries(t)) {
      auto f = reg_->decode_formula(fc);
      if (f->kind != FKind::Box || proof_of(t, f->a)) continue;
      ProofBuilder b;
      auto c = b.cite(pc, f);
      auto l = b.mp(c, b.axiom(imp(f, f->a), "T"));
      record(t, b.finish(l));
      changed = true;
    }
  }
}

int TheoremStore::nec_horizon(const TheoryId& t) const {
  int h = -1;
  for (auto [fc, pc] : entries(t)) {
    auto f = reg_->decode_formula(fc);
    if (proof_of(t, box(f))) continue;
    int d = modal_depth(f);
    if (h < 0 || d < h) h = d;
  }
  return h;
}

bool TheoremStore::nec_closed(const TheoryId& t, int horizon) const {
  int h = nec_horizon(t);
  return h < 0 || h >= horizon;
}

bool TheoremStore::box_elim_closed(const TheoryId& t) const {
  for (auto [fc, pc] : entries(t)) {
    auto f = reg_->decode_formula(fc);
    if (f->kind == FKind::Box && !proof_of(t, f->a)) return false;
  }
  return true;
}

std::string TheoremStore::serialize() const {
  std::ostringstream out;
  out << kStoreMagic << '\n';
  for (auto& [k, b] : buckets_)
    for (auto [f, p] : b) out << k << '\t' << f << '\t' << p << '\n';
  return out.str();
}

TheoremStore TheoremStore::parse(Registry& reg, std::string_view text) {
  TheoremStore s(reg);
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kStoreMagic) throw DomainError("not a boxarith store");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string k, f, p;
    if (!std::getline(ls, k, '\t') || !std::getline(ls, f, '\t') || !std::getline(ls, p))
      throw DomainError("malformed store record: " + line);
    std::size_t fc = std::stoull(f), pc = std::stoull(p);
    auto t = theory_from_key(k, reg);
    if (!reg.is_proof(pc) || !reg.is_formula(fc)) throw DomainError("store record refers to unknown codes");
    auto& proof = reg.decode_proof(pc);
    if (!equal(proof.conclusion(), reg.decode_formula(fc))) throw DomainError("store record is inconsistent");
    auto v = check_proof(t, proof, reg);
    if (!v.ok) throw DomainError("stored proof " + p + " does not check: " + v.message);
    reg.set_verdict(k, pc, true);
    s.insert(k, fc, pc);
  }
  return s;
}

void TheoremStore::save(const std::string& path) const {
  auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + tmp);
    out << serialize();
  }
  std::filesystem::rename(tmp, path);
}

TheoremStore TheoremStore::load(Registry& reg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(reg, ss.str());
}

}  // namespace boxarith
