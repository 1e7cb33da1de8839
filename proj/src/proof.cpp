#include "boxarith/proof.hpp"

#include <sstream>

namespace boxarith {

Justification Justification::axiom(std::string tag, std::string data) {
  Justification j;
  j.kind = JKind::Axiom;
  j.tag = std::move(tag);
  j.data = std::move(data);
  return j;
}

Justification Justification::extra(std::size_t i) {
  Justification j;
  j.kind = JKind::Extra;
  j.i = i;
  return j;
}

Justification Justification::mp(std::size_t minor, std::size_t major) {
  Justification j;
  j.kind = JKind::MP;
  j.i = minor;
  j.j = major;
  return j;
}

Justification Justification::gen(std::size_t i, std::string v) {
  Justification j;
  j.kind = JKind::Gen;
  j.i = i;
  j.var = std::move(v);
  return j;
}

Justification Justification::nec(std::size_t i) {
  Justification j;
  j.kind = JKind::Nec;
  j.i = i;
  return j;
}

Justification Justification::cited(std::size_t code) {
  Justification j;
  j.kind = JKind::Cited;
  j.i = code;
  return j;
}

const Formula& Proof::conclusion() const {
  if (lines.empty()) throw DomainError("empty proof has no conclusion");
  return lines.back().formula;
}

std::string to_string(const Justification& j) {
  switch (j.kind) {
    case JKind::Axiom: return "ax " + j.tag + (j.data.empty() ? "" : " " + j.data);
    case JKind::Extra: return "extra " + std::to_string(j.i);
    case JKind::MP: return "mp " + std::to_string(j.i) + " " + std::to_string(j.j);
    case JKind::Gen: return "gen " + std::to_string(j.i) + " " + j.var;
    case JKind::Nec: return "nec " + std::to_string(j.i);
    case JKind::Cited: return "cite " + std::to_string(j.i);
  }
  return "?";
}

std::string to_string(const Proof& p) {
  std::string out;
  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    if (k) out += " ; ";
    out += to_string(p.lines[k].just);
    out += " @ ";
    out += to_string(p.lines[k].formula);
  }
  return out;
}

static std::size_t to_index(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError("bad proof line reference '" + s + "'");
  return std::stoull(s);
}

static Justification parse_just(const std::string& text) {
  std::istringstream in(text);
  std::string head;
  in >> head;
  std::vector<std::string> args;
  for (std::string w; in >> w;) args.push_back(w);
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw DomainError("malformed justification '" + text + "'");
  };
  if (head == "ax") {
    if (args.empty() || args.size() > 2) throw DomainError("malformed justification '" + text + "'");
    return Justification::axiom(args[0], args.size() == 2 ? args[1] : "");
  }
  if (head == "extra") { need(1); return Justification::extra(to_index(args[0])); }
  if (head == "mp") { need(2); return Justification::mp(to_index(args[0]), to_index(args[1])); }
  if (head == "gen") { need(2); return Justification::gen(to_index(args[0]), args[1]); }
  if (head == "nec") { need(1); return Justification::nec(to_index(args[0])); }
  if (head == "cite") { need(1); return Justification::cited(to_index(args[0])); }
  throw DomainError("unknown justification '" + head + "'");
}

Proof parse_proof(std::string_view text) {
  Proof p;
  std::size_t start = 0;
  while (start < text.size() || (start == 0 && !text.empty())) {
    auto end = text.find(" ; ", start);
    auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    auto at = piece.find(" @ ");
    if (at == std::string_view::npos) throw DomainError("proof line lacks ' @ '");
    ProofLine line;
    line.just = parse_just(std::string(piece.substr(0, at)));
    line.formula = parse_formula(piece.substr(at + 3));
    p.lines.push_back(std::move(line));
    if (end == std::string_view::npos) break;
    start = end + 3;
  }
  return p;
}

}  // namespace boxarith
