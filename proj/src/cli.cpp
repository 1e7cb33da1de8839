#include "boxarith/cli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include "boxarith/classes.hpp"
#include "boxarith/coding.hpp"
#include "boxarith/constructions.hpp"
#include "boxarith/eval.hpp"
#include "boxarith/kernel.hpp"
#include "boxarith/modalprop.hpp"
#include "boxarith/translate.hpp"

namespace boxarith::cli {

namespace {

// Text mode prints results bare and fields as "key: value"; machine mode
// prints every line as key=value.
class Out {
 public:
  Out(std::ostream& os, Format f) : os_(os), f_(f) {}

  void result(const std::string& key, const std::string& value) {
    if (f_ == Format::Machine)
      os_ << key << '=' << value << '\n';
    else
      os_ << value << '\n';
  }
  void field(const std::string& key, const std::string& value) {
    if (f_ == Format::Machine)
      os_ << key << '=' << value << '\n';
    else
      os_ << key << ": " << value << '\n';
  }
  void detail(const std::string& key, const std::string& value) {
    if (f_ == Format::Machine) os_ << key << '=' << value << '\n';
  }

 private:
  std::ostream& os_;
  Format f_;
};

class FileLock {
 public:
  explicit FileLock(const std::string& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw DomainError("cannot open lock file " + path);
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw DomainError("cannot lock " + path);
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

// Registry and store loaded for one command, written back afterwards.
struct Session {
  CliConfig cfg;
  std::unique_ptr<FileLock> lock;
  std::unique_ptr<Registry> reg;
  std::unique_ptr<TheoremStore> store;

  explicit Session(CliConfig c) : cfg(std::move(c)) {
    if (cfg.journal.empty() && !cfg.store.empty()) cfg.journal = cfg.store + ".journal";
    auto anchor = !cfg.store.empty() ? cfg.store : cfg.journal;
    if (!anchor.empty()) lock = std::make_unique<FileLock>(anchor + ".lock");
    if (!cfg.journal.empty() && std::filesystem::exists(cfg.journal))
      reg = std::make_unique<Registry>(Registry::load_journal(cfg.journal));
    else
      reg = std::make_unique<Registry>();
    if (!cfg.store.empty() && std::filesystem::exists(cfg.store))
      store = std::make_unique<TheoremStore>(TheoremStore::load(*reg, cfg.store));
    else
      store = std::make_unique<TheoremStore>(*reg);
  }

  void save() const {
    if (!cfg.journal.empty()) reg->save_journal(cfg.journal);
    if (!cfg.store.empty()) store->save(cfg.store);
  }
};

Logic parse_logic(const std::string& tag) {
  auto l = logic_from_tag(tag);
  if (!l) throw CLI::ValidationError("--theory", "unknown theory " + tag);
  return *l;
}

TheoryId theory_of(const CliConfig& cfg, const std::vector<std::string>& extra) {
  TheoryId t;
  t.base = parse_logic(cfg.theory);
  for (auto& e : extra) t.extra.push_back(parse_formula(e));
  return t;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string world_line(const modal::KripkeModel& m, std::size_t w) {
  std::vector<std::string> succ;
  for (std::size_t v = 0; v < m.worlds; ++v)
    if (m.r[w][v]) succ.push_back("w" + std::to_string(v));
  return "{" + join(m.val[w], ",") + "} -> {" + join(succ, ",") + "}";
}

std::size_t tableau_nodes(const modal::ClosedTableau& t) {
  std::size_t n = 1;
  for (auto& c : t.children) n += tableau_nodes(c);
  return n;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Modal arithmetic workbench", "boxarith"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--store", cfg.store, "theorem store file")->envname("BOXARITH_STORE");
  app.add_option("--journal", cfg.journal, "registry journal file");
  app.add_option("--theory", cfg.theory, "theory tag");
  app.add_option("--budget", cfg.budget, "search budget");
  std::vector<std::string> extra;
  app.add_option("--extra", extra, "extra axiom sentence")->allow_extra_args(false);

  std::function<void(Session&, Out&)> action;
  auto needs_sentence = [](const Formula& f) {
    if (!is_sentence(f)) throw DomainError("expected a sentence: " + to_string(f));
  };

  // classify
  std::string text;
  auto* classify_cmd = app.add_subcommand("classify", "syntactic classes of a formula");
  classify_cmd->add_option("formula", text)->required();
  classify_cmd->callback([&] {
    action = [&](Session&, Out& o) { o.result("class", classify(parse_formula(text)).to_string()); };
  });

  // normalize
  std::string rule;
  auto* normalize_cmd = app.add_subcommand("normalize", "normal forms");
  normalize_cmd->add_option("--rule", rule)
      ->required()
      ->check(CLI::IsMember({"possigma1", "s2d", "boxes", "minus", "star"}));
  normalize_cmd->add_option("formula", text)->required();
  normalize_cmd->callback([&] {
    action = [&](Session& s, Out& o) {
      auto f = parse_formula(text);
      if (rule == "possigma1") {
        o.result("formula", to_string(positive_sigma1_form(f)));
      } else if (rule == "s2d") {
        auto r = sigma_b_to_exists_delta_b(f);
        o.result("formula", to_string(some(r.v, r.psi)));
        o.detail("var", r.v);
        o.detail("matrix", to_string(r.psi));
      } else if (rule == "boxes") {
        needs_sentence(f);
        auto psis = delta_b_sentence_to_boxes(f, s.reg.get());
        std::vector<Formula> boxes;
        for (auto& p : psis) boxes.push_back(box(p));
        o.result("formula", to_string(big_or(boxes)));
        o.detail("k", std::to_string(psis.size()));
        for (std::size_t i = 0; i < psis.size(); ++i) o.detail("psi" + std::to_string(i), to_string(psis[i]));
      } else if (rule == "minus") {
        o.result("formula", to_string(minus(f)));
      } else {
        auto r = star(f);
        o.result("formula", to_string(r.psi));
        o.detail("fresh", join(r.fresh, ","));
      }
    };
  });

  // translate
  std::string mode;
  auto* translate_cmd = app.add_subcommand("translate", "box-free translations");
  translate_cmd->add_option("--mode", mode)
      ->required()
      ->check(CLI::IsMember({"alpha", "beta", "pi", "piprime", "rho"}));
  translate_cmd->add_option("formula", text)->required();
  translate_cmd->callback([&] {
    action = [&](Session& s, Out& o) {
      auto f = parse_formula(text);
      Formula r;
      if (mode == "alpha")
        r = alpha(f);
      else if (mode == "beta")
        r = beta(f);
      else
        r = pr_translate({*pr_mode_from_tag(mode), parse_logic(s.cfg.theory)}, f, *s.reg);
      o.result("formula", to_string(r));
    };
  });

  // diag
  std::vector<std::string> diag_vars, contexts;
  auto* diag_cmd = app.add_subcommand("diag", "simultaneous fixed points");
  diag_cmd->add_option("--var", diag_vars, "code variable per context")->required()->allow_extra_args(false);
  diag_cmd->add_option("contexts", contexts)->required();
  diag_cmd->callback([&] {
    action = [&](Session& s, Out& o) {
      if (diag_vars.size() != contexts.size()) throw DomainError("one --var per context");
      std::vector<Formula> ctx;
      for (auto& c : contexts) ctx.push_back(parse_formula(c));
      auto fp = fixed_points(*s.reg, ctx, diag_vars);
      for (std::size_t i = 0; i < fp.sentences.size(); ++i) {
        auto k = std::to_string(i);
        o.field("psi" + k, to_string(fp.sentences[i]));
        o.field("code" + k, std::to_string(fp.codes[i]));
      }
    };
  });

  // eval
  std::string model = "triv";
  auto* eval_cmd = app.add_subcommand("eval", "standard-model evaluation");
  eval_cmd->add_option("--model", model)->check(CLI::IsMember({"triv", "ver", "prov"}));
  eval_cmd->add_option("formula", text)->required();
  eval_cmd->callback([&] {
    action = [&](Session& s, Out& o) {
      auto f = parse_formula(text);
      needs_sentence(f);
      Model m;
      m.flavor = model == "triv" ? Flavor::Triv : model == "ver" ? Flavor::Ver : Flavor::Prov;
      m.budget = s.cfg.budget;
      m.theory = theory_of(s.cfg, extra);
      m.registry = s.reg.get();
      o.result("value", to_string(eval_sentence(f, m)));
    };
  });

  // prove
  auto* prove_cmd = app.add_subcommand("prove", "synthesize a proof of a true Sigma(B) sentence");
  prove_cmd->add_option("formula", text)->required();
  prove_cmd->callback([&] {
    action = [&](Session& s, Out& o) {
      auto f = parse_formula(text);
      needs_sentence(f);
      if (!is_sigma_b(f)) throw DomainError("not a Sigma(B) sentence: " + to_string(f));
      auto t = theory_of(s.cfg, extra);
      auto p = prove_true_sigma_b(f, t, *s.reg, s.cfg.budget);
      if (!p) {
        o.result("result", "none");
        return;
      }
      auto [fc, pc] = s.store->record(t, *p);
      o.result("result", "proved");
      o.field("formula_code", std::to_string(fc));
      o.field("proof_code", std::to_string(pc));
      o.detail("proof", to_string(*p));
    };
  });

  // check
  auto* check_cmd = app.add_subcommand("check", "check a proof");
  check_cmd->add_option("proof", text)->required();
  check_cmd->callback([&] {
    action = [&](Session& s, Out& o) {
      auto v = check_proof(theory_of(s.cfg, extra), parse_proof(text), *s.reg);
      o.result("result", v.ok ? "accepted" : "rejected");
      if (!v.ok) {
        o.field("line", std::to_string(v.line));
        o.field("message", v.message);
      }
    };
  });

  // store
  std::string store_action;
  int horizon = 1;
  auto* store_cmd = app.add_subcommand("store", "theorem store management");
  store_cmd->add_option("action", store_action)
      ->required()
      ->check(CLI::IsMember({"list", "record", "nec-close", "box-elim-close", "audit"}));
  store_cmd->add_option("proof", text);
  store_cmd->add_option("--horizon", horizon, "modal depth bound for nec-close");
  store_cmd->callback([&] {
    action = [&](Session& s, Out& o) {
      if (s.cfg.store.empty()) throw DomainError("no store given (--store or BOXARITH_STORE)");
      auto t = theory_of(s.cfg, extra);
      if (store_action == "list") {
        for (auto& [fc, pc] : s.store->entries(t))
          o.result("entry", std::to_string(fc) + " " + std::to_string(pc) + " " +
                                to_string(s.reg->decode_formula(fc)));
      } else if (store_action == "record") {
        if (text.empty()) throw DomainError("record needs a proof");
        auto [fc, pc] = s.store->record(t, parse_proof(text));
        o.field("formula_code", std::to_string(fc));
        o.field("proof_code", std::to_string(pc));
      } else if (store_action == "nec-close") {
        s.store->nec_close(t, horizon);
        o.field("entries", std::to_string(s.store->entries(t).size()));
      } else if (store_action == "box-elim-close") {
        s.store->box_elim_close(t);
        o.field("entries", std::to_string(s.store->entries(t).size()));
      } else {
        o.field("entries", std::to_string(s.store->entries(t).size()));
        o.field("nec_horizon", std::to_string(s.store->nec_horizon(t)));
        o.field("box_elim_closed", s.store->box_elim_closed(t) ? "true" : "false");
      }
    };
  });

  // gallery
  std::string kind, delta_text, phi_text;
  std::vector<std::string> psi_texts;
  auto* gallery_cmd = app.add_subcommand("gallery", "self-referential sentences");
  gallery_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember(gallery_kinds()));
  gallery_cmd->add_option("--delta", delta_text, "Delta0 formula with one free variable");
  gallery_cmd->add_option("--phi", phi_text);
  gallery_cmd->add_option("--psi", psi_texts)->allow_extra_args(false);
  gallery_cmd->callback([&] {
    action = [&](Session& s, Out& o) {
      auto thy = parse_logic(s.cfg.theory);
      auto need = [](const std::string& t, const char* what) {
        if (t.empty()) throw DomainError(std::string("gallery kind needs --") + what);
        return parse_formula(t);
      };
      Gallery g;
      if (kind == "godel_sentence") {
        g = godel_sentence(*s.reg, thy);
      } else if (kind == "lemma42_pair") {
        g = lemma42_pair(*s.reg, thy, need(delta_text, "delta"), need(phi_text, "phi"));
      } else if (kind == "prop44_pair") {
        g = prop44_pair(*s.reg, thy, need(delta_text, "delta"));
      } else if (kind == "prop47_xi") {
        std::vector<Formula> psis;
        for (auto& p : psi_texts) psis.push_back(parse_formula(p));
        g = prop47_xi(*s.reg, thy, need(delta_text, "delta"), psis);
      } else if (kind == "prop52_sigma") {
        g = prop52_sigma(*s.reg, thy, need(delta_text, "delta"), need(phi_text, "phi"));
      } else if (kind == "thm56_psi") {
        g = thm56_psi(*s.reg, thy, need(phi_text, "phi"));
      } else {
        g = wmt_instance(*s.reg, thy, need(phi_text, "phi"));
      }
      for (auto& e : g.entries) {
        o.field(e.name, to_string(e.sentence));
        o.field(e.name + ".code", std::to_string(e.code));
      }
    };
  });

  // audits
  std::string psi_text;
  auto report = [](Out& o, const DpReport& r) {
    o.result("verdict", to_string(r.verdict));
    o.field("box_elim_closed", r.box_elim_closed ? "true" : "false");
    if (r.proof) o.field("proof_code", std::to_string(*r.proof));
  };
  auto* dp_cmd = app.add_subcommand("audit-dp", "disjunction property evidence");
  dp_cmd->add_option("phi", phi_text)->required();
  dp_cmd->add_option("psi", psi_text)->required();
  dp_cmd->callback([&] {
    action = [&](Session& s, Out& o) {
      report(o, check_dp(*s.store, theory_of(s.cfg, extra), parse_formula(phi_text), parse_formula(psi_text),
                         s.cfg.budget));
    };
  });
  auto* dc_cmd = app.add_subcommand("audit-dc", "disjunctive correctness evidence");
  dc_cmd->add_option("phi", phi_text)->required();
  dc_cmd->callback([&] {
    action = [&](Session& s, Out& o) {
      report(o, check_dc(*s.store, theory_of(s.cfg, extra), parse_formula(phi_text), s.cfg.budget));
    };
  });

  // modal deciders
  std::string logic = "gl";
  std::vector<std::string> modal_tags;
  for (auto l : modal::modal_logics()) modal_tags.push_back(modal::logic_tag(l));
  auto* decide_cmd = app.add_subcommand("decide", "propositional modal provability");
  decide_cmd->add_option("--logic", logic)->check(CLI::IsMember(modal_tags));
  decide_cmd->add_option("formula", text)->required();
  decide_cmd->callback([&] {
    action = [&](Session&, Out& o) {
      auto l = *modal::modal_logic_from_tag(logic);
      auto a = modal::parse_prop(text);
      auto d = modal::decide(l, a);
      o.result("result", d.provable ? "provable" : "unprovable");
      o.field("verified", modal::verify(l, a, d) ? "true" : "false");
      if (d.certificate) o.field("tableau_nodes", std::to_string(tableau_nodes(*d.certificate)));
      if (d.countermodel) {
        o.field("worlds", std::to_string(d.countermodel->worlds));
        for (std::size_t w = 0; w < d.countermodel->worlds; ++w)
          o.field("w" + std::to_string(w), world_line(*d.countermodel, w));
      }
    };
  });

  std::size_t size = 5, vars = 1;
  auto* scan_cmd = app.add_subcommand("scan-mdp", "exhaustive modal disjunction scan");
  scan_cmd->add_option("--logic", logic)->check(CLI::IsMember(modal_tags));
  scan_cmd->add_option("--size", size);
  scan_cmd->add_option("--vars", vars)->check(CLI::Range(0, 4));
  scan_cmd->callback([&] {
    action = [&](Session&, Out& o) {
      auto r = modal::mdp_scan(*modal::modal_logic_from_tag(logic), size, vars);
      o.field("formulas", std::to_string(r.formulas));
      o.field("classes", std::to_string(r.classes));
      o.field("unprovable_classes", std::to_string(r.unprovable_classes));
      o.field("pairs", std::to_string(r.pairs));
      o.field("decider_calls", std::to_string(r.decider_calls));
      o.field("violations", std::to_string(r.violations.size()));
      for (auto& [a, b] : r.violations)
        o.field("violation", to_string(modal::por(modal::pbox(a), modal::pbox(b))));
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  cfg.format = format == "machine" ? Format::Machine : Format::Text;

  try {
    if (!logic_from_tag(cfg.theory)) throw CLI::ValidationError("--theory", "unknown theory " + cfg.theory);
    Session s(cfg);
    std::ostringstream buf;
    Out o(buf, cfg.format);
    action(s, o);
    s.save();
    out << buf.str();
    return 0;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace boxarith::cli
