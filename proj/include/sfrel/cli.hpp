#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfrel/closure.hpp"
#include "sfrel/decide.hpp"
#include "sfrel/format.hpp"
#include "sfrel/lindecomp.hpp"
#include "sfrel/maxlin.hpp"
#include "sfrel/system.hpp"
#include "sfrel/word.hpp"

namespace sfrel {

// Exit codes, sysexits-flavored: verdicts use 0/1/2, everything else is an
// error class. decide maps InSF/NotInSF/Indeterminate to 0/1/2; lin and
// verify-cert use 1 for a negative answer.
inline constexpr int kExitUsage = 64;     // bad flags or arguments
inline constexpr int kExitData = 65;      // unparseable or unsuitable input
inline constexpr int kExitNoInput = 66;   // unreadable file
inline constexpr int kExitInternal = 70;  // broken invariant

namespace cli_detail {

using json = nlohmann::ordered_json;

struct FileUnreadable : std::runtime_error {
  explicit FileUnreadable(const std::string& path)
      : std::runtime_error("cannot read file: " + path) {}
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileUnreadable(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline RewriteSystem load_system(const std::string& path) { return parse_system(slurp(path)); }

/// The structural pipeline needs a proper two-block analysis; anything else
/// is an input-suitability error for the commands that call this.
inline TauSystem load_tau(const RewriteSystem& sys) {
  if (classify(sys).kind != SystemKind::TwoBlock)
    throw std::invalid_argument("system is not two-block");
  auto analysis = analyze(sys);
  if (analysis.outcome != TwoBlockOutcome::ProperTwoBlock)
    throw std::invalid_argument("closure analysis is not proper two-block");
  return build_tau(analysis);
}

inline std::string join_words(const WordSet& ws) {
  std::string out;
  for (const Word& w : ws) {
    if (!out.empty()) out += ' ';
    out += to_string(w);
  }
  return out;
}

inline json words_json(const WordSet& ws) {
  json arr = json::array();
  for (const Word& w : ws) arr.push_back(to_string(w));
  return arr;
}

inline json words_json(const std::vector<Word>& ws) {
  json arr = json::array();
  for (const Word& w : ws) arr.push_back(to_string(w));
  return arr;
}

inline const char* to_string(TwoBlockOutcome o) {
  switch (o) {
    case TwoBlockOutcome::ProperTwoBlock: return "ProperTwoBlock";
    case TwoBlockOutcome::ReducedToOneBlock: return "ReducedToOneBlock";
    default: return "InfiniteOrUnknownClosure";
  }
}

inline const char* to_string(SystemKind k) {
  switch (k) {
    case SystemKind::Empty: return "Empty";
    case SystemKind::OneBlock: return "OneBlock";
    case SystemKind::TwoBlock: return "TwoBlock";
    default: return "General";
  }
}

inline json certificate_json(const LinearDecomposition& cert) {
  json j;
  j["blocks"] = words_json(cert.blocks);
  j["left"] = words_json(cert.left_margins);
  j["right"] = words_json(cert.right_margins);
  j["u"] = words_json(cert.right_witnesses);
  j["v"] = words_json(cert.left_witnesses);
  return j;
}

inline json stats_json(const DecisionStats& st) {
  return json{{"explored", st.explored}, {"expansions", st.expansions}, {"complete", st.complete}};
}

inline void render_decision(const Decision& d, bool as_json, std::ostream& out) {
  if (as_json) {
    json j;
    j["verdict"] = sfrel::to_string(d.verdict);
    if (d.witness) {
      json w;
      w["derivation"] = words_json(d.witness->derivation);
      json steps = json::array();
      for (const RewriteStep& s : d.witness->steps)
        steps.push_back({{"relation", s.relation}, {"position", s.position}, {"forward", s.forward}});
      w["steps"] = steps;
      w["square"] = {{"start", d.witness->square.prefix.size()},
                     {"half", sfrel::to_string(d.witness->square.half)}};
      j["witness"] = w;
    }
    if (!d.diagnostic.empty()) j["diagnostic"] = d.diagnostic;
    j["stats"] = stats_json(d.stats);
    out << j.dump(2) << "\n";
    return;
  }
  out << "verdict: " << sfrel::to_string(d.verdict) << "\n";
  if (d.witness) {
    out << "derivation:\n  " << sfrel::to_string(d.witness->derivation[0]) << "\n";
    for (std::size_t i = 0; i < d.witness->steps.size(); ++i) {
      const RewriteStep& s = d.witness->steps[i];
      out << "  -> " << sfrel::to_string(d.witness->derivation[i + 1]) << "  ["
          << (s.forward ? "forward" : "backward") << " relation " << s.relation << " at "
          << s.position << "]\n";
    }
    out << "square: half " << sfrel::to_string(d.witness->square.half) << " at "
        << d.witness->square.prefix.size() << "\n";
  }
  if (!d.diagnostic.empty()) out << "diagnostic: " << d.diagnostic << "\n";
  out << "explored: " << d.stats.explored << "\n";
  out << "expansions: " << d.stats.expansions << "\n";
  out << "complete: " << (d.stats.complete ? "true" : "false") << "\n";
}

}  // namespace cli_detail

/// Dispatches one command line (program name excluded). Writes results to
/// `out`, errors to `err`, and returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  namespace cd = cli_detail;
  using cd::json;

  CLI::App app{"square-freeness of words relative to a string-rewriting system"};
  app.name("sfrel");
  app.require_subcommand(1);

  std::string system_path, word_text, cert_path, dot_path;
  std::size_t budget = kDefaultDecisionBudget;
  std::size_t closure_budget = 10'000;
  std::size_t order = 0;
  std::size_t length = 0;
  bool as_json = false;

  auto add_common = [&](CLI::App* cmd, bool with_word) {
    cmd->add_option("system", system_path, "system file")->required();
    if (with_word) cmd->add_option("word", word_text, "word over the system's alphabet")->required();
    cmd->add_flag("--json", as_json, "machine-readable output");
    return cmd;
  };

  auto* c_classify = add_common(app.add_subcommand("classify", "block structure of a system"), false);
  auto* c_decide = add_common(app.add_subcommand("decide", "is every congruent word square-free"), true);
  c_decide->add_option("--budget", budget, "max distinct words explored");
  auto* c_class = add_common(app.add_subcommand("class", "enumerate the congruence class"), true);
  c_class->add_option("--budget", budget, "max distinct words enumerated");
  c_class->add_option("--dot", dot_path, "write the derivation graph to a DOT file");
  auto* c_closure = add_common(app.add_subcommand("closure", "two-block closure analysis"), false);
  c_closure->add_option("--budget", closure_budget, "max words per closure");
  auto* c_lin = add_common(app.add_subcommand("lin", "linear decomposition membership"), true);
  c_lin->add_option("--order", order, "max number of frames")->required();
  auto* c_linenum = add_common(app.add_subcommand("lin-enum", "list words of bounded order"), false);
  c_linenum->add_option("--order", order, "max number of frames")->required();
  auto* c_maxlin = add_common(app.add_subcommand("maxlin", "maximal decomposable occurrences"), true);
  c_maxlin->add_option("--order", order, "order bound on reported occurrences")->required();
  auto* c_tw = add_common(app.add_subcommand("tw", "structural bound on the congruence class"), true);
  c_tw->add_option("--budget", budget, "max distinct words for the class check");
  auto* c_gen = app.add_subcommand("gen", "square-free word over three letters");
  c_gen->add_option("--length", length, "word length")->required();
  c_gen->add_flag("--json", as_json, "machine-readable output");
  auto* c_verify = app.add_subcommand("verify-cert", "check a decomposition certificate");
  c_verify->add_option("system", system_path, "system file")->required();
  c_verify->add_option("certificate", cert_path, "certificate file")->required();
  c_verify->add_flag("--json", as_json, "machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*c_classify) {
      auto sys = cd::load_system(system_path);
      auto cls = classify(sys);
      if (as_json) {
        json blocks = json::array();
        for (const WordSet& b : sys.blocks()) blocks.push_back(cd::words_json(b));
        out << json{{"result", {{"kind", cd::to_string(cls.kind)}, {"blocks", blocks}}}}.dump(2)
            << "\n";
      } else {
        out << "kind: " << cd::to_string(cls.kind) << "\n";
        out << "blocks: " << cls.blocks << "\n";
        for (std::size_t i = 0; i < sys.blocks().size(); ++i)
          out << "block " << i + 1 << ": " << cd::join_words(sys.blocks()[i]) << "\n";
      }
      return 0;
    }

    if (*c_decide) {
      auto sys = cd::load_system(system_path);
      auto d = decide_sf_rel(parse_word(word_text, sys.alphabet()), sys, budget);
      cd::render_decision(d, as_json, out);
      switch (d.verdict) {
        case Verdict::InSF: return 0;
        case Verdict::NotInSF: return 1;
        default: return 2;
      }
    }

    if (*c_class) {
      auto sys = cd::load_system(system_path);
      Word w = parse_word(word_text, sys.alphabet());
      auto cls = enumerate_class(w, sys, budget);
      const char* status = cls.status == ClassStatus::Complete ? "complete" : "truncated";
      if (!dot_path.empty()) {
        std::ofstream dot(dot_path);
        if (!dot) throw cd::FileUnreadable(dot_path);
        dot << class_dot(w, sys, budget);
      }
      if (as_json) {
        json j;
        j["result"] = {{"status", status}, {"members", cd::words_json(cls.members)}};
        j["stats"] = {{"expansions", cls.expansions}};
        out << j.dump(2) << "\n";
      } else {
        out << "status: " << status << "\n";
        out << "size: " << cls.members.size() << "\n";
        out << "members:\n";
        for (const Word& m : cls.members) out << to_string(m) << "\n";
      }
      return 0;
    }

    if (*c_closure) {
      auto sys = cd::load_system(system_path);
      if (classify(sys).kind != SystemKind::TwoBlock)
        throw std::invalid_argument("closure analysis needs a two-block system");
      auto a = analyze(sys, closure_budget);
      auto side = [](const ClosureSet& c, bool closed) {
        std::string s = c.status == ClosureStatus::Finite ? "finite" : "budget-exceeded";
        s += closed ? ", self-closed" : ", not self-closed";
        return s;
      };
      if (as_json) {
        json j;
        j["result"] = {{"outcome", cd::to_string(a.outcome)},
                       {"sigma_block", cd::words_json(a.sigma_block)},
                       {"rho_block", cd::words_json(a.rho_block)},
                       {"sigma_closure", cd::words_json(a.sigma_closure.words)},
                       {"rho_closure", cd::words_json(a.rho_closure.words)},
                       {"sigma_status", side(a.sigma_closure, a.sigma_closed)},
                       {"rho_status", side(a.rho_closure, a.rho_closed)},
                       {"intersection", a.intersection_nonempty ? "nonempty" : "empty"}};
        if (a.merged) j["result"]["merged_relations"] = a.merged->relations().size();
        out << j.dump(2) << "\n";
      } else {
        out << "outcome: " << cd::to_string(a.outcome) << "\n";
        out << "sigma block: " << cd::join_words(a.sigma_block) << "\n";
        out << "rho block: " << cd::join_words(a.rho_block) << "\n";
        out << "sigma closure (" << side(a.sigma_closure, a.sigma_closed)
            << "): " << cd::join_words(a.sigma_closure.words) << "\n";
        out << "rho closure (" << side(a.rho_closure, a.rho_closed)
            << "): " << cd::join_words(a.rho_closure.words) << "\n";
        out << "intersection: " << (a.intersection_nonempty ? "nonempty" : "empty") << "\n";
        if (a.merged) out << "merged relations: " << a.merged->relations().size() << "\n";
      }
      return 0;
    }

    if (*c_lin) {
      auto sys = cd::load_system(system_path);
      auto tau = cd::load_tau(sys);
      if (order == 0) throw std::invalid_argument("--order must be positive");
      auto v = is_lin(parse_word(word_text, sys.alphabet()), order, tau);
      if (as_json) {
        json j;
        j["result"]["member"] = v.member;
        if (v.order) j["result"]["order"] = *v.order;
        if (v.certificate) j["result"]["certificate"] = cd::certificate_json(*v.certificate);
        out << j.dump(2) << "\n";
      } else {
        out << "member: " << (v.member ? "true" : "false") << "\n";
        if (v.order) out << "order: " << *v.order << "\n";
        if (v.certificate) out << "certificate:\n" << format_certificate(*v.certificate);
      }
      return v.member ? 0 : 1;
    }

    if (*c_linenum) {
      auto sys = cd::load_system(system_path);
      auto tau = cd::load_tau(sys);
      if (order == 0) throw std::invalid_argument("--order must be positive");
      auto words = lin_enumerate(order, tau);
      if (as_json) {
        out << json{{"result", {{"members", cd::words_json(words)}}}}.dump(2) << "\n";
      } else {
        for (const Word& w : words) out << to_string(w) << "\n";
      }
      return 0;
    }

    if (*c_maxlin) {
      auto sys = cd::load_system(system_path);
      auto tau = cd::load_tau(sys);
      auto occs = maximal_occurrences(parse_word(word_text, sys.alphabet()), order, tau);
      if (as_json) {
        json arr = json::array();
        for (const MaxLinOccurrence& o : occs)
          arr.push_back({{"start", o.occurrence.start()},
                         {"length", o.occurrence.base().size()},
                         {"base", to_string(o.occurrence.base())},
                         {"order", o.order}});
        out << json{{"result", arr}}.dump(2) << "\n";
      } else {
        out << "occurrences: " << occs.size() << "\n";
        for (const MaxLinOccurrence& o : occs)
          out << "[" << o.occurrence.start() << ", " << o.occurrence.start() + o.occurrence.base().size()
              << ") base " << to_string(o.occurrence.base()) << " order " << o.order << "\n";
      }
      return 0;
    }

    if (*c_tw) {
      auto sys = cd::load_system(system_path);
      auto tau = cd::load_tau(sys);
      Word w = parse_word(word_text, sys.alphabet());
      auto cf = canonical_factorization(w, tau);
      auto tw = compute_tw(w, tau);
      auto cls = enumerate_class(w, sys, budget);
      bool contained = true;
      for (const Word& m : cls.members) contained = contained && tw.members.count(m);
      const char* status = cls.status == ClassStatus::Complete ? "complete" : "truncated";
      if (as_json) {
        json j;
        j["result"] = {{"separators", cd::words_json(cf.separators)},
                       {"bases", cd::words_json(cf.bases)},
                       {"orders", cf.orders},
                       {"members", cd::words_json(tw.members)},
                       {"class_status", status},
                       {"class_size", cls.members.size()},
                       {"contained", contained}};
        out << j.dump(2) << "\n";
      } else {
        out << "slots: " << cf.slots() << "\n";
        for (std::size_t i = 0; i < cf.slots(); ++i) {
          out << "separator: " << to_string(cf.separators[i]) << "\n";
          out << "base: " << to_string(cf.bases[i]) << " order " << cf.orders[i] << "\n";
        }
        out << "separator: " << to_string(cf.separators.back()) << "\n";
        out << "size: " << tw.members.size() << "\n";
        out << "members:\n";
        for (const Word& m : tw.members) out << to_string(m) << "\n";
        out << "class status: " << status << "\n";
        out << "class size: " << cls.members.size() << "\n";
        out << "class contained: " << (contained ? "true" : "false") << "\n";
      }
      return 0;
    }

    if (*c_gen) {
      Word w = thue_generate(length);
      if (as_json)
        out << json{{"result", to_string(w)}}.dump(2) << "\n";
      else
        out << to_string(w) << "\n";
      return 0;
    }

    if (*c_verify) {
      auto sys = cd::load_system(system_path);
      auto tau = cd::load_tau(sys);
      auto cert = parse_certificate(cd::slurp(cert_path), sys.alphabet());
      auto violations = verify(cert, tau);
      if (as_json) {
        json arr = json::array();
        for (const Violation& v : violations)
          arr.push_back({{"condition", v.condition}, {"index", v.index}, {"detail", v.detail}});
        out << json{{"result", {{"valid", violations.empty()}, {"violations", arr}}}}.dump(2)
            << "\n";
      } else if (violations.empty()) {
        out << "valid\n";
      } else {
        for (const Violation& v : violations)
          out << "condition " << v.condition << " at " << v.index << ": " << v.detail << "\n";
      }
      return violations.empty() ? 0 : 1;
    }
  } catch (const cd::FileUnreadable& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace sfrel
