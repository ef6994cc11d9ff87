#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sfrel/closure.hpp"
#include "sfrel/maxlin.hpp"
#include "sfrel/system.hpp"
#include "sfrel/word.hpp"

namespace sfrel {

enum class Verdict { InSF, NotInSF, Indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::InSF: return "InSF";
    case Verdict::NotInSF: return "NotInSF";
    default: return "Indeterminate";
  }
}

/// Shortest derivation from the queried word to one containing a square.
/// derivation.front() is the query, derivation.back() holds the square, and
/// applying steps[i] to derivation[i] yields derivation[i + 1]; a word that
/// already has a square carries an empty step list.
struct Counterexample {
  std::vector<Word> derivation;
  std::vector<RewriteStep> steps;
  SquareWitness square;
};

struct DecisionStats {
  std::size_t explored = 0;    // distinct words materialized
  std::size_t expansions = 0;  // words whose rewrites were enumerated
  bool complete = false;       // class exhausted within budget
};

struct Decision {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<Counterexample> witness;
  DecisionStats stats;
  SystemClass mode{SystemKind::Empty, 0};
  std::string diagnostic;  // non-empty only for Indeterminate
};

inline constexpr std::size_t kDefaultDecisionBudget = 1'000'000;

// Indeterminate is a resource report in block-classified modes (termination
// is guaranteed, the budget just ran out first) and a genuine unknown
// otherwise; the two must stay distinguishable downstream.
inline constexpr const char* kBudgetDiagnostic =
    "budget exhausted before the class closed; the mode is decidable, retry with a larger budget";
inline constexpr const char* kGeneralDiagnostic =
    "exploration incomplete; three or more defining blocks carry no termination guarantee";

/// Decides whether every word congruent to w is square-free, by breadth-first
/// closure of {w} under single rewrite steps. Each discovered word is tested
/// as it materializes; the first square ends the search with a shortest
/// derivation witness. A fixpoint with no square is InSF. Budget exhaustion
/// yields Indeterminate with a mode-dependent diagnostic.
inline Decision decide_sf_rel(const Word& w, const RewriteSystem& sys,
                              std::size_t budget = kDefaultDecisionBudget) {
  if (budget == 0) throw std::invalid_argument("decide_sf_rel: budget must be positive");

  std::map<Word, std::pair<Word, RewriteStep>> parent;
  std::optional<Word> bad;
  auto res = detail::bfs_reachable(
      WordSet{w}, sys, budget, [&](const Word& v, const Word* from, const RewriteStep* step) {
        if (from) parent.emplace(v, std::make_pair(*from, *step));
        if (!is_square_free(v)) {
          bad = v;
          return detail::VisitControl::Stop;
        }
        return detail::VisitControl::Continue;
      });

  Decision d;
  d.mode = classify(sys);
  d.stats = {res.members.size(), res.expansions, res.complete};

  if (bad) {
    std::vector<Word> chain{*bad};
    std::vector<RewriteStep> steps;
    for (auto it = parent.find(chain.back()); it != parent.end();
         it = parent.find(chain.back())) {
      steps.push_back(it->second.second);
      chain.push_back(it->second.first);
    }
    std::reverse(chain.begin(), chain.end());
    std::reverse(steps.begin(), steps.end());
    d.verdict = Verdict::NotInSF;
    d.witness = Counterexample{std::move(chain), std::move(steps), *find_square(*bad)};
    return d;
  }
  if (res.complete) {
    d.verdict = Verdict::InSF;
    return d;
  }
  d.verdict = Verdict::Indeterminate;
  d.diagnostic = d.mode.kind == SystemKind::General ? kGeneralDiagnostic : kBudgetDiagnostic;
  return d;
}

/// Structural cross-validation attached to an InSF verdict: the canonical
/// factorization of the query and the bounding set built from it, with the
/// whole congruence class checked against that bound.
struct StructuralReport {
  CanonicalFactorization factorization;
  TwSet tw;
  std::size_t class_size = 0;
  bool contained = false;
};

struct StructuralDecision {
  Decision decision;
  std::optional<StructuralReport> report;   // present only for InSF with structure
  std::optional<std::string> unavailable;   // reason the structural route could not run
};

/// Runs decide_sf_rel and, when the system admits a proper two-block closure
/// analysis and the verdict is InSF, re-derives the class bound structurally
/// and asserts the class sits inside it. The verdict is always the breadth
/// first one; the structural side is a harness, not an alternative answer.
inline StructuralDecision decide_via_structure(const Word& w, const RewriteSystem& sys,
                                               std::size_t budget = kDefaultDecisionBudget) {
  StructuralDecision out;
  out.decision = decide_sf_rel(w, sys, budget);

  if (classify(sys).kind != SystemKind::TwoBlock) {
    out.unavailable = "structural mode unavailable: system is not two-block";
    return out;
  }
  auto analysis = analyze(sys);
  if (analysis.outcome != TwoBlockOutcome::ProperTwoBlock) {
    out.unavailable = "structural mode unavailable: closure analysis is not proper two-block";
    return out;
  }
  if (out.decision.verdict != Verdict::InSF) return out;

  TauSystem tau = build_tau(analysis);
  StructuralReport rep;
  rep.factorization = canonical_factorization(w, tau);
  rep.tw = compute_tw(w, tau);

  auto cls = enumerate_class(w, sys, budget);
  if (cls.status != ClassStatus::Complete)
    throw std::logic_error("decide_via_structure: class re-enumeration fell short of the verdict");
  rep.class_size = cls.members.size();
  for (const Word& m : cls.members)
    if (!rep.tw.members.count(m))
      throw std::logic_error("decide_via_structure: congruence class escapes the structural bound");
  rep.contained = true;
  out.report = std::move(rep);
  return out;
}

/// Length-prefix of the fixed point of a -> abc, b -> ac, c -> b starting
/// from a, over the canonical three-letter alphabet. The fixed point is
/// square-free, so prefixes of any two lengths agree; every returned word is
/// re-checked before it leaves.
inline Word thue_generate(std::size_t length) {
  std::string s = "a";
  while (s.size() < length) {
    std::string t;
    t.reserve(3 * s.size());
    for (char c : s) {
      switch (c) {
        case 'a': t += "abc"; break;
        case 'b': t += "ac"; break;
        default: t += 'b'; break;
      }
    }
    s = std::move(t);
  }
  Word out = Word::literal(Alphabet::chars("abc"), s.substr(0, length));
  if (!is_square_free(out)) throw std::logic_error("thue_generate: morphism prefix has a square");
  return out;
}

}  // namespace sfrel
