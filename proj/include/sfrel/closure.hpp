#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sfrel/system.hpp"
#include "sfrel/word.hpp"

namespace sfrel {

enum class ClosureStatus { Finite, BudgetExceeded };

struct ClosureSet {
  ClosureStatus status;
  WordSet words;
};

/// Closure of `seed` under the congruence of `other`: the union of the
/// `other`-classes of all seed words, enumerated breadth-first. BudgetExceeded
/// means the closure has more than `budget` words and exactly `budget` are
/// returned.
inline ClosureSet closure(const WordSet& seed, const RewriteSystem& other, std::size_t budget) {
  if (seed.empty()) throw std::invalid_argument("closure: empty seed");
  if (budget < seed.size()) throw std::invalid_argument("closure: budget below seed size");
  auto out = detail::bfs_reachable(seed, other, budget,
                                   [](const Word&, const Word*, const RewriteStep*) {
                                     return detail::VisitControl::Continue;
                                   });
  return {out.complete ? ClosureStatus::Finite : ClosureStatus::BudgetExceeded,
          std::move(out.members)};
}

enum class TwoBlockOutcome {
  ProperTwoBlock,             // closures finite, disjoint, each closed under its own side
  ReducedToOneBlock,          // closures finite but intersecting or not self-closed
  InfiniteOrUnknownClosure,   // a closure outgrew the budget
};

/// Everything the two-block reduction derives from a TwoBlock system. The
/// first block (by the system's block order of relations()[0].lhs) is called
/// sigma, the other rho. Each side's closure is taken under the opposite
/// side's relations. The self-closedness flags and the merged system are
/// meaningful only when both closures are Finite.
struct ClosureAnalysis {
  WordSet sigma_block;
  WordSet rho_block;
  RewriteSystem sigma_system;  // relations inside the sigma block
  RewriteSystem rho_system;    // relations inside the rho block
  ClosureSet sigma_closure;    // sigma block closed under rho_system
  ClosureSet rho_closure;      // rho block closed under sigma_system
  bool sigma_closed = false;   // sigma_closure closed under sigma_system
  bool rho_closed = false;
  bool intersection_nonempty = false;
  TwoBlockOutcome outcome = TwoBlockOutcome::InfiniteOrUnknownClosure;
  // Pairwise one-block system over the union of both closures. Built for
  // ReducedToOneBlock outcomes when the union stays small enough for its
  // quadratic relation set; informational otherwise.
  std::optional<RewriteSystem> merged;
};

namespace detail {

/// True iff the class of every member, under `own`, stays inside `words`.
/// Sound under truncation: `budget >= |words|`, so a truncated class cannot
/// be a subset.
inline bool closed_under(const WordSet& words, const RewriteSystem& own, std::size_t budget) {
  for (const Word& w : words) {
    ClassResult r = enumerate_class(w, own, budget);
    if (r.status == ClassStatus::Truncated) return false;
    for (const Word& m : r.members)
      if (!words.count(m)) return false;
  }
  return true;
}

inline RewriteSystem pairwise_system(const AlphabetPtr& alphabet, const WordSet& words) {
  std::vector<Relation> rels;
  for (auto i = words.begin(); i != words.end(); ++i)
    for (auto j = std::next(i); j != words.end(); ++j) rels.emplace_back(*i, *j);
  return RewriteSystem(alphabet, std::move(rels));
}

}  // namespace detail

/// Runs the closure analysis of a TwoBlock system. `budget` caps each closure
/// enumeration and each class enumeration of the self-closedness checks.
inline ClosureAnalysis analyze(const RewriteSystem& sys, std::size_t budget = 10'000) {
  if (classify(sys).kind != SystemKind::TwoBlock)
    throw std::invalid_argument("analyze: system must have exactly two blocks");
  const std::size_t sigma_idx = sys.block_of(sys.relations()[0].lhs);
  const WordSet& sigma_block = sys.blocks()[sigma_idx];
  const WordSet& rho_block = sys.blocks()[1 - sigma_idx];

  std::vector<Relation> sigma_rels, rho_rels;
  for (const Relation& r : sys.relations())
    (sigma_block.count(r.lhs) ? sigma_rels : rho_rels).push_back(r);
  RewriteSystem sigma_system(sys.alphabet(), std::move(sigma_rels));
  RewriteSystem rho_system(sys.alphabet(), std::move(rho_rels));

  ClosureSet sigma_closure = closure(sigma_block, rho_system, budget);
  ClosureSet rho_closure = closure(rho_block, sigma_system, budget);

  ClosureAnalysis a{sigma_block, rho_block,    std::move(sigma_system), std::move(rho_system),
                    std::move(sigma_closure),  std::move(rho_closure),  false,
                    false,       false,        TwoBlockOutcome::InfiniteOrUnknownClosure,
                    std::nullopt};

  if (a.sigma_closure.status == ClosureStatus::BudgetExceeded ||
      a.rho_closure.status == ClosureStatus::BudgetExceeded)
    return a;

  for (const Word& w : a.sigma_closure.words)
    if (a.rho_closure.words.count(w)) {
      a.intersection_nonempty = true;
      break;
    }
  a.sigma_closed = detail::closed_under(a.sigma_closure.words, a.sigma_system, budget);
  a.rho_closed = detail::closed_under(a.rho_closure.words, a.rho_system, budget);

  if (!a.intersection_nonempty && a.sigma_closed && a.rho_closed) {
    a.outcome = TwoBlockOutcome::ProperTwoBlock;
    return a;
  }
  a.outcome = TwoBlockOutcome::ReducedToOneBlock;
  WordSet merged_words = a.sigma_closure.words;
  merged_words.insert(a.rho_closure.words.begin(), a.rho_closure.words.end());
  constexpr std::size_t kMergedCap = 512;  // pairwise relation count is quadratic
  if (merged_words.size() >= 2 && merged_words.size() <= kMergedCap)
    a.merged = detail::pairwise_system(sys.alphabet(), merged_words);
  return a;
}

/// The two-block relation in closed form: two disjoint finite word sets, each
/// understood as pairwise related. Built by build_tau from a proper analysis,
/// or directly in tests. Exposes the derived lookup tables the linear
/// decomposition search runs on.
class TauSystem {
 public:
  /// A way to cut one defining word into left margin, core, right margin.
  struct FrameCandidate {
    Word d;       // the defining word, d = p + x + q
    int block;    // 0 sigma, 1 rho
    Word p;
    Word x;       // non-empty
    Word q;
  };

  TauSystem(AlphabetPtr alphabet, WordSet sigma, WordSet rho)
      : alphabet_(std::move(alphabet)),
        blocks_{std::move(sigma), std::move(rho)},
        as_system_(make_system(alphabet_, blocks_)) {
    for (const WordSet& b : blocks_) {
      if (b.empty()) throw std::invalid_argument("tau: empty block");
      if (b.count(Word())) throw std::invalid_argument("tau: empty word in a block");
    }
    for (const Word& w : blocks_[0])
      if (blocks_[1].count(w)) throw std::invalid_argument("tau: blocks intersect");
    for (int b = 0; b < 2; ++b) {
      for (const Word& d : blocks_[b]) {
        defining_.insert(d);
        for (std::size_t i = 0; i <= d.size(); ++i) {
          consider(prefix_completion_[b], d.prefix(i), d.substr(i, d.size() - i));
          consider(suffix_completion_[b], d.suffix(i), d.substr(0, d.size() - i));
        }
      }
    }
    for (const Word& d : defining_) {
      const int b = blocks_[0].count(d) ? 0 : 1;
      for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t len = 1; i + len <= d.size(); ++len)
          frames_.push_back({d, b, d.prefix(i), d.substr(i, len),
                             d.substr(i + len, d.size() - i - len)});
    }
  }

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const WordSet& sigma_block() const { return blocks_[0]; }
  const WordSet& rho_block() const { return blocks_[1]; }
  const WordSet& block(int b) const { return blocks_.at(b); }
  const WordSet& defining_words() const { return defining_; }

  /// The tau relation as a plain rewriting system: all unordered pairs inside
  /// each block. Generates the same congruence as the source system.
  const RewriteSystem& as_system() const { return as_system_; }

  std::optional<int> block_of(const Word& w) const {
    if (blocks_[0].count(w)) return 0;
    if (blocks_[1].count(w)) return 1;
    return std::nullopt;
  }

  bool in_dtau(const Word& w) const { return block_of(w).has_value(); }

  /// Keys: every prefix of a word of block `b` (the empty word included).
  /// Values: the shortlex-least completion to a full word of the block.
  const std::map<Word, Word>& prefix_completions(int b) const { return prefix_completion_.at(b); }
  const std::map<Word, Word>& suffix_completions(int b) const { return suffix_completion_.at(b); }

  /// All (word, cut) pairs over both blocks in canonical order: word shortlex
  /// ascending across blocks, cuts by (|p|, |x|) ascending.
  const std::vector<FrameCandidate>& frame_candidates() const { return frames_; }

 private:
  static RewriteSystem make_system(const AlphabetPtr& alphabet,
                                   const std::array<WordSet, 2>& blocks) {
    std::vector<Relation> rels;
    for (const WordSet& b : blocks)
      for (auto i = b.begin(); i != b.end(); ++i)
        for (auto j = std::next(i); j != b.end(); ++j) rels.emplace_back(*i, *j);
    return RewriteSystem(alphabet, std::move(rels));
  }

  static void consider(std::map<Word, Word>& m, Word key, Word completion) {
    auto it = m.find(key);
    if (it == m.end())
      m.emplace(std::move(key), std::move(completion));
    else if (completion < it->second)
      it->second = std::move(completion);
  }

  AlphabetPtr alphabet_;
  std::array<WordSet, 2> blocks_;
  RewriteSystem as_system_;
  WordSet defining_;
  std::array<std::map<Word, Word>, 2> prefix_completion_;
  std::array<std::map<Word, Word>, 2> suffix_completion_;
  std::vector<FrameCandidate> frames_;
};

/// Similarity: both words lie in the same tau block.
inline bool similar(const Word& x, const Word& y, const TauSystem& tau) {
  auto bx = tau.block_of(x);
  if (!bx) return false;
  auto by = tau.block_of(y);
  return by && *bx == *by;
}

/// Packages a proper analysis as a TauSystem.
inline TauSystem build_tau(const ClosureAnalysis& analysis) {
  if (analysis.outcome != TwoBlockOutcome::ProperTwoBlock)
    throw std::invalid_argument("build_tau: analysis outcome is not ProperTwoBlock");
  return TauSystem(analysis.sigma_system.alphabet(), analysis.sigma_closure.words,
                   analysis.rho_closure.words);
}

}  // namespace sfrel
