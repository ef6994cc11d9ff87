#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sfrel/word.hpp"

namespace sfrel {

/// Defining pair u = v of a rewriting system. Unordered semantically: a step
/// may replace u by v or v by u anywhere inside a word. Sides must differ;
/// at most one side may be empty.
struct Relation {
  Word lhs;
  Word rhs;

  Relation(Word l, Word r) : lhs(std::move(l)), rhs(std::move(r)) {
    if (lhs == rhs) throw std::invalid_argument("relation: sides must differ");
    if (!compatible(lhs, rhs)) throw std::invalid_argument("relation: alphabet mismatch");
  }

  bool same_pair(const Relation& o) const {
    return (lhs == o.lhs && rhs == o.rhs) || (lhs == o.rhs && rhs == o.lhs);
  }
};

/// A finite set of relations over one alphabet, with the induced partition of
/// its defining words into blocks (connected components of the relation
/// graph). Blocks are ordered by their shortlex-least member.
class RewriteSystem {
 public:
  RewriteSystem(AlphabetPtr alphabet, std::vector<Relation> relations)
      : alphabet_(std::move(alphabet)), relations_(std::move(relations)) {
    if (!alphabet_) throw std::invalid_argument("system: null alphabet");
    std::set<std::pair<Word, Word>> seen;
    for (const Relation& r : relations_) {
      for (const Word* w : {&r.lhs, &r.rhs})
        if (w->alphabet() && !(*w->alphabet() == *alphabet_))
          throw std::invalid_argument("system: relation word over a different alphabet");
      auto pair = r.lhs < r.rhs ? std::make_pair(r.lhs, r.rhs) : std::make_pair(r.rhs, r.lhs);
      if (!seen.insert(pair).second)
        throw std::invalid_argument("system: duplicate relation");
    }
    for (const Relation& r : relations_) {
      defining_.insert(r.lhs);
      defining_.insert(r.rhs);
    }
    build_blocks();
  }

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const WordSet& defining_words() const { return defining_; }

  const std::vector<WordSet>& blocks() const { return blocks_; }

  /// Index into blocks() of the block holding defining word d.
  std::size_t block_of(const Word& d) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i].count(d)) return i;
    throw std::invalid_argument("system: not a defining word: " + to_string(d));
  }

 private:
  void build_blocks() {
    std::vector<Word> words(defining_.begin(), defining_.end());
    std::vector<std::size_t> parent(words.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto index_of = [&](const Word& w) {
      return static_cast<std::size_t>(
          std::lower_bound(words.begin(), words.end(), w) - words.begin());
    };
    for (const Relation& r : relations_)
      parent[find(index_of(r.lhs))] = find(index_of(r.rhs));
    // words is shortlex-sorted, so scanning it in order yields blocks ordered
    // by least member.
    std::vector<std::size_t> root_block(words.size(), SIZE_MAX);
    for (std::size_t i = 0; i < words.size(); ++i) {
      std::size_t r = find(i);
      if (root_block[r] == SIZE_MAX) {
        root_block[r] = blocks_.size();
        blocks_.emplace_back();
      }
      blocks_[root_block[r]].insert(words[i]);
    }
  }

  AlphabetPtr alphabet_;
  std::vector<Relation> relations_;
  WordSet defining_;
  std::vector<WordSet> blocks_;
};

enum class SystemKind { Empty, OneBlock, TwoBlock, General };

struct SystemClass {
  SystemKind kind;
  std::size_t blocks;
};

/// Block-count classification; General covers three or more blocks.
inline SystemClass classify(const RewriteSystem& sys) {
  const std::size_t n = sys.blocks().size();
  switch (n) {
    case 0: return {SystemKind::Empty, 0};
    case 1: return {SystemKind::OneBlock, 1};
    case 2: return {SystemKind::TwoBlock, 2};
    default: return {SystemKind::General, n};
  }
}

/// One applied rewrite: in the source word, at `position`, the matched side
/// of relation `relation` (lhs when `forward`) was replaced by the other
/// side, giving `result`.
struct RewriteStep {
  std::size_t relation;
  std::size_t position;
  bool forward;
  Word result;
};

/// Every single-step rewrite of w, in canonical order: position ascending,
/// then relation index, then forward before backward. Results may repeat
/// when distinct applications coincide.
inline std::vector<RewriteStep> rewrite_steps(const Word& w, const RewriteSystem& sys) {
  std::vector<RewriteStep> steps;
  const auto& rels = sys.relations();
  for (std::size_t pos = 0; pos <= w.size(); ++pos) {
    for (std::size_t r = 0; r < rels.size(); ++r) {
      for (bool forward : {true, false}) {
        const Word& from = forward ? rels[r].lhs : rels[r].rhs;
        const Word& to = forward ? rels[r].rhs : rels[r].lhs;
        if (pos + from.size() > w.size()) continue;
        bool match = true;
        for (std::size_t k = 0; k < from.size() && match; ++k)
          match = w[pos + k] == from[k];
        if (!match) continue;
        steps.push_back({r, pos, forward,
                         w.substr(0, pos) + to +
                             w.substr(pos + from.size(), w.size() - pos - from.size())});
      }
    }
  }
  return steps;
}

/// Distinct words one step away from w.
inline WordSet neighbors(const Word& w, const RewriteSystem& sys) {
  WordSet out;
  for (const RewriteStep& s : rewrite_steps(w, sys)) out.insert(s.result);
  return out;
}

namespace detail {

enum class VisitControl { Continue, Stop };

struct BfsResult {
  bool complete = false;  // fixpoint reached within budget
  bool stopped = false;   // a visitor ended the search early
  std::size_t expansions = 0;
  WordSet members;
};

/// Layered breadth-first closure of `seeds` under single rewrite steps.
/// Deterministic: each layer is expanded in shortlex order and every word is
/// attributed to the first discovery. `budget` caps the number of distinct
/// words materialized, seeds included; on the first word that would exceed it
/// the search halts with complete = false and exactly `budget` members.
/// The visitor sees every inserted word once, with its BFS parent (null for
/// seeds), and may stop the search.
template <typename Visitor>
BfsResult bfs_reachable(const WordSet& seeds, const RewriteSystem& sys, std::size_t budget,
                        Visitor&& visit) {
  BfsResult res;
  WordSet layer;
  for (const Word& s : seeds) {
    if (!res.members.count(s) && res.members.size() >= budget) return res;
    if (res.members.insert(s).second) {
      layer.insert(s);
      if (visit(s, static_cast<const Word*>(nullptr), static_cast<const RewriteStep*>(nullptr)) ==
          VisitControl::Stop) {
        res.stopped = true;
        return res;
      }
    }
  }
  while (!layer.empty()) {
    WordSet next;
    for (const Word& w : layer) {
      ++res.expansions;
      for (const RewriteStep& st : rewrite_steps(w, sys)) {
        if (res.members.count(st.result)) continue;
        if (res.members.size() >= budget) return res;
        res.members.insert(st.result);
        next.insert(st.result);
        if (visit(st.result, &w, &st) == VisitControl::Stop) {
          res.stopped = true;
          return res;
        }
      }
    }
    layer = std::move(next);
  }
  res.complete = true;
  return res;
}

}  // namespace detail

enum class ClassStatus { Complete, Truncated };

struct ClassResult {
  ClassStatus status;
  WordSet members;
  std::size_t expansions;
};

/// Equivalence class of w under the congruence generated by the relations,
/// enumerated breadth-first up to `budget` distinct words. Complete means the
/// class was exhausted; Truncated means it has more than `budget` members and
/// exactly `budget` were returned.
inline ClassResult enumerate_class(const Word& w, const RewriteSystem& sys, std::size_t budget) {
  if (budget == 0) throw std::invalid_argument("enumerate_class: budget must be positive");
  auto out = detail::bfs_reachable(WordSet{w}, sys, budget, [](const Word&, const Word*, const RewriteStep*) {
    return detail::VisitControl::Continue;
  });
  return {out.complete ? ClassStatus::Complete : ClassStatus::Truncated, std::move(out.members),
          out.expansions};
}

enum class Ternary { Yes, No, Indeterminate };

/// Budgeted congruence test: Yes / No are definitive, Indeterminate means the
/// class of x outgrew the budget before y was seen.
inline Ternary equal_mod(const Word& x, const Word& y, const RewriteSystem& sys,
                         std::size_t budget) {
  if (budget == 0) throw std::invalid_argument("equal_mod: budget must be positive");
  if (!compatible(x, y)) throw std::invalid_argument("equal_mod: alphabet mismatch");
  if (x == y) return Ternary::Yes;
  bool found = false;
  auto out = detail::bfs_reachable(WordSet{x}, sys, budget,
                                   [&](const Word& w, const Word*, const RewriteStep*) {
                                     if (w == y) {
                                       found = true;
                                       return detail::VisitControl::Stop;
                                     }
                                     return detail::VisitControl::Continue;
                                   });
  if (found) return Ternary::Yes;
  return out.complete ? Ternary::No : Ternary::Indeterminate;
}

}  // namespace sfrel
