#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <vector>

#include "sfrel/closure.hpp"
#include "sfrel/lindecomp.hpp"
#include "sfrel/word.hpp"

namespace sfrel {

/// An occurrence whose base has a linear decomposition and which is contained
/// in no distinct occurrence with a decomposable base. `order` is the least
/// order of the base.
struct MaxLinOccurrence {
  Occurrence occurrence;
  std::size_t order;

  bool operator==(const MaxLinOccurrence& o) const {
    return occurrence == o.occurrence && order == o.order;
  }
  bool operator<(const MaxLinOccurrence& o) const { return occurrence < o.occurrence; }
};

namespace detail {

struct LinInterval {
  std::size_t start;
  std::size_t len;
  std::size_t order;
};

/// Every interval of w whose subword has a linear decomposition. Blocks are
/// non-empty, so the least order never exceeds the length and membership
/// needs no external order cap.
inline std::vector<LinInterval> lin_intervals(const Word& w, LinOracle& oracle) {
  std::vector<LinInterval> out;
  for (std::size_t len = 1; len <= w.size(); ++len)
    for (std::size_t s = 0; s + len <= w.size(); ++s)
      if (auto lo = oracle.least_order(w.substr(s, len))) out.push_back({s, len, *lo});
  return out;
}

inline bool strictly_contained(const std::vector<LinInterval>& ivs, std::size_t s,
                               std::size_t len) {
  for (const auto& iv : ivs)
    if (iv.start <= s && s + len <= iv.start + iv.len && !(iv.start == s && iv.len == len))
      return true;
  return false;
}

inline std::vector<LinInterval> maximal_intervals(const Word& w, LinOracle& oracle) {
  auto ivs = lin_intervals(w, oracle);
  std::vector<LinInterval> out;
  for (const auto& iv : ivs)
    if (!strictly_contained(ivs, iv.start, iv.len)) out.push_back(iv);
  std::sort(out.begin(), out.end(),
            [](const LinInterval& a, const LinInterval& b) { return a.start < b.start; });
  return out;
}

}  // namespace detail

/// All maximal occurrences whose base order is at most n. Maximality is
/// checked against decomposable bases of any order.
inline std::set<MaxLinOccurrence> maximal_occurrences(const Word& w, std::size_t n,
                                                      const TauSystem& tau) {
  LinOracle oracle(tau);
  std::set<MaxLinOccurrence> out;
  for (const auto& iv : detail::maximal_intervals(w, oracle))
    if (iv.order <= n) out.insert({Occurrence::at(w, iv.start, iv.len), iv.order});
  return out;
}

/// w split as r1 x1 r2 x2 ... rn xn r{n+1}: the xi are the maximal
/// decomposable occurrences left to right, the ri the gaps between them.
/// The gaps contain no defining word, since a defining word is itself a
/// decomposable interval and would lie inside some maximal one.
struct CanonicalFactorization {
  std::vector<Word> separators;        // n + 1 entries
  std::vector<Word> bases;             // n entries
  std::vector<std::size_t> orders;     // least order of each base

  std::size_t slots() const { return bases.size(); }

  Word word() const {
    Word w = separators.at(0);
    for (std::size_t i = 0; i < bases.size(); ++i) w = w + bases[i] + separators[i + 1];
    return w;
  }
};

/// Requires a word that is square-free relative to the source system; the
/// square-freeness of the word itself is checked here, the relative part is
/// the caller's contract. Intersecting maximal occurrences cannot happen for
/// such words, so finding them reports corrupted reasoning upstream.
inline CanonicalFactorization canonical_factorization(const Word& w, const TauSystem& tau) {
  if (find_square(w))
    throw std::invalid_argument("canonical_factorization: word contains a square");
  LinOracle oracle(tau);
  auto occs = detail::maximal_intervals(w, oracle);
  for (std::size_t i = 1; i < occs.size(); ++i)
    if (occs[i - 1].start + occs[i - 1].len > occs[i].start)
      throw std::logic_error("canonical_factorization: maximal occurrences intersect");
  CanonicalFactorization cf;
  std::size_t pos = 0;
  for (const auto& iv : occs) {
    cf.separators.push_back(w.substr(pos, iv.start - pos));
    cf.bases.push_back(w.substr(iv.start, iv.len));
    cf.orders.push_back(iv.order);
    pos = iv.start + iv.len;
  }
  cf.separators.push_back(w.substr(pos, w.size() - pos));
  return cf;
}

struct TwSet {
  WordSet members;
};

/// All words r1 y1 r2 y2 ... rn yn r{n+1} with yi taken from the order-ni
/// words such that every substituted slot is still a maximal occurrence of
/// its order. Contains the congruence class of w when w is square-free
/// relative to the source system.
inline TwSet compute_tw(const Word& w, const TauSystem& tau) {
  auto cf = canonical_factorization(w, tau);
  if (cf.bases.empty()) return {WordSet{w}};

  std::vector<std::vector<Word>> candidates;
  for (std::size_t i = 0; i < cf.slots(); ++i) {
    auto words = lin_enumerate(cf.orders[i], tau);
    candidates.emplace_back(words.begin(), words.end());
  }

  LinOracle oracle(tau);  // shared across all assembled words
  TwSet out;
  std::vector<const Word*> choice(cf.slots());
  auto dfs = [&](auto&& self, std::size_t slot) -> void {
    if (slot == cf.slots()) {
      Word z = cf.separators[0];
      std::vector<std::size_t> starts(cf.slots()), lens(cf.slots());
      for (std::size_t i = 0; i < cf.slots(); ++i) {
        starts[i] = z.size();
        lens[i] = choice[i]->size();
        z = z + *choice[i] + cf.separators[i + 1];
      }
      auto ivs = detail::lin_intervals(z, oracle);
      for (std::size_t i = 0; i < cf.slots(); ++i)
        if (detail::strictly_contained(ivs, starts[i], lens[i])) return;
      out.members.insert(z);
      return;
    }
    for (const Word& y : candidates[slot]) {
      choice[slot] = &y;
      self(self, slot + 1);
    }
  };
  dfs(dfs, 0);
  return out;
}

}  // namespace sfrel
