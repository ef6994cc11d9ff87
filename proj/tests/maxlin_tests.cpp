#include <map>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "sfrel/closure.hpp"
#include "sfrel/lindecomp.hpp"
#include "sfrel/maxlin.hpp"
#include "sfrel/system.hpp"
#include "sfrel/word.hpp"

using namespace sfrel;

namespace {

Word W(const AlphabetPtr& al, const std::string& s) { return Word::literal(al, s); }

RewriteSystem worked_system() {
  auto al = Alphabet::chars("abc");
  return RewriteSystem(
      al, {Relation(W(al, "ab"), W(al, "ac")), Relation(W(al, "b"), W(al, "c"))});
}

// Same relations over a four-letter alphabet; d never appears in a defining
// word, so it can only live in separators.
RewriteSystem spaced_system() {
  auto al = Alphabet::chars("abcd");
  return RewriteSystem(
      al, {Relation(W(al, "ab"), W(al, "ac")), Relation(W(al, "b"), W(al, "c"))});
}

TauSystem tau_of(const RewriteSystem& sys) { return build_tau(analyze(sys)); }

std::vector<Word> all_words(const AlphabetPtr& al, int max_len) {
  std::vector<Word> out{Word()};
  std::size_t from = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t upto = out.size();
    for (std::size_t i = from; i < upto; ++i)
      for (Symbol s = 0; s < static_cast<Symbol>(al->size()); ++s)
        out.push_back(out[i] + Word(al, {s}));
    from = upto;
  }
  return out;
}

// Complete congruence class with every member square-free; the unit-level
// stand-in for a relative square-freeness verdict.
bool sf_relative(const Word& w, const RewriteSystem& sys, std::size_t budget) {
  auto cls = enumerate_class(w, sys, budget);
  if (cls.status != ClassStatus::Complete) return false;
  for (const Word& m : cls.members)
    if (!is_square_free(m)) return false;
  return true;
}

}  // namespace

TEST_CASE("maximal occurrences on worked examples", "[maxlin]") {
  auto tau = tau_of(worked_system());
  auto al = tau.alphabet();

  CHECK(maximal_occurrences(W(al, "a"), 3, tau).empty());
  CHECK(maximal_occurrences(W(al, "aa"), 3, tau).empty());
  CHECK(maximal_occurrences(Word(), 3, tau).empty());

  auto whole = maximal_occurrences(W(al, "ab"), 1, tau);
  REQUIRE(whole.size() == 1);
  CHECK(whole.begin()->occurrence == Occurrence::at(W(al, "ab"), 0, 2));
  CHECK(whole.begin()->order == 1);

  auto aba = maximal_occurrences(W(al, "aba"), 1, tau);
  REQUIRE(aba.size() == 1);
  CHECK(aba.begin()->occurrence == Occurrence::at(W(al, "aba"), 0, 2));
  CHECK(aba.begin()->order == 1);
  CHECK(maximal_occurrences(W(al, "aba"), 4, tau) == aba);

  auto bab = maximal_occurrences(W(al, "bab"), 2, tau);
  REQUIRE(bab.size() == 1);
  CHECK(bab.begin()->occurrence == Occurrence::at(W(al, "bab"), 0, 3));
  CHECK(bab.begin()->order == 2);
  // The only maximal occurrence has order 2, so a 1-bounded query is empty
  // even though bab has plenty of order-1 subwords.
  CHECK(maximal_occurrences(W(al, "bab"), 1, tau).empty());
  CHECK(maximal_occurrences(W(al, "bab"), 0, tau).empty());
}

TEST_CASE("maximal occurrences match a direct containment scan", "[maxlin]") {
  auto tau = tau_of(worked_system());
  auto al = tau.alphabet();
  for (const Word& w : all_words(al, 5)) {
    struct Iv {
      std::size_t s, l, order;
    };
    std::vector<Iv> ivs;
    for (std::size_t l = 1; l <= w.size(); ++l)
      for (std::size_t s = 0; s + l <= w.size(); ++s) {
        auto v = is_lin(w.substr(s, l), l, tau);
        if (v.member) ivs.push_back({s, l, *v.order});
      }
    std::set<MaxLinOccurrence> expect;
    for (const auto& a : ivs) {
      bool contained = false;
      for (const auto& b : ivs)
        if (b.s <= a.s && a.s + a.l <= b.s + b.l && (b.s != a.s || b.l != a.l))
          contained = true;
      if (!contained) expect.insert({Occurrence::at(w, a.s, a.l), a.order});
    }
    CHECK(maximal_occurrences(w, w.size() + 1, tau) == expect);
  }
}

TEST_CASE("containment predicate used by the tw filter", "[maxlin]") {
  auto tau = tau_of(worked_system());
  auto al = tau.alphabet();
  LinOracle oracle(tau);
  auto ivs = detail::lin_intervals(W(al, "aba"), oracle);
  // aba holds b at [1,2) and ab at [0,2); only the former is contained.
  CHECK(detail::strictly_contained(ivs, 1, 1));
  CHECK_FALSE(detail::strictly_contained(ivs, 0, 2));
  // An interval is never contained in itself.
  auto self = detail::lin_intervals(W(al, "ab"), oracle);
  CHECK_FALSE(detail::strictly_contained(self, 0, 2));
}

TEST_CASE("canonical factorization on worked examples", "[maxlin]") {
  auto tau = tau_of(worked_system());
  auto al = tau.alphabet();

  auto plain = canonical_factorization(W(al, "a"), tau);
  CHECK(plain.slots() == 0);
  CHECK(plain.separators == std::vector<Word>{W(al, "a")});
  CHECK(plain.word() == W(al, "a"));

  auto empty = canonical_factorization(Word(), tau);
  CHECK(empty.slots() == 0);

  auto one = canonical_factorization(W(al, "ab"), tau);
  CHECK(one.separators == std::vector<Word>{Word(), Word()});
  CHECK(one.bases == std::vector<Word>{W(al, "ab")});
  CHECK(one.orders == std::vector<std::size_t>{1});

  auto mid = canonical_factorization(W(al, "aba"), tau);
  CHECK(mid.separators == std::vector<Word>{Word(), W(al, "a")});
  CHECK(mid.bases == std::vector<Word>{W(al, "ab")});

  auto tail = canonical_factorization(W(al, "ba"), tau);
  CHECK(tail.separators == std::vector<Word>{Word(), W(al, "a")});
  CHECK(tail.bases == std::vector<Word>{W(al, "b")});

  auto deep = canonical_factorization(W(al, "bab"), tau);
  CHECK(deep.bases == std::vector<Word>{W(al, "bab")});
  CHECK(deep.orders == std::vector<std::size_t>{2});

  CHECK_THROWS_AS(canonical_factorization(W(al, "aa"), tau), std::invalid_argument);
  CHECK_THROWS_AS(canonical_factorization(W(al, "abab"), tau), std::invalid_argument);
}

TEST_CASE("two separated slots across an inert letter", "[maxlin]") {
  auto sys = spaced_system();
  auto tau = tau_of(sys);
  auto al = tau.alphabet();

  auto cf = canonical_factorization(W(al, "abdab"), tau);
  REQUIRE(cf.slots() == 2);
  CHECK(cf.separators == std::vector<Word>{Word(), W(al, "d"), Word()});
  CHECK(cf.bases == std::vector<Word>{W(al, "ab"), W(al, "ab")});
  CHECK(cf.orders == std::vector<std::size_t>{1, 1});
  CHECK(cf.word() == W(al, "abdab"));

  REQUIRE(sf_relative(W(al, "abdab"), sys, 1000));
  auto tw = compute_tw(W(al, "abdab"), tau);
  WordSet expect;
  for (const auto& x : {"ab", "ac", "b", "c"})
    for (const auto& y : {"ab", "ac", "b", "c"})
      expect.insert(W(al, std::string(x) + "d" + y));
  CHECK(tw.members == expect);

  // Product-filter oracle: assemble every pair and re-check maximality of
  // both slots by direct scans.
  auto lin1 = lin_enumerate(1, tau);
  WordSet oracle;
  for (const Word& y1 : lin1)
    for (const Word& y2 : lin1) {
      Word z = y1 + W(al, "d") + y2;
      auto max_of = [&](std::size_t s, std::size_t l) {
        for (std::size_t l2 = 1; l2 <= z.size(); ++l2)
          for (std::size_t s2 = 0; s2 + l2 <= z.size(); ++s2) {
            if (s2 == s && l2 == l) continue;
            bool covers = s2 <= s && s + l <= s2 + l2;
            if (covers && is_lin(z.substr(s2, l2), l2, tau).member) return false;
          }
        return true;
      };
      bool keep = max_of(0, y1.size()) && max_of(y1.size() + 1, y2.size());
      if (keep) oracle.insert(z);
    }
  CHECK(tw.members == oracle);

  auto cls = enumerate_class(W(al, "abdab"), sys, 1000);
  REQUIRE(cls.status == ClassStatus::Complete);
  CHECK(cls.members.size() == 4);
  for (const Word& m : cls.members) CHECK(tw.members.count(m) == 1);
}

TEST_CASE("tw on worked single-slot words", "[maxlin]") {
  auto tau = tau_of(worked_system());
  auto al = tau.alphabet();

  CHECK(compute_tw(W(al, "a"), tau).members == WordSet{W(al, "a")});

  WordSet expect_trailing = {W(al, "aba"), W(al, "aca"), W(al, "ba"), W(al, "ca")};
  CHECK(compute_tw(W(al, "aba"), tau).members == expect_trailing);
  CHECK(compute_tw(W(al, "ba"), tau).members == expect_trailing);

  CHECK(compute_tw(W(al, "ab"), tau).members ==
        WordSet{W(al, "ab"), W(al, "ac"), W(al, "b"), W(al, "c")});

  // A whole-word slot with empty separators admits its entire order class.
  CHECK(compute_tw(W(al, "bab"), tau).members == lin_enumerate(2, tau));
  CHECK(compute_tw(W(al, "bacab"), tau).members == lin_enumerate(3, tau));
}

TEST_CASE("factorization and tw properties over short relative words", "[maxlin]") {
  auto sys = worked_system();
  auto tau = tau_of(sys);
  auto al = tau.alphabet();
  auto dtau = tau.defining_words();

  int seen = 0;
  for (const Word& w : all_words(al, 4)) {
    if (!sf_relative(w, sys, 2000)) continue;
    ++seen;
    auto cf = canonical_factorization(w, tau);  // non-intersection holds: no throw
    CHECK(cf.word() == w);
    REQUIRE(cf.separators.size() == cf.bases.size() + 1);
    for (const Word& r : cf.separators)
      for (const Word& d : dtau) CHECK_FALSE(r.contains(d));
    for (std::size_t i = 0; i < cf.slots(); ++i) {
      auto v = is_lin(cf.bases[i], cf.bases[i].size(), tau);
      REQUIRE(v.member);
      CHECK(*v.order == cf.orders[i]);
    }

    auto tw = compute_tw(w, tau);
    CHECK(tw.members.count(w) == 1);
    std::size_t bound = 1;
    for (std::size_t i = 0; i < cf.slots(); ++i) bound *= lin_enumerate(cf.orders[i], tau).size();
    CHECK(tw.members.size() <= bound);

    auto cls = enumerate_class(w, sys, 2000);
    REQUIRE(cls.status == ClassStatus::Complete);
    for (const Word& m : cls.members) CHECK(tw.members.count(m) == 1);

    // One-step stability at every relative member of the set.
    for (const Word& m : tw.members) {
      if (!sf_relative(m, sys, 2000)) continue;
      for (const Word& nb : neighbors(m, sys)) CHECK(tw.members.count(nb) == 1);
    }
  }
  // Exact census for this system: the empty word, a, b, c, ab, ac, ba, ca
  // and the six three-letter survivors; every length-4 class hits a square.
  CHECK(seen == 14);
}
