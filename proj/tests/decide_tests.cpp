#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "sfrel/decide.hpp"
#include "sfrel/lindecomp.hpp"
#include "sfrel/system.hpp"
#include "sfrel/word.hpp"

using namespace sfrel;

namespace {

Word W(const AlphabetPtr& al, const std::string& s) { return Word::literal(al, s); }

RewriteSystem make_sys(const std::string& letters,
                       std::vector<std::pair<std::string, std::string>> rels) {
  auto al = Alphabet::chars(letters);
  std::vector<Relation> out;
  for (auto& [l, r] : rels) out.emplace_back(W(al, l), W(al, r));
  return RewriteSystem(al, std::move(out));
}

// Derivation replay: every recorded step must be one of the legal rewrites
// of the word it starts from, and land on the next word.
void check_replay(const Word& w, const Counterexample& cx) {
  REQUIRE(!cx.derivation.empty());
  CHECK(cx.derivation.front() == w);
  REQUIRE(cx.derivation.size() == cx.steps.size() + 1);
  CHECK(cx.square.half.size() > 0);
  Word rebuilt = cx.square.prefix + cx.square.half + cx.square.half + cx.square.suffix;
  CHECK(rebuilt == cx.derivation.back());
}

void check_replay_against(const Word& w, const Counterexample& cx, const RewriteSystem& sys) {
  check_replay(w, cx);
  for (std::size_t i = 0; i < cx.steps.size(); ++i) {
    const RewriteStep& s = cx.steps[i];
    CHECK(s.result == cx.derivation[i + 1]);
    bool legal = false;
    for (const RewriteStep& t : rewrite_steps(cx.derivation[i], sys))
      if (t.relation == s.relation && t.position == s.position && t.forward == s.forward &&
          t.result == s.result)
        legal = true;
    CHECK(legal);
  }
}

// Independent shortest-distance-to-a-square oracle: plain layered search
// with no budget tricks, small cases only.
std::size_t square_distance(const Word& w, const RewriteSystem& sys) {
  WordSet seen{w};
  std::vector<Word> layer{w};
  for (std::size_t depth = 0;; ++depth) {
    for (const Word& v : layer)
      if (!is_square_free(v)) return depth;
    std::vector<Word> next;
    for (const Word& v : layer)
      for (const Word& nb : neighbors(v, sys))
        if (seen.insert(nb).second) next.push_back(nb);
    REQUIRE(!next.empty());  // callers only ask when a square is reachable
    layer = std::move(next);
  }
}

}  // namespace

TEST_CASE("square in the query itself", "[decide]") {
  auto sys = make_sys("abc", {{"ab", "c"}});
  auto al = sys.alphabet();
  auto d = decide_sf_rel(W(al, "aa"), sys);
  CHECK(d.verdict == Verdict::NotInSF);
  REQUIRE(d.witness.has_value());
  CHECK(d.witness->derivation == std::vector<Word>{W(al, "aa")});
  CHECK(d.witness->steps.empty());
  CHECK(d.witness->square.half == W(al, "a"));
  CHECK(d.witness->square.prefix.empty());
  CHECK(d.stats.explored == 1);
  CHECK(d.stats.expansions == 0);
  CHECK_FALSE(d.stats.complete);
  CHECK(d.diagnostic.empty());
}

TEST_CASE("one rewrite away from a square", "[decide]") {
  auto sys = make_sys("abc", {{"ab", "c"}});
  auto al = sys.alphabet();
  auto d = decide_sf_rel(W(al, "acb"), sys);
  CHECK(d.verdict == Verdict::NotInSF);
  REQUIRE(d.witness.has_value());
  CHECK(d.witness->derivation == std::vector<Word>{W(al, "acb"), W(al, "aabb")});
  REQUIRE(d.witness->steps.size() == 1);
  CHECK(d.witness->steps[0].position == 1);
  CHECK_FALSE(d.witness->steps[0].forward);
  CHECK(d.witness->square.half == W(al, "a"));
  check_replay_against(W(al, "acb"), *d.witness, sys);
}

TEST_CASE("small complete classes", "[decide]") {
  auto sys = make_sys("abc", {{"ab", "c"}});
  auto al = sys.alphabet();

  auto fixed = decide_sf_rel(W(al, "a"), sys);
  CHECK(fixed.verdict == Verdict::InSF);
  CHECK(fixed.stats.explored == 1);
  CHECK(fixed.stats.complete);
  CHECK_FALSE(fixed.witness.has_value());

  auto pair = decide_sf_rel(W(al, "ca"), sys);
  CHECK(pair.verdict == Verdict::InSF);
  CHECK(pair.stats.explored == 2);  // {ca, aba}
  CHECK(pair.stats.complete);
  CHECK(pair.mode.kind == SystemKind::OneBlock);

  auto cls = enumerate_class(W(al, "ca"), sys, 100);
  CHECK(cls.members == WordSet{W(al, "ca"), W(al, "aba")});
}

TEST_CASE("budget exhaustion keeps the verdict open", "[decide]") {
  auto sys = make_sys("abc", {{"ab", "c"}});
  auto al = sys.alphabet();

  auto tight = decide_sf_rel(W(al, "ca"), sys, 1);
  CHECK(tight.verdict == Verdict::Indeterminate);
  CHECK(tight.diagnostic == kBudgetDiagnostic);
  CHECK_FALSE(tight.stats.complete);

  // Three defining blocks: the open verdict is semantic, not a resource one.
  auto wide = make_sys("abcdef", {{"a", "b"}, {"c", "d"}, {"e", "f"}});
  CHECK(classify(wide).kind == SystemKind::General);
  auto open = decide_sf_rel(W(wide.alphabet(), "ace"), wide, 2);
  CHECK(open.verdict == Verdict::Indeterminate);
  CHECK(open.diagnostic == kGeneralDiagnostic);

  // With room to finish the same query closes.
  auto closed = decide_sf_rel(W(wide.alphabet(), "ace"), wide, 100);
  CHECK(closed.verdict == Verdict::InSF);
  CHECK(closed.stats.explored == 8);

  CHECK_THROWS_AS(decide_sf_rel(W(al, "a"), sys, 0), std::invalid_argument);
}

TEST_CASE("verdicts are monotone in the budget", "[decide]") {
  auto sys = make_sys("abc", {{"ab", "c"}});
  auto al = sys.alphabet();
  for (const char* q : {"ca", "acb", "aa", "bca", "abab"}) {
    Verdict settled = Verdict::Indeterminate;
    for (std::size_t budget = 1; budget <= 64; budget *= 2) {
      auto d = decide_sf_rel(W(al, q), sys, budget);
      if (settled == Verdict::Indeterminate) settled = d.verdict;
      if (settled != Verdict::Indeterminate) CHECK(d.verdict == settled);
    }
    CHECK(settled != Verdict::Indeterminate);
  }
}

TEST_CASE("witnesses replay and have minimal length", "[decide]") {
  auto sys = make_sys("abc", {{"ab", "ac"}, {"b", "c"}});
  auto al = sys.alphabet();
  std::vector<Word> all{Word()};
  for (std::size_t i = 0; i < all.size() && all[i].size() < 5; ++i)
    for (Symbol s = 0; s < 3; ++s) all.push_back(all[i] + Word(al, {s}));

  int refuted = 0;
  for (const Word& w : all) {
    auto d = decide_sf_rel(w, sys, 10'000);
    REQUIRE(d.verdict != Verdict::Indeterminate);
    if (d.verdict == Verdict::NotInSF) {
      ++refuted;
      check_replay_against(w, *d.witness, sys);
      CHECK(d.witness->steps.size() == square_distance(w, sys));
    } else {
      auto cls = enumerate_class(w, sys, 10'000);
      REQUIRE(cls.status == ClassStatus::Complete);
      for (const Word& m : cls.members) {
        CHECK(is_square_free(m));
        for (const Word& nb : neighbors(m, sys)) CHECK(cls.members.count(nb) == 1);
      }
    }
  }
  CHECK(refuted > 100);
}

TEST_CASE("structural route agrees and bounds the class", "[decide]") {
  auto sys = make_sys("abc", {{"ab", "ac"}, {"b", "c"}});
  auto al = sys.alphabet();

  auto sd = decide_via_structure(W(al, "bab"), sys, 10'000);
  CHECK(sd.decision.verdict == Verdict::InSF);
  CHECK_FALSE(sd.unavailable.has_value());
  REQUIRE(sd.report.has_value());
  CHECK(sd.report->contained);
  CHECK(sd.report->class_size == 4);  // {bab, bac, cab, cac}
  CHECK(sd.report->factorization.bases == std::vector<Word>{W(al, "bab")});
  CHECK(sd.report->factorization.orders == std::vector<std::size_t>{2});
  CHECK(sd.report->tw.members.size() == 20);

  auto bad = decide_via_structure(W(al, "bb"), sys, 10'000);
  CHECK(bad.decision.verdict == Verdict::NotInSF);
  CHECK_FALSE(bad.report.has_value());
  CHECK_FALSE(bad.unavailable.has_value());

  auto tight = decide_via_structure(W(al, "bab"), sys, 1);
  CHECK(tight.decision.verdict == Verdict::Indeterminate);
  CHECK_FALSE(tight.report.has_value());
  CHECK_FALSE(tight.unavailable.has_value());
}

TEST_CASE("structural route degrades to the plain verdict", "[decide]") {
  auto one = make_sys("abc", {{"ab", "c"}});
  auto d1 = decide_via_structure(W(one.alphabet(), "ca"), one, 1000);
  CHECK(d1.decision.verdict == Verdict::InSF);
  CHECK_FALSE(d1.report.has_value());
  REQUIRE(d1.unavailable.has_value());
  CHECK(d1.unavailable->find("not two-block") != std::string::npos);

  // Two blocks, but one side escapes its own closure.
  auto reduced = make_sys("abc", {{"a", "ba"}, {"b", "c"}});
  auto d2 = decide_via_structure(W(reduced.alphabet(), "c"), reduced, 1000);
  CHECK(d2.decision.verdict == Verdict::InSF);
  CHECK_FALSE(d2.report.has_value());
  REQUIRE(d2.unavailable.has_value());
  CHECK(d2.unavailable->find("not proper") != std::string::npos);
}

TEST_CASE("structural route across every short relative word", "[decide]") {
  auto sys = make_sys("abc", {{"ab", "ac"}, {"b", "c"}});
  auto al = sys.alphabet();
  std::vector<Word> all{Word()};
  for (std::size_t i = 0; i < all.size() && all[i].size() < 4; ++i)
    for (Symbol s = 0; s < 3; ++s) all.push_back(all[i] + Word(al, {s}));

  int affirmed = 0;
  for (const Word& w : all) {
    auto sd = decide_via_structure(w, sys, 10'000);
    CHECK(sd.decision.verdict == decide_sf_rel(w, sys, 10'000).verdict);
    if (sd.decision.verdict == Verdict::InSF) {
      ++affirmed;
      REQUIRE(sd.report.has_value());
      CHECK(sd.report->contained);
      CHECK(sd.report->factorization.word() == w);
      CHECK(sd.report->tw.members.count(w) == 1);
    } else {
      CHECK_FALSE(sd.report.has_value());
    }
  }
  CHECK(affirmed == 14);  // census matches the factorization sweep
}

TEST_CASE("square-free generator", "[decide]") {
  CHECK(thue_generate(0) == Word());
  CHECK(to_string(thue_generate(1)) == "a");
  CHECK(to_string(thue_generate(6)) == "abcacb");
  for (std::size_t len : {1u, 10u, 100u, 1000u}) CHECK(is_square_free(thue_generate(len)));

  auto big = thue_generate(1000);
  for (std::size_t len : {1u, 10u, 100u, 999u}) {
    auto small = thue_generate(len);
    CHECK(small == big.prefix(len));
  }
}
