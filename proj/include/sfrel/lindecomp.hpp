#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sfrel/closure.hpp"
#include "sfrel/system.hpp"
#include "sfrel/word.hpp"

namespace sfrel {

/// Certificate that a word is a chained product of blocks: the word is
/// blocks[0] + ... + blocks[n-1], and every framed block p_i x_i q_i is a
/// defining word of the tau relation, linked to its neighbours through the
/// margins and witnesses. All indices in the public surgery API are 1-based,
/// matching the usual way such chains are written.
///
/// Conditions checked by verify():
///   (1) for 1 < i <= n:  p_i x_i q_i ~ q_{i-1} u_i
///   (2) for 1 <= i < n:  p_i x_i q_i ~ v_i p_{i+1}
///   (3) for 1 <= i < n:  q_i or p_{i+1} is empty
///   (4) p_1 and q_n are empty
///   (5) n = 1 implies x_1 is a defining word
/// plus structure: blocks non-empty, all five vectors consistently sized.
struct LinearDecomposition {
  std::vector<Word> blocks;           // x_1 .. x_n, non-empty
  std::vector<Word> left_margins;     // p_1 .. p_n
  std::vector<Word> right_margins;    // q_1 .. q_n
  std::vector<Word> right_witnesses;  // u_2 .. u_n
  std::vector<Word> left_witnesses;   // v_1 .. v_{n-1}

  std::size_t order() const { return blocks.size(); }

  Word word() const {
    Word w;
    for (const Word& b : blocks) w = w + b;
    return w;
  }

  /// p_i x_i q_i for 1 <= i <= order().
  Word frame(std::size_t i) const {
    return left_margins.at(i - 1) + blocks.at(i - 1) + right_margins.at(i - 1);
  }

  const Word& u(std::size_t i) const { return right_witnesses.at(i - 2); }
  const Word& v(std::size_t i) const { return left_witnesses.at(i - 1); }

  bool operator==(const LinearDecomposition& o) const {
    return blocks == o.blocks && left_margins == o.left_margins &&
           right_margins == o.right_margins && right_witnesses == o.right_witnesses &&
           left_witnesses == o.left_witnesses;
  }
};

/// One failed certificate condition. `condition` is 0 for structural defects
/// and 1..5 for the chain conditions above; `index` is the 1-based frame the
/// violation is anchored at.
struct Violation {
  int condition;
  std::size_t index;
  std::string detail;
};

/// All violations of `cert` against `tau`; empty means valid. Structural
/// defects that make indexing unsafe short-circuit the remaining checks.
inline std::vector<Violation> verify(const LinearDecomposition& cert, const TauSystem& tau) {
  std::vector<Violation> out;
  const std::size_t n = cert.blocks.size();
  if (n == 0) {
    out.push_back({0, 0, "certificate has no blocks"});
    return out;
  }
  if (cert.left_margins.size() != n || cert.right_margins.size() != n ||
      cert.right_witnesses.size() != n - 1 || cert.left_witnesses.size() != n - 1) {
    out.push_back({0, 0, "margin or witness vectors do not match the block count"});
    return out;
  }
  for (std::size_t i = 1; i <= n; ++i)
    if (cert.blocks[i - 1].empty())
      out.push_back({0, i, "block " + std::to_string(i) + " is empty"});
  if (!out.empty()) return out;

  for (std::size_t i = 2; i <= n; ++i) {
    Word lhs = cert.frame(i);
    Word rhs = cert.right_margins[i - 2] + cert.u(i);
    if (!similar(lhs, rhs, tau))
      out.push_back({1, i,
                     "frame " + std::to_string(i) + " = " + to_string(lhs) +
                         " is not similar to " + to_string(rhs)});
  }
  for (std::size_t i = 1; i < n; ++i) {
    Word lhs = cert.frame(i);
    Word rhs = cert.v(i) + cert.left_margins[i];
    if (!similar(lhs, rhs, tau))
      out.push_back({2, i,
                     "frame " + std::to_string(i) + " = " + to_string(lhs) +
                         " is not similar to " + to_string(rhs)});
  }
  for (std::size_t i = 1; i < n; ++i)
    if (!cert.right_margins[i - 1].empty() && !cert.left_margins[i].empty())
      out.push_back({3, i,
                     "both q" + std::to_string(i) + " and p" + std::to_string(i + 1) +
                         " are non-empty"});
  if (!cert.left_margins[0].empty()) out.push_back({4, 1, "p1 is not empty"});
  if (!cert.right_margins[n - 1].empty())
    out.push_back({4, n, "q" + std::to_string(n) + " is not empty"});
  if (n == 1 && !tau.in_dtau(cert.blocks[0]))
    out.push_back({5, 1, "single block " + to_string(cert.blocks[0]) + " is not a defining word"});
  return out;
}

namespace detail {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

/// Shortest-chain search over one fixed target word. States are
/// (consumed length, right margin of the last frame, its block); placing a
/// frame consumes its non-empty core, so the state graph is acyclic.
class LinSearch {
 public:
  LinSearch(const Word& w, const TauSystem& tau) : w_(w), tau_(tau) {}

  /// Least number of frames that decompose the whole word, or kInf.
  std::size_t least_order() {
    std::size_t best = kInf;
    for (const auto& f : tau_.frame_candidates()) {
      if (!f.p.empty()) continue;  // first frame must have an empty left margin
      if (!matches(f.x, 0)) continue;
      std::size_t rest = remaining(f.x.size(), f.q, f.block);
      if (rest != kInf) best = std::min(best, rest + 1);
    }
    return best;
  }

  /// Canonical certificate of exactly least_order() frames: at every step the
  /// first frame candidate (in canonical order) achieving the minimum is
  /// taken, and every witness is the least completion from the tau tables.
  LinearDecomposition reconstruct(std::size_t order) {
    std::vector<TauSystem::FrameCandidate> chain;
    std::size_t pos = 0;
    Word q_prev;
    int blk = -1;
    std::size_t left = order;
    while (left > 0) {
      bool advanced = false;
      for (const auto& f : tau_.frame_candidates()) {
        if (!admissible(f, pos, q_prev, blk)) continue;
        if (remaining(pos + f.x.size(), f.q, f.block) == left - 1) {
          chain.push_back(f);
          pos += f.x.size();
          q_prev = f.q;
          blk = f.block;
          --left;
          advanced = true;
          break;
        }
      }
      if (!advanced) throw std::logic_error("linear decomposition reconstruction lost its path");
    }
    return assemble(chain, tau_);
  }

  /// Builds the full certificate (margins and least-completion witnesses)
  /// from a chain of frame candidates.
  static LinearDecomposition assemble(const std::vector<TauSystem::FrameCandidate>& chain,
                                      const TauSystem& tau) {
    LinearDecomposition cert;
    const std::size_t n = chain.size();
    for (std::size_t i = 0; i < n; ++i) {
      cert.blocks.push_back(chain[i].x);
      cert.left_margins.push_back(chain[i].p);
      cert.right_margins.push_back(chain[i].q);
    }
    for (std::size_t i = 1; i < n; ++i)
      cert.right_witnesses.push_back(
          tau.prefix_completions(chain[i].block).at(chain[i - 1].q));
    for (std::size_t i = 0; i + 1 < n; ++i)
      cert.left_witnesses.push_back(
          tau.suffix_completions(chain[i].block).at(chain[i + 1].p));
    return cert;
  }

  bool admissible(const TauSystem::FrameCandidate& f, std::size_t pos, const Word& q_prev,
                  int blk) const {
    if (blk < 0) {
      if (!f.p.empty()) return false;
    } else {
      if (!q_prev.empty() && !f.p.empty()) return false;
      if (!tau_.prefix_completions(f.block).count(q_prev)) return false;
      if (!tau_.suffix_completions(blk).count(f.p)) return false;
    }
    return matches(f.x, pos);
  }

 private:
  bool matches(const Word& x, std::size_t pos) const {
    if (pos + x.size() > w_.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (w_[pos + k] != x[k]) return false;
    return true;
  }

  /// Least number of further frames finishing the word from this state.
  std::size_t remaining(std::size_t pos, const Word& q_prev, int blk) {
    if (pos == w_.size()) return q_prev.empty() ? 0 : kInf;
    auto key = std::make_tuple(pos, q_prev, blk);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::size_t best = kInf;
    for (const auto& f : tau_.frame_candidates()) {
      if (!admissible(f, pos, q_prev, blk)) continue;
      std::size_t rest = remaining(pos + f.x.size(), f.q, f.block);
      if (rest != kInf) best = std::min(best, rest + 1);
    }
    memo_.emplace(key, best);
    return best;
  }

  const Word& w_;
  const TauSystem& tau_;
  std::map<std::tuple<std::size_t, Word, int>, std::size_t> memo_;
};

}  // namespace detail

struct LinVerdict {
  bool member;
  std::optional<std::size_t> order;                  // least order, when member
  std::optional<LinearDecomposition> certificate;    // canonical, of least order
};

/// Membership of w among words decomposable into at most n blocks. The least
/// order is computed exactly; n only thresholds the verdict, so is_lin(w, k)
/// for any k >= |w| decides membership outright (blocks are non-empty, hence
/// the order never exceeds the length).
inline LinVerdict is_lin(const Word& w, std::size_t n, const TauSystem& tau) {
  detail::LinSearch search(w, tau);
  std::size_t least = search.least_order();
  if (least == detail::kInf || least > n) return {false, std::nullopt, std::nullopt};
  return {true, least, search.reconstruct(least)};
}

namespace detail {

template <typename Emit>
void lin_chain_dfs(const TauSystem& tau, std::size_t n,
                   std::vector<TauSystem::FrameCandidate>& chain, Emit&& emit) {
  if (!chain.empty() && chain.back().q.empty()) emit(chain);
  if (chain.size() >= n) return;
  for (const auto& f : tau.frame_candidates()) {
    if (chain.empty()) {
      if (!f.p.empty()) continue;
    } else {
      const auto& last = chain.back();
      if (!last.q.empty() && !f.p.empty()) continue;
      if (!tau.prefix_completions(f.block).count(last.q)) continue;
      if (!tau.suffix_completions(last.block).count(f.p)) continue;
    }
    chain.push_back(f);
    lin_chain_dfs(tau, n, chain, emit);
    chain.pop_back();
  }
}

}  // namespace detail

/// All words decomposable into at most n blocks.
inline WordSet lin_enumerate(std::size_t n, const TauSystem& tau) {
  WordSet out;
  std::vector<TauSystem::FrameCandidate> chain;
  detail::lin_chain_dfs(tau, n, chain, [&](const std::vector<TauSystem::FrameCandidate>& c) {
    Word w;
    for (const auto& f : c) w = w + f.x;
    out.insert(w);
  });
  return out;
}

/// Every certificate of order at most n, in canonical depth-first order.
/// Grows fast with n; meant for small orders.
inline std::vector<LinearDecomposition> lin_certificates(std::size_t n, const TauSystem& tau) {
  std::vector<LinearDecomposition> out;
  std::vector<TauSystem::FrameCandidate> chain;
  detail::lin_chain_dfs(tau, n, chain, [&](const std::vector<TauSystem::FrameCandidate>& c) {
    out.push_back(detail::LinSearch::assemble(c, tau));
  });
  return out;
}

/// Every certificate of the fixed word w with order at most n.
inline std::vector<LinearDecomposition> enumerate_certificates(const Word& w, std::size_t n,
                                                               const TauSystem& tau) {
  std::vector<LinearDecomposition> out;
  std::vector<TauSystem::FrameCandidate> chain;
  std::size_t pos = 0;
  auto dfs = [&](auto&& self) -> void {
    if (pos == w.size() && !chain.empty() && chain.back().q.empty())
      out.push_back(detail::LinSearch::assemble(chain, tau));
    if (chain.size() >= n) return;
    for (const auto& f : tau.frame_candidates()) {
      if (pos + f.x.size() > w.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < f.x.size() && ok; ++k) ok = w[pos + k] == f.x[k];
      if (!ok) continue;
      if (chain.empty()) {
        if (!f.p.empty()) continue;
      } else {
        const auto& last = chain.back();
        if (!last.q.empty() && !f.p.empty()) continue;
        if (!tau.prefix_completions(f.block).count(last.q)) continue;
        if (!tau.suffix_completions(last.block).count(f.p)) continue;
      }
      chain.push_back(f);
      pos += f.x.size();
      self(self);
      pos -= f.x.size();
      chain.pop_back();
    }
  };
  dfs(dfs);
  return out;
}

namespace detail {

inline void require_valid(const LinearDecomposition& cert, const TauSystem& tau,
                          const char* who) {
  auto violations = verify(cert, tau);
  if (!violations.empty())
    throw std::invalid_argument(std::string(who) + ": invalid certificate: " +
                                violations.front().detail);
}

inline void require_verifies(const LinearDecomposition& cert, const TauSystem& tau,
                             const char* who) {
  auto violations = verify(cert, tau);
  if (!violations.empty())
    throw std::logic_error(std::string(who) + ": constructed certificate fails to verify: " +
                           violations.front().detail);
}

}  // namespace detail

enum class Side { Left, Right };

/// Keeps frames 1..i (Right) or i..n (Left) of a valid certificate, folding
/// the cut frame's margin into its block. Right truncation at i = n and left
/// truncation at i = 1 are the identity.
inline LinearDecomposition truncate(const LinearDecomposition& cert, std::size_t i, Side side,
                                    const TauSystem& tau) {
  detail::require_valid(cert, tau, "truncate");
  const std::size_t n = cert.order();
  if (i < 1 || i > n) throw std::invalid_argument("truncate: index out of range");
  LinearDecomposition out;
  if (side == Side::Right) {
    out.blocks.assign(cert.blocks.begin(), cert.blocks.begin() + i);
    out.blocks[i - 1] = cert.blocks[i - 1] + cert.right_margins[i - 1];
    out.left_margins.assign(cert.left_margins.begin(), cert.left_margins.begin() + i);
    out.right_margins.assign(cert.right_margins.begin(), cert.right_margins.begin() + i - 1);
    out.right_margins.push_back(Word());
    out.right_witnesses.assign(cert.right_witnesses.begin(),
                               cert.right_witnesses.begin() + (i - 1));
    out.left_witnesses.assign(cert.left_witnesses.begin(), cert.left_witnesses.begin() + (i - 1));
  } else {
    out.blocks.assign(cert.blocks.begin() + (i - 1), cert.blocks.end());
    out.blocks[0] = cert.left_margins[i - 1] + cert.blocks[i - 1];
    out.left_margins.push_back(Word());
    out.left_margins.insert(out.left_margins.end(), cert.left_margins.begin() + i,
                            cert.left_margins.end());
    out.right_margins.assign(cert.right_margins.begin() + (i - 1), cert.right_margins.end());
    out.right_witnesses.assign(cert.right_witnesses.begin() + (i - 1),
                               cert.right_witnesses.end());
    out.left_witnesses.assign(cert.left_witnesses.begin() + (i - 1), cert.left_witnesses.end());
  }
  detail::require_verifies(out, tau, "truncate");
  return out;
}

/// Replaces block i by a congruent non-empty word. Sound because the defining
/// word set of a tau built from a proper analysis is closed under the source
/// congruence, so the reframed block stays in its block.
inline LinearDecomposition substitute(const LinearDecomposition& cert, std::size_t i,
                                      const Word& replacement, const RewriteSystem& system,
                                      std::size_t budget, const TauSystem& tau) {
  detail::require_valid(cert, tau, "substitute");
  const std::size_t n = cert.order();
  if (i < 1 || i > n) throw std::invalid_argument("substitute: index out of range");
  if (replacement.empty()) throw std::invalid_argument("substitute: replacement must be non-empty");
  switch (equal_mod(cert.blocks[i - 1], replacement, system, budget)) {
    case Ternary::Yes: break;
    case Ternary::No:
      throw std::invalid_argument("substitute: replacement is not congruent to the block");
    case Ternary::Indeterminate:
      throw std::invalid_argument(
          "substitute: congruence with the block not established within budget");
  }
  LinearDecomposition out = cert;
  out.blocks[i - 1] = replacement;
  detail::require_verifies(out, tau, "substitute");
  return out;
}

/// Splices a certificate of x = x1..xn with one of y = y1..ym across an
/// overlap: xn = x'e and y1 = ey' glue to z = x1..x{n-1} x' e y' y2..ym.
/// The result has n + m blocks when x' or y' is non-empty, n + m - 1 when
/// both are empty.
inline LinearDecomposition splice(const LinearDecomposition& cx, const LinearDecomposition& cy,
                                  const Word& e, const Word& xp, const Word& yp,
                                  const TauSystem& tau) {
  detail::require_valid(cx, tau, "splice");
  detail::require_valid(cy, tau, "splice");
  const std::size_t n = cx.order(), m = cy.order();
  if (cx.blocks[n - 1] != xp + e)
    throw std::invalid_argument("splice: last block of the left certificate is not x'e");
  if (cy.blocks[0] != e + yp)
    throw std::invalid_argument("splice: first block of the right certificate is not ey'");

  LinearDecomposition out;
  auto copy_y_frames = [&](std::size_t from_block) {
    for (std::size_t k = from_block; k <= m; ++k) {
      out.blocks.push_back(cy.blocks[k - 1]);
      out.left_margins.push_back(cy.left_margins[k - 1]);
      out.right_margins.push_back(cy.right_margins[k - 1]);
    }
  };
  auto copy_y_right_witnesses = [&](std::size_t from) {
    for (std::size_t k = from; k <= m; ++k) out.right_witnesses.push_back(cy.u(k));
  };
  auto copy_y_left_witnesses = [&](std::size_t from) {
    for (std::size_t k = from; k + 1 <= m; ++k) out.left_witnesses.push_back(cy.v(k));
  };

  if (!xp.empty()) {
    // x' becomes its own block framed p_n | x' | e, and y joins whole.
    out = cx;
    out.blocks[n - 1] = xp;
    out.right_margins[n - 1] = e;
    out.left_witnesses.push_back(cx.left_margins[n - 1] + cx.blocks[n - 1]);  // v_n = p_n x_n
    out.blocks.push_back(cy.blocks[0]);
    out.left_margins.push_back(Word());
    out.right_margins.push_back(cy.right_margins[0]);
    out.right_witnesses.push_back(yp + cy.right_margins[0]);  // u_{n+1} = y' q'_1
    copy_y_frames(2);
    copy_y_right_witnesses(2);
    copy_y_left_witnesses(1);
  } else if (!yp.empty()) {
    // x_n = e stays; y' becomes its own block framed e | y' | q'_1.
    out = cx;
    out.blocks.push_back(yp);
    out.left_margins.push_back(e);
    out.right_margins.push_back(cy.right_margins[0]);
    out.right_witnesses.push_back(cy.blocks[0] + cy.right_margins[0]);  // u_{n+1} = y_1 q'_1
    out.left_witnesses.push_back(cx.left_margins[n - 1]);               // v_n = p_n
    copy_y_frames(2);
    copy_y_right_witnesses(2);
    copy_y_left_witnesses(1);
  } else {
    // Both empty: x_n = e = y_1 is shared. With m = 1 nothing is added.
    out = cx;
    if (m >= 2) {
      if (cy.left_margins[1].empty()) {
        // Frame n keeps cx's framing p_n | e | eps; the next frame needs no
        // help from q_n, so its incoming witness is its own frame word.
        out.left_witnesses.push_back(cx.left_margins[n - 1] + cx.blocks[n - 1]);  // v_n = p_n e
        out.right_witnesses.push_back(cy.left_margins[1] + cy.blocks[1] +
                                      cy.right_margins[1]);  // u_{n+1} = frame'_2
        copy_y_frames(2);
        copy_y_right_witnesses(3);
        copy_y_left_witnesses(2);
      } else {
        // p'_2 non-empty forces q'_1 empty, so cy frames e as eps | e | eps;
        // switch frame n to that framing.
        if (!cx.left_margins[n - 1].empty()) {
          out.left_margins[n - 1] = Word();
          if (n >= 2) {
            // q_{n-1} is empty by condition (3); refresh the seam witnesses.
            out.right_witnesses[n - 2] = cy.blocks[0];    // u_n with q_{n-1} empty
            out.left_witnesses[n - 2] = cx.frame(n - 1);  // v_{n-1} with p_n now empty
          }
        }
        copy_y_frames(2);
        copy_y_right_witnesses(2);
        copy_y_left_witnesses(1);
      }
    }
  }
  detail::require_verifies(out, tau, "splice");
  return out;
}

/// Congruence witnesses for the flanks of frame i: words f and g with
/// x_1..x_{i-1} congruent to f p_i and x_{i+1}..x_n congruent to q_i g under
/// `system`. Requires a tau whose similarity refines the congruence of
/// `system` (any tau built from its analysis qualifies).
inline std::pair<Word, Word> flank_witnesses(const LinearDecomposition& cert, std::size_t i,
                                             const RewriteSystem& system, std::size_t budget,
                                             const TauSystem& tau) {
  detail::require_valid(cert, tau, "flank_witnesses");
  const std::size_t n = cert.order();
  if (i < 1 || i > n) throw std::invalid_argument("flank_witnesses: index out of range");

  std::vector<Word> f(n + 1); // f[i] for frame i
  f[1] = Word();
  for (std::size_t k = 2; k <= n; ++k) {
    if (!cert.right_margins[k - 2].empty()) {
      Word all;
      for (std::size_t j = 1; j < k; ++j) all = all + cert.blocks[j - 1];
      f[k] = all;
    } else {
      f[k] = f[k - 1] + cert.v(k - 1);
    }
  }
  std::vector<Word> g(n + 1);
  g[n] = Word();
  for (std::size_t k = n - 1; k >= 1; --k) {
    if (!cert.left_margins[k].empty()) {
      Word all;
      for (std::size_t j = k + 1; j <= n; ++j) all = all + cert.blocks[j - 1];
      g[k] = all;
    } else {
      g[k] = cert.u(k + 1) + g[k + 1];
    }
  }

  Word left;
  for (std::size_t j = 1; j < i; ++j) left = left + cert.blocks[j - 1];
  Word right;
  for (std::size_t j = i + 1; j <= n; ++j) right = right + cert.blocks[j - 1];
  if (equal_mod(left, f[i] + cert.left_margins[i - 1], system, budget) != Ternary::Yes)
    throw std::logic_error("flank_witnesses: left witness failed its congruence check");
  if (equal_mod(right, cert.right_margins[i - 1] + g[i], system, budget) != Ternary::Yes)
    throw std::logic_error("flank_witnesses: right witness failed its congruence check");
  return {f[i], g[i]};
}

/// Memoizing front-end for least orders: one instance per tau, shared across
/// many words.
class LinOracle {
 public:
  explicit LinOracle(const TauSystem& tau) : tau_(tau) {}

  /// Least order of w, or nullopt when w has no decomposition.
  std::optional<std::size_t> least_order(const Word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    detail::LinSearch search(w, tau_);
    std::size_t least = search.least_order();
    std::optional<std::size_t> result;
    if (least != detail::kInf) result = least;
    cache_.emplace(w, result);
    return result;
  }

  bool in_lin(const Word& w) { return least_order(w).has_value(); }

  bool in_lin(const Word& w, std::size_t n) {
    auto lo = least_order(w);
    return lo && *lo <= n;
  }

  const TauSystem& tau() const { return tau_; }

 private:
  const TauSystem& tau_;
  std::map<Word, std::optional<std::size_t>> cache_;
};

}  // namespace sfrel
