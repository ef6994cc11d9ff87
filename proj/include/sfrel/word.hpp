#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sfrel {

using Symbol = std::int32_t;

/// Finite ordered set of letter tokens. Declaration order is the canonical
/// symbol order used by every shortlex comparison in this library.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw std::invalid_argument("alphabet: must not be empty");
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      const std::string& tok = letters_[i];
      if (tok.empty()) throw std::invalid_argument("alphabet: empty letter token");
      if (!index_.emplace(tok, static_cast<Symbol>(i)).second)
        throw std::invalid_argument("alphabet: duplicate letter '" + tok + "'");
    }
  }

  /// Convenience: one single-character letter per char of `letters`.
  static std::shared_ptr<const Alphabet> chars(std::string_view letters) {
    std::vector<std::string> toks;
    toks.reserve(letters.size());
    for (char c : letters) toks.emplace_back(1, c);
    return std::make_shared<const Alphabet>(std::move(toks));
  }

  std::size_t size() const { return letters_.size(); }

  const std::string& letter(Symbol s) const {
    return letters_.at(static_cast<std::size_t>(s));
  }

  std::optional<Symbol> find(std::string_view tok) const {
    auto it = index_.find(std::string(tok));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool single_char_letters() const {
    return std::all_of(letters_.begin(), letters_.end(),
                       [](const std::string& t) { return t.size() == 1; });
  }

  bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }

 private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, Symbol> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Immutable word over an alphabet.
///
/// The default-constructed word is the empty word; it carries no alphabet and
/// is compatible with every other word. Words compare by their symbol
/// sequences; operator< is shortlex (length first, then symbolwise), so
/// ordered containers of words enumerate in shortlex order.
class Word {
 public:
  Word() = default;

  Word(AlphabetPtr alphabet, std::vector<Symbol> symbols)
      : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)) {
    if (!symbols_.empty() && !alphabet_)
      throw std::invalid_argument("word: non-empty word requires an alphabet");
    for (Symbol s : symbols_)
      if (s < 0 || static_cast<std::size_t>(s) >= alphabet_->size())
        throw std::invalid_argument("word: symbol id out of range");
  }

  /// Parses one single-character letter per char of `text`.
  /// Multi-character letters have no literal form here; see parse_word.
  static Word literal(const AlphabetPtr& alphabet, std::string_view text) {
    if (!alphabet) throw std::invalid_argument("word: null alphabet");
    std::vector<Symbol> syms;
    syms.reserve(text.size());
    for (char c : text) {
      auto s = alphabet->find(std::string_view(&c, 1));
      if (!s) throw std::invalid_argument(std::string("word: unknown letter '") + c + "'");
      syms.push_back(*s);
    }
    return Word(alphabet, std::move(syms));
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }

  Word substr(std::size_t pos, std::size_t len) const {
    if (pos > size() || pos + len > size()) throw std::out_of_range("word: substr");
    return Word(alphabet_, std::vector<Symbol>(symbols_.begin() + pos, symbols_.begin() + pos + len));
  }

  Word prefix(std::size_t len) const { return substr(0, len); }
  Word suffix(std::size_t len) const { return substr(size() - len, len); }

  bool starts_with(const Word& w) const {
    return w.size() <= size() && std::equal(w.symbols_.begin(), w.symbols_.end(), symbols_.begin());
  }

  bool ends_with(const Word& w) const {
    return w.size() <= size() &&
           std::equal(w.symbols_.rbegin(), w.symbols_.rend(), symbols_.rbegin());
  }

  /// First start position >= from where w occurs as a subword.
  std::optional<std::size_t> find(const Word& w, std::size_t from = 0) const {
    if (w.size() > size()) return std::nullopt;
    for (std::size_t i = from; i + w.size() <= size(); ++i)
      if (std::equal(w.symbols_.begin(), w.symbols_.end(), symbols_.begin() + i)) return i;
    return std::nullopt;
  }

  bool contains(const Word& w) const { return find(w).has_value(); }

  bool operator==(const Word& o) const { return symbols_ == o.symbols_; }
  bool operator!=(const Word& o) const { return !(*this == o); }

  // Shortlex: shorter first, equal lengths by symbol sequence.
  bool operator<(const Word& o) const {
    if (size() != o.size()) return size() < o.size();
    return symbols_ < o.symbols_;
  }
  bool operator>(const Word& o) const { return o < *this; }
  bool operator<=(const Word& o) const { return !(o < *this); }
  bool operator>=(const Word& o) const { return !(*this < o); }

 private:
  AlphabetPtr alphabet_;
  std::vector<Symbol> symbols_;
};

using WordSet = std::set<Word>;

inline bool compatible(const Word& a, const Word& b) {
  if (!a.alphabet() || !b.alphabet()) return true;
  return a.alphabet() == b.alphabet() || *a.alphabet() == *b.alphabet();
}

/// Concatenation. Throws if the operands carry different alphabets.
inline Word concat(const Word& a, const Word& b) {
  if (!compatible(a, b)) throw std::invalid_argument("concat: alphabet mismatch");
  std::vector<Symbol> syms;
  syms.reserve(a.size() + b.size());
  syms.insert(syms.end(), a.symbols().begin(), a.symbols().end());
  syms.insert(syms.end(), b.symbols().begin(), b.symbols().end());
  return Word(a.alphabet() ? a.alphabet() : b.alphabet(), std::move(syms));
}

inline Word operator+(const Word& a, const Word& b) { return concat(a, b); }

/// Canonical text form: "-" for the empty word, juxtaposed letters when the
/// alphabet is single-character, otherwise a bracketed token list.
inline std::string to_string(const Word& w) {
  if (w.empty()) return "-";
  const AlphabetPtr& a = w.alphabet();
  if (a->single_char_letters()) {
    std::string out;
    out.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out += a->letter(w[i]);
    return out;
  }
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a->letter(w[i]);
  }
  out += ']';
  return out;
}

/// Witness for a square subword: carrier = prefix . half . half . suffix.
struct SquareWitness {
  Word prefix;
  Word half;
  Word suffix;
};

/// Leftmost-then-shortest square subword, or nullopt when the word is
/// square-free. Among all factorizations w = u s s v with s non-empty the
/// returned witness minimizes |u| first and |s| second.
///
/// O(|w|^2): for each half-length d a right-to-left sweep of the run lengths
/// m(i) of the longest common prefix of w[i..] and w[i+d..]; a square of
/// half-length d starts at i iff m(i) >= d.
inline std::optional<SquareWitness> find_square(const Word& w) {
  const std::size_t n = w.size();
  std::size_t best_start = n, best_half = 0;
  std::vector<std::size_t> match;
  for (std::size_t d = 1; 2 * d <= n; ++d) {
    match.assign(n - d + 1, 0);
    for (std::size_t i = n - d; i-- > 0;)
      match[i] = (w[i] == w[i + d]) ? match[i + 1] + 1 : 0;
    for (std::size_t i = 0; i + 2 * d <= n; ++i) {
      if (match[i] >= d) {
        if (i < best_start) {
          best_start = i;
          best_half = d;
        }
        break;
      }
    }
    if (best_start == 0) break;
  }
  if (best_half == 0) return std::nullopt;
  return SquareWitness{w.substr(0, best_start), w.substr(best_start, best_half),
                       w.substr(best_start + 2 * best_half, n - best_start - 2 * best_half)};
}

inline bool is_square_free(const Word& w) { return !find_square(w).has_value(); }

/// A designated occurrence of `base` inside prefix . base . suffix.
class Occurrence {
 public:
  Occurrence(Word prefix, Word base, Word suffix)
      : prefix_(std::move(prefix)), base_(std::move(base)), suffix_(std::move(suffix)) {
    if (!compatible(prefix_, base_) || !compatible(base_, suffix_) ||
        !compatible(prefix_, suffix_))
      throw std::invalid_argument("occurrence: alphabet mismatch");
  }

  static Occurrence at(const Word& carrier, std::size_t start, std::size_t length) {
    return Occurrence(carrier.substr(0, start), carrier.substr(start, length),
                      carrier.substr(start + length, carrier.size() - start - length));
  }

  const Word& prefix() const { return prefix_; }
  const Word& base() const { return base_; }
  const Word& suffix() const { return suffix_; }

  std::size_t start() const { return prefix_.size(); }
  std::size_t end() const { return prefix_.size() + base_.size(); }

  Word carrier() const { return prefix_ + base_ + suffix_; }

  bool operator==(const Occurrence& o) const {
    return prefix_ == o.prefix_ && base_ == o.base_ && suffix_ == o.suffix_;
  }

  // Position order; meaningful only between occurrences in one carrier.
  bool operator<(const Occurrence& o) const {
    if (start() != o.start()) return start() < o.start();
    return base_.size() < o.base_.size();
  }

 private:
  Word prefix_;
  Word base_;
  Word suffix_;
};

inline void require_same_carrier(const Occurrence& a, const Occurrence& b) {
  if (a.carrier() != b.carrier())
    throw std::invalid_argument("occurrence: different carrier words");
}

/// True iff `inner` lies inside `outer` (same carrier required).
inline bool occ_contains(const Occurrence& outer, const Occurrence& inner) {
  require_same_carrier(outer, inner);
  return outer.start() <= inner.start() && inner.end() <= outer.end();
}

/// Largest occurrence contained in both, or nullopt when the spans do not
/// overlap in at least one position (occurrence bases here are non-empty
/// exactly when the spans overlap).
inline std::optional<Occurrence> occ_intersection(const Occurrence& a, const Occurrence& b) {
  require_same_carrier(a, b);
  const std::size_t lo = std::max(a.start(), b.start());
  const std::size_t hi = std::min(a.end(), b.end());
  if (lo >= hi) return std::nullopt;
  return Occurrence::at(a.carrier(), lo, hi - lo);
}

/// Smallest occurrence containing both (same carrier required).
inline Occurrence occ_union(const Occurrence& a, const Occurrence& b) {
  require_same_carrier(a, b);
  const std::size_t lo = std::min(a.start(), b.start());
  const std::size_t hi = std::max(a.end(), b.end());
  return Occurrence::at(a.carrier(), lo, hi - lo);
}

}  // namespace sfrel
