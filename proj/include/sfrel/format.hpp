#pragma once

#include <cctype>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sfrel/lindecomp.hpp"
#include "sfrel/system.hpp"
#include "sfrel/word.hpp"

namespace sfrel {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Whitespace-separated tokens, except that a token opening with '[' runs to
/// the closing ']' so bracketed words survive as single tokens.
inline std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    if (s[i] == '[') {
      while (j < s.size() && s[j] != ']') ++j;
      if (j == s.size()) throw std::invalid_argument("parse: unterminated '['");
      ++j;
    } else {
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    }
    out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Content lines of a text block: comments stripped at '#', blanks dropped.
inline std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto t = trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

}  // namespace detail

/// Inverse of to_string(Word): "-" is the empty word, "[x y z]" lists letter
/// tokens, anything else is a juxtaposition of single-character letters.
inline Word parse_word(std::string_view text, const AlphabetPtr& alphabet) {
  text = detail::trim(text);
  if (text.empty()) throw std::invalid_argument("parse: empty word text, use '-'");
  if (text == "-") return Word(alphabet, {});
  std::vector<Symbol> syms;
  if (text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("parse: unterminated '['");
    std::istringstream in{std::string(text.substr(1, text.size() - 2))};
    std::string tok;
    while (in >> tok) {
      auto s = alphabet->find(tok);
      if (!s) throw std::invalid_argument("parse: unknown letter '" + tok + "'");
      syms.push_back(*s);
    }
  } else {
    for (char c : text) {
      auto s = alphabet->find(std::string_view(&c, 1));
      if (!s) throw std::invalid_argument("parse: unknown letter '" + std::string(1, c) + "'");
      syms.push_back(*s);
    }
  }
  return Word(alphabet, std::move(syms));
}

/// System file grammar: first content line `alphabet: <letters>`, every
/// further line `<word> = <word>`. '#' comments anywhere.
inline RewriteSystem parse_system(std::string_view text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw std::invalid_argument("parse: empty system description");
  constexpr std::string_view kHeader = "alphabet:";
  if (lines[0].rfind(kHeader, 0) != 0)
    throw std::invalid_argument("parse: first line must start with 'alphabet:'");
  auto letters = detail::tokens(std::string_view(lines[0]).substr(kHeader.size()));
  auto alphabet = std::make_shared<const Alphabet>(letters);

  std::vector<Relation> rels;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    auto eq = line.find('=');
    if (eq == std::string::npos || line.find('=', eq + 1) != std::string::npos)
      throw std::invalid_argument("parse: relation line needs exactly one '=': " + line);
    auto lhs = detail::trim(std::string_view(line).substr(0, eq));
    auto rhs = detail::trim(std::string_view(line).substr(eq + 1));
    if (lhs.empty() || rhs.empty())
      throw std::invalid_argument("parse: relation side missing, spell the empty word '-'");
    rels.emplace_back(parse_word(lhs, alphabet), parse_word(rhs, alphabet));
  }
  return RewriteSystem(alphabet, std::move(rels));
}

/// Line format for a linear decomposition, one frame per line:
///   frames <n>
///   frame <p> <x> <q>     (n times)
///   u <u_2> ... <u_n>     (when n > 1)
///   v <v_1> ... <v_{n-1}> (when n > 1)
inline std::string format_certificate(const LinearDecomposition& cert) {
  std::ostringstream out;
  const std::size_t n = cert.order();
  out << "frames " << n << "\n";
  for (std::size_t i = 0; i < n; ++i)
    out << "frame " << to_string(cert.left_margins[i]) << ' ' << to_string(cert.blocks[i]) << ' '
        << to_string(cert.right_margins[i]) << "\n";
  if (n > 1) {
    out << "u";
    for (const Word& u : cert.right_witnesses) out << ' ' << to_string(u);
    out << "\nv";
    for (const Word& v : cert.left_witnesses) out << ' ' << to_string(v);
    out << "\n";
  }
  return out.str();
}

/// Parses the format_certificate layout. Token-level shape is enforced here;
/// whether the result satisfies the decomposition conditions is verify()'s
/// business, so witness-count mismatches pass through for it to report.
inline LinearDecomposition parse_certificate(std::string_view text, const AlphabetPtr& alphabet) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw std::invalid_argument("parse: empty certificate");
  auto head = detail::tokens(lines[0]);
  if (head.size() != 2 || head[0] != "frames")
    throw std::invalid_argument("parse: certificate must open with 'frames <n>'");
  std::size_t n = 0;
  try {
    n = std::stoul(head[1]);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse: bad frame count '" + head[1] + "'");
  }
  if (n == 0 || lines.size() < n + 1)
    throw std::invalid_argument("parse: certificate truncated before its frames");

  LinearDecomposition cert;
  for (std::size_t i = 1; i <= n; ++i) {
    auto toks = detail::tokens(lines[i]);
    if (toks.size() != 4 || toks[0] != "frame")
      throw std::invalid_argument("parse: expected 'frame <p> <x> <q>', got: " + lines[i]);
    cert.left_margins.push_back(parse_word(toks[1], alphabet));
    cert.blocks.push_back(parse_word(toks[2], alphabet));
    cert.right_margins.push_back(parse_word(toks[3], alphabet));
  }
  for (std::size_t i = n + 1; i < lines.size(); ++i) {
    auto toks = detail::tokens(lines[i]);
    if (toks.empty()) continue;
    auto* dst = toks[0] == "u"   ? &cert.right_witnesses
                : toks[0] == "v" ? &cert.left_witnesses
                                 : nullptr;
    if (!dst) throw std::invalid_argument("parse: unexpected certificate line: " + lines[i]);
    for (std::size_t k = 1; k < toks.size(); ++k) dst->push_back(parse_word(toks[k], alphabet));
  }
  return cert;
}

namespace detail {

inline std::string dot_quote(const Word& w) {
  std::string label = to_string(w);
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

/// Undirected derivation graph of the class of w, in DOT. Nodes are class
/// members, edges single rewrite steps labeled with the relation and the
/// position it fired at; the seed is drawn with a doubled border.
inline std::string class_dot(const Word& w, const RewriteSystem& sys, std::size_t budget) {
  auto cls = enumerate_class(w, sys, budget);
  std::ostringstream out;
  out << "graph class {\n";
  if (cls.status == ClassStatus::Truncated)
    out << "  // truncated at budget " << budget << "\n";
  out << "  " << detail::dot_quote(w) << " [peripheries=2];\n";
  for (const Word& m : cls.members)
    if (!(m == w)) out << "  " << detail::dot_quote(m) << ";\n";
  for (const Word& m : cls.members) {
    for (const RewriteStep& st : rewrite_steps(m, sys)) {
      if (!(m < st.result) || !cls.members.count(st.result)) continue;
      const Relation& r = sys.relations()[st.relation];
      out << "  " << detail::dot_quote(m) << " -- " << detail::dot_quote(st.result) << " [label=\""
          << to_string(r.lhs) << " = " << to_string(r.rhs) << " @" << st.position << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace sfrel
