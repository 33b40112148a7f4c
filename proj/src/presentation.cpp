// Copyright 2026 The topinf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "topinf/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace topinf {

namespace {

bool isNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Word power(const Word& w, long k) {
  Word base = k < 0 ? inverse(w) : w;
  Word out;
  for (long i = 0; i < (k < 0 ? -k : k); ++i) {
    out.insert(out.end(), base.begin(), base.end());
  }
  return out;
}

// Recursive-descent reader for one word. Columns are 1-based and offset by
// the position of the word body on its line.
class WordReader {
 public:
  WordReader(std::string_view text, const std::vector<std::string>& names,
             int line, int columnOffset)
      : text_(text), names_(names), line_(line), offset_(columnOffset) {}

  Word readAll() {
    Word w = readSequence();
    skipSpace();
    if (pos_ < text_.size()) fail("unexpected character '" +
                                  std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, offset_ + static_cast<int>(pos_) + 1, msg);
  }

  void skipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  Word readSequence() {
    Word w;
    for (;;) {
      skipSpace();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c == ',' || c == ']' || c == ')') break;
      Word atom = readAtom();
      w.insert(w.end(), atom.begin(), atom.end());
    }
    return w;
  }

  long readExponent() {
    // after '^'
    skipSpace();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    long k = std::stol(std::string(text_.substr(start, pos_ - start)));
    return neg ? -k : k;
  }

  Word maybePower(Word w) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return power(w, readExponent());
    }
    return w;
  }

  Word readAtom() {
    char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      Word u = readSequence();
      skipSpace();
      if (pos_ >= text_.size() || text_[pos_] != ',') {
        fail("expected ',' in commutator");
      }
      ++pos_;
      Word v = readSequence();
      skipSpace();
      if (pos_ >= text_.size() || text_[pos_] != ']') {
        fail("expected ']' closing commutator");
      }
      ++pos_;
      // [u,v] = u v u^-1 v^-1
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      Word ui = inverse(u), vi = inverse(v);
      w.insert(w.end(), ui.begin(), ui.end());
      w.insert(w.end(), vi.begin(), vi.end());
      return maybePower(std::move(w));
    }
    if (c == '(') {
      ++pos_;
      Word u = readSequence();
      skipSpace();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return maybePower(std::move(u));
    }
    if (!isNameChar(c)) {
      fail("unexpected character '" + std::string(1, c) + "'");
    }
    // Longest generator name that prefixes the remaining name characters.
    std::size_t end = pos_;
    while (end < text_.size() && isNameChar(text_[end])) ++end;
    std::string_view run = text_.substr(pos_, end - pos_);
    int best = -1;
    std::size_t bestLen = 0;
    for (std::size_t g = 0; g < names_.size(); ++g) {
      const std::string& n = names_[g];
      if (n.size() > bestLen && run.substr(0, n.size()) == n) {
        best = static_cast<int>(g);
        bestLen = n.size();
      }
    }
    if (best < 0) fail("unknown generator in '" + std::string(run) + "'");
    pos_ += bestLen;
    return maybePower(Word{letterOf(best)});
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ParseError::ParseError(int line, int column, const std::string& message)
    : PreconditionError("line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Presentation::Presentation(std::vector<std::string> names,
                           std::vector<Word> relators) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& n = names[i];
    if (n.empty() || !std::all_of(n.begin(), n.end(), isNameChar)) {
      throw PreconditionError("invalid generator name '" + n + "'");
    }
    if (!seen.insert(n).second) {
      throw PreconditionError("duplicate generator name '" + n + "'");
    }
    generators_.push_back({static_cast<int>(i), n});
  }
  for (const Word& r : relators) {
    for (Letter x : r) {
      if (x == 0 || generatorOf(x) >= rank()) {
        throw PreconditionError("relator letter out of range");
      }
    }
    Word c = cyclicReduce(r);
    if (c.empty()) {
      throw PreconditionError("relator reduces to the empty word");
    }
    maxRelatorLength_ = std::max(maxRelatorLength_, static_cast<int>(c.size()));
    relators_.push_back(std::move(c));
  }
}

std::vector<std::string> Presentation::names() const {
  std::vector<std::string> out;
  out.reserve(generators_.size());
  for (const auto& g : generators_) out.push_back(g.name);
  return out;
}

Word Presentation::parseWord(std::string_view text) const {
  auto n = names();
  return WordReader(text, n, 1, 0).readAll();
}

std::string Presentation::toText() const {
  std::ostringstream out;
  out << "gens:";
  for (const auto& g : generators_) out << ' ' << g.name;
  out << '\n';
  auto n = names();
  for (const Word& r : relators_) {
    out << "rel:";
    for (Letter x : r) {
      out << ' ' << n[static_cast<std::size_t>(generatorOf(x))];
      if (isInverse(x)) out << "^-1";
    }
    out << '\n';
  }
  return out.str();
}

std::uint64_t Presentation::fingerprint() const { return fnv1a(toText()); }

Presentation parsePresentation(std::string_view text) {
  std::vector<std::string> names;
  bool haveGens = false;
  std::vector<Word> relators;
  int lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    ++lineNo;
    start = nl + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (trim(line).empty()) {
      if (nl == text.size()) break;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(lineNo, 1, "expected 'gens:' or 'rel:'");
    }
    std::string key = trim(line.substr(0, colon));
    std::string_view body = line.substr(colon + 1);
    int bodyColumn = static_cast<int>(colon) + 1;
    if (key == "gens") {
      if (haveGens) throw ParseError(lineNo, 1, "duplicate 'gens:' line");
      haveGens = true;
      std::istringstream in{std::string(body)};
      std::string n;
      std::set<std::string> seen;
      while (in >> n) {
        if (!std::all_of(n.begin(), n.end(), isNameChar)) {
          throw ParseError(lineNo, bodyColumn + 1,
                           "invalid generator name '" + n + "'");
        }
        if (!seen.insert(n).second) {
          throw ParseError(lineNo, bodyColumn + 1,
                           "duplicate generator name '" + n + "'");
        }
        names.push_back(n);
      }
    } else if (key == "rel") {
      if (!haveGens) throw ParseError(lineNo, 1, "'rel:' before 'gens:'");
      if (trim(body).empty()) continue;
      Word w = WordReader(body, names, lineNo, bodyColumn).readAll();
      if (cyclicReduce(w).empty()) {
        throw ParseError(lineNo, bodyColumn + 1,
                         "relator reduces to the empty word");
      }
      relators.push_back(std::move(w));
    } else {
      throw ParseError(lineNo, 1, "unknown key '" + key + "'");
    }
    if (nl == text.size()) break;
  }
  if (!haveGens) throw ParseError(lineNo, 1, "missing 'gens:' line");
  return Presentation(std::move(names), std::move(relators));
}

}  // namespace topinf
