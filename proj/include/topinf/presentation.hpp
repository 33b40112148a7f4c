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

#ifndef TOPINF_PRESENTATION_HPP
#define TOPINF_PRESENTATION_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "topinf/error.hpp"
#include "topinf/word.hpp"

namespace topinf {

struct Generator {
  int id = 0;
  std::string name;
};

/// A finite presentation <x_1..x_n | R_1..R_p>. Relators are stored freely
/// and cyclically reduced; maxRelatorLength is the longest of them.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> names, std::vector<Word> relators);

  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  int rank() const { return static_cast<int>(generators_.size()); }
  int maxRelatorLength() const { return maxRelatorLength_; }
  std::vector<std::string> names() const;

  /// Parses a word in this presentation's generators (same grammar as a
  /// relator line body). Not reduced.
  Word parseWord(std::string_view text) const;
  std::string format(const Word& w) const { return formatWord(w, names()); }

  /// Round-trippable text in the presentation file format.
  std::string toText() const;
  /// FNV-1a over toText(); used to key ball caches.
  std::uint64_t fingerprint() const;

 private:
  std::vector<Generator> generators_;
  std::vector<Word> relators_;
  int maxRelatorLength_ = 0;
};

class ParseError : public PreconditionError {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Reads the presentation file format:
///   gens: a b c
///   rel: [a,b] c^-2 a
/// with '#' comments. Atoms are generator names (longest match), name^k,
/// commutators [u,v] and parenthesised groups (u)^k.
Presentation parsePresentation(std::string_view text);

std::uint64_t fnv1a(std::string_view bytes,
                    std::uint64_t seed = 1469598103934665603ull);

}  // namespace topinf

#endif  // TOPINF_PRESENTATION_HPP
