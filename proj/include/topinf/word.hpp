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

#ifndef TOPINF_WORD_HPP
#define TOPINF_WORD_HPP

#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

namespace topinf {

/// A signed generator index: generator i is encoded as +(i+1), its inverse
/// as -(i+1). Zero is never a valid letter.
using Letter = std::int32_t;

inline constexpr Letter letterOf(int generator, bool inverse = false) {
  return inverse ? -(generator + 1) : generator + 1;
}
inline constexpr int generatorOf(Letter x) { return (x > 0 ? x : -x) - 1; }
inline constexpr bool isInverse(Letter x) { return x < 0; }

/// Position of a letter in the alphabet a < A < b < B < ... used for
/// shortlex comparisons and for the letter order of breadth-first search.
inline constexpr int letterRank(Letter x) {
  return 2 * generatorOf(x) + (x < 0 ? 1 : 0);
}
inline constexpr Letter letterFromRank(int rank) {
  return letterOf(rank / 2, rank % 2 == 1);
}

using Word = std::vector<Letter>;

Word freeReduce(std::span<const Letter> w);
Word inverse(std::span<const Letter> w);
Word concat(std::span<const Letter> u, std::span<const Letter> v);
/// freeReduce(g^-1 w g)
Word conjugate(std::span<const Letter> w, std::span<const Letter> g);
/// Free reduction followed by removal of inverse pairs across the ends.
Word cyclicReduce(std::span<const Letter> w);
bool isFreelyReduced(std::span<const Letter> w);

/// Shortlex comparison under letterRank: negative, zero or positive.
int shortlexCompare(std::span<const Letter> u, std::span<const Letter> v);

/// Renders a word with the given generator names; inverses are written as
/// name^-1 and runs are not collapsed. The empty word renders as "1".
std::string formatWord(std::span<const Letter> w,
                       const std::vector<std::string>& names);

}  // namespace topinf

#endif  // TOPINF_WORD_HPP
