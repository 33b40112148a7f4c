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

#include <random>

#include "doctest.h"
#include "topinf/error.hpp"
#include "topinf/presentation.hpp"
#include "topinf/word.hpp"

using namespace topinf;

namespace {

// Reference free reduction: repeatedly delete the first adjacent x x^-1.
Word naiveReduce(Word w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == -w[i + 1]) {
        w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

Word randomWord(std::mt19937_64& rng, int rank, std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) {
    int g = static_cast<int>(rng() % rank);
    w.push_back(letterOf(g, rng() % 2 == 1));
  }
  return w;
}

}  // namespace

TEST_CASE("letter encoding round-trips through ranks") {
  for (int rank = 0; rank < 10; ++rank) {
    CHECK(letterRank(letterFromRank(rank)) == rank);
  }
  CHECK(letterOf(0) == 1);
  CHECK(letterOf(0, true) == -1);
  CHECK(generatorOf(-3) == 2);
  CHECK(isInverse(-3));
}

TEST_CASE("free reduction agrees with the naive rewriting") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    Word w = randomWord(rng, 2, rng() % 20);
    Word r = freeReduce(w);
    CHECK(r == naiveReduce(w));
    CHECK(isFreelyReduced(r));
    CHECK(freeReduce(concat(w, inverse(w))).empty());
  }
}

TEST_CASE("cyclic reduction is a conjugate with no cancelling ends") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    Word w = randomWord(rng, 3, rng() % 16);
    Word c = cyclicReduce(w);
    CHECK(isFreelyReduced(c));
    if (c.size() >= 2) CHECK(c.front() != -c.back());
    CHECK(c.size() % 2 == freeReduce(w).size() % 2);
  }
  CHECK(cyclicReduce(Word{1, 2, -1}) == Word{2});
}

TEST_CASE("shortlex order compares length first") {
  CHECK(shortlexCompare(Word{1}, Word{1, 1}) < 0);
  CHECK(shortlexCompare(Word{1}, Word{-1}) < 0);  // a < A
  CHECK(shortlexCompare(Word{-1}, Word{2}) < 0);  // A < b
  CHECK(shortlexCompare(Word{2, 1}, Word{2, 1}) == 0);
}

TEST_CASE("presentation parsing") {
  SUBCASE("cyclic group") {
    Presentation p = parsePresentation("gens: a\nrel: a^3\n");
    CHECK(p.rank() == 1);
    CHECK(p.maxRelatorLength() == 3);
    CHECK(p.relators().at(0) == Word{1, 1, 1});
  }
  SUBCASE("commutators, comments and groups") {
    Presentation p = parsePresentation(
        "# torus\ngens: a b\nrel: [a,b]\nrel: (ab)^2 b^-2 a^-2 # not reduced\n");
    CHECK(p.relators().at(0) == Word{1, 2, -1, -2});
    CHECK(p.maxRelatorLength() == 4);
    for (const Word& w : p.relators()) CHECK(cyclicReduce(w) == w);
  }
  SUBCASE("text round trip keeps the fingerprint") {
    Presentation p = parsePresentation("gens: x y\nrel: x y x^-1 y^-1\nrel: x^5");
    Presentation q = parsePresentation(p.toText());
    CHECK(q.relators() == p.relators());
    CHECK(q.fingerprint() == p.fingerprint());
  }
  SUBCASE("longest-match generator names") {
    Presentation p = parsePresentation("gens: a ab\nrel: ab a");
    CHECK(p.relators().at(0) == Word{2, 1});
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parsePresentation("gens: a\nrel: b"), PreconditionError);
    CHECK_THROWS_AS(parsePresentation("rel: a"), PreconditionError);
  }
}

TEST_CASE("word formatting") {
  Presentation p = parsePresentation("gens: a b\nrel: [a,b]");
  CHECK(p.format(Word{}) == "1");
  CHECK(p.format(Word{1, -2}) == "a b^-1");
  CHECK(p.parseWord(p.format(Word{1, -2, 2, 2})) == Word{1, -2, 2, 2});
}
