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

#include <array>
#include <random>
#include <set>

#include "doctest.h"
#include "topinf/engine.hpp"
#include "topinf/error.hpp"
#include "topinf/families.hpp"
#include "topinf/rewriting.hpp"

using namespace topinf;

namespace {

Word randomWord(std::mt19937_64& rng, int rank, std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) {
    w.push_back(letterOf(static_cast<int>(rng() % rank), rng() % 2 == 1));
  }
  return w;
}

using M3 = std::array<std::int64_t, 9>;

M3 mul(const M3& a, const M3& b) {
  M3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[3 * i + j] += a[3 * i + k] * b[3 * k + j];
  return c;
}

// Heisenberg oracle: x = I + E12, y = I + E23 and their inverses.
M3 heisenbergMatrix(const Word& w) {
  const M3 id{1, 0, 0, 0, 1, 0, 0, 0, 1};
  M3 m = id;
  for (Letter x : w) {
    M3 g = id;
    std::int64_t s = isInverse(x) ? -1 : 1;
    if (generatorOf(x) == 0) g[1] = s; else g[5] = s;
    m = mul(m, g);
  }
  return m;
}

// Exponent sums: the abelianization of a presentation with n generators.
std::vector<std::int64_t> exponentSums(const Word& w, int n) {
  std::vector<std::int64_t> v(n, 0);
  for (Letter x : w) v[generatorOf(x)] += isInverse(x) ? -1 : 1;
  return v;
}

// Group axioms and relators for a model, on random words.
void checkModel(const GroupModel& m, std::uint64_t seed) {
  const Engine& e = *m.engine;
  std::mt19937_64 rng(seed);
  const int n = m.presentation.rank();
  for (const Word& r : m.presentation.relators()) {
    CHECK(e.same(e.evaluate(r), e.identity()));
  }
  for (int t = 0; t < 100; ++t) {
    Word u = randomWord(rng, n, rng() % 10), v = randomWord(rng, n, rng() % 10);
    Element eu = e.evaluate(u), ev = e.evaluate(v);
    CHECK(e.same(e.evaluate(concat(u, v)), e.multiply(eu, ev)));
    CHECK(e.same(e.multiply(eu, e.inverse(eu)), e.identity()));
    CHECK(e.same(e.evaluate(inverse(u)), e.inverse(eu)));
    // Canonical keys of surface elements cost a ball search; keep words short.
    if (e.uniqueRepresentation() || u.size() <= 4) CHECK(e.key(eu) == e.canonical(u));
    if (e.same(eu, ev)) CHECK(e.hash(eu) == e.hash(ev));
  }
}

}  // namespace

TEST_CASE("all built-in families satisfy the group axioms and their relators") {
  for (const char* name : {"z1", "z2", "z3", "z2-altgens", "z3-altgens", "2z",
                           "free2", "heisenberg", "sol", "surface2",
                           "surface3", "f2xz2", "cyclic3", "cyclic4"}) {
    CAPTURE(name);
    checkModel(makeFamily(name), 5);
  }
}

TEST_CASE("unknown families and bad parameters are rejected") {
  CHECK_THROWS_AS(makeFamily("nosuch"), PreconditionError);
  CHECK_THROWS_AS(makeFamily("surface1"), PreconditionError);
  CHECK_THROWS_AS(makeFamily("sol:1,0,0,1"), PreconditionError);  // trace 2
  CHECK_THROWS_AS(makeFamily("z0"), PreconditionError);
}

TEST_CASE("free abelian engine matches exponent sums") {
  GroupModel m = makeFamily("z3");
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    Word u = randomWord(rng, 3, rng() % 12), v = randomWord(rng, 3, rng() % 12);
    CHECK(m.engine->equal(u, v) == (exponentSums(u, 3) == exponentSums(v, 3)));
  }
}

TEST_CASE("free group engine matches free reduction") {
  GroupModel m = makeFamily("free2");
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    Word u = randomWord(rng, 2, rng() % 8), v = randomWord(rng, 2, rng() % 8);
    CHECK(m.engine->equal(u, v) == (freeReduce(u) == freeReduce(v)));
  }
}

TEST_CASE("Heisenberg engine matches the matrix model") {
  GroupModel m = makeFamily("heisenberg");
  std::mt19937_64 rng(3);
  int equalPairs = 0;
  for (int t = 0; t < 2000; ++t) {
    Word u = randomWord(rng, 2, rng() % 7), v = randomWord(rng, 2, rng() % 7);
    bool same = heisenbergMatrix(u) == heisenbergMatrix(v);
    equalPairs += same;
    CHECK(m.engine->equal(u, v) == same);
  }
  CHECK(equalPairs > 0);
  // [x,y] is central and nontrivial.
  Word z = {1, 2, -1, -2};
  CHECK_FALSE(m.engine->equal(z, Word{}));
  CHECK(m.engine->equal(concat(z, Word{1}), concat(Word{1}, z)));
}

TEST_CASE("surface group: short reduced words are nontrivial") {
  // A trivial reduced word contains more than half of a cyclic permutation of
  // the relator (Dehn), so it has length > 4g.
  GroupModel m = makeFamily("surface2");
  std::mt19937_64 rng(4);
  for (int t = 0; t < 500; ++t) {
    Word w = freeReduce(randomWord(rng, 4, 1 + rng() % 6));
    if (w.empty()) continue;
    CHECK_FALSE(m.engine->equal(w, Word{}));
  }
  // Conjugates of the relator and its inverse are trivial.
  const Word r = m.presentation.relators().at(0);
  for (int t = 0; t < 50; ++t) {
    Word g = randomWord(rng, 4, rng() % 6);
    CHECK(m.engine->equal(conjugate(r, g), Word{}));
    CHECK(m.engine->equal(conjugate(inverse(r), g), Word{}));
  }
  // Equality implies equal abelianizations.
  for (int t = 0; t < 300; ++t) {
    Word u = randomWord(rng, 4, rng() % 8), v = randomWord(rng, 4, rng() % 8);
    if (m.engine->equal(u, v)) CHECK(exponentSums(u, 4) == exponentSums(v, 4));
  }
}

TEST_CASE("Dehn reducer removes long relator pieces") {
  const Word r = {1, 2, -1, -2, 3, 4, -3, -4};
  DehnReducer red(r);
  CHECK(red.reduce(r).empty());
  // Five letters of the relator become the inverse of the other three.
  Word five(r.begin(), r.begin() + 5);
  Word rest(r.begin() + 5, r.end());
  CHECK(red.reduce(five) == inverse(rest));
}

TEST_CASE("F2 x Z2 splits into a free part and a free abelian part") {
  GroupModel m = makeFamily("f2xz2");
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    Word u = randomWord(rng, 4, rng() % 10), v = randomWord(rng, 4, rng() % 10);
    auto split = [](const Word& w) {
      Word f;
      std::vector<std::int64_t> z(2, 0);
      for (Letter x : w) {
        if (generatorOf(x) < 2) f.push_back(x);
        else z[generatorOf(x) - 2] += isInverse(x) ? -1 : 1;
      }
      return std::make_pair(freeReduce(f), z);
    };
    CHECK(m.engine->equal(u, v) == (split(u) == split(v)));
  }
}

TEST_CASE("Knuth-Bendix on cyclic groups") {
  for (int n : {2, 3, 4, 5}) {
    CAPTURE(n);
    GroupModel m = makeFamily("cyclic" + std::to_string(n));
    CHECK(m.engine->exact());
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    for (int t = 0; t < 200; ++t) {
      Word u = randomWord(rng, 1, rng() % 12), v = randomWord(rng, 1, rng() % 12);
      auto mod = [n](const Word& w) {
        return ((exponentSums(w, 1)[0] % n) + n) % n;
      };
      CHECK(m.engine->equal(u, v) == (mod(u) == mod(v)));
    }
  }
}

TEST_CASE("Knuth-Bendix: the Z/3 system is confluent with three normal forms") {
  Presentation p({"a"}, {Word{1, 1, 1}});
  RewriteSystem rs = knuthBendix(p);
  CHECK(rs.confluent());
  CHECK(rs.unresolvedCriticalPairs().empty());
  std::set<Word> normalForms;
  for (int k = -6; k <= 6; ++k) {
    Word w(static_cast<std::size_t>(k < 0 ? -k : k), k < 0 ? -1 : 1);
    normalForms.insert(rs.rewrite(w));
  }
  CHECK(normalForms.size() == 3);
  CHECK(rs.rewrite(Word{1, 1, 1}).empty());
  CHECK(rs.rewrite(Word{1, 1}) == Word{-1});  // shortlex prefers the shorter a^-1
}

TEST_CASE("Knuth-Bendix on Z^2 decides equality like exponent sums") {
  Presentation p({"a", "b"}, {Word{1, 2, -1, -2}});
  GroupModel m = modelFromPresentation(p);
  CHECK(m.engine->exact());
  std::mt19937_64 rng(9);
  for (int t = 0; t < 300; ++t) {
    Word u = randomWord(rng, 2, rng() % 10), v = randomWord(rng, 2, rng() % 10);
    CHECK(m.engine->equal(u, v) == (exponentSums(u, 2) == exponentSums(v, 2)));
  }
}

TEST_CASE("rewrite systems round-trip through text") {
  Presentation p({"a", "b"}, {Word{1, 2, -1, -2}});
  RewriteSystem rs = knuthBendix(p);
  RewriteSystem back = RewriteSystem::fromText(rs.toText(p.names()), p);
  REQUIRE(back.rules().size() == rs.rules().size());
  for (std::size_t i = 0; i < rs.rules().size(); ++i) {
    CHECK(back.rules()[i].lhs == rs.rules()[i].lhs);
    CHECK(back.rules()[i].rhs == rs.rules()[i].rhs);
  }
}

TEST_CASE("non-confluent completions are refused unless allowed") {
  // Baumslag-Solitar BS(1,2) needs infinitely many shortlex rules.
  Presentation p({"a", "b"}, {Word{-2, 1, 2, -1, -1}});
  CompletionBudget small;
  small.maxRules = 20;
  CHECK_THROWS_AS(modelFromPresentation(p, false, small), PreconditionError);
  GroupModel m = modelFromPresentation(p, true, small);
  CHECK_FALSE(m.engine->exact());
  CHECK(m.heuristic);
}
