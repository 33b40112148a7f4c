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

#include <numeric>
#include <random>

#include "doctest.h"
#include "topinf/families.hpp"
#include "topinf/homology.hpp"
#include "topinf/pi1.hpp"

using namespace topinf;

namespace {

using Dense = std::vector<std::vector<std::int64_t>>;

std::int64_t det(Dense m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors: D_k = gcd of k x k minors.
void smithOracle(const Dense& rel, std::size_t gens, int& rank,
                 std::vector<std::int64_t>& torsion) {
  std::vector<std::int64_t> D{1};
  for (std::size_t k = 1; k <= std::min(rel.size(), gens); ++k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    std::vector<std::size_t> cur;
    subsets(rel.size(), k, 0, cur, rows);
    subsets(gens, k, 0, cur, cols);
    std::int64_t g = 0;
    for (auto& r : rows)
      for (auto& c : cols) {
        Dense m(k, std::vector<std::int64_t>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = rel[r[i]][c[j]];
        g = std::gcd(g, det(m));
      }
    if (g == 0) break;
    D.push_back(g);
  }
  const std::size_t r = D.size() - 1;
  rank = static_cast<int>(gens - r);
  torsion.clear();
  for (std::size_t k = 1; k <= r; ++k) {
    std::int64_t f = D[k] / D[k - 1];
    if (f > 1) torsion.push_back(f);
  }
}

SparseVector sparse(const std::vector<std::int64_t>& row) {
  SparseVector v;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] != 0) v.emplace_back(static_cast<int>(i), row[i]);
  return v;
}

struct Fixture {
  std::shared_ptr<const BallTable> ball;
  RipsSkeleton skel;
  Fixture(const std::string& family, int R, int d)
      : ball(std::make_shared<const BallTable>(buildBall(makeFamily(family), R))),
        skel(buildRips(ball, d)) {}
};

}  // namespace

TEST_CASE("abelian quotients: hand examples") {
  AbelianQuotient a(3);
  a.addRelation({{0, 2}});
  a.addRelation({{1, 1}, {2, -1}});
  a.solve();
  CHECK(a.rank() == 1);
  CHECK(a.torsion() == std::vector<std::int64_t>{2});

  AbelianQuotient b(2);
  b.addRelation({{0, 2}, {1, 4}});
  b.addRelation({{0, 6}, {1, 8}});
  b.solve();
  CHECK(b.rank() == 0);
  CHECK(b.torsion() == std::vector<std::int64_t>{2, 4});
}

TEST_CASE("abelian quotients agree with determinantal divisors") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    const std::size_t gens = 1 + rng() % 4, rels = rng() % 5;
    Dense m(rels, std::vector<std::int64_t>(gens));
    for (auto& row : m)
      for (auto& x : row) x = static_cast<std::int64_t>(rng() % 9) - 4;
    AbelianQuotient q(gens);
    for (const auto& row : m) q.addRelation(sparse(row));
    q.solve();
    int rank;
    std::vector<std::int64_t> torsion;
    smithOracle(m, gens, rank, torsion);
    CAPTURE(t);
    CHECK(q.rank() == rank);
    CHECK(q.torsion() == torsion);
    // Functionals vanish on relations and detect the representatives.
    for (const auto& row : m) {
      auto c = q.coordinates(sparse(row));
      for (auto x : c) CHECK(x == 0);
    }
    for (std::size_t j = 0; j < q.coordinateCount(); ++j) {
      auto c = q.coordinates(q.representative(j));
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("graph homology: cycle rank of a triangle-free complex") {
  // P_1 of Z^2 has no triangles, so H1 is free of rank E - V + 1.
  Fixture f("z2", 5, 1);
  HomologyH1 h{AnnulusView(f.skel)};
  const auto V = static_cast<int>(f.skel.vertexCount());
  const auto E = static_cast<int>(f.skel.edges().size());
  CHECK(h.group().rank == E - V + 1);
  CHECK(h.group().torsion.empty());
  // A five-cycle: Z/5 at d = 1.
  Fixture c("cyclic5", 3, 1);
  CHECK(HomologyH1{AnnulusView(c.skel)}.group().rank == 1);
}

TEST_CASE("Z^2 annuli have a hole, Z^3 annuli do not") {
  Fixture z2("z2", 8, 2);
  HomologyH1 whole{AnnulusView(z2.skel)};
  CHECK(whole.group().trivial());
  HomologyH1 a2{AnnulusView(z2.skel, 2, 8)};
  HomologyH1 a5{AnnulusView(z2.skel, 5, 8)};
  CHECK(a2.group().rank == 1);
  CHECK(a5.group().rank == 1);
  H1Map map = h1Map(a5, a2);
  CHECK_FALSE(map.zero());
  CHECK(std::abs(map.matrix.at(0).at(0)) == 1);

  Fixture z3("z3", 6, 2);
  HomologyH1 b2{AnnulusView(z3.skel, 2, 6)};
  HomologyH1 b4{AnnulusView(z3.skel, 4, 6)};
  CHECK(b2.group().trivial());
  CHECK(h1Map(b4, b2).zero());
  CHECK_THROWS(h1Map(b2, b4));
}

TEST_CASE("basis cycles represent their classes") {
  Fixture f("z2", 7, 2);
  HomologyH1 h{AnnulusView(f.skel, 2, 7)};
  for (std::size_t j = 0; j < h.quotient().coordinateCount(); ++j) {
    std::vector<std::int64_t> total(h.quotient().coordinateCount(), 0);
    for (const auto& cycle : h.basisCycles(j)) {
      auto c = h.classOf(cycle);
      for (std::size_t i = 0; i < c.size(); ++i) total[i] += c[i];
    }
    for (std::size_t i = 0; i < total.size(); ++i) CHECK(total[i] == (i == j ? 1 : 0));
  }
}

TEST_CASE("obstruction certificates check independently and detect tampering") {
  Fixture f("z2", 8, 2);
  HomologyH1 a2{AnnulusView(f.skel, 2, 8)};
  HomologyH1 a5{AnnulusView(f.skel, 5, 8)};
  auto cycles = a5.basisCycles(0);
  REQUIRE(cycles.size() == 1);
  auto cert = obstructLoop({cycles[0]}, a2, 5, &a5);
  REQUIRE(cert);
  CHECK(cert->modulus == 0);
  CHECK(checkCertificate(*cert, f.skel).ok);

  H1Certificate bad = *cert;
  bad.cocycle.pop_back();
  CHECK_FALSE(checkCertificate(bad, f.skel).ok);

  // A small square away from the hole is null-homologous.
  auto& pool = *f.ball->pool();
  SimplicialLoop square{{pool.intern(Element{{4, 0}}), pool.intern(Element{{5, 0}}),
                         pool.intern(Element{{5, 1}}), pool.intern(Element{{4, 1}})}};
  CHECK_FALSE(obstructLoop(square, a2, 2));
}

TEST_CASE("fundamental group presentations abelianize to H1") {
  struct Case {
    std::string family;
    int R, d, inner;
  };
  for (const Case& c : {Case{"z2", 6, 2, 2}, Case{"z2", 4, 1, -1}, Case{"z3", 5, 2, 2},
                        Case{"free2", 3, 1, -1}, Case{"cyclic5", 3, 1, -1},
                        Case{"heisenberg", 4, 2, 1}}) {
    CAPTURE(c.family);
    Fixture f(c.family, c.R, c.d);
    AnnulusView view(f.skel, c.inner, c.R);
    RVertex base = view.vertices().front();
    Pi1Presentation p = pi1Presentation(view, base);
    HomologyH1 h(view);
    H1Group ab = abelianization(p);
    CHECK(ab.rank == h.group().rank);
    CHECK(ab.torsion == h.group().torsion);
    CHECK(p.essential.size() >= static_cast<std::size_t>(ab.rank));
    for (int g : p.essential) {
      auto loop = p.generatorLoop(g);
      CHECK(loop.front() == base);
      for (std::size_t i = 0; i < loop.size(); ++i)
        CHECK(f.skel.spansSimplex(std::vector<RVertex>{loop[i], loop[(i + 1) % loop.size()]}));
    }
  }
}

TEST_CASE("Z^2 annulus has one essential generator, Z^3 none") {
  Fixture z2("z2", 6, 2);
  AnnulusView a(z2.skel, 2, 6);
  CHECK(pi1Presentation(a, a.vertices().front()).essential.size() == 1);
  Fixture z3("z3", 5, 2);
  AnnulusView b(z3.skel, 2, 5);
  CHECK(pi1Presentation(b, b.vertices().front()).essential.empty());
}
