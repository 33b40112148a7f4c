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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "topinf/error.hpp"
#include "topinf/families.hpp"
#include "topinf/rips.hpp"

using namespace topinf;

namespace {

std::shared_ptr<const BallTable> ballOf(const std::string& family, int R) {
  return std::make_shared<const BallTable>(buildBall(makeFamily(family), R));
}

// l1 distance between the coordinates of two Z^n ball elements.
int l1(const BallTable& b, VertexId u, VertexId v) {
  int s = 0;
  const auto& x = b.element(u).data;
  const auto& y = b.element(v).data;
  for (std::size_t i = 0; i < x.size(); ++i) s += int(std::abs(x[i] - y[i]));
  return s;
}

// Brute force over all pairs and triples with the coordinate metric.
void bruteForce(const BallTable& b, int d, int m, std::set<REdge>& edges,
                std::set<RTriangle>& tris) {
  const auto n = static_cast<RVertex>(b.size() * m);
  auto ok = [&](RVertex u, RVertex v) {
    if (m > 1 && u % m == v % m) return false;
    if (m == 1 && u == v) return false;
    return l1(b, u / m, v / m) <= d;
  };
  for (RVertex u = 0; u < n; ++u)
    for (RVertex v = u + 1; v < n; ++v)
      if (ok(u, v)) edges.insert({u, v});
  for (const auto& [u, v] : edges)
    for (RVertex w = v + 1; w < n; ++w)
      if (ok(u, w) && ok(v, w)) tris.insert({u, v, w});
}

bool fixesSetwise(const GroupModel& m, const BallTable& b, const RipsSkeleton& s,
                  const Word& g, const std::vector<RVertex>& simplex) {
  const Element ge = m.engine->evaluate(g);
  std::multiset<std::pair<CanonicalKey, int>> before, after;
  for (RVertex v : simplex) {
    const Element& x = b.element(s.elementOf(v));
    before.insert({m.engine->key(x), s.colorOf(v)});
    after.insert({m.engine->key(m.engine->multiply(ge, x)), s.colorOf(v)});
  }
  return before == after;
}

}  // namespace

TEST_CASE("materialized skeletons match brute force") {
  using Case = std::tuple<std::string, int, int, int>;
  for (auto [family, R, d, m] : {Case{"z2", 4, 2, 1}, Case{"z2", 3, 1, 1},
                                 Case{"z2", 3, 2, 2}, Case{"z3", 2, 2, 1},
                                 Case{"z2", 3, 3, 3}}) {
    CAPTURE(family);
    CAPTURE(d);
    CAPTURE(m);
    auto b = ballOf(family, R);
    RipsSkeleton s = buildRips(b, d, m);
    std::set<REdge> edges;
    std::set<RTriangle> tris;
    bruteForce(*b, d, m, edges, tris);
    CHECK(std::set<REdge>(s.edges().begin(), s.edges().end()) == edges);
    CHECK(s.edges().size() == edges.size());
    CHECK(std::set<RTriangle>(s.triangles().begin(), s.triangles().end()) == tris);
    CHECK(s.triangles().size() == tris.size());
    for (RVertex v = 0; v < s.vertexCount(); ++v) {
      for (RVertex w : s.neighbors(v)) CHECK(s.adjacent(v, w));
    }
  }
}

TEST_CASE("Z^2 with d = 1 has no triangles") {
  RipsSkeleton s = buildRips(ballOf("z2", 5), 1);
  CHECK(s.triangles().empty());
  // Horizontal edges: sum over rows |y| <= 5 of 2 (5 - |y|) = 50; same vertically.
  CHECK(s.edges().size() == 100);
}

TEST_CASE("Z/3 colored complex is the 2-skeleton of the join") {
  RipsSkeleton s = buildRips(ballOf("cyclic3", 2), 2, 3);
  CHECK(s.vertexCount() == 9);
  CHECK(s.edges().size() == 27);      // pairs of distinct colors
  CHECK(s.triangles().size() == 27);  // one vertex of each color
  CHECK(s.spansSimplex(std::vector<RVertex>{s.vertex(0, 0), s.vertex(0, 1), s.vertex(0, 2)}));
  CHECK_FALSE(s.spansSimplex(std::vector<RVertex>{s.vertex(0, 0), s.vertex(1, 0)}));
}

TEST_CASE("implicit and materialized skeletons agree") {
  auto b = ballOf("heisenberg", 4);
  RipsSkeleton mat = buildRips(b, 2);
  RipsSkeleton imp = makeImplicitRips(b, 2);
  CHECK_FALSE(imp.materialized());
  std::mt19937_64 rng(4);
  const auto n = static_cast<RVertex>(b->ballCount(2));
  for (int t = 0; t < 2000; ++t) {
    RVertex u = rng() % n, v = rng() % n;
    CHECK(mat.adjacent(u, v) == imp.adjacent(u, v));
  }
}

TEST_CASE("free action: colors remove fixed simplices") {
  for (std::string family : {"cyclic3", "cyclic4"}) {
    CAPTURE(family);
    GroupModel model = makeFamily(family);
    // Radius d + 2 so that B(R - d) already is the whole group.
    auto b = std::make_shared<const BallTable>(buildBall(model, 4));
    RipsSkeleton colored = buildRips(b, 2, 3);
    FreeActionReport free = checkFreeAction(colored);
    CHECK(free.free);
    CHECK(free.simplicesChecked > 0);

    RipsSkeleton plain = buildRips(b, 2, 1);
    FreeActionReport fixed = checkFreeAction(plain);
    CHECK_FALSE(fixed.free);
    REQUIRE_FALSE(fixed.simplex.empty());
    CHECK_FALSE(model.engine->equal(fixed.element, Word{}));
    CHECK(plain.spansSimplex(fixed.simplex));
    CHECK(fixesSetwise(model, *b, plain, fixed.element, fixed.simplex));
  }
}

TEST_CASE("free action on an infinite group") {
  RipsSkeleton s = buildRips(ballOf("z2", 5), 2);
  CHECK(checkFreeAction(s).free);
}

TEST_CASE("annulus views") {
  auto b = ballOf("z2", 6);
  RipsSkeleton s = buildRips(b, 2);
  AnnulusView a(s, 2, 5);
  for (RVertex v : a.vertices()) {
    CHECK(*s.depth(v) > 2);
    CHECK(*s.depth(v) <= 5);
  }
  CHECK(a.vertices().size() == b->ballCount(5) - b->ballCount(2));
  for (const auto& e : a.edges()) CHECK(a.containsAll(e));
  for (const auto& t : a.triangles()) CHECK(a.containsAll(t));
  std::size_t inside = 0;
  for (const auto& t : s.triangles()) inside += a.containsAll(t);
  CHECK(a.triangles().size() == inside);
  CHECK(AnnulusView(s).whole());
}

TEST_CASE("rescaled edges") {
  auto b = ballOf("z2", 8);
  RipsSkeleton small = makeImplicitRips(b, 1);
  RipsSkeleton large = makeImplicitRips(b, 4);
  auto& pool = *b->pool();
  RVertex u = pool.intern(Element{{0, 0}});
  RVertex v = pool.intern(Element{{3, 1}});
  auto r = rescaleEdgePath(small, large, u, v);
  REQUIRE(r);
  CHECK(r->path.front() == u);
  CHECK(r->path.back() == v);
  CHECK(r->path.size() == 5);
  for (std::size_t i = 0; i + 1 < r->path.size(); ++i) {
    CHECK(small.adjacent(r->path[i], r->path[i + 1]));
  }
  for (const auto& t : r->fan) CHECK(large.spansSimplex(t));
}

TEST_CASE("export format") {
  RipsSkeleton s = buildRips(ballOf("cyclic3", 1), 1, 1);
  std::string text = s.exportText();
  CHECK(text.find("v 0 0 0") != std::string::npos);
  CHECK(text.find("e ") != std::string::npos);
}
