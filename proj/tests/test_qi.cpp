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

#include "doctest.h"
#include "topinf/certify.hpp"
#include "topinf/error.hpp"
#include "topinf/qi.hpp"

using namespace topinf;

namespace {

std::shared_ptr<const BallTable> ballOf(const GroupModel& m, int R) {
  return std::make_shared<const BallTable>(buildBall(m, R));
}

// Word metric of Z^2 with generators a, b, ab.
std::int64_t hexNorm(std::int64_t x, std::int64_t y) {
  if ((x >= 0) == (y >= 0)) return std::max(std::abs(x), std::abs(y));
  return std::abs(x) + std::abs(y);
}

}  // namespace

TEST_CASE("rational rounding") {
  CHECK(floorRational(Rational(7, 2)) == 3);
  CHECK(ceilRational(Rational(7, 2)) == 4);
  CHECK(floorRational(Rational(-7, 2)) == -4);
  CHECK(ceilRational(Rational(-7, 2)) == -3);
  CHECK(floorRational(Rational(6, 3)) == 2);
  CHECK(ceilRational(Rational(6, 3)) == 2);
  CHECK(toString(Rational(3, 2)) == "3/2");
  CHECK(toString(Rational(4)) == "4");
}

TEST_CASE("transport radius on a linear table") {
  std::map<std::int64_t, std::int64_t> table;
  for (std::int64_t r = 0; r <= 60; ++r) table[r] = r;
  for (std::int64_t R = 0; R <= 10; ++R) {
    // k = 2, C = 1: argument 2R + 2 + 3, value 2 * argument + 3.
    MRadius m = mRadius(Rational(2), Rational(1), table, R);
    CHECK(m.argument == 2 * R + 5);
    REQUIRE(m.value);
    CHECK(*m.value == 4 * R + 13);
  }
  // Non-integer lambda rounds up to k; fractional C rounds the totals up.
  MRadius f = mRadius(Rational(3, 2), Rational(1, 2), table, 4);
  CHECK(f.argument == 2 * 4 + 1 + 2);  // ceil(8 + 1 + 3/2)
  CHECK(*f.value == 2 * 11 + 2);        // ceil(22 + 3/2)
  std::map<std::int64_t, std::int64_t> shortTable{{0, 0}, {1, 1}};
  CHECK_FALSE(mRadius(Rational(2), Rational(1), shortTable, 3).value);
}

TEST_CASE("builtin maps fit their expected constants") {
  SUBCASE("identity") {
    GroupModel z2 = makeFamily("z2");
    QiMap q = builtinQi("identity", z2, z2);
    QiAudit a = fitQi(q, *ballOf(z2, 8), *ballOf(z2, 8), 5000, 1);
    CHECK(a.ok());
    CHECK(q.lambda == Rational(1));
    CHECK(q.C == Rational(0));
  }
  SUBCASE("generating set change") {
    GroupModel h = makeFamily("z2-altgens"), g = makeFamily("z2");
    auto hb = ballOf(h, 8), gb = ballOf(g, 8);
    QiMap q = builtinQi("generating-set", h, g);
    QiAudit a = fitQi(q, *hb, *gb, 20000, 1);
    CHECK(a.ok());
    // Oracle: closed-form metrics on both sides, ratio taken over the ball.
    Rational lam(1);
    const auto n = static_cast<VertexId>(hb->ballCount(2));
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) {
        const auto& x = hb->element(u).data;
        const auto& y = hb->element(v).data;
        const std::int64_t dx = x[0] - y[0], dy = x[1] - y[1];
        Rational dh(hexNorm(dx, dy)), dg(std::abs(dx) + std::abs(dy));
        lam = std::max({lam, dg / dh, dh / dg});
      }
    CHECK(lam == Rational(2));
    CHECK(q.lambda == lam);
    CHECK(q.C == Rational(0));
    CHECK(auditQi(q, *hb, *gb, 3000, 9).ok());
  }
  SUBCASE("index two") {
    GroupModel h = makeFamily("2z"), g = makeFamily("z");
    QiMap q = builtinQi("index-two", h, g);
    QiAudit a = fitQi(q, *ballOf(h, 10), *ballOf(g, 20), 20000, 1);
    CHECK(a.ok());
    CHECK(q.lambda == Rational(2));
    CHECK(q.C == Rational(1));
    CHECK(q.k() == 2);
  }
  SUBCASE("mismatched models are refused") {
    CHECK_THROWS_AS(builtinQi("identity", makeFamily("z2"), makeFamily("z3")),
                    PreconditionError);
    CHECK_THROWS_AS(builtinQi("index-two", makeFamily("z2"), makeFamily("z")),
                    PreconditionError);
    CHECK_THROWS_AS(builtinQi("no-such-map", makeFamily("z"), makeFamily("z")),
                    PreconditionError);
  }
}

TEST_CASE("a loose constant is caught by the audit") {
  GroupModel h = makeFamily("z2-altgens"), g = makeFamily("z2");
  auto hb = ballOf(h, 8), gb = ballOf(g, 8);
  QiMap q = builtinQi("generating-set", h, g);
  q.lambda = Rational(3, 2);
  q.C = Rational(0);
  CHECK(auditQi(q, *hb, *gb, 3000, 2).violations > 0);
}

TEST_CASE("step size from the Rips parameter") {
  GroupModel h = makeFamily("2z"), g = makeFamily("z");
  QiMap q = builtinQi("index-two", h, g);
  q.lambda = Rational(2);
  q.C = Rational(1);
  CHECK_THROWS_AS(epsilonFor(q, 2), PreconditionError);
  CHECK(epsilonFor(q, 3) == 1);
  CHECK(epsilonFor(q, 5) == 2);
  CHECK(epsilonFor(q, 6) == 2);
}

TEST_CASE("interpolation refines a loop to short steps") {
  GroupModel z3 = makeFamily("z3-altgens");
  auto b = ballOf(z3, 8);
  RipsSkeleton skel = makeImplicitRips(b, 6, 1);
  const Word w = {1, 1, 1, 2, 2, 2, 3, -1, -1, -1, -2, -2, -2, -3};
  // Coarsen: keep every third vertex so that steps are long.
  SimplicialLoop fine = loopFromWord(skel, 0, w);
  SimplicialLoop coarse;
  for (std::size_t i = 0; i < fine.size(); i += 3) coarse.vertices.push_back(fine.vertices[i]);
  RefinedLoop r = interpolateLoop(skel, coarse, 1);
  for (std::size_t i = 0; i < r.loop.size(); ++i) {
    auto dist = b->pairDistance(r.loop.vertices[i], r.loop.vertices[(i + 1) % r.loop.size()]);
    REQUIRE(dist);
    CHECK(*dist <= 1);
  }
  std::vector<RVertex> cyc = coarse.vertices;
  for (const LoopMove& m : r.moves) {
    REQUIRE(m.op == LoopMove::Insert);
    cyc.insert(cyc.begin() + static_cast<long>(m.index) + 1, m.vertex);
  }
  CHECK(cyc == r.loop.vertices);
}

TEST_CASE("disk transport between generating sets of Z^3") {
  GroupModel h = makeFamily("z3-altgens"), g = makeFamily("z3");
  auto hb = ballOf(h, 10), gb = ballOf(g, 14);
  QiMap q = builtinQi("generating-set", h, g);
  REQUIRE(fitQi(q, *hb, *gb, 20000, 1).ok());
  REQUIRE(q.k() == 2);
  REQUIRE(q.C == Rational(0));
  RipsSkeleton sG = makeImplicitRips(gb, 3, 1);
  auto filler = [&](const SimplicialLoop& l) {
    return constructiveFilling(g.presentation, sG, l, 1'000'000);
  };
  VertexId start = hb->pool()->intern(Element{{4, 0, 0}});
  const Word w = {1, 1, 1, 2, 2, 2, 3, -1, -1, -1, -2, -2, -2, -3};

  SUBCASE("margin below kd + 3C is refused") {
    RipsSkeleton sH = makeImplicitRips(hb, 5, 1);
    CHECK_THROWS_AS(transportDisk(q, sH, loopFromWord(sH, start, w), sG, filler),
                    PreconditionError);
  }
  SUBCASE("transported disk replays and respects the derived bounds") {
    RipsSkeleton sH = makeImplicitRips(hb, 6, 1);
    SimplicialLoop loop = loopFromWord(sH, start, w);
    TransportedDisk t = transportDisk(q, sH, loop, sG, filler);
    CHECK(t.failure == "");
    CHECK(t.ok());
    CHECK(t.epsilon == 1);
    CHECK(t.classicalBound == 4);
    CHECK(t.maxCitedDistance <= 6);
    CHECK(t.transported.loop == loop);
    CHECK(t.avoidanceChecked > 0);
    // Independent replay in P_6(H) with the closed-form metric of the ball.
    std::vector<RVertex> cyc = t.transported.loop.vertices;
    auto close = [&](RVertex a, RVertex b) {
      auto dd = hb->pairDistance(a, b);
      return dd && *dd <= 6;
    };
    bool ok = true;
    for (const LoopMove& m : t.transported.moves) {
      const std::size_t n = cyc.size();
      if (m.op == LoopMove::Remove) {
        RVertex p = cyc[(m.index + n - 1) % n], v = cyc[m.index], x = cyc[(m.index + 1) % n];
        ok = ok && close(p, v) && close(v, x) && close(p, x);
        cyc.erase(cyc.begin() + static_cast<long>(m.index));
      } else {
        RVertex p = cyc[m.index], x = cyc[(m.index + 1) % n];
        ok = ok && close(p, m.vertex) && close(m.vertex, x) && close(p, x);
        cyc.insert(cyc.begin() + static_cast<long>(m.index) + 1, m.vertex);
      }
    }
    CHECK(ok);
    CHECK(cyc.size() <= 1);
    auto j = toJson(t);
    CHECK(j.contains("classical_bound"));
  }
}
