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

#include "doctest.h"
#include "topinf/error.hpp"
#include "topinf/homology.hpp"
#include "topinf/vrate.hpp"

using namespace topinf;

namespace {

RipsSkeleton complexOf(const std::string& family, int R, int d) {
  auto ball = std::make_shared<const BallTable>(buildBall(makeFamily(family), R));
  return buildRips(ball, d);
}

using Table = std::map<std::int64_t, std::int64_t>;

// Direct check of c1 f(c2 R) + c3 <= g(R) <= C1 f(C2 R) + C3 over g's range.
bool sandwiches(const EquivalenceWitness& w, const Table& f, const Table& g) {
  for (auto [R, gv] : g) {
    auto lo = f.find(ceilRational(w.c2 * R));
    auto hi = f.find(floorRational(w.C2 * R));
    if (lo == f.end() || hi == f.end()) return false;
    if (w.c1 * lo->second + w.c3 > Rational(gv)) return false;
    if (Rational(gv) > w.C1 * hi->second + w.C3) return false;
  }
  return true;
}

VRateEstimate synthetic(const std::function<std::int64_t(int)>& n, int rMax) {
  VRateEstimate e;
  for (int r = 0; r <= rMax; ++r) {
    VRateRow row;
    row.r = r;
    row.lower = r;
    row.upper = static_cast<int>(n(r));
    e.rows.push_back(row);
  }
  return e;
}

}  // namespace

TEST_CASE("Z^2 annuli stay obstructed up to the truncation radius") {
  RipsSkeleton skel = complexOf("z2", 9, 2);
  VRateEstimate e = estimateVRate(skel, 2, 3);
  REQUIRE(e.rows.size() == 2);
  for (const auto& row : e.rows) {
    CAPTURE(row.r);
    CHECK_FALSE(row.lowerTrivial);
    CHECK(row.lower == 8);
    CHECK_FALSE(row.upper);
    // One certificate per obstructed N = r .. R - 1.
    CHECK(row.obstructions.size() == static_cast<std::size_t>(9 - row.r));
    for (const auto& cert : row.obstructions) CHECK(checkCertificate(cert, skel).ok);
  }
  CHECK(e.monotone());
  CHECK(e.upperTable().empty());
}

TEST_CASE("Z^3 annuli fill with a finite bound") {
  RipsSkeleton skel = complexOf("z3", 8, 2);
  VRatePolicy policy;
  policy.randomLoops = 8;
  VRateEstimate e = estimateVRate(skel, 1, 2, policy);
  for (const auto& row : e.rows) {
    CAPTURE(row.r);
    REQUIRE(row.upper);
    CHECK(row.lower <= *row.upper);
    CHECK(*row.upper <= 3 * row.r + 5);
    CHECK(row.obstructions.empty());
    CHECK(row.loopsTested > 0);
    CHECK(row.fillings.size() + row.inconclusive == row.loopsTested);
  }
  CHECK(e.monotone());

  SUBCASE("threads do not change the result") {
    policy.threads = 3;
    VRateEstimate t = estimateVRate(skel, 1, 2, policy);
    CHECK(toJson(t).dump() == toJson(e).dump());
    CHECK(t.csv() == e.csv());
  }
}

TEST_CASE("radius preconditions") {
  RipsSkeleton skel = complexOf("z2", 6, 2);
  CHECK_THROWS_AS(estimateVRate(skel, 0, 4), PreconditionError);
  CHECK_THROWS_AS(estimateVRate(skel, 2, 1), PreconditionError);
  CHECK_THROWS_AS(estimateVRate(skel, -1, 1), PreconditionError);
  auto ball = std::make_shared<const BallTable>(buildBall(makeFamily("z2"), 6));
  CHECK_THROWS_AS(estimateVRate(makeImplicitRips(ball, 2, 1), 0, 1), PreconditionError);
}

TEST_CASE("CSV layout") {
  VRateEstimate e = synthetic([](int r) { return r + 1; }, 1);
  e.truncation = 7;
  e.rows[1].upper.reset();
  e.rows[1].inconclusive = 3;
  CHECK(e.csv() ==
        "r,N_lower,N_upper,inconclusive_count,truncation_R\n"
        "0,0,1,0,7\n"
        "1,1,none,3,7\n");
}

TEST_CASE("linear fits") {
  LinearFit f = fitLinear({{0, 1}, {1, 3}, {2, 5}, {3, 7}});
  CHECK(f.points == 4);
  CHECK(f.slope == doctest::Approx(2));
  CHECK(f.intercept == doctest::Approx(1));
  CHECK(f.maxResidual == doctest::Approx(0));
  VRateEstimate e = synthetic([](int r) { return 3 * r; }, 5);
  // Midpoints (r + 3r) / 2 = 2r.
  CHECK(fitLinear(e).slope == doctest::Approx(2));
}

TEST_CASE("comparing rate tables") {
  Table lin, lin2, quad;
  for (std::int64_t r = 0; r <= 60; ++r) {
    lin[r] = r;
    lin2[r] = 2 * r + 3;
  }
  for (std::int64_t r = 0; r <= 20; ++r) quad[r] = r * r;

  Comparison same = compareVRates(lin, lin);
  REQUIRE(same.witness);
  const auto& w = *same.witness;
  CHECK(w.c1 == Rational(1));
  CHECK(w.c2 == Rational(1));
  CHECK(w.c3 == Rational(0));
  CHECK(w.C1 == Rational(1));
  CHECK(w.C2 == Rational(1));
  CHECK(w.C3 == Rational(0));

  Table lin20;
  for (std::int64_t r = 0; r <= 20; ++r) lin20[r] = 2 * r + 3;
  Comparison scaled = compareVRates(lin, lin20);
  REQUIRE(scaled.witness);
  CHECK(sandwiches(*scaled.witness, lin, lin20));

  Comparison q = compareVRates(lin, quad);
  CHECK_FALSE(q.witness);
  CHECK(q.upperMiss > Rational(0));
  CHECK(q.lowerMiss == Rational(0));
  CHECK(toJson(q).at("shown") == false);

  CHECK_FALSE(compareVRates(Table{}, lin).witness);
}

TEST_CASE("predicted bounds through a quasi-isometry") {
  GroupModel z = makeFamily("z");
  QiMap q = builtinQi("identity", z, z);
  VRateEstimate src = synthetic([](int r) { return 2 * r + 1; }, 30);

  auto iso = qiPredictedBound(src, q, nullptr);
  REQUIRE(iso.size() == src.rows.size());
  for (const auto& row : iso) {
    CHECK(row.argument == row.R);
    REQUIRE(row.predicted);
    CHECK(*row.predicted == 2 * row.R + 1);
  }

  q.lambda = Rational(2);
  q.C = Rational(1);
  VRateEstimate unit = synthetic([](int r) { return r; }, 30);
  VRateEstimate measured = synthetic([](int r) { return r; }, 14);
  measured.rows[3].lower = 1000;
  auto pred = qiPredictedBound(unit, q, &measured);
  REQUIRE(pred.size() == measured.rows.size());
  for (const auto& row : pred) {
    CAPTURE(row.R);
    if (2 * row.R + 5 <= 30) {
      REQUIRE(row.predicted);
      CHECK(*row.predicted == 4 * row.R + 13);
    } else {
      CHECK_FALSE(row.predicted);
    }
    CHECK(row.consistent == (row.R != 3));
  }
}
