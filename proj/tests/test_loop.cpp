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

#include "doctest.h"
#include "topinf/error.hpp"
#include "topinf/families.hpp"
#include "topinf/fill.hpp"
#include "topinf/homology.hpp"
#include "topinf/loop.hpp"

using namespace topinf;

namespace {

struct Fixture {
  GroupModel model;
  std::shared_ptr<const BallTable> ball;
  RipsSkeleton skel;
  Fixture(const std::string& family, int R, int d, int m = 1)
      : model(makeFamily(family)),
        ball(std::make_shared<const BallTable>(buildBall(model, R))),
        skel(buildRips(ball, d, m)) {}
  SimplicialLoop loop(const std::string& word, VertexId start = 0) const {
    return loopFromWord(skel, start, model.presentation.parseWord(word));
  }
  VertexId at(std::vector<std::int64_t> coords) const {
    return ball->pool()->intern(Element{std::move(coords)});
  }
};

// Applies the moves by hand, independent of replayFilling, and checks every
// cited simplex against the coordinate metric of Z^n.
bool independentReplay(const Fixture& f, const DiskFilling& filling, int inner) {
  auto l1 = [&](RVertex a, RVertex b) {
    const auto& x = f.ball->element(a).data;
    const auto& y = f.ball->element(b).data;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
    return s;
  };
  auto norm = [&](RVertex a) {
    std::int64_t s = 0;
    for (auto c : f.ball->element(a).data) s += std::abs(c);
    return s;
  };
  auto simplex = [&](RVertex a, RVertex b, RVertex c) {
    return l1(a, b) <= f.skel.d() && l1(b, c) <= f.skel.d() && l1(a, c) <= f.skel.d() &&
           norm(a) > inner && norm(b) > inner && norm(c) > inner;
  };
  std::vector<RVertex> cyc = filling.loop.vertices;
  for (const LoopMove& m : filling.moves) {
    const std::size_t n = cyc.size();
    if (m.index >= n) return false;
    if (m.op == LoopMove::Remove) {
      if (!simplex(cyc[(m.index + n - 1) % n], cyc[m.index], cyc[(m.index + 1) % n])) return false;
      cyc.erase(cyc.begin() + static_cast<long>(m.index));
    } else {
      if (!simplex(cyc[m.index], m.vertex, cyc[(m.index + 1) % n])) return false;
      cyc.insert(cyc.begin() + static_cast<long>(m.index) + 1, m.vertex);
    }
  }
  return cyc.size() <= 1;
}

}  // namespace

TEST_CASE("loops from words") {
  Fixture f("z2", 6, 2);
  SimplicialLoop l = f.loop("[a,b]");
  CHECK(l.size() == 4);
  CHECK_NOTHROW(validateLoop(l, AnnulusView(f.skel)));
  // a^3 closes up under d = 2, a^4 does not.
  CHECK_NOTHROW(validateLoop(f.loop("a a a"), AnnulusView(f.skel)));
  CHECK_THROWS_AS(validateLoop(f.loop("a a a a"), AnnulusView(f.skel)), PreconditionError);
  CHECK_THROWS_AS(validateLoop(l, AnnulusView(f.skel, 0)), PreconditionError);
}

TEST_CASE("normal form and canonical rotation") {
  std::vector<RVertex> c = {5, 3, 3, 7, 5};
  CHECK(canonicalRotation(normalizeLoop({c}).vertices) == std::vector<RVertex>{3, 7, 5});
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    std::vector<RVertex> v(1 + rng() % 8);
    for (auto& x : v) x = rng() % 5;
    auto k = canonicalRotation(v);
    for (std::size_t r = 0; r < v.size(); ++r) {
      std::rotate(v.begin(), v.begin() + 1, v.end());
      CHECK(canonicalRotation(v) == k);
      CHECK(k <= v);
    }
  }
}

TEST_CASE("move classification") {
  CHECK(classifyMove(1, 2, 1) == MoveKind::Spur);
  CHECK(classifyMove(1, 1, 2) == MoveKind::Degenerate);
  CHECK(classifyMove(1, 2, 3) == MoveKind::Triangle);
}

TEST_CASE("fillings replay and survive a JSON round trip") {
  Fixture f("z2", 8, 2);
  for (const char* w : {"[a,b]", "a a b a^-1 a^-1 b^-1", "a^3 b^2 a^-3 b^-2"}) {
    CAPTURE(w);
    FillResult r = fillLoop(f.loop(w), AnnulusView(f.skel));
    REQUIRE(r.status == FillStatus::Filled);
    CHECK(replayFilling(*r.filling, AnnulusView(f.skel)).ok);
    CHECK(independentReplay(f, *r.filling, -1));
    DiskFilling back = diskFillingFromJson(toJson(*r.filling));
    CHECK(back.loop == r.filling->loop);
    CHECK(back.moves == r.filling->moves);
  }
}

TEST_CASE("replay rejects tampered fillings") {
  Fixture f("z2", 8, 2);
  FillResult r = fillLoop(f.loop("a^2 b^2 a^-2 b^-2"), AnnulusView(f.skel));
  REQUIRE(r.filling);
  REQUIRE(r.filling->moves.size() > 2);

  DiskFilling truncated = *r.filling;
  truncated.moves.pop_back();
  CHECK_FALSE(replayFilling(truncated, AnnulusView(f.skel)).ok);

  DiskFilling far = *r.filling;
  bool changed = false;
  for (auto& m : far.moves) {
    if (m.op == LoopMove::Insert) {
      m.vertex = f.at({7, 0});
      changed = true;
      break;
    }
  }
  if (!changed) {
    far.moves.front() = LoopMove{LoopMove::Insert, 0, f.at({7, 0}), MoveKind::Triangle};
  }
  ReplayResult bad = replayFilling(far, AnnulusView(f.skel));
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.reason.empty());
}

TEST_CASE("loops around the hole of a Z^2 annulus are obstructed") {
  Fixture f("z2", 8, 2);
  AnnulusView annulus(f.skel, 2, 8);
  HomologyH1 h(annulus);
  SimplicialLoop around = f.loop("a^6 b^6 a^-6 b^-6", f.at({-3, -3}));
  FillResult r = fillLoop(around, annulus, {}, &h);
  REQUIRE(r.status == FillStatus::Obstructed);
  REQUIRE(r.certificate);
  CHECK(checkCertificate(*r.certificate, f.skel).ok);
  // The same loop bounds a disk once the hole is allowed.
  FillResult whole = fillLoop(around, AnnulusView(f.skel));
  CHECK(whole.status == FillStatus::Filled);
  CHECK(independentReplay(f, *whole.filling, -1));
}

TEST_CASE("loops away from the hole fill inside the annulus") {
  Fixture f("z2", 8, 2);
  AnnulusView annulus(f.skel, 2, 8);
  HomologyH1 h(annulus);
  FillResult r = fillLoop(f.loop("[a,b]", f.at({4, 1})), annulus, {}, &h);
  REQUIRE(r.status == FillStatus::Filled);
  CHECK(independentReplay(f, *r.filling, 2));
}

TEST_CASE("tiny budgets are inconclusive, never wrong") {
  Fixture f("z3", 6, 2);
  FillBudget tiny;
  tiny.maxStates = 3;
  FillResult r = fillLoop(f.loop("a^2 b^2 c^2 a^-2 b^-2 c^-2"), AnnulusView(f.skel), tiny);
  CHECK(r.status == FillStatus::Inconclusive);
  CHECK_FALSE(r.filling);
}

TEST_CASE("random loops in Z^3 fill and replay") {
  Fixture f("z3", 6, 2);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Word w;
    for (int i = 0; i < 5; ++i) w.push_back(letterOf(int(rng() % 3), rng() % 2));
    Word back = inverse(w);
    std::shuffle(back.begin(), back.end(), rng);
    w.insert(w.end(), back.begin(), back.end());
    SimplicialLoop l = loopFromWord(f.skel, 0, w);
    FillResult r = fillLoop(l, AnnulusView(f.skel));
    REQUIRE(r.status == FillStatus::Filled);
    CHECK(independentReplay(f, *r.filling, -1));
  }
}

TEST_CASE("colored loop through three colors of one element") {
  Fixture f("cyclic3", 4, 2, 3);
  SimplicialLoop l{{f.skel.vertex(0, 0), f.skel.vertex(0, 1), f.skel.vertex(0, 2)}};
  FillResult r = fillLoop(l, AnnulusView(f.skel));
  REQUIRE(r.status == FillStatus::Filled);
  CHECK(replayFilling(*r.filling, AnnulusView(f.skel)).ok);
  CHECK(r.filling->count(MoveKind::Triangle) >= 1);
}
