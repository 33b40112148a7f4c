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
#include "topinf/certify.hpp"
#include "topinf/error.hpp"
#include "topinf/families.hpp"

using namespace topinf;

namespace {

std::shared_ptr<const BallTable> ballOf(const GroupModel& m, int R) {
  return std::make_shared<const BallTable>(buildBall(m, R));
}

// Replays moves using only the Cayley ball's pairwise distances.
bool replayByDistance(const RipsSkeleton& skel, const DiskFilling& filling) {
  const int m = skel.colors();
  auto close = [&](RVertex a, RVertex b) {
    if (m > 1 && a != b && a % m == b % m) return false;
    auto dist = skel.ball().pairDistance(a / m, b / m);
    return dist && *dist <= skel.d();
  };
  auto simplex = [&](RVertex a, RVertex b, RVertex c) {
    return close(a, b) && close(b, c) && close(a, c);
  };
  std::vector<RVertex> cyc = filling.loop.vertices;
  for (const LoopMove& mv : filling.moves) {
    const std::size_t n = cyc.size();
    if (mv.index >= n) return false;
    if (mv.op == LoopMove::Remove) {
      if (!simplex(cyc[(mv.index + n - 1) % n], cyc[mv.index], cyc[(mv.index + 1) % n]))
        return false;
      cyc.erase(cyc.begin() + static_cast<long>(mv.index));
    } else {
      if (!simplex(cyc[mv.index], mv.vertex, cyc[(mv.index + 1) % n])) return false;
      cyc.insert(cyc.begin() + static_cast<long>(mv.index) + 1, mv.vertex);
    }
  }
  return cyc.size() <= 1;
}

}  // namespace

TEST_CASE("certification refuses d below the relator threshold") {
  GroupModel z2 = makeFamily("z2");
  auto skel = makeImplicitRips(ballOf(z2, 6), 2, 1);
  try {
    certifySimplyConnected(z2.presentation, skel, {});
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("use d >= 3") != std::string::npos);
  }
}

TEST_CASE("sampled loops in Z^2 fill at d = 3") {
  GroupModel z2 = makeFamily("z2");
  auto skel = makeImplicitRips(ballOf(z2, 8), 3, 1);
  CertifyOptions opt;
  opt.randomLoops = 60;
  auto sample = defaultSample(z2.presentation, skel, opt);
  CHECK(sample.size() >= 60);
  CertifyReport rep = certifySimplyConnected(z2.presentation, skel, sample);
  CHECK(rep.allFilled());
  CHECK(rep.inconclusive == 0);
  for (const auto& c : rep.loops) {
    CAPTURE(c.sample.origin);
    REQUIRE(c.filling);
    CHECK(c.replayOk);
    CHECK(replayByDistance(skel, *c.filling));
  }
  auto j = toJson(rep);
  CHECK(j.at("filled").get<std::size_t>() == rep.filled);
}

TEST_CASE("sampling is deterministic in the seed") {
  GroupModel f = makeFamily("free2");
  auto skel = makeImplicitRips(ballOf(f, 6), 1, 1);
  CertifyOptions opt;
  opt.randomLoops = 30;
  auto a = defaultSample(f.presentation, skel, opt);
  auto b = defaultSample(f.presentation, skel, opt);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].loop == b[i].loop);
  opt.seed = 2;
  auto c = defaultSample(f.presentation, skel, opt);
  bool differs = false;
  for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i)
    differs = differs || !(a[i].loop == c[i].loop);
  CHECK(differs);
  CHECK(certifySimplyConnected(f.presentation, skel, a).allFilled());
}

TEST_CASE("colored complex of Z/3 is simply connected on samples") {
  GroupModel c3 = makeFamily("cyclic3");
  auto skel = buildRips(ballOf(c3, 3), 2, 3);
  CertifyOptions opt;
  opt.randomLoops = 40;
  auto sample = defaultSample(c3.presentation, skel, opt);
  CertifyReport rep = certifySimplyConnected(c3.presentation, skel, sample);
  CHECK(rep.colors == 3);
  CHECK(rep.allFilled());
  for (const auto& c : rep.loops) {
    REQUIRE(c.filling);
    CHECK(replayByDistance(skel, *c.filling));
  }
}

TEST_CASE("surface group relator loops fill at d = 5") {
  GroupModel s = makeFamily("surface2");
  auto skel = makeImplicitRips(ballOf(s, 5), 5, 1);
  CertifyOptions opt;
  opt.randomLoops = 10;
  opt.maxLoopLength = 8;
  auto sample = defaultSample(s.presentation, skel, opt);
  CertifyReport rep = certifySimplyConnected(s.presentation, skel, sample);
  CHECK(rep.maxRelatorLength == 8);
  CHECK(rep.allFilled());
}
