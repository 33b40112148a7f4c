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

#ifndef TOPINF_QI_HPP
#define TOPINF_QI_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "topinf/families.hpp"
#include "topinf/loop.hpp"

namespace topinf {

using Rational = boost::rational<std::int64_t>;

std::int64_t ceilRational(const Rational& x);
std::int64_t floorRational(const Rational& x);
std::string toString(const Rational& x);

/// Quasi-isometry between group models: forward f: H -> G, backward
/// g: G -> H, with constants (lambda, C).
struct QiMap {
  std::string kind;
  GroupModel source;  // H
  GroupModel target;  // G
  std::function<Element(const Element&)> forward;
  std::function<Element(const Element&)> backward;
  Rational lambda{1};
  Rational C{0};
  int auditedRadius = 0;

  std::int64_t k() const { return ceilRational(lambda); }
};

/// Kinds: "identity" (H = G), "generating-set" (same free abelian group,
/// two generating sets; identity on coordinates), "index-two" (2Z in Z;
/// g is the nearest even point below). Constants start at (1, 0); fit them
/// with fitQi.
QiMap builtinQi(const std::string& kind, const GroupModel& source,
                const GroupModel& target);
std::vector<std::string> builtinQiKinds();

struct QiAudit {
  std::size_t pairs = 0;
  std::size_t unknown = 0;     // pairs whose distance left a ball
  std::size_t violations = 0;  // of the four defining inequalities
  std::size_t derivedViolations = 0;  // d(fx, fy) >= (d(x, y) - 3C) / k
  Rational lambda{1};
  Rational C{0};
  bool ok() const { return violations == 0 && derivedViolations == 0 && unknown == 0; }
};

/// Smallest lambda (maximal distance ratio) and then smallest C making the
/// inequalities hold on the sampled pairs (exhaustive when the number of
/// pairs is at most maxPairs). Points are drawn from the quarter-radius
/// balls; pairs whose image distance is beyond the ball are counted as
/// unknown. Stores the result in q.
QiAudit fitQi(QiMap& q, const BallTable& h, const BallTable& g,
              std::size_t maxPairs, std::uint64_t seed);

/// Checks q's constants on sampled pairs.
QiAudit auditQi(const QiMap& q, const BallTable& h, const BallTable& g,
                std::size_t pairs, std::uint64_t seed);

/// Transport radius: k N(kR + kC + 3C) + 3C rounded up; nullopt (with the
/// needed argument) when the table has no entry.
struct MRadius {
  std::optional<std::int64_t> value;
  std::int64_t argument = 0;
};
MRadius mRadius(const Rational& lambda, const Rational& C,
                const std::map<std::int64_t, std::int64_t>& table,
                std::int64_t R);

/// Largest integer eps with k eps + C <= d; throws when eps < 1.
std::int64_t epsilonFor(const QiMap& q, int d);

struct RefinedLoop {
  SimplicialLoop loop;
  std::vector<LoopMove> moves;  // inserts taking the input to the refined loop
};

/// Adds vertices along geodesics until consecutive distances are <= eps.
RefinedLoop interpolateLoop(const RipsSkeleton& skel,
                            const SimplicialLoop& loop, int eps);

struct TransportedDisk {
  SimplicialLoop sourceLoop;   // in P_a(H)
  SimplicialLoop refinedLoop;  // eps-steps
  SimplicialLoop imageLoop;    // f(refined) in P_d(G)
  DiskFilling imageFilling;    // in P_d(G)
  DiskFilling transported;     // of sourceLoop in P_a(H)
  std::int64_t k = 1;
  Rational C{0};
  std::int64_t epsilon = 1;
  int a = 0;
  int d = 0;
  std::int64_t classicalBound = 0;  // k^2 eps + (k + 2) C, rounded up
  int maxCitedDistance = 0;
  bool replayOk = false;
  std::string failure;
  std::size_t avoidanceChecked = 0;
  std::size_t avoidanceViolations = 0;
  std::size_t derivedViolations = 0;
  std::size_t unknownDistances = 0;
  /// min over disk vertices of the guaranteed and the measured distance to
  /// the basepoint.
  Rational guaranteedRadius{0};
  int measuredRadius = 0;

  bool ok() const {
    return replayOk && avoidanceViolations == 0 && derivedViolations == 0 &&
           unknownDistances == 0;
  }
};

using ImageFiller =
    std::function<std::optional<DiskFilling>(const SimplicialLoop&)>;

/// Refines the loop to eps-steps, fills its image with the supplied filler
/// in P_d(G) and maps the filling back: boundary positions to the refined
/// loop's vertices, every other vertex y to g(y). The result is replayed in
/// P_a(H) and audited vertex by vertex.
TransportedDisk transportDisk(const QiMap& q, const RipsSkeleton& skelH,
                              const SimplicialLoop& loop,
                              const RipsSkeleton& skelG,
                              const ImageFiller& filler);

nlohmann::json toJson(const QiMap& q);
nlohmann::json toJson(const QiAudit& audit);
nlohmann::json toJson(const TransportedDisk& t);

}  // namespace topinf

#endif  // TOPINF_QI_HPP
