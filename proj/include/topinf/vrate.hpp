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

#ifndef TOPINF_VRATE_HPP
#define TOPINF_VRATE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "topinf/fill.hpp"
#include "topinf/homology.hpp"
#include "topinf/qi.hpp"
#include "topinf/rips.hpp"

namespace topinf {

/// Which loops stand in for "every loop outside B(N)".
struct VRatePolicy {
  /// Generator loops of the fundamental group of each component of the
  /// outer annulus are always tested; these random loops come on top.
  std::size_t randomLoops = 20;
  std::size_t walkLength = 6;
  /// Random loops are joined to the component's basepoint along the
  /// spanning tree, so conjugating paths are part of the sample.
  bool conjugate = true;
  std::uint64_t seed = 1;
  FillBudget budget{200'000, 4};
  unsigned threads = 1;

  std::string describe() const;
};

struct VRateRow {
  int r = 0;
  /// Greatest N whose annulus dist > N carries a loop that bounds no disk
  /// in dist > r. Without any obstruction the trivial bound r is reported.
  int lower = 0;
  bool lowerTrivial = true;
  /// Least tested N for which every sampled loop in dist > N was filled in
  /// dist > r.
  std::optional<int> upper;
  std::size_t inconclusive = 0;
  std::size_t loopsTested = 0;
  /// One checked certificate per obstructed N.
  std::vector<H1Certificate> obstructions;
  /// Fillings of the sample at N = upper.
  std::vector<DiskFilling> fillings;
};

struct VRateEstimate {
  int d = 0;
  int colors = 1;
  int truncation = 0;
  std::string policy;
  std::vector<VRateRow> rows;
  /// Violations of monotonicity in r (empty when both columns are
  /// nondecreasing).
  std::vector<std::string> monotonicityIssues;

  bool monotone() const { return monotonicityIssues.empty(); }
  /// Upper bounds by r, rows without one left out.
  std::map<std::int64_t, std::int64_t> upperTable() const;
  std::string csv() const;
};

/// Rows for inner radii rMin..rMax over a materialized skeleton. Throws
/// PreconditionError unless 0 <= rMin <= rMax <= R - d - 1.
VRateEstimate estimateVRate(const RipsSkeleton& skel, int rMin, int rMax,
                            const VRatePolicy& policy = {});

/// Least-squares line through bracket midpoints (rows with both bounds).
struct LinearFit {
  std::size_t points = 0;
  double slope = 0;
  double intercept = 0;
  double maxResidual = 0;
};

LinearFit fitLinear(const VRateEstimate& e);
LinearFit fitLinear(const std::vector<std::pair<double, double>>& xy);

/// c1 f(c2 R) + c3 <= g(R) <= C1 f(C2 R) + C3 at every sampled R.
struct EquivalenceWitness {
  Rational c1{1}, c2{1}, c3{0};
  Rational C1{1}, C2{1}, C3{0};
  std::int64_t rFrom = 0;
  std::int64_t rTo = 0;
  std::size_t samples = 0;
};

struct Comparison {
  std::optional<EquivalenceWitness> witness;
  /// Without a witness: how far the best grid point misses each side
  /// (0 when that side was met).
  Rational lowerMiss{0};
  Rational upperMiss{0};
  std::string reason;
};

/// Grid search over c1, C1 in {1/4, 1/2, 1, 2, 4}, c2, C2 in {1/2, 1, 2, 3}
/// and additive constants within [-10, 10]. Functions are nondecreasing
/// tables; a non-integer argument is rounded to the conservative side. A
/// grid point counts only when every R of g's table can be evaluated.
Comparison compareVRates(const std::map<std::int64_t, std::int64_t>& f,
                         const std::map<std::int64_t, std::int64_t>& g);
Comparison compareVRates(const VRateEstimate& f, const VRateEstimate& g);

struct PredictedRow {
  std::int64_t R = 0;
  std::int64_t argument = 0;
  std::optional<std::int64_t> predicted;  // nullopt: argument not covered
  std::optional<std::int64_t> measuredLower;
  bool consistent = true;
};

/// M(R) = k N(kR + kC + 3C) + 3C from the source's upper table, checked
/// against the measured lower bounds of the target rows where both exist.
std::vector<PredictedRow> qiPredictedBound(const VRateEstimate& source,
                                           const QiMap& q,
                                           const VRateEstimate* measured);

nlohmann::json toJson(const VRateEstimate& e);
nlohmann::json toJson(const LinearFit& fit);
nlohmann::json toJson(const Comparison& c);
nlohmann::json toJson(const std::vector<PredictedRow>& rows);

}  // namespace topinf

#endif  // TOPINF_VRATE_HPP
