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

#ifndef TOPINF_CERTIFY_HPP
#define TOPINF_CERTIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "topinf/fill.hpp"
#include "topinf/presentation.hpp"

namespace topinf {

struct SampledLoop {
  SimplicialLoop loop;
  std::string origin;  // "relator:<i>", "random:<k>", ...
};

struct CertifyOptions {
  std::size_t randomLoops = 200;
  /// Cayley length bound for random loops.
  std::size_t maxLoopLength = 12;
  std::uint64_t seed = 1;
  /// Random loops start in B(startRadius); negative means the whole ball.
  int startRadius = -1;
  FillBudget budget;
};

struct LoopCertificate {
  SampledLoop sample;
  FillStatus status = FillStatus::Inconclusive;
  std::optional<DiskFilling> filling;
  bool replayOk = false;
  std::size_t states = 0;
};

struct CertifyReport {
  int d = 0;
  int colors = 1;
  int maxRelatorLength = 0;
  std::size_t filled = 0;
  std::size_t inconclusive = 0;
  std::vector<LoopCertificate> loops;
  bool allFilled() const { return filled == loops.size(); }
};

/// Relator loops at the identity plus seeded random loops: a random walk
/// closed by a geodesic, then coarsened to steps of length <= d.
std::vector<SampledLoop> defaultSample(const Presentation& p,
                                       const RipsSkeleton& skel,
                                       const CertifyOptions& options);

/// Fills each loop of a plain Rips complex the constructive way: long edges
/// are subdivided along geodesics (a fan of triangles each), and the
/// resulting Cayley loop is reduced to the trivial loop by free
/// cancellations and relator substitutions, each realized inside the
/// simplex spanned by a relator loop. Colored complexes use the generic
/// filling search. Requires 2d > maxRelatorLength.
CertifyReport certifySimplyConnected(const Presentation& p,
                                     const RipsSkeleton& skel,
                                     const std::vector<SampledLoop>& sample,
                                     const FillBudget& budget = {});

/// Word-level part of the construction: moves taking a loop whose
/// consecutive vertices are Cayley neighbors to the trivial loop, or
/// nullopt when the search budget runs out.
std::optional<std::vector<LoopMove>> reduceCayleyLoop(
    const Presentation& p, const RipsSkeleton& skel,
    const std::vector<RVertex>& cayleyLoop, std::size_t maxStates,
    std::size_t* statesUsed = nullptr);

/// The construction above for a single loop of a plain Rips complex.
std::optional<DiskFilling> constructiveFilling(const Presentation& p,
                                               const RipsSkeleton& skel,
                                               const SimplicialLoop& loop,
                                               std::size_t maxStates,
                                               std::size_t* statesUsed = nullptr);

nlohmann::json toJson(const CertifyReport& report);

}  // namespace topinf

#endif  // TOPINF_CERTIFY_HPP
