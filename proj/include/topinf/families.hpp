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

#ifndef TOPINF_FAMILIES_HPP
#define TOPINF_FAMILIES_HPP

#include <string>
#include <vector>

#include "topinf/engine.hpp"
#include "topinf/presentation.hpp"
#include "topinf/rewriting.hpp"

namespace topinf {

/// A presentation together with the engine that decides its word problem.
struct GroupModel {
  std::string name;
  Presentation presentation;
  EnginePtr engine;
  /// Set when the engine is only a semi-decision procedure and the user
  /// overrode the refusal to build balls over it.
  bool heuristic = false;
};

enum class Family {
  FreeAbelian,  // params: {n}
  FreeGroup,    // params: {n}
  Heisenberg,   // params: {}
  SolLattice,   // params: {a00, a01, a10, a11}
  SurfaceGroup, // params: {genus}
  ProductZ2,    // params: {n}, F_n x Z^2
};

/// Built-in engine for a family; the parameters are validated.
EnginePtr makeBuiltin(Family family, const std::vector<std::int64_t>& params);

/// Named models: z<n>, z2-altgens, z3-altgens, 2z, free<n>, heisenberg,
/// sol (or sol:a00,a01,a10,a11), surface<g>, f2xz2, cyclic<n>.
GroupModel makeFamily(const std::string& name);
std::vector<std::string> familyNames();

/// Model for an arbitrary presentation, backed by Knuth-Bendix completion.
/// A non-confluent result is refused unless allowHeuristic is set.
GroupModel modelFromPresentation(Presentation p, bool allowHeuristic = false,
                                 const CompletionBudget& budget = {},
                                 std::vector<int> generatorOrder = {});

}  // namespace topinf

#endif  // TOPINF_FAMILIES_HPP
