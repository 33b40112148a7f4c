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

#ifndef TOPINF_PI1_HPP
#define TOPINF_PI1_HPP

#include <vector>

#include "topinf/homology.hpp"
#include "topinf/presentation.hpp"

namespace topinf {

/// Spanning-tree presentation of the fundamental group of a view at a
/// basepoint: one generator per non-tree edge of the basepoint's component,
/// one relator per triangle (trivial relators dropped).
struct Pi1Presentation {
  RVertex basepoint = 0;
  ViewGraph graph;
  Presentation presentation;
  /// View-graph generator index behind each presentation generator.
  std::vector<int> graphGenerators;
  /// Generators left after Tietze elimination of generators that occur once
  /// in a short relator; their loops generate the group.
  std::vector<int> essential;
  std::vector<Word> reducedRelators;  // over the essential generators

  /// Closed walk from the basepoint along the tree, across the generator's
  /// edge and back.
  std::vector<RVertex> generatorLoop(int generator) const;
};

struct TietzeOptions {
  std::size_t maxPivotLength = 4;
};

Pi1Presentation pi1Presentation(const AnnulusView& view, RVertex basepoint,
                                const TietzeOptions& options = {});

/// Abelianization of the reduced presentation.
H1Group abelianization(const Pi1Presentation& p);

}  // namespace topinf

#endif  // TOPINF_PI1_HPP
