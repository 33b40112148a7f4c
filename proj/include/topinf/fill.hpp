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

#ifndef TOPINF_FILL_HPP
#define TOPINF_FILL_HPP

#include <optional>
#include <string>

#include "json.hpp"
#include "topinf/homology.hpp"
#include "topinf/loop.hpp"

namespace topinf {

struct FillBudget {
  std::size_t maxStates = 1'000'000;
  /// Loops may grow this many vertices beyond the input length.
  std::size_t lengthSlack = 4;
};

enum class FillStatus { Filled, Obstructed, Inconclusive };

std::string toString(FillStatus status);

struct FillResult {
  FillStatus status = FillStatus::Inconclusive;
  std::optional<DiskFilling> filling;
  std::optional<H1Certificate> certificate;
  std::size_t states = 0;
};

/// Best-first search over loop states (removals, vertex replacements and
/// insertions inside the ambient view), shortest loops first, states
/// deduplicated by canonical rotation. When the ambient's homology is
/// supplied, a nonzero class short-circuits to Obstructed. Every filling
/// returned has passed replayFilling.
FillResult fillLoop(const SimplicialLoop& loop, const AnnulusView& ambient,
                    const FillBudget& budget = {},
                    const HomologyH1* ambientHomology = nullptr);

nlohmann::json toJson(const FillResult& result);

}  // namespace topinf

#endif  // TOPINF_FILL_HPP
