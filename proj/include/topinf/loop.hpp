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

#ifndef TOPINF_LOOP_HPP
#define TOPINF_LOOP_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "topinf/rips.hpp"

namespace topinf {

/// Cyclic vertex sequence; consecutive vertices (including last to first)
/// are equal or adjacent. A loop with at most one vertex is trivial.
struct SimplicialLoop {
  std::vector<RVertex> vertices;

  std::size_t size() const { return vertices.size(); }
  bool trivial() const { return vertices.size() <= 1; }
  friend bool operator==(const SimplicialLoop&,
                         const SimplicialLoop&) = default;
};

/// Cayley-graph loop starting at the given element and following a word.
/// Elements are interned in the ball's pool. The vertex reached by the last
/// letter is not recorded: for a closed word it is the start again, and
/// otherwise validateLoop decides whether the closing pair is an edge.
SimplicialLoop loopFromWord(const RipsSkeleton& skel, VertexId start,
                            std::span<const Letter> word, int color = 0);

/// Throws PreconditionError unless the loop lies in the ambient view.
void validateLoop(const SimplicialLoop& loop, const AnnulusView& ambient);

/// Drops repeated consecutive vertices (cyclically).
SimplicialLoop normalizeLoop(const SimplicialLoop& loop);

/// Lexicographically least rotation, used as a hashing key.
std::vector<RVertex> canonicalRotation(std::span<const RVertex> cycle);

enum class MoveKind { Spur, Triangle, Degenerate };

/// Elementary move on the current vertex sequence.
/// Remove(i): drops vertex i; needs {v[i-1], v[i], v[i+1]} to span a simplex.
/// Insert(i, w): puts w between v[i] and v[i+1]; needs {v[i], w, v[i+1]}.
struct LoopMove {
  enum Op { Remove, Insert } op = Remove;
  std::size_t index = 0;
  RVertex vertex = 0;  // inserted vertex
  MoveKind kind = MoveKind::Triangle;
  friend bool operator==(const LoopMove&, const LoopMove&) = default;
};

/// Classifies the simplex a move cites.
MoveKind classifyMove(RVertex prev, RVertex v, RVertex next);

struct DiskFilling {
  SimplicialLoop loop;
  std::vector<LoopMove> moves;

  std::size_t count(MoveKind kind) const;
};

/// Applies one move; throws ConsistencyError when it is not valid in the
/// ambient view.
void applyMove(std::vector<RVertex>& cycle, const LoopMove& move,
               const AnnulusView& ambient);

/// Applies moves to a vertex sequence while recording them, classifying
/// each by the simplex it cites. Validity is left to replayFilling.
class LoopEditor {
 public:
  LoopEditor(const RipsSkeleton& skel, std::vector<RVertex> seq)
      : skel_(&skel), seq_(std::move(seq)) {}

  void insert(std::size_t index, RVertex w);
  void remove(std::size_t index);
  /// Cayley neighbor of a vertex along a letter (same color), interned.
  RVertex step(RVertex from, Letter x) const;

  const std::vector<RVertex>& sequence() const { return seq_; }
  std::vector<LoopMove>& moves() { return moves_; }

 private:
  const RipsSkeleton* skel_;
  std::vector<RVertex> seq_;
  std::vector<LoopMove> moves_;
};

struct ReplayResult {
  bool ok = false;
  std::size_t failedMove = 0;  // index of the first bad move
  std::string reason;
};

/// Independent checker: every move is valid in the ambient view and the
/// final loop is trivial.
ReplayResult replayFilling(const DiskFilling& filling,
                           const AnnulusView& ambient);

nlohmann::json toJson(const SimplicialLoop& loop);
nlohmann::json toJson(const DiskFilling& filling);
DiskFilling diskFillingFromJson(const nlohmann::json& j);
std::string toString(MoveKind kind);

}  // namespace topinf

#endif  // TOPINF_LOOP_HPP
