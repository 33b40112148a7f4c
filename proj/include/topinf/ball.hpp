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

#ifndef TOPINF_BALL_HPP
#define TOPINF_BALL_HPP

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "topinf/engine.hpp"
#include "topinf/families.hpp"

namespace topinf {

using VertexId = std::uint32_t;

/// Interning table for group elements. Ids are dense and assigned in
/// insertion order. All members are internally synchronized.
class ElementPool {
 public:
  explicit ElementPool(EnginePtr engine);

  const Engine& engine() const { return *engine_; }
  const EnginePtr& enginePtr() const { return engine_; }
  std::size_t size() const;
  const Element& element(VertexId id) const;
  std::optional<VertexId> find(const Element& e) const;
  VertexId intern(const Element& e);

 private:
  std::optional<VertexId> findLocked(const Element& e, std::uint64_t h) const;

  EnginePtr engine_;
  std::deque<Element> elements_;
  std::unordered_multimap<std::uint64_t, VertexId> index_;
  mutable std::shared_mutex mutex_;
};

struct BallBudget {
  std::size_t maxVertices = 20'000'000;
  bool allowHeuristic = false;
};

/// The word-metric ball B(R) around the identity, enumerated breadth-first
/// with letters tried in rank order a < A < b < B ..., so each vertex's
/// witness is its shortlex-least geodesic. Vertex ids are BFS order, so
/// B(k) is the id prefix [0, ballCount(k)).
class BallTable {
 public:
  int radius() const { return radius_; }
  std::size_t size() const { return dist_.size(); }
  int letters() const { return letters_; }
  const Engine& engine() const { return pool_->engine(); }
  const std::shared_ptr<ElementPool>& pool() const { return pool_; }
  const std::string& modelName() const { return modelName_; }
  std::uint64_t presentationFingerprint() const { return fingerprint_; }
  bool heuristic() const { return heuristic_; }

  static constexpr VertexId identity() { return 0; }
  bool inBall(VertexId v) const { return v < size(); }
  int dist(VertexId v) const { return dist_.at(v); }
  const Word& witness(VertexId v) const { return witness_.at(v); }
  const Element& element(VertexId v) const { return pool_->element(v); }
  CanonicalKey key(VertexId v) const { return engine().key(element(v)); }
  /// Cayley neighbor of v along the letter of the given rank, or -1 when it
  /// lies outside the ball.
  std::int32_t neighbor(VertexId v, int letterRank) const {
    return adjacency_[v * static_cast<std::size_t>(letters_) +
                      static_cast<std::size_t>(letterRank)];
  }

  std::size_t ballCount(int k) const;
  std::vector<std::size_t> ballCounts() const;
  std::vector<VertexId> sphereVertices(int k) const;

  /// Ball vertex representing e, if e lies in B(R).
  std::optional<VertexId> lookup(const Element& e) const;
  /// Exact d(u, v) for any pool elements; nullopt when it exceeds R (the
  /// element u^-1 v is then outside the table).
  std::optional<int> pairDistance(VertexId u, VertexId v) const;
  /// Ball vertices w != u with d(u, w) <= d, sorted. Requires d <= R.
  std::vector<VertexId> neighborsWithin(VertexId u, int d) const;
  /// Vertices on a geodesic from u to v (inclusive), following the
  /// shortlex witness of u^-1 v; interns elements outside the ball.
  std::optional<std::vector<VertexId>> geodesic(VertexId u, VertexId v) const;

  void save(const std::string& path) const;
  static BallTable load(const GroupModel& model, const std::string& path);
  /// Cache file name for (presentation, engine, R).
  static std::string cacheName(const GroupModel& model, int radius);

 private:
  friend BallTable buildBall(const GroupModel&, int, const BallBudget&);

  std::shared_ptr<ElementPool> pool_;
  int radius_ = 0;
  int letters_ = 0;
  std::vector<int> dist_;
  std::vector<Word> witness_;
  std::vector<std::int32_t> adjacency_;
  std::vector<std::size_t> layerStart_;
  std::string modelName_;
  std::uint64_t fingerprint_ = 0;
  bool heuristic_ = false;
};

/// Enumerates B(R). Refuses a non-exact engine unless the budget allows
/// heuristics; a vertex budget overrun throws BudgetError naming the
/// largest completed radius.
BallTable buildBall(const GroupModel& model, int radius,
                    const BallBudget& budget = {});

/// buildBall backed by an on-disk cache directory (created if missing).
BallTable buildBallCached(const GroupModel& model, int radius,
                          const std::string& cacheDir,
                          const BallBudget& budget = {});

}  // namespace topinf

#endif  // TOPINF_BALL_HPP
