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

#include "topinf/fill.hpp"

#include <algorithm>
#include <queue>
#include <unordered_set>

#include "topinf/error.hpp"

namespace topinf {

std::string toString(FillStatus status) {
  switch (status) {
    case FillStatus::Filled:
      return "filled";
    case FillStatus::Obstructed:
      return "obstructed";
    case FillStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

std::uint64_t cycleHash(std::span<const RVertex> cycle) {
  std::vector<RVertex> c = canonicalRotation(cycle);
  std::uint64_t h = 1469598103934665603ull;
  for (RVertex v : c) {
    for (int k = 0; k < 4; ++k) {
      h ^= (v >> (8 * k)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h ^ c.size();
}

/// Vertices of the ambient adjacent to both a and b (excluding a and b).
std::vector<RVertex> commonNeighbors(const AnnulusView& ambient, RVertex a,
                                     RVertex b) {
  const RipsSkeleton& skel = ambient.parent();
  std::vector<RVertex> out;
  if (skel.materialized() && skel.inBall(a) && skel.inBall(b)) {
    auto na = skel.neighbors(a);
    auto nb = skel.neighbors(b);
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                          std::back_inserter(out));
  } else {
    const BallTable& ball = skel.ball();
    const Engine& eng = ball.engine();
    ElementPool& pool = *ball.pool();
    const Element& x = pool.element(skel.elementOf(a));
    const std::size_t local = ball.ballCount(skel.d());
    for (std::size_t s = 0; s < local; ++s) {
      VertexId y = s == 0 ? skel.elementOf(a)
                          : pool.intern(eng.multiply(
                                x, pool.element(static_cast<VertexId>(s))));
      for (int c = 0; c < skel.colors(); ++c) {
        RVertex w = skel.vertex(y, c);
        if (w == a || w == b) continue;
        if (skel.adjacent(a, w) && skel.adjacent(b, w)) out.push_back(w);
      }
    }
    std::sort(out.begin(), out.end());
  }
  std::erase_if(out, [&](RVertex w) {
    return w == a || w == b || !ambient.contains(w);
  });
  return out;
}

struct Node {
  int parent;
  std::vector<LoopMove> moves;  // moves from the parent's sequence
  std::vector<RVertex> seq;
};

}  // namespace

FillResult fillLoop(const SimplicialLoop& loop, const AnnulusView& ambient,
                    const FillBudget& budget,
                    const HomologyH1* ambientHomology) {
  validateLoop(loop, ambient);
  FillResult result;
  if (loop.trivial()) {
    result.status = FillStatus::Filled;
    result.filling = DiskFilling{loop, {}};
    return result;
  }
  if (ambientHomology) {
    if (auto cert = obstructLoop(loop, *ambientHomology, ambient.inner())) {
      result.status = FillStatus::Obstructed;
      result.certificate = std::move(cert);
      return result;
    }
  }
  const RipsSkeleton& skel = ambient.parent();
  const std::size_t maxLength = loop.size() + budget.lengthSlack;

  std::vector<Node> nodes;
  nodes.push_back({-1, {}, loop.vertices});
  std::unordered_set<std::uint64_t> visited{cycleHash(loop.vertices)};
  using Item = std::pair<std::size_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  queue.emplace(loop.size(), 0);

  int solved = -1;
  auto offer = [&](int parent, std::vector<RVertex> child,
                   std::vector<LoopMove> moves) {
    if (solved >= 0) return;
    if (!visited.insert(cycleHash(child)).second) return;
    bool done = child.size() <= 1;
    std::size_t len = child.size();
    nodes.push_back({parent, std::move(moves), std::move(child)});
    int id = static_cast<int>(nodes.size()) - 1;
    if (done) {
      solved = id;
    } else {
      queue.emplace(len, id);
    }
  };

  while (!queue.empty() && solved < 0) {
    if (nodes.size() >= budget.maxStates) break;
    int id = queue.top().second;
    queue.pop();
    const std::vector<RVertex> seq = nodes[id].seq;
    const std::size_t n = seq.size();
    auto at = [&](std::size_t i) { return seq[i % n]; };

    // Removals.
    for (std::size_t i = 0; i < n && solved < 0; ++i) {
      RVertex prev = at(i + n - 1), v = seq[i], next = at(i + 1);
      if (prev != next && !skel.adjacent(prev, next)) continue;
      std::vector<RVertex> child = seq;
      child.erase(child.begin() + static_cast<std::ptrdiff_t>(i));
      LoopMove m{LoopMove::Remove, i, 0, classifyMove(prev, v, next)};
      offer(id, std::move(child), {m});
    }
    if (n < 2) continue;
    // common[i]: ambient vertices adjacent to seq[i] and seq[i+1].
    std::vector<std::vector<RVertex>> common(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (seq[i] != at(i + 1)) common[i] = commonNeighbors(ambient, seq[i], at(i + 1));
    }
    // Replacements: seq[i] -> w with w adjacent to seq[i-1], seq[i], seq[i+1].
    for (std::size_t i = 0; i < n && solved < 0 && n >= 3; ++i) {
      RVertex prev = at(i + n - 1), v = seq[i], next = at(i + 1);
      for (RVertex w : common[(i + n - 1) % n]) {
        if (w == next || !skel.adjacent(w, next)) continue;
        std::vector<RVertex> child = seq;
        child[i] = w;
        LoopMove ins{LoopMove::Insert, i, w, classifyMove(v, w, next)};
        LoopMove rem{LoopMove::Remove, i, 0, classifyMove(prev, v, w)};
        offer(id, std::move(child), {ins, rem});
        if (solved >= 0) break;
      }
    }
    // Insertions.
    if (n < maxLength) {
      for (std::size_t i = 0; i < n && solved < 0; ++i) {
        for (RVertex w : common[i]) {
          std::vector<RVertex> child = seq;
          child.insert(child.begin() + static_cast<std::ptrdiff_t>(i) + 1, w);
          LoopMove m{LoopMove::Insert, i, w, classifyMove(seq[i], w, at(i + 1))};
          offer(id, std::move(child), {m});
          if (solved >= 0) break;
        }
      }
    }
  }
  result.states = nodes.size();
  if (solved < 0) {
    result.status = FillStatus::Inconclusive;
    return result;
  }
  std::vector<LoopMove> moves;
  for (int id = solved; id > 0; id = nodes[id].parent) {
    const auto& ms = nodes[id].moves;
    moves.insert(moves.begin(), ms.begin(), ms.end());
  }
  DiskFilling filling{loop, std::move(moves)};
  ReplayResult replay = replayFilling(filling, ambient);
  if (!replay.ok) {
    throw ConsistencyError("filling search produced a trace that fails replay: " +
                           replay.reason);
  }
  result.status = FillStatus::Filled;
  result.filling = std::move(filling);
  return result;
}

nlohmann::json toJson(const FillResult& result) {
  nlohmann::json j;
  j["status"] = toString(result.status);
  j["states"] = result.states;
  if (result.filling) j["filling"] = toJson(*result.filling);
  if (result.certificate) j["certificate"] = toJson(*result.certificate);
  return j;
}

}  // namespace topinf
