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

#include "topinf/loop.hpp"

#include <algorithm>

#include "topinf/error.hpp"

namespace topinf {

SimplicialLoop loopFromWord(const RipsSkeleton& skel, VertexId start,
                            std::span<const Letter> word, int color) {
  const Engine& eng = skel.ball().engine();
  ElementPool& pool = *skel.ball().pool();
  SimplicialLoop loop;
  Element cur = pool.element(start);
  loop.vertices.push_back(skel.vertex(start, color));
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    cur = eng.multiplyLetter(cur, word[i]);
    loop.vertices.push_back(skel.vertex(pool.intern(cur), color));
  }
  return loop;
}

void validateLoop(const SimplicialLoop& loop, const AnnulusView& ambient) {
  const auto& v = loop.vertices;
  const auto& skel = ambient.parent();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!ambient.contains(v[i])) {
      throw PreconditionError("loop vertex " + std::to_string(v[i]) +
                              " lies outside the ambient complex");
    }
    RVertex next = v[(i + 1) % v.size()];
    if (v[i] != next && !skel.adjacent(v[i], next)) {
      throw PreconditionError("loop vertices " + std::to_string(v[i]) +
                              " and " + std::to_string(next) +
                              " are not joined by an edge");
    }
  }
}

SimplicialLoop normalizeLoop(const SimplicialLoop& loop) {
  SimplicialLoop out;
  for (RVertex v : loop.vertices) {
    if (out.vertices.empty() || out.vertices.back() != v) {
      out.vertices.push_back(v);
    }
  }
  while (out.vertices.size() > 1 &&
         out.vertices.back() == out.vertices.front()) {
    out.vertices.pop_back();
  }
  return out;
}

std::vector<RVertex> canonicalRotation(std::span<const RVertex> cycle) {
  const std::size_t n = cycle.size();
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      RVertex a = cycle[(s + k) % n], b = cycle[(best + k) % n];
      if (a != b) {
        if (a < b) best = s;
        break;
      }
    }
  }
  std::vector<RVertex> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = cycle[(best + k) % n];
  return out;
}

MoveKind classifyMove(RVertex prev, RVertex v, RVertex next) {
  if (v == prev || v == next) return MoveKind::Degenerate;
  if (prev == next) return MoveKind::Spur;
  return MoveKind::Triangle;
}

std::size_t DiskFilling::count(MoveKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(moves.begin(), moves.end(),
                    [kind](const LoopMove& m) { return m.kind == kind; }));
}

void applyMove(std::vector<RVertex>& cycle, const LoopMove& move,
               const AnnulusView& ambient) {
  const std::size_t n = cycle.size();
  const auto& skel = ambient.parent();
  if (move.index >= n) throw ConsistencyError("move index out of range");
  RVertex prev, mid, next;
  if (move.op == LoopMove::Remove) {
    if (n < 2) throw ConsistencyError("cannot remove from a trivial loop");
    prev = cycle[(move.index + n - 1) % n];
    mid = cycle[move.index];
    next = cycle[(move.index + 1) % n];
  } else {
    prev = cycle[move.index];
    mid = move.vertex;
    next = cycle[(move.index + 1) % n];
    if (!ambient.contains(mid)) {
      throw ConsistencyError("inserted vertex lies outside the ambient");
    }
  }
  RVertex tri[3] = {prev, mid, next};
  if (!skel.spansSimplex(tri)) {
    throw ConsistencyError("cited vertices do not span a simplex");
  }
  if (classifyMove(prev, mid, next) != move.kind) {
    throw ConsistencyError("move kind does not match the cited simplex");
  }
  if (move.op == LoopMove::Remove) {
    cycle.erase(cycle.begin() + static_cast<std::ptrdiff_t>(move.index));
  } else {
    cycle.insert(cycle.begin() + static_cast<std::ptrdiff_t>(move.index) + 1,
                 mid);
  }
}

void LoopEditor::insert(std::size_t index, RVertex w) {
  const std::size_t n = seq_.size();
  moves_.push_back({LoopMove::Insert, index, w,
                    classifyMove(seq_[index], w, seq_[(index + 1) % n])});
  seq_.insert(seq_.begin() + static_cast<std::ptrdiff_t>(index) + 1, w);
}

void LoopEditor::remove(std::size_t index) {
  const std::size_t n = seq_.size();
  moves_.push_back({LoopMove::Remove, index, 0,
                    classifyMove(seq_[(index + n - 1) % n], seq_[index],
                                 seq_[(index + 1) % n])});
  seq_.erase(seq_.begin() + static_cast<std::ptrdiff_t>(index));
}

RVertex LoopEditor::step(RVertex from, Letter x) const {
  const BallTable& ball = skel_->ball();
  ElementPool& pool = *ball.pool();
  Element e =
      ball.engine().multiplyLetter(pool.element(skel_->elementOf(from)), x);
  return skel_->vertex(pool.intern(e), skel_->colorOf(from));
}

ReplayResult replayFilling(const DiskFilling& filling,
                           const AnnulusView& ambient) {
  ReplayResult r;
  try {
    validateLoop(filling.loop, ambient);
  } catch (const Error& e) {
    r.reason = e.what();
    return r;
  }
  std::vector<RVertex> cycle = filling.loop.vertices;
  for (std::size_t i = 0; i < filling.moves.size(); ++i) {
    try {
      applyMove(cycle, filling.moves[i], ambient);
    } catch (const Error& e) {
      r.failedMove = i;
      r.reason = e.what();
      return r;
    }
  }
  if (cycle.size() > 1) {
    r.failedMove = filling.moves.size();
    r.reason = "final loop is not trivial";
    return r;
  }
  r.ok = true;
  return r;
}

std::string toString(MoveKind kind) {
  switch (kind) {
    case MoveKind::Spur:
      return "spur";
    case MoveKind::Triangle:
      return "triangle";
    case MoveKind::Degenerate:
      return "degenerate";
  }
  return "?";
}

nlohmann::json toJson(const SimplicialLoop& loop) {
  return nlohmann::json(loop.vertices);
}

nlohmann::json toJson(const DiskFilling& filling) {
  nlohmann::json moves = nlohmann::json::array();
  for (const auto& m : filling.moves) {
    nlohmann::json j;
    j["op"] = m.op == LoopMove::Remove ? "remove" : "insert";
    j["index"] = m.index;
    if (m.op == LoopMove::Insert) j["vertex"] = m.vertex;
    j["kind"] = toString(m.kind);
    moves.push_back(std::move(j));
  }
  return {{"loop", toJson(filling.loop)}, {"moves", std::move(moves)}};
}

DiskFilling diskFillingFromJson(const nlohmann::json& j) {
  DiskFilling f;
  f.loop.vertices = j.at("loop").get<std::vector<RVertex>>();
  for (const auto& jm : j.at("moves")) {
    LoopMove m;
    std::string op = jm.at("op").get<std::string>();
    if (op == "remove") {
      m.op = LoopMove::Remove;
    } else if (op == "insert") {
      m.op = LoopMove::Insert;
      m.vertex = jm.at("vertex").get<RVertex>();
    } else {
      throw PreconditionError("unknown move op '" + op + "'");
    }
    m.index = jm.at("index").get<std::size_t>();
    std::string kind = jm.at("kind").get<std::string>();
    if (kind == "spur") {
      m.kind = MoveKind::Spur;
    } else if (kind == "triangle") {
      m.kind = MoveKind::Triangle;
    } else if (kind == "degenerate") {
      m.kind = MoveKind::Degenerate;
    } else {
      throw PreconditionError("unknown move kind '" + kind + "'");
    }
    f.moves.push_back(m);
  }
  return f;
}

}  // namespace topinf
