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

#include "topinf/rips.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "topinf/error.hpp"

namespace topinf {

std::optional<int> RipsSkeleton::depth(RVertex v) const {
  VertexId e = elementOf(v);
  if (ball_->inBall(e)) return ball_->dist(e);
  return std::nullopt;
}

bool RipsSkeleton::adjacent(RVertex u, RVertex v) const {
  if (u == v) return false;
  if (m_ > 1 && colorOf(u) == colorOf(v)) return false;
  if (materialized_ && inBall(u) && inBall(v)) {
    auto n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
  }
  VertexId a = elementOf(u), b = elementOf(v);
  if (a == b) return true;  // distinct colors of one element
  auto dist = ball_->pairDistance(a, b);
  return dist && *dist <= d_;
}

bool RipsSkeleton::spansSimplex(std::span<const RVertex> vs) const {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (vs[i] != vs[j] && !adjacent(vs[i], vs[j])) return false;
    }
  }
  return true;
}

std::span<const RVertex> RipsSkeleton::neighbors(RVertex v) const {
  if (!materialized_) {
    throw PreconditionError("neighbor lists need a materialized skeleton");
  }
  if (!inBall(v)) throw PreconditionError("vertex outside the ball");
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::string RipsSkeleton::exportText() const {
  std::ostringstream out;
  out << "# rips d=" << d_ << " m=" << m_ << " R=" << ball_->radius() << '\n';
  for (RVertex v = 0; v < vertexCount(); ++v) {
    out << "v " << v << ' ' << ball_->dist(elementOf(v)) << ' ' << colorOf(v)
        << '\n';
  }
  for (const auto& e : edges_) out << "e " << e[0] << ' ' << e[1] << '\n';
  for (const auto& t : triangles_) {
    out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  return out.str();
}

namespace {

void checkParameters(const BallTable& ball, int d, int m) {
  if (d < 1) throw PreconditionError("Rips parameter d must be >= 1");
  if (m < 1) throw PreconditionError("number of colors m must be >= 1");
  if (d > ball.radius()) {
    throw PreconditionError("Rips parameter d = " + std::to_string(d) +
                            " exceeds the ball radius " +
                            std::to_string(ball.radius()));
  }
}

}  // namespace

RipsSkeleton makeImplicitRips(std::shared_ptr<const BallTable> ball, int d,
                              int m) {
  checkParameters(*ball, d, m);
  RipsSkeleton s;
  s.ball_ = std::move(ball);
  s.d_ = d;
  s.m_ = m;
  return s;
}

RipsSkeleton buildRips(std::shared_ptr<const BallTable> ball, int d, int m,
                       const RipsBudget& budget) {
  checkParameters(*ball, d, m);
  RipsSkeleton s;
  s.ball_ = std::move(ball);
  s.d_ = d;
  s.m_ = m;
  const BallTable& b = *s.ball_;
  const auto mu = static_cast<RVertex>(m);

  s.offsets_.reserve(s.vertexCount() + 1);
  s.offsets_.push_back(0);
  for (VertexId x = 0; x < b.size(); ++x) {
    std::vector<VertexId> near = b.neighborsWithin(x, d);
    if (m > 1) {
      near.insert(std::lower_bound(near.begin(), near.end(), x), x);
    }
    for (RVertex c = 0; c < mu; ++c) {
      for (VertexId y : near) {
        for (RVertex j = 0; j < mu; ++j) {
          if (m > 1 && j == c) continue;
          s.adjacency_.push_back(y * mu + j);
        }
      }
      s.offsets_.push_back(s.adjacency_.size());
    }
  }
  s.materialized_ = true;

  for (RVertex u = 0; u < s.vertexCount(); ++u) {
    for (RVertex v : s.neighbors(u)) {
      if (v > u) s.edges_.push_back({u, v});
    }
  }
  // Triangles: intersect the neighbor lists of each edge's endpoints.
  for (const auto& [u, v] : s.edges_) {
    auto nu = s.neighbors(u);
    auto nv = s.neighbors(v);
    auto i = std::upper_bound(nu.begin(), nu.end(), v);
    auto j = std::upper_bound(nv.begin(), nv.end(), v);
    while (i != nu.end() && j != nv.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        s.triangles_.push_back({u, v, *i});
        ++i;
        ++j;
      }
    }
    if (s.triangles_.size() > budget.maxTriangles) {
      throw BudgetError("Rips triangle budget exceeded (" +
                        std::to_string(budget.maxTriangles) + ")");
    }
  }
  return s;
}

// ---------------------------------------------------------------- annulus

AnnulusView::AnnulusView(const RipsSkeleton& parent, int inner, int outer)
    : parent_(&parent), inner_(inner), outer_(outer) {
  if (outer_ != kUnbounded && outer_ > parent.ball().radius()) {
    throw PreconditionError("annulus outer radius exceeds the ball radius");
  }
  if (inner_ >= outer_) {
    throw PreconditionError("annulus inner radius must be below the outer");
  }
}

bool AnnulusView::contains(RVertex v) const {
  if (whole()) return true;
  auto dv = parent_->depth(v);
  if (!dv) return outer_ == kUnbounded && inner_ < parent_->ball().radius();
  return *dv > inner_ && *dv <= outer_;
}

bool AnnulusView::containsAll(std::span<const RVertex> vs) const {
  return std::all_of(vs.begin(), vs.end(),
                     [&](RVertex v) { return contains(v); });
}

std::vector<RVertex> AnnulusView::vertices() const {
  std::vector<RVertex> out;
  for (RVertex v = 0; v < parent_->vertexCount(); ++v) {
    if (contains(v)) out.push_back(v);
  }
  return out;
}

std::vector<REdge> AnnulusView::edges() const {
  if (!parent_->materialized()) {
    throw PreconditionError("edge lists need a materialized skeleton");
  }
  std::vector<REdge> out;
  for (const auto& e : parent_->edges()) {
    if (contains(e[0]) && contains(e[1])) out.push_back(e);
  }
  return out;
}

std::vector<RTriangle> AnnulusView::triangles() const {
  if (!parent_->materialized()) {
    throw PreconditionError("triangle lists need a materialized skeleton");
  }
  std::vector<RTriangle> out;
  for (const auto& t : parent_->triangles()) {
    if (contains(t[0]) && contains(t[1]) && contains(t[2])) out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------- rescale

std::optional<RescaledEdge> rescaleEdgePath(const RipsSkeleton& small,
                                            const RipsSkeleton& large,
                                            RVertex u, RVertex v) {
  if (small.ballPtr() != large.ballPtr()) {
    throw PreconditionError("rescaling needs skeletons over the same ball");
  }
  if (small.colors() != 1 || large.colors() != 1) {
    throw PreconditionError("rescaling is defined for plain Rips complexes");
  }
  if (small.d() > large.d()) {
    throw PreconditionError("rescaling needs d <= D");
  }
  if (u != v && !large.adjacent(u, v)) {
    throw PreconditionError("vertices do not span an edge of P_D");
  }
  auto geo = large.ball().geodesic(u, v);
  if (!geo) return std::nullopt;
  RescaledEdge out;
  const auto& g = *geo;
  const std::size_t step = static_cast<std::size_t>(small.d());
  for (std::size_t i = 0; i + 1 < g.size(); i += step) out.path.push_back(g[i]);
  out.path.push_back(g.back());
  for (std::size_t j = 1; j + 1 < out.path.size(); ++j) {
    RTriangle t{out.path[0], out.path[j], out.path[j + 1]};
    std::sort(t.begin(), t.end());
    out.fan.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------- freeness

FreeActionReport checkFreeAction(const RipsSkeleton& skel) {
  if (!skel.materialized()) {
    throw PreconditionError("free-action check needs a materialized skeleton");
  }
  const BallTable& ball = skel.ball();
  const Engine& eng = ball.engine();
  const ElementPool& pool = *ball.pool();
  const int limit = ball.radius() - skel.d();
  auto supported = [&](std::span<const RVertex> vs) {
    for (RVertex v : vs) {
      if (ball.dist(skel.elementOf(v)) > limit) return false;
    }
    return true;
  };

  FreeActionReport report;
  // g fixes a simplex setwise only if it carries its first vertex to
  // another of its vertices, so the candidates are y * x0^-1.
  auto examine = [&](std::span<const RVertex> simplex) {
    if (!supported(simplex)) return false;
    ++report.simplicesChecked;
    std::vector<RVertex> sorted(simplex.begin(), simplex.end());
    std::sort(sorted.begin(), sorted.end());
    VertexId x0 = skel.elementOf(simplex[0]);
    Element x0inv = eng.inverse(pool.element(x0));
    for (std::size_t k = 1; k < simplex.size(); ++k) {
      VertexId y = skel.elementOf(simplex[k]);
      if (y == x0) continue;
      Element g = eng.multiply(pool.element(y), x0inv);
      std::vector<RVertex> image;
      for (RVertex v : simplex) {
        auto id = pool.find(eng.multiply(g, pool.element(skel.elementOf(v))));
        if (!id) break;
        image.push_back(skel.vertex(*id, skel.colorOf(v)));
      }
      if (image.size() != simplex.size()) continue;
      std::sort(image.begin(), image.end());
      if (image == sorted) {
        report.free = false;
        report.element = freeReduce(
            concat(ball.witness(y), inverse(ball.witness(x0))));
        report.simplex = sorted;
        return true;
      }
    }
    return false;
  };

  for (RVertex v = 0; v < skel.vertexCount(); ++v) {
    RVertex one[1] = {v};
    if (examine(one)) return report;
  }
  for (const auto& e : skel.edges()) {
    if (examine(e)) return report;
  }
  for (const auto& t : skel.triangles()) {
    if (examine(t)) return report;
  }
  return report;
}

}  // namespace topinf
