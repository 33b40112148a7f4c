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

#ifndef TOPINF_RIPS_HPP
#define TOPINF_RIPS_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topinf/ball.hpp"

namespace topinf {

/// Vertex of a (colored) Rips complex: pool element id * m + color.
using RVertex = std::uint32_t;
using REdge = std::array<RVertex, 2>;
using RTriangle = std::array<RVertex, 3>;

struct RipsBudget {
  std::size_t maxTriangles = 60'000'000;
};

/// 2-skeleton of P_d(G) (m = 1) or of the colored complex P(d, m, G) over a
/// ball. For m >= 2 a simplex carries at most one vertex of each color.
///
/// A materialized skeleton lists edges and triangles among the ball's
/// vertices. An implicit one answers adjacency through the distance oracle
/// only, and accepts elements interned beyond the ball.
class RipsSkeleton {
 public:
  int d() const { return d_; }
  int colors() const { return m_; }
  bool materialized() const { return materialized_; }
  const BallTable& ball() const { return *ball_; }
  const std::shared_ptr<const BallTable>& ballPtr() const { return ball_; }

  /// Number of vertices over the ball (ball size * m).
  std::size_t vertexCount() const { return ball_->size() * m_; }
  VertexId elementOf(RVertex v) const { return v / m_; }
  int colorOf(RVertex v) const { return static_cast<int>(v % m_); }
  RVertex vertex(VertexId element, int color = 0) const {
    return element * m_ + static_cast<RVertex>(color);
  }
  bool inBall(RVertex v) const { return ball_->inBall(elementOf(v)); }
  /// Distance of the vertex's element from the identity; nullopt beyond R.
  std::optional<int> depth(RVertex v) const;

  /// Edge test through the distance oracle (any interned elements).
  bool adjacent(RVertex u, RVertex v) const;
  /// True when the vertices (repeats allowed) span a simplex.
  bool spansSimplex(std::span<const RVertex> vs) const;

  /// Sorted neighbors of a ball vertex (materialized skeletons only).
  std::span<const RVertex> neighbors(RVertex v) const;
  const std::vector<REdge>& edges() const { return edges_; }
  const std::vector<RTriangle>& triangles() const { return triangles_; }

  /// Line-oriented export: "v <id> <dist> <color>", "e <i> <j>",
  /// "t <i> <j> <k>".
  std::string exportText() const;

 private:
  friend RipsSkeleton buildRips(std::shared_ptr<const BallTable>, int, int,
                                const RipsBudget&);
  friend RipsSkeleton makeImplicitRips(std::shared_ptr<const BallTable>, int,
                                       int);

  std::shared_ptr<const BallTable> ball_;
  int d_ = 1;
  int m_ = 1;
  bool materialized_ = false;
  std::vector<std::size_t> offsets_;
  std::vector<RVertex> adjacency_;
  std::vector<REdge> edges_;
  std::vector<RTriangle> triangles_;
};

RipsSkeleton buildRips(std::shared_ptr<const BallTable> ball, int d, int m = 1,
                       const RipsBudget& budget = {});
RipsSkeleton makeImplicitRips(std::shared_ptr<const BallTable> ball, int d,
                              int m = 1);

/// Full subcomplex on the vertices with inner < dist <= outer. inner = -1
/// and outer = unbounded give the whole complex (including, for implicit
/// skeletons, elements outside the ball).
class AnnulusView {
 public:
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  explicit AnnulusView(const RipsSkeleton& parent, int inner = -1,
                       int outer = kUnbounded);

  const RipsSkeleton& parent() const { return *parent_; }
  int inner() const { return inner_; }
  int outer() const { return outer_; }
  bool whole() const { return inner_ < 0 && outer_ == kUnbounded; }

  bool contains(RVertex v) const;
  bool containsAll(std::span<const RVertex> vs) const;
  /// Materialized parent only; sorted.
  std::vector<RVertex> vertices() const;
  std::vector<REdge> edges() const;
  std::vector<RTriangle> triangles() const;

 private:
  const RipsSkeleton* parent_;
  int inner_;
  int outer_;
};

struct RescaledEdge {
  std::vector<RVertex> path;          // in P_d, from the edge's first vertex
  std::vector<RTriangle> fan;         // triangles of P_D
};

/// Replaces an edge of P_D by a path of P_d along a geodesic, together with
/// the fan of triangles [x_1, x_j, x_{j+1}] spanning edge and path.
/// nullopt when the geodesic is not available within the ball.
std::optional<RescaledEdge> rescaleEdgePath(const RipsSkeleton& small,
                                            const RipsSkeleton& large,
                                            RVertex u, RVertex v);

struct FreeActionReport {
  bool free = true;
  std::size_t simplicesChecked = 0;
  /// Offending group element (as a word) and simplex, if any.
  Word element;
  std::vector<RVertex> simplex;
};

/// Checks that no nontrivial group element maps a vertex, edge or triangle
/// with support in B(R - d) onto itself setwise.
FreeActionReport checkFreeAction(const RipsSkeleton& skel);

}  // namespace topinf

#endif  // TOPINF_RIPS_HPP
