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

#ifndef TOPINF_HOMOLOGY_HPP
#define TOPINF_HOMOLOGY_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "topinf/loop.hpp"
#include "topinf/rips.hpp"

namespace topinf {

using SparseVector = std::vector<std::pair<int, std::int64_t>>;

/// Finitely generated abelian group Z^n / <relations>, reduced to
/// Z^rank + (+)_j Z/t_j with explicit coordinate functionals.
class AbelianQuotient {
 public:
  explicit AbelianQuotient(std::size_t generators);

  std::size_t generators() const { return generators_; }
  void addRelation(SparseVector row);
  /// Eliminates generators along unit pivots, then runs a dense Smith
  /// normal form on the remainder.
  void solve();

  int rank() const;
  /// Invariant factors > 1, in divisibility order.
  std::vector<std::int64_t> torsion() const;
  /// One coordinate per nontrivial cyclic factor; modulus 0 means Z.
  std::size_t coordinateCount() const { return moduli_.size(); }
  std::int64_t modulus(std::size_t j) const { return moduli_[j]; }
  /// Value of coordinate functional j on a generator.
  std::int64_t functional(std::size_t j, int generator) const {
    return functionals_[j][static_cast<std::size_t>(generator)];
  }
  /// Coordinates of the class of a generator combination (torsion
  /// coordinates reduced to [0, t)).
  std::vector<std::int64_t> coordinates(const SparseVector& x) const;
  /// A generator combination whose class is the j-th basis element.
  const SparseVector& representative(std::size_t j) const {
    return representatives_[j];
  }

 private:
  std::size_t generators_;
  std::vector<SparseVector> relations_;
  bool solved_ = false;
  std::vector<std::int64_t> moduli_;
  std::vector<std::vector<std::int64_t>> functionals_;
  std::vector<SparseVector> representatives_;
};

/// Graph data of a view: local vertex numbering, edges, triangles and a
/// breadth-first spanning forest whose non-tree edges are the generators.
struct ViewGraph {
  std::vector<RVertex> vertices;
  std::unordered_map<RVertex, int> local;
  std::vector<REdge> edges;  // u < v
  std::unordered_map<std::uint64_t, int> edgeIndex;
  std::vector<RTriangle> triangles;
  std::vector<int> parentEdge;   // per local vertex, -1 at roots
  std::vector<int> parent;       // per local vertex, -1 at roots
  std::vector<int> depth;
  std::vector<int> component;
  std::vector<int> generatorOfEdge;  // -1 for tree edges
  std::vector<int> edgeOfGenerator;
  int components = 0;

  std::size_t generatorCount() const { return edgeOfGenerator.size(); }
  /// Index of the edge {u, v}, if present.
  std::optional<int> findEdge(RVertex u, RVertex v) const;
  /// Generator combination of a closed vertex walk (equal consecutive
  /// vertices allowed); throws if a step is not an edge of the view.
  SparseVector chainOf(std::span<const RVertex> cycle) const;
  /// Closed walk: the generator's edge followed by the tree path back.
  std::vector<RVertex> generatorCycle(int generator) const;
  /// Tree path between vertices of one component (inclusive).
  std::vector<RVertex> treePath(RVertex from, RVertex to) const;
};

ViewGraph buildViewGraph(const AnnulusView& view);

struct H1Group {
  int rank = 0;
  std::vector<std::int64_t> torsion;
  bool trivial() const { return rank == 0 && torsion.empty(); }
};

/// First homology of a view with integer coefficients.
class HomologyH1 {
 public:
  explicit HomologyH1(const AnnulusView& view);

  const AnnulusView& view() const { return view_; }
  const ViewGraph& graph() const { return graph_; }
  const AbelianQuotient& quotient() const { return quotient_; }
  H1Group group() const;
  /// Coordinates of the class of a closed walk in the view.
  std::vector<std::int64_t> classOf(std::span<const RVertex> cycle) const;
  /// Closed walk representing basis element j.
  std::vector<std::vector<RVertex>> basisCycles(std::size_t j) const;

 private:
  AnnulusView view_;
  ViewGraph graph_;
  AbelianQuotient quotient_;
};

struct H1Map {
  H1Group source;
  H1Group target;
  /// matrix[i][j]: coordinate i of the image of source basis element j.
  std::vector<std::vector<std::int64_t>> matrix;
  bool zero() const;
};

/// Map induced by the inclusion source -> target (source must be a
/// subcomplex of target).
H1Map h1Map(const HomologyH1& source, const HomologyH1& target);

/// Cocycle witness that a loop is not null-homologous in the target view:
/// phi vanishes on every triangle boundary of the target (mod modulus; 0
/// means integers) and is nonzero on the loop. Valid relative to the
/// truncation B(outer).
struct H1Certificate {
  int loopInner = 0;    // the loop lies in dist > loopInner
  int targetInner = 0;  // no disk in dist in (targetInner, outer]
  int outer = 0;
  int d = 0;
  int colors = 1;
  SimplicialLoop loop;
  H1Group sourceGroup;
  H1Group targetGroup;
  std::vector<std::int64_t> classVector;
  std::vector<std::int64_t> mapImage;
  std::int64_t modulus = 0;
  std::vector<std::pair<REdge, std::int64_t>> cocycle;  // nonzero values
};

/// Certificate for a loop (lying in dist > loopInner) whose class in the
/// target view is nonzero; nullopt if it is zero there. With a source view
/// the class is also recorded in source coordinates.
std::optional<H1Certificate> obstructLoop(const SimplicialLoop& loop,
                                          const HomologyH1& target,
                                          int loopInner,
                                          const HomologyH1* source = nullptr);

struct CertificateCheck {
  bool ok = false;
  std::string reason;
};

/// Independent check against the skeleton's triangles.
CertificateCheck checkCertificate(const H1Certificate& cert,
                                  const RipsSkeleton& skel);

nlohmann::json toJson(const H1Certificate& cert);
nlohmann::json toJson(const H1Group& group);

}  // namespace topinf

#endif  // TOPINF_HOMOLOGY_HPP
