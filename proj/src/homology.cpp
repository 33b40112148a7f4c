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

#include "topinf/homology.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <deque>
#include <queue>

#include "topinf/error.hpp"

namespace topinf {

namespace {

using BigInt = boost::multiprecision::cpp_int;

struct Overflow {};

std::int64_t addChecked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}

std::int64_t mulChecked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

BigInt addChecked(const BigInt& a, const BigInt& b) { return a + b; }
BigInt mulChecked(const BigInt& a, const BigInt& b) { return a * b; }

template <class T>
T absValue(const T& x) {
  return x < 0 ? T(-x) : x;
}

std::int64_t reduceMod(std::int64_t x, std::int64_t m) {
  if (m == 0) return x;
  x %= m;
  return x < 0 ? x + m : x;
}

/// Dense Smith normal form A -> A V (row operations are not tracked).
template <class T>
struct DenseSnf {
  std::vector<std::vector<T>> a;
  std::vector<std::vector<T>> v;     // k x k
  std::vector<std::vector<T>> vinv;  // k x k
  std::size_t rank = 0;

  DenseSnf(std::vector<std::vector<T>> m, std::size_t k) : a(std::move(m)) {
    v.assign(k, std::vector<T>(k, T(0)));
    vinv = v;
    for (std::size_t i = 0; i < k; ++i) v[i][i] = vinv[i][i] = T(1);
  }

  void rowAxpy(std::size_t dst, std::size_t src, const T& q) {
    // row_dst -= q * row_src
    for (std::size_t j = 0; j < a[dst].size(); ++j) {
      if (a[src][j] != 0) a[dst][j] = addChecked(a[dst][j], mulChecked(T(-q), a[src][j]));
    }
  }

  void colAxpy(std::size_t dst, std::size_t src, const T& q) {
    // col_dst -= q * col_src; V likewise; Vinv: row_src += q * row_dst
    for (auto& row : a) {
      if (row[src] != 0) row[dst] = addChecked(row[dst], mulChecked(T(-q), row[src]));
    }
    for (auto& row : v) {
      if (row[src] != 0) row[dst] = addChecked(row[dst], mulChecked(T(-q), row[src]));
    }
    for (std::size_t j = 0; j < vinv[dst].size(); ++j) {
      if (vinv[dst][j] != 0) {
        vinv[src][j] = addChecked(vinv[src][j], mulChecked(q, vinv[dst][j]));
      }
    }
  }

  void swapCols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
    std::swap(vinv[i], vinv[j]);
  }

  void run() {
    const std::size_t rows = a.size();
    const std::size_t cols = v.size();
    std::size_t t = 0;
    while (t < rows && t < cols) {
      bool advanced = false;
      while (!advanced) {
        // smallest nonzero entry of the trailing block, preferring (t, t)
        std::size_t bi = rows, bj = cols;
        T best(0);
        if (a[t][t] != 0) {
          bi = bj = t;
          best = absValue(a[t][t]);
        }
        for (std::size_t i = t; i < rows; ++i) {
          for (std::size_t j = t; j < cols; ++j) {
            if (a[i][j] != 0 && (bi == rows || absValue(a[i][j]) < best)) {
              bi = i;
              bj = j;
              best = absValue(a[i][j]);
            }
          }
        }
        if (bi == rows) {
          rank = t;
          return;
        }
        std::swap(a[t], a[bi]);
        swapCols(t, bj);
        bool changed = false;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a[i][t] != 0) {
            rowAxpy(i, t, T(a[i][t] / a[t][t]));
            changed = changed || a[i][t] != 0;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[t][j] != 0) {
            colAxpy(j, t, T(a[t][j] / a[t][t]));
            changed = changed || a[t][j] != 0;
          }
        }
        if (changed) continue;
        bool divisible = true;
        for (std::size_t i = t + 1; i < rows && divisible; ++i) {
          for (std::size_t j = t + 1; j < cols; ++j) {
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t c = 0; c < cols; ++c) {
                a[t][c] = addChecked(a[t][c], a[i][c]);
              }
              divisible = false;
              break;
            }
          }
        }
        if (divisible) advanced = true;
      }
      ++t;
    }
    rank = t;
  }
};

}  // namespace

AbelianQuotient::AbelianQuotient(std::size_t generators)
    : generators_(generators) {}

void AbelianQuotient::addRelation(SparseVector row) {
  std::sort(row.begin(), row.end());
  SparseVector merged;
  for (const auto& [g, c] : row) {
    if (g < 0 || static_cast<std::size_t>(g) >= generators_) {
      throw PreconditionError("relation mentions an unknown generator");
    }
    if (!merged.empty() && merged.back().first == g) {
      merged.back().second = addChecked(merged.back().second, c);
    } else {
      merged.emplace_back(g, c);
    }
  }
  std::erase_if(merged, [](const auto& e) { return e.second == 0; });
  if (!merged.empty()) relations_.push_back(std::move(merged));
  solved_ = false;
}

void AbelianQuotient::solve() {
  const std::size_t n = generators_;
  std::vector<SparseVector> rows = relations_;
  std::vector<char> alive(rows.size(), 1);
  std::vector<std::vector<int>> occ(n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [g, c] : rows[r]) occ[g].push_back(static_cast<int>(r));
  }
  std::vector<char> eliminated(n, 0);
  std::vector<std::pair<int, SparseVector>> expressions;

  using Item = std::pair<std::size_t, int>;  // (length, row)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    queue.emplace(rows[r].size(), static_cast<int>(r));
  }
  try {
    while (!queue.empty()) {
      auto [len, r] = queue.top();
      queue.pop();
      if (!alive[r] || rows[r].size() != len) continue;
      if (len == 0) {
        alive[r] = 0;
        continue;
      }
      int pivot = -1;
      std::size_t pivotCost = 0;
      for (const auto& [g, c] : rows[r]) {
        if ((c == 1 || c == -1) && (pivot < 0 || occ[g].size() < pivotCost)) {
          pivot = g;
          pivotCost = occ[g].size();
        }
      }
      if (pivot < 0) continue;  // left for the dense phase
      const SparseVector rho = rows[r];
      std::int64_t s = 0;
      for (const auto& [g, c] : rho) {
        if (g == pivot) s = c;
      }
      alive[r] = 0;
      for (int other : occ[pivot]) {
        if (!alive[other] || other == r) continue;
        SparseVector& sigma = rows[other];
        auto it = std::lower_bound(sigma.begin(), sigma.end(),
                                   std::make_pair(pivot, INT64_MIN));
        if (it == sigma.end() || it->first != pivot) continue;
        std::int64_t q = mulChecked(it->second, s);
        SparseVector merged;
        merged.reserve(sigma.size() + rho.size());
        std::size_t i = 0, j = 0;
        while (i < sigma.size() || j < rho.size()) {
          if (j == rho.size() ||
              (i < sigma.size() && sigma[i].first < rho[j].first)) {
            merged.push_back(sigma[i++]);
          } else if (i == sigma.size() || rho[j].first < sigma[i].first) {
            merged.emplace_back(rho[j].first, mulChecked(-q, rho[j].second));
            occ[rho[j].first].push_back(other);
            ++j;
          } else {
            std::int64_t c = addChecked(sigma[i].second,
                                        mulChecked(-q, rho[j].second));
            if (c != 0) merged.emplace_back(sigma[i].first, c);
            ++i;
            ++j;
          }
        }
        sigma = std::move(merged);
        queue.emplace(sigma.size(), other);
      }
      occ[pivot].clear();
      SparseVector expr;
      for (const auto& [g, c] : rho) {
        if (g != pivot) expr.emplace_back(g, mulChecked(-s, c));
      }
      eliminated[pivot] = 1;
      expressions.emplace_back(pivot, std::move(expr));
    }
  } catch (const Overflow&) {
    throw BudgetError("coefficient overflow during sparse elimination");
  }

  // Dense phase on what is left.
  std::vector<int> denseGens;
  std::vector<int> denseIndex(n, -1);
  std::vector<const SparseVector*> remaining;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!alive[r] || rows[r].empty()) continue;
    remaining.push_back(&rows[r]);
    for (const auto& [g, c] : rows[r]) {
      if (denseIndex[g] < 0) {
        denseIndex[g] = static_cast<int>(denseGens.size());
        denseGens.push_back(g);
      }
    }
  }
  const std::size_t k = denseGens.size();
  if (remaining.size() * std::max<std::size_t>(k, 1) > 25'000'000) {
    throw BudgetError("dense Smith normal form block too large");
  }

  moduli_.clear();
  std::vector<std::vector<BigInt>> liveFunctionals;  // over dense gens
  std::vector<SparseVector> reps;
  auto runDense = [&](auto zero) {
    using T = decltype(zero);
    std::vector<std::vector<T>> m(remaining.size(), std::vector<T>(k, T(0)));
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      for (const auto& [g, c] : *remaining[r]) m[r][denseIndex[g]] = T(c);
    }
    DenseSnf<T> snf(std::move(m), k);
    snf.run();
    std::vector<std::int64_t> mods;
    std::vector<std::vector<BigInt>> funcs;
    std::vector<SparseVector> rs;
    auto emit = [&](std::size_t t, std::int64_t mod) {
      std::vector<BigInt> f(k);
      for (std::size_t i = 0; i < k; ++i) f[i] = BigInt(snf.v[i][t]);
      SparseVector rep;
      for (std::size_t i = 0; i < k; ++i) {
        if (snf.vinv[t][i] != 0) {
          BigInt c(snf.vinv[t][i]);
          if (c > INT64_MAX || c < -INT64_MAX) {
            throw BudgetError("homology representative too large");
          }
          rep.emplace_back(denseGens[i], static_cast<std::int64_t>(c));
        }
      }
      std::sort(rep.begin(), rep.end());
      mods.push_back(mod);
      funcs.push_back(std::move(f));
      rs.push_back(std::move(rep));
    };
    for (std::size_t t = 0; t < snf.rank; ++t) {
      BigInt dt(absValue(snf.a[t][t]));
      if (dt == 1) continue;
      if (dt > INT64_MAX) throw BudgetError("torsion coefficient too large");
      emit(t, static_cast<std::int64_t>(dt));
    }
    for (std::size_t t = snf.rank; t < k; ++t) emit(t, 0);
    moduli_ = std::move(mods);
    liveFunctionals = std::move(funcs);
    reps = std::move(rs);
  };
  try {
    runDense(std::int64_t{0});
  } catch (const Overflow&) {
    runDense(BigInt(0));
  }

  // Functionals over all generators.
  functionals_.clear();
  representatives_.clear();
  const std::size_t denseCoords = moduli_.size();
  for (std::size_t j = 0; j < denseCoords; ++j) {
    std::vector<std::int64_t> f(n, 0);
    for (std::size_t i = 0; i < k; ++i) {
      BigInt x = liveFunctionals[j][i];
      if (moduli_[j] != 0) {
        x %= moduli_[j];
        if (x < 0) x += moduli_[j];
      }
      if (x > INT64_MAX || x < -INT64_MAX) {
        throw BudgetError("homology functional too large");
      }
      f[denseGens[i]] = static_cast<std::int64_t>(x);
    }
    functionals_.push_back(std::move(f));
    representatives_.push_back(std::move(reps[j]));
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (eliminated[g] || denseIndex[g] >= 0) continue;
    std::vector<std::int64_t> f(n, 0);
    f[g] = 1;
    moduli_.push_back(0);
    functionals_.push_back(std::move(f));
    representatives_.push_back({{static_cast<int>(g), 1}});
  }
  // Torsion coordinates first, then free ones.
  std::vector<std::size_t> order(moduli_.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return (moduli_[x] != 0) > (moduli_[y] != 0);
  });
  {
    std::vector<std::int64_t> m2;
    std::vector<std::vector<std::int64_t>> f2;
    std::vector<SparseVector> r2;
    for (std::size_t j : order) {
      m2.push_back(moduli_[j]);
      f2.push_back(std::move(functionals_[j]));
      r2.push_back(std::move(representatives_[j]));
    }
    moduli_ = std::move(m2);
    functionals_ = std::move(f2);
    representatives_ = std::move(r2);
  }
  // Extend to eliminated generators, last eliminated first.
  try {
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      auto& f = functionals_[j];
      for (auto it = expressions.rbegin(); it != expressions.rend(); ++it) {
        std::int64_t value = 0;
        for (const auto& [h, c] : it->second) {
          value = addChecked(value, mulChecked(c, f[h]));
          value = reduceMod(value, moduli_[j]);
        }
        f[it->first] = value;
      }
    }
  } catch (const Overflow&) {
    throw BudgetError("coefficient overflow while extending homology functionals");
  }
  solved_ = true;
}

int AbelianQuotient::rank() const {
  return static_cast<int>(std::count(moduli_.begin(), moduli_.end(), 0));
}

std::vector<std::int64_t> AbelianQuotient::torsion() const {
  std::vector<std::int64_t> out;
  for (auto m : moduli_) {
    if (m != 0) out.push_back(m);
  }
  return out;
}

std::vector<std::int64_t> AbelianQuotient::coordinates(
    const SparseVector& x) const {
  if (!solved_) throw PreconditionError("quotient not solved");
  std::vector<std::int64_t> out(moduli_.size(), 0);
  try {
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      std::int64_t value = 0;
      for (const auto& [g, c] : x) {
        value = addChecked(value, mulChecked(c, functionals_[j][g]));
      }
      out[j] = reduceMod(value, moduli_[j]);
    }
  } catch (const Overflow&) {
    throw BudgetError("coefficient overflow evaluating a homology class");
  }
  return out;
}

// ---------------------------------------------------------------- graph

namespace {

std::uint64_t edgeKey(RVertex u, RVertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

std::optional<int> ViewGraph::findEdge(RVertex u, RVertex v) const {
  auto it = edgeIndex.find(edgeKey(u, v));
  if (it == edgeIndex.end()) return std::nullopt;
  return it->second;
}

SparseVector ViewGraph::chainOf(std::span<const RVertex> cycle) const {
  std::unordered_map<int, std::int64_t> acc;
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    RVertex a = cycle[i], b = cycle[(i + 1) % n];
    if (a == b) continue;
    auto e = findEdge(a, b);
    if (!e) {
      throw PreconditionError("walk step " + std::to_string(a) + " -> " +
                              std::to_string(b) + " is not an edge of the view");
    }
    int g = generatorOfEdge[*e];
    if (g >= 0) acc[g] += a < b ? 1 : -1;
  }
  SparseVector out;
  for (const auto& [g, c] : acc) {
    if (c != 0) out.emplace_back(g, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RVertex> ViewGraph::treePath(RVertex from, RVertex to) const {
  int a = local.at(from), b = local.at(to);
  if (component[a] != component[b]) {
    throw PreconditionError("vertices lie in different components");
  }
  std::vector<RVertex> up, down;
  while (depth[a] > depth[b]) {
    up.push_back(vertices[a]);
    a = parent[a];
  }
  while (depth[b] > depth[a]) {
    down.push_back(vertices[b]);
    b = parent[b];
  }
  while (a != b) {
    up.push_back(vertices[a]);
    down.push_back(vertices[b]);
    a = parent[a];
    b = parent[b];
  }
  up.push_back(vertices[a]);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

std::vector<RVertex> ViewGraph::generatorCycle(int generator) const {
  const REdge& e = edges[edgeOfGenerator[generator]];
  std::vector<RVertex> cycle{e[0]};
  std::vector<RVertex> back = treePath(e[1], e[0]);
  cycle.insert(cycle.end(), back.begin(), back.end() - 1);
  return cycle;
}

ViewGraph buildViewGraph(const AnnulusView& view) {
  ViewGraph g;
  g.vertices = view.vertices();
  g.local.reserve(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    g.local.emplace(g.vertices[i], static_cast<int>(i));
  }
  g.edges = view.edges();
  g.triangles = view.triangles();
  g.edgeIndex.reserve(g.edges.size());
  const std::size_t nv = g.vertices.size();
  std::vector<std::size_t> offsets(nv + 1, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    g.edgeIndex.emplace(edgeKey(g.edges[e][0], g.edges[e][1]),
                        static_cast<int>(e));
    ++offsets[g.local[g.edges[e][0]] + 1];
    ++offsets[g.local[g.edges[e][1]] + 1];
  }
  for (std::size_t i = 0; i < nv; ++i) offsets[i + 1] += offsets[i];
  std::vector<int> incident(offsets[nv]);
  {
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      incident[fill[g.local[g.edges[e][0]]]++] = static_cast<int>(e);
      incident[fill[g.local[g.edges[e][1]]]++] = static_cast<int>(e);
    }
  }
  g.parent.assign(nv, -1);
  g.parentEdge.assign(nv, -1);
  g.depth.assign(nv, -1);
  g.component.assign(nv, -1);
  std::vector<char> tree(g.edges.size(), 0);
  std::deque<int> queue;
  for (std::size_t root = 0; root < nv; ++root) {
    if (g.depth[root] >= 0) continue;
    g.depth[root] = 0;
    g.component[root] = g.components;
    queue.push_back(static_cast<int>(root));
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (std::size_t k = offsets[x]; k < offsets[x + 1]; ++k) {
        int e = incident[k];
        RVertex other = g.edges[e][0] == g.vertices[x] ? g.edges[e][1]
                                                       : g.edges[e][0];
        int y = g.local[other];
        if (g.depth[y] >= 0) continue;
        g.depth[y] = g.depth[x] + 1;
        g.parent[y] = x;
        g.parentEdge[y] = e;
        g.component[y] = g.components;
        tree[e] = 1;
        queue.push_back(y);
      }
    }
    ++g.components;
  }
  g.generatorOfEdge.assign(g.edges.size(), -1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!tree[e]) {
      g.generatorOfEdge[e] = static_cast<int>(g.edgeOfGenerator.size());
      g.edgeOfGenerator.push_back(static_cast<int>(e));
    }
  }
  return g;
}

// ---------------------------------------------------------------- H1

HomologyH1::HomologyH1(const AnnulusView& view)
    : view_(view), graph_(buildViewGraph(view)),
      quotient_(graph_.generatorCount()) {
  for (const auto& t : graph_.triangles) {
    quotient_.addRelation(graph_.chainOf(t));
  }
  quotient_.solve();
}

H1Group HomologyH1::group() const {
  return {quotient_.rank(), quotient_.torsion()};
}

std::vector<std::int64_t> HomologyH1::classOf(
    std::span<const RVertex> cycle) const {
  return quotient_.coordinates(graph_.chainOf(cycle));
}

std::vector<std::vector<RVertex>> HomologyH1::basisCycles(
    std::size_t j) const {
  std::vector<std::vector<RVertex>> out;
  for (const auto& [g, c] : quotient_.representative(j)) {
    std::vector<RVertex> cycle = graph_.generatorCycle(g);
    if (c < 0) std::reverse(cycle.begin(), cycle.end());
    for (std::int64_t k = 0; k < (c < 0 ? -c : c); ++k) out.push_back(cycle);
  }
  return out;
}

bool H1Map::zero() const {
  for (const auto& row : matrix) {
    for (auto x : row) {
      if (x != 0) return false;
    }
  }
  return true;
}

H1Map h1Map(const HomologyH1& source, const HomologyH1& target) {
  const AnnulusView& s = source.view();
  const AnnulusView& t = target.view();
  if (&s.parent() != &t.parent() || s.inner() < t.inner() ||
      s.outer() > t.outer()) {
    throw PreconditionError("source view is not contained in the target view");
  }
  H1Map map;
  map.source = source.group();
  map.target = target.group();
  const auto& sq = source.quotient();
  const auto& tq = target.quotient();
  map.matrix.assign(tq.coordinateCount(),
                    std::vector<std::int64_t>(sq.coordinateCount(), 0));
  for (std::size_t j = 0; j < sq.coordinateCount(); ++j) {
    SparseVector image;
    for (const auto& [g, c] : sq.representative(j)) {
      SparseVector chain =
          target.graph().chainOf(source.graph().generatorCycle(g));
      for (auto& [h, x] : chain) image.emplace_back(h, x * c);
    }
    auto coords = tq.coordinates(image);
    for (std::size_t i = 0; i < coords.size(); ++i) map.matrix[i][j] = coords[i];
  }
  return map;
}

// ---------------------------------------------------------------- certificates

std::optional<H1Certificate> obstructLoop(const SimplicialLoop& loop,
                                          const HomologyH1& target,
                                          int loopInner,
                                          const HomologyH1* source) {
  auto cls = target.classOf(loop.vertices);
  std::size_t j = cls.size();
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (cls[i] != 0) {
      j = i;
      break;
    }
  }
  if (j == cls.size()) return std::nullopt;
  const auto& view = target.view();
  H1Certificate cert;
  cert.loopInner = loopInner;
  cert.targetInner = view.inner();
  cert.outer = view.outer();
  cert.d = view.parent().d();
  cert.colors = view.parent().colors();
  cert.loop = loop;
  cert.targetGroup = target.group();
  cert.mapImage = cls;
  if (source) {
    cert.sourceGroup = source->group();
    cert.classVector = source->classOf(loop.vertices);
  }
  const auto& q = target.quotient();
  cert.modulus = q.modulus(j);
  const auto& graph = target.graph();
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    int g = graph.generatorOfEdge[e];
    if (g < 0) continue;
    std::int64_t value = q.functional(j, g);
    if (value != 0) cert.cocycle.emplace_back(graph.edges[e], value);
  }
  return cert;
}

CertificateCheck checkCertificate(const H1Certificate& cert,
                                  const RipsSkeleton& skel) {
  CertificateCheck r;
  if (cert.d != skel.d() || cert.colors != skel.colors()) {
    r.reason = "certificate was issued for a different complex";
    return r;
  }
  if (cert.loopInner < cert.targetInner) {
    r.reason = "loop region is not inside the target region";
    return r;
  }
  try {
    AnnulusView loopView(skel, cert.loopInner, cert.outer);
    validateLoop(cert.loop, loopView);
  } catch (const Error& e) {
    r.reason = std::string("loop check failed: ") + e.what();
    return r;
  }
  AnnulusView target(skel, cert.targetInner, cert.outer);
  const std::int64_t q = cert.modulus;
  auto norm = [q](std::int64_t x) { return reduceMod(x, q); };
  std::unordered_map<std::uint64_t, std::int64_t> phi;
  for (const auto& [e, value] : cert.cocycle) {
    if (e[0] >= e[1] || !target.contains(e[0]) || !target.contains(e[1]) ||
        !skel.adjacent(e[0], e[1])) {
      r.reason = "cocycle is supported off the target complex";
      return r;
    }
    phi[edgeKey(e[0], e[1])] = value;
  }
  auto value = [&](RVertex a, RVertex b) -> std::int64_t {
    auto it = phi.find(edgeKey(a, b));
    if (it == phi.end()) return 0;
    return a < b ? it->second : -it->second;
  };
  try {
    for (const auto& t : skel.triangles()) {
      if (!target.contains(t[0]) || !target.contains(t[1]) ||
          !target.contains(t[2])) {
        continue;
      }
      std::int64_t s = addChecked(addChecked(value(t[0], t[1]), value(t[1], t[2])),
                                  value(t[2], t[0]));
      if (norm(s) != 0) {
        r.reason = "cochain does not vanish on a triangle";
        return r;
      }
    }
    std::int64_t total = 0;
    const auto& v = cert.loop.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      RVertex a = v[i], b = v[(i + 1) % v.size()];
      if (a != b) total = addChecked(total, value(a, b));
    }
    if (norm(total) == 0) {
      r.reason = "cocycle vanishes on the loop";
      return r;
    }
  } catch (const Overflow&) {
    r.reason = "arithmetic overflow while checking";
    return r;
  }
  r.ok = true;
  return r;
}

nlohmann::json toJson(const H1Group& group) {
  return {{"rank", group.rank}, {"torsion", group.torsion}};
}

nlohmann::json toJson(const H1Certificate& cert) {
  nlohmann::json cocycle = nlohmann::json::array();
  for (const auto& [e, value] : cert.cocycle) {
    cocycle.push_back({e[0], e[1], value});
  }
  return {{"loop_inner", cert.loopInner},
          {"target_inner", cert.targetInner},
          {"outer", cert.outer},
          {"relative_to_truncation", cert.outer},
          {"d", cert.d},
          {"colors", cert.colors},
          {"loop", toJson(cert.loop)},
          {"source_h1", toJson(cert.sourceGroup)},
          {"target_h1", toJson(cert.targetGroup)},
          {"class_vector", cert.classVector},
          {"map_image", cert.mapImage},
          {"modulus", cert.modulus},
          {"cocycle", std::move(cocycle)}};
}

}  // namespace topinf
