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

#include "topinf/pi1.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "topinf/error.hpp"

namespace topinf {

std::vector<RVertex> Pi1Presentation::generatorLoop(int generator) const {
  const REdge& e =
      graph.edges[graph.edgeOfGenerator[graphGenerators[generator]]];
  std::vector<RVertex> loop = graph.treePath(basepoint, e[0]);
  std::vector<RVertex> back = graph.treePath(e[1], basepoint);
  loop.insert(loop.end(), back.begin(), back.end() - 1);
  return loop;
}

namespace {

Word reduced(const Word& w) { return cyclicReduce(freeReduce(w)); }

/// Eliminates generators occurring exactly once in short relators.
void tietze(std::size_t generators, std::vector<Word>& relators,
            std::vector<char>& live, const TietzeOptions& options) {
  live.assign(generators, 1);
  std::vector<char> alive(relators.size(), 1);
  std::vector<std::vector<int>> occ(generators);
  using Item = std::pair<std::size_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (std::size_t r = 0; r < relators.size(); ++r) {
    relators[r] = reduced(relators[r]);
    for (Letter x : relators[r]) occ[generatorOf(x)].push_back(static_cast<int>(r));
    queue.emplace(relators[r].size(), static_cast<int>(r));
  }
  std::vector<int> count(generators, 0);
  while (!queue.empty()) {
    auto [len, r] = queue.top();
    queue.pop();
    if (!alive[r] || relators[r].size() != len) continue;
    if (len == 0) {
      alive[r] = 0;
      continue;
    }
    if (len > options.maxPivotLength) break;
    const Word rel = relators[r];
    for (Letter x : rel) ++count[generatorOf(x)];
    int pivot = -1;
    for (Letter x : rel) {
      int g = generatorOf(x);
      if (count[g] == 1 &&
          (pivot < 0 || occ[g].size() < occ[static_cast<std::size_t>(pivot)].size())) {
        pivot = g;
      }
    }
    for (Letter x : rel) count[generatorOf(x)] = 0;
    if (pivot < 0) continue;

    std::size_t p = 0;
    while (generatorOf(rel[p]) != pivot) ++p;
    Word rest;
    for (std::size_t k = 1; k < rel.size(); ++k) rest.push_back(rel[(p + k) % rel.size()]);
    // rel = x^e rest, so x = rest^-1 (e = 1) or rest (e = -1).
    const Word subst = isInverse(rel[p]) ? rest : inverse(rest);
    const Word substInv = inverse(subst);
    alive[r] = 0;
    live[pivot] = 0;
    for (int s : occ[pivot]) {
      if (!alive[s]) continue;
      const Word& old = relators[s];
      if (std::none_of(old.begin(), old.end(),
                       [&](Letter x) { return generatorOf(x) == pivot; })) {
        continue;
      }
      Word next;
      for (Letter x : old) {
        if (generatorOf(x) == pivot) {
          const Word& piece = isInverse(x) ? substInv : subst;
          next.insert(next.end(), piece.begin(), piece.end());
        } else {
          next.push_back(x);
        }
      }
      next = reduced(next);
      for (Letter x : next) {
        if (generatorOf(x) != pivot) occ[generatorOf(x)].push_back(s);
      }
      relators[s] = std::move(next);
      queue.emplace(relators[s].size(), s);
    }
    occ[pivot].clear();
  }
  std::vector<Word> kept;
  for (std::size_t r = 0; r < relators.size(); ++r) {
    if (alive[r] && !relators[r].empty()) kept.push_back(std::move(relators[r]));
  }
  relators = std::move(kept);
}

}  // namespace

Pi1Presentation pi1Presentation(const AnnulusView& view, RVertex basepoint,
                                const TietzeOptions& options) {
  if (!view.contains(basepoint)) {
    throw PreconditionError("basepoint lies outside the view");
  }
  Pi1Presentation p;
  p.basepoint = basepoint;
  p.graph = buildViewGraph(view);
  const ViewGraph& g = p.graph;
  const int comp = g.component[g.local.at(basepoint)];

  std::vector<int> presIndex(g.generatorCount(), -1);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < g.generatorCount(); ++k) {
    const REdge& e = g.edges[g.edgeOfGenerator[k]];
    if (g.component[g.local.at(e[0])] != comp) continue;
    presIndex[k] = static_cast<int>(p.graphGenerators.size());
    p.graphGenerators.push_back(static_cast<int>(k));
    names.push_back("g" + std::to_string(p.graphGenerators.size() - 1));
  }
  std::vector<Word> relators;
  for (const auto& t : g.triangles) {
    if (g.component[g.local.at(t[0])] != comp) continue;
    Word w;
    for (int i = 0; i < 3; ++i) {
      RVertex a = t[i], b = t[(i + 1) % 3];
      int gen = g.generatorOfEdge[*g.findEdge(a, b)];
      if (gen < 0) continue;
      w.push_back(letterOf(presIndex[gen], a > b));
    }
    w = reduced(w);
    if (!w.empty()) relators.push_back(std::move(w));
  }
  p.presentation = Presentation(names, relators);

  std::vector<char> live;
  tietze(names.size(), relators, live, options);
  std::vector<int> renumber(names.size(), -1);
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (live[k]) {
      renumber[k] = static_cast<int>(p.essential.size());
      p.essential.push_back(static_cast<int>(k));
    }
  }
  for (const Word& w : relators) {
    Word out;
    for (Letter x : w) out.push_back(letterOf(renumber[generatorOf(x)], isInverse(x)));
    p.reducedRelators.push_back(std::move(out));
  }
  return p;
}

H1Group abelianization(const Pi1Presentation& p) {
  AbelianQuotient q(p.essential.size());
  for (const Word& w : p.reducedRelators) {
    SparseVector row;
    for (Letter x : w) row.emplace_back(generatorOf(x), isInverse(x) ? -1 : 1);
    q.addRelation(std::move(row));
  }
  q.solve();
  return {q.rank(), q.torsion()};
}

}  // namespace topinf
