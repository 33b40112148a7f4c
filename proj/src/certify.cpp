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

#include "topinf/certify.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <unordered_set>

#include "topinf/error.hpp"

namespace topinf {

namespace {

struct Rule {
  Word u;
  Word v;
};

std::vector<Rule> substitutionRules(const Presentation& p) {
  std::set<std::pair<Word, Word>> seen;
  std::vector<Rule> rules;
  auto add = [&](Word u, Word v) {
    if (seen.emplace(u, v).second) rules.push_back({std::move(u), std::move(v)});
  };
  for (int g = 0; g < p.rank(); ++g) {
    add({letterOf(g), letterOf(g, true)}, {});
    add({letterOf(g, true), letterOf(g)}, {});
  }
  for (const Word& r : p.relators()) {
    for (const Word& base : {r, inverse(r)}) {
      const std::size_t len = base.size();
      for (std::size_t s = 0; s < len; ++s) {
        Word rho(base.begin() + static_cast<std::ptrdiff_t>(s), base.end());
        rho.insert(rho.end(), base.begin(),
                   base.begin() + static_cast<std::ptrdiff_t>(s));
        // rho = u w with w = v^-1, kept when |v| <= |u|
        for (std::size_t k = (len + 1) / 2; k <= len; ++k) {
          Word u(rho.begin(), rho.begin() + static_cast<std::ptrdiff_t>(k));
          Word w(rho.begin() + static_cast<std::ptrdiff_t>(k), rho.end());
          add(std::move(u), inverse(w));
        }
      }
    }
  }
  return rules;
}

/// Index operations replacing the k letters leaving position i by j new
/// ones. The same plan drives the word search and the loop moves.
struct PlanOp {
  enum Kind { Insert, SetOut, CopyOut, Remove } kind;
  std::size_t index;
  std::size_t arg;  // inserted letter index / letter index / source index
};

std::vector<PlanOp> substitutionPlan(std::size_t n, std::size_t i,
                                     std::size_t k, std::size_t j) {
  std::vector<PlanOp> ops;
  if (k == n && j == 0) {
    for (std::size_t t = 1; t < n; ++t) ops.push_back({PlanOp::Remove, 0, 0});
    return ops;
  }
  for (std::size_t t = 1; t < j; ++t) {
    ops.push_back({PlanOp::Insert, i + t - 1, t});
  }
  if (j >= 1) ops.push_back({PlanOp::SetOut, i, 0});
  std::size_t s = n + (j >= 1 ? j - 1 : 0);
  std::size_t p = (i + std::max<std::size_t>(j, 1)) % s;
  for (std::size_t t = 1; t < k; ++t) {
    ops.push_back({PlanOp::Remove, p, 0});
    --s;
    if (p < i) --i;
    if (p == s) p = 0;
  }
  if (j == 0) {
    ops.push_back({PlanOp::CopyOut, i, p});
    ops.push_back({PlanOp::Remove, p, 0});
  }
  return ops;
}

void applyPlanToWord(Word& w, const std::vector<PlanOp>& plan, const Word& v) {
  for (const auto& op : plan) {
    switch (op.kind) {
      case PlanOp::Insert:
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(op.index) + 1, v[op.arg]);
        break;
      case PlanOp::SetOut:
        w[op.index] = v[0];
        break;
      case PlanOp::CopyOut:
        w[op.index] = w[op.arg];
        break;
      case PlanOp::Remove:
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(op.index));
        break;
    }
  }
}

void applyPlanToLoop(LoopEditor& editor, const std::vector<PlanOp>& plan,
                     const Word& v) {
  for (const auto& op : plan) {
    if (op.kind == PlanOp::Insert) {
      editor.insert(op.index,
                    editor.step(editor.sequence()[op.index], v[op.arg - 1]));
    } else if (op.kind == PlanOp::Remove) {
      editor.remove(op.index);
    }
  }
}

Letter cayleyLetter(const RipsSkeleton& skel, RVertex a, RVertex b) {
  const BallTable& ball = skel.ball();
  const Engine& eng = ball.engine();
  const ElementPool& pool = *ball.pool();
  Element diff = eng.multiply(eng.inverse(pool.element(skel.elementOf(a))),
                              pool.element(skel.elementOf(b)));
  for (int r = 0; r < 2 * eng.rank(); ++r) {
    Letter x = letterFromRank(r);
    if (eng.same(diff, eng.letterElement(x))) return x;
  }
  throw PreconditionError("consecutive loop vertices are not Cayley neighbors");
}

std::uint64_t wordHash(const Word& w) {
  std::vector<RVertex> tmp(w.begin(), w.end());
  std::vector<RVertex> c = canonicalRotation(tmp);
  std::uint64_t h = 1469598103934665603ull;
  for (RVertex x : c) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h ^ (c.size() << 1);
}

}  // namespace

std::optional<std::vector<LoopMove>> reduceCayleyLoop(
    const Presentation& p, const RipsSkeleton& skel,
    const std::vector<RVertex>& cayleyLoop, std::size_t maxStates,
    std::size_t* statesUsed) {
  if (cayleyLoop.size() <= 1) return std::vector<LoopMove>{};
  Word start;
  for (std::size_t i = 0; i < cayleyLoop.size(); ++i) {
    start.push_back(cayleyLetter(skel, cayleyLoop[i],
                                 cayleyLoop[(i + 1) % cayleyLoop.size()]));
  }
  const std::vector<Rule> rules = substitutionRules(p);
  std::map<Letter, std::vector<int>> byFirst;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    byFirst[rules[r].u[0]].push_back(static_cast<int>(r));
  }

  struct Node {
    int parent;
    std::size_t position;
    int rule;
    Word word;
  };
  std::vector<Node> nodes{{-1, 0, -1, start}};
  std::unordered_set<std::uint64_t> visited{wordHash(start)};
  using Item = std::pair<std::size_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  queue.emplace(start.size(), 0);
  int solved = -1;
  while (!queue.empty() && solved < 0 && nodes.size() < maxStates) {
    int id = queue.top().second;
    queue.pop();
    const Word w = nodes[id].word;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n && solved < 0; ++i) {
      auto it = byFirst.find(w[i]);
      if (it == byFirst.end()) continue;
      for (int r : it->second) {
        const Rule& rule = rules[r];
        const std::size_t k = rule.u.size();
        if (k > n) continue;
        bool match = true;
        for (std::size_t t = 1; t < k && match; ++t) match = w[(i + t) % n] == rule.u[t];
        if (!match) continue;
        Word child = w;
        applyPlanToWord(child, substitutionPlan(n, i, k, rule.v.size()), rule.v);
        if (!visited.insert(wordHash(child)).second) continue;
        nodes.push_back({id, i, r, child});
        if (child.size() <= 1) {
          solved = static_cast<int>(nodes.size()) - 1;
          break;
        }
        queue.emplace(child.size(), static_cast<int>(nodes.size()) - 1);
      }
    }
  }
  if (statesUsed) *statesUsed = nodes.size();
  if (solved < 0) return std::nullopt;

  std::vector<int> path;
  for (int id = solved; id > 0; id = nodes[id].parent) path.push_back(id);
  std::reverse(path.begin(), path.end());
  LoopEditor editor(skel, cayleyLoop);
  for (int id : path) {
    const Rule& rule = rules[nodes[id].rule];
    const std::size_t n = editor.sequence().size();
    applyPlanToLoop(editor,
                    substitutionPlan(n, nodes[id].position, rule.u.size(),
                                     rule.v.size()),
                    rule.v);
  }
  return std::move(editor.moves());
}

namespace {

/// Moves dropping repeated consecutive vertices, then subdividing each long
/// edge along a geodesic. Returns the resulting Cayley loop.
std::optional<std::vector<RVertex>> interpolate(const RipsSkeleton& skel,
                                                const SimplicialLoop& loop,
                                                std::vector<LoopMove>& moves) {
  LoopEditor editor(skel, loop.vertices);
  for (std::size_t i = editor.sequence().size(); i-- > 0;) {
    const auto& s = editor.sequence();
    if (s.size() > 1 && s[i] == s[(i + 1) % s.size()]) editor.remove(i);
  }
  for (std::size_t i = editor.sequence().size(); i-- > 0;) {
    const auto& s = editor.sequence();
    if (s.size() <= 1) break;
    RVertex a = s[i], b = s[(i + 1) % s.size()];
    auto geo = skel.ball().geodesic(skel.elementOf(a), skel.elementOf(b));
    if (!geo) return std::nullopt;
    for (std::size_t t = 1; t + 1 < geo->size(); ++t) {
      editor.insert(i + t - 1, skel.vertex((*geo)[t]));
    }
  }
  moves = std::move(editor.moves());
  return editor.sequence();
}

}  // namespace

std::optional<DiskFilling> constructiveFilling(const Presentation& p,
                                               const RipsSkeleton& skel,
                                               const SimplicialLoop& loop,
                                               std::size_t maxStates,
                                               std::size_t* statesUsed) {
  std::vector<LoopMove> moves;
  auto cayley = interpolate(skel, loop, moves);
  if (!cayley) return std::nullopt;
  auto rest = reduceCayleyLoop(p, skel, *cayley, maxStates, statesUsed);
  if (!rest) return std::nullopt;
  moves.insert(moves.end(), rest->begin(), rest->end());
  return DiskFilling{loop, std::move(moves)};
}

CertifyReport certifySimplyConnected(const Presentation& p,
                                     const RipsSkeleton& skel,
                                     const std::vector<SampledLoop>& sample,
                                     const FillBudget& budget) {
  const int r = p.maxRelatorLength();
  if (2 * skel.d() <= r) {
    throw PreconditionError(
        "simple connectivity needs 2d > r: d = " + std::to_string(skel.d()) +
        ", longest relator r = " + std::to_string(r) +
        "; use d >= " + std::to_string(r / 2 + 1));
  }
  if (skel.colors() == 1 && p.rank() != skel.ball().engine().rank()) {
    throw PreconditionError("presentation and ball use different generators");
  }
  CertifyReport report;
  report.d = skel.d();
  report.colors = skel.colors();
  report.maxRelatorLength = r;
  AnnulusView whole(skel);
  for (const SampledLoop& s : sample) {
    LoopCertificate cert;
    cert.sample = s;
    validateLoop(s.loop, whole);
    if (skel.colors() > 1) {
      FillResult fr = fillLoop(s.loop, whole, budget);
      cert.status = fr.status;
      cert.states = fr.states;
      cert.filling = std::move(fr.filling);
    } else {
      cert.filling = constructiveFilling(p, skel, s.loop, budget.maxStates,
                                         &cert.states);
      if (cert.filling) cert.status = FillStatus::Filled;
    }
    if (cert.filling) {
      ReplayResult replay = replayFilling(*cert.filling, whole);
      cert.replayOk = replay.ok;
      if (!replay.ok) {
        throw ConsistencyError("certificate for loop '" + s.origin +
                               "' fails replay at move " +
                               std::to_string(replay.failedMove) + ": " +
                               replay.reason);
      }
      ++report.filled;
    } else {
      ++report.inconclusive;
    }
    report.loops.push_back(std::move(cert));
  }
  return report;
}

std::vector<SampledLoop> defaultSample(const Presentation& p,
                                       const RipsSkeleton& skel,
                                       const CertifyOptions& options) {
  const BallTable& ball = skel.ball();
  const Engine& eng = ball.engine();
  ElementPool& pool = *ball.pool();
  const int m = skel.colors();
  std::vector<SampledLoop> out;

  // Colors along a cycle of n vertices, consecutive ones distinct.
  auto colorCycle = [m](std::size_t n) {
    std::vector<int> c(n, 0);
    if (m == 1) return c;
    for (std::size_t t = 0; t < n; ++t) c[t] = static_cast<int>(t % m);
    if (n > 1 && c[n - 1] == c[0]) {
      for (int x = 0; x < m; ++x) {
        if (x != c[0] && x != c[n - 2]) {
          c[n - 1] = x;
          break;
        }
      }
    }
    return c;
  };
  auto colored = [&](const std::vector<VertexId>& elems) {
    SimplicialLoop l;
    auto c = colorCycle(elems.size());
    for (std::size_t t = 0; t < elems.size(); ++t) {
      l.vertices.push_back(skel.vertex(elems[t], c[t]));
    }
    return l;
  };

  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    const Word& rel = p.relators()[i];
    std::vector<VertexId> elems;
    Element cur = eng.identity();
    for (std::size_t t = 0; t < rel.size(); ++t) {
      elems.push_back(pool.intern(cur));
      cur = eng.multiplyLetter(cur, rel[t]);
    }
    out.push_back({colored(elems), "relator:" + std::to_string(i)});
  }
  if (m > 1) {
    std::vector<VertexId> same(static_cast<std::size_t>(std::min(m, 3)), 0);
    out.push_back({colored(same), "colors:identity"});
  }

  std::mt19937_64 rng(options.seed);
  const int rank = eng.rank();
  const std::size_t maxSteps = std::max<std::size_t>(
      1, std::min<std::size_t>(options.maxLoopLength / 2,
                               static_cast<std::size_t>(ball.radius())));
  for (std::size_t s = 0; s < options.randomLoops; ++s) {
    std::size_t k = 1 + rng() % maxSteps;
    Word w;
    while (w.size() < k) {
      Letter x = letterFromRank(static_cast<int>(rng() % (2 * rank)));
      if (!w.empty() && w.back() == -x) continue;
      w.push_back(x);
    }
    Element g = eng.evaluate(w);
    auto back = ball.lookup(eng.inverse(g));
    if (!back) continue;
    Word loopWord = concat(w, ball.witness(*back));
    const std::size_t starts =
        options.startRadius < 0
            ? ball.size()
            : ball.ballCount(std::min(options.startRadius, ball.radius()));
    VertexId start = static_cast<VertexId>(rng() % starts);
    std::vector<VertexId> cayley;
    Element cur = pool.element(start);
    for (Letter x : loopWord) {
      cayley.push_back(pool.intern(cur));
      cur = eng.multiplyLetter(cur, x);
    }
    std::vector<VertexId> coarse;
    for (std::size_t t = 0; t < cayley.size();
         t += 1 + rng() % static_cast<std::size_t>(skel.d())) {
      coarse.push_back(cayley[t]);
    }
    out.push_back({colored(coarse), "random:" + std::to_string(s)});
  }
  return out;
}

nlohmann::json toJson(const CertifyReport& report) {
  nlohmann::json loops = nlohmann::json::array();
  for (const auto& c : report.loops) {
    nlohmann::json j;
    j["origin"] = c.sample.origin;
    j["loop"] = toJson(c.sample.loop);
    j["status"] = toString(c.status);
    j["replay_ok"] = c.replayOk;
    j["states"] = c.states;
    if (c.filling) {
      j["moves"] = c.filling->moves.size();
      j["triangle_moves"] = c.filling->count(MoveKind::Triangle);
      j["filling"] = toJson(*c.filling);
    }
    loops.push_back(std::move(j));
  }
  return {{"d", report.d},
          {"colors", report.colors},
          {"max_relator_length", report.maxRelatorLength},
          {"filled", report.filled},
          {"inconclusive", report.inconclusive},
          {"all_filled", report.allFilled()},
          {"loops", std::move(loops)}};
}

}  // namespace topinf
