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

#include "topinf/qi.hpp"

#include <algorithm>
#include <random>

#include "topinf/error.hpp"

namespace topinf {

std::int64_t floorRational(const Rational& x) {
  std::int64_t q = x.numerator() / x.denominator();
  if (x.numerator() % x.denominator() != 0 && x.numerator() < 0) --q;
  return q;
}

std::int64_t ceilRational(const Rational& x) { return -floorRational(-x); }

std::string toString(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

std::vector<std::string> builtinQiKinds() {
  return {"identity", "generating-set", "index-two"};
}

QiMap builtinQi(const std::string& kind, const GroupModel& source,
                const GroupModel& target) {
  QiMap q;
  q.kind = kind;
  q.source = source;
  q.target = target;
  auto same = [](const Element& e) { return e; };
  const Engine& h = *source.engine;
  const Engine& g = *target.engine;
  if (kind == "identity") {
    if (h.describe() != g.describe()) {
      throw PreconditionError("identity map needs the same group model");
    }
    q.forward = q.backward = same;
  } else if (kind == "generating-set") {
    if (h.kind() != EngineKind::FreeAbelian ||
        g.kind() != EngineKind::FreeAbelian ||
        h.identity().data.size() != g.identity().data.size()) {
      throw PreconditionError(
          "generating-set map needs two free abelian models of one dimension");
    }
    q.forward = q.backward = same;
  } else if (kind == "index-two") {
    if (h.kind() != EngineKind::FreeAbelian ||
        g.kind() != EngineKind::FreeAbelian ||
        h.identity().data.size() != 1 || g.identity().data.size() != 1) {
      throw PreconditionError("index-two map needs the models 2z and z");
    }
    q.forward = same;
    q.backward = [](const Element& e) {
      std::int64_t y = e.data[0];
      std::int64_t half = y >= 0 ? y / 2 : -((-y + 1) / 2);
      return Element{{2 * half}};
    };
  } else {
    throw PreconditionError("unknown quasi-isometry kind '" + kind + "'");
  }
  return q;
}

namespace {

std::optional<int> distance(const BallTable& ball, const Element& a,
                            const Element& b) {
  ElementPool& pool = *ball.pool();
  return ball.pairDistance(pool.intern(a), pool.intern(b));
}

std::vector<VertexId> quarterBall(const BallTable& ball) {
  std::vector<VertexId> out(ball.ballCount(ball.radius() / 4));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<VertexId>(i);
  return out;
}

std::vector<std::pair<VertexId, VertexId>> samplePairs(
    const std::vector<VertexId>& pts, std::size_t maxPairs,
    std::mt19937_64& rng) {
  std::vector<std::pair<VertexId, VertexId>> out;
  const std::size_t n = pts.size();
  if (n * (n + 1) / 2 <= maxPairs) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) out.emplace_back(pts[i], pts[j]);
    }
  } else {
    for (std::size_t s = 0; s < maxPairs; ++s) {
      out.emplace_back(pts[rng() % n], pts[rng() % n]);
    }
  }
  return out;
}

struct PairData {
  int dx;
  int dy;  // distance of the images
};

/// Distances of sampled pairs in a space and of their images, plus the
/// round-trip displacements.
struct Sample {
  std::vector<PairData> forward;   // H pairs
  std::vector<PairData> backward;  // G pairs
  std::vector<int> roundTrip;      // d(g f x, x) and d(f g y, y)
  std::size_t unknown = 0;
};

Sample collect(const QiMap& q, const BallTable& h, const BallTable& g,
               std::size_t maxPairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Sample s;
  const ElementPool& ph = *h.pool();
  const ElementPool& pg = *g.pool();
  auto hp = quarterBall(h);
  auto gp = quarterBall(g);
  for (auto [a, b] : samplePairs(hp, maxPairs, rng)) {
    auto dx = h.pairDistance(a, b);
    auto dy = distance(g, q.forward(ph.element(a)), q.forward(ph.element(b)));
    if (!dx || !dy) {
      ++s.unknown;
      continue;
    }
    s.forward.push_back({*dx, *dy});
  }
  for (auto [a, b] : samplePairs(gp, maxPairs, rng)) {
    auto dy = g.pairDistance(a, b);
    auto dx = distance(h, q.backward(pg.element(a)), q.backward(pg.element(b)));
    if (!dx || !dy) {
      ++s.unknown;
      continue;
    }
    s.backward.push_back({*dy, *dx});
  }
  for (VertexId x : hp) {
    auto r = distance(h, q.backward(q.forward(ph.element(x))), ph.element(x));
    if (r) s.roundTrip.push_back(*r); else ++s.unknown;
  }
  for (VertexId y : gp) {
    auto r = distance(g, q.forward(q.backward(pg.element(y))), pg.element(y));
    if (r) s.roundTrip.push_back(*r); else ++s.unknown;
  }
  return s;
}

QiAudit check(const QiMap& q, const Sample& s, const Rational& lambda,
              const Rational& C) {
  QiAudit a;
  a.lambda = lambda;
  a.C = C;
  a.unknown = s.unknown;
  const std::int64_t k = ceilRational(lambda);
  for (const auto* list : {&s.forward, &s.backward}) {
    for (const auto& p : *list) {
      ++a.pairs;
      if (Rational(p.dy) > lambda * p.dx + C) ++a.violations;
    }
  }
  for (const auto& p : s.forward) {
    if (Rational(p.dy) < (Rational(p.dx) - 3 * C) / k) ++a.derivedViolations;
  }
  for (int r : s.roundTrip) {
    if (Rational(r) > C) ++a.violations;
  }
  (void)q;
  return a;
}

}  // namespace

QiAudit fitQi(QiMap& q, const BallTable& h, const BallTable& g,
              std::size_t maxPairs, std::uint64_t seed) {
  Sample s = collect(q, h, g, maxPairs, seed);
  Rational lambda(1);
  for (const auto* list : {&s.forward, &s.backward}) {
    for (const auto& p : *list) {
      if (p.dx > 0) lambda = std::max(lambda, Rational(p.dy, p.dx));
    }
  }
  Rational C(0);
  for (const auto* list : {&s.forward, &s.backward}) {
    for (const auto& p : *list) C = std::max(C, Rational(p.dy) - lambda * p.dx);
  }
  for (int r : s.roundTrip) C = std::max(C, Rational(r));
  q.lambda = lambda;
  q.C = C;
  q.auditedRadius = std::min(h.radius(), g.radius()) / 4;
  return check(q, s, lambda, C);
}

QiAudit auditQi(const QiMap& q, const BallTable& h, const BallTable& g,
                std::size_t pairs, std::uint64_t seed) {
  return check(q, collect(q, h, g, pairs, seed), q.lambda, q.C);
}

MRadius mRadius(const Rational& lambda, const Rational& C,
                const std::map<std::int64_t, std::int64_t>& table,
                std::int64_t R) {
  const std::int64_t k = ceilRational(lambda);
  MRadius m;
  m.argument = ceilRational(Rational(k * R) + k * C + 3 * C);
  auto it = table.find(m.argument);
  if (it != table.end()) m.value = ceilRational(Rational(k * it->second) + 3 * C);
  return m;
}

std::int64_t epsilonFor(const QiMap& q, int d) {
  const std::int64_t k = q.k();
  std::int64_t eps = floorRational((Rational(d) - q.C) / k);
  if (eps < 1) {
    throw PreconditionError("no subdivision step: need d >= k + C = " +
                            std::to_string(ceilRational(Rational(k) + q.C)) +
                            ", got d = " + std::to_string(d));
  }
  return eps;
}

RefinedLoop interpolateLoop(const RipsSkeleton& skel,
                            const SimplicialLoop& loop, int eps) {
  if (eps < 1) throw PreconditionError("subdivision step must be >= 1");
  LoopEditor editor(skel, loop.vertices);
  for (std::size_t i = editor.sequence().size(); i-- > 0;) {
    const auto& s = editor.sequence();
    if (s.size() <= 1) break;
    RVertex a = s[i], b = s[(i + 1) % s.size()];
    if (a == b) continue;
    auto dist = skel.ball().pairDistance(skel.elementOf(a), skel.elementOf(b));
    if (dist && *dist <= eps) continue;
    auto geo = skel.ball().geodesic(skel.elementOf(a), skel.elementOf(b));
    if (!geo) throw PreconditionError("loop step leaves the ball");
    std::size_t at = i;
    for (std::size_t t = static_cast<std::size_t>(eps); t + 1 < geo->size();
         t += static_cast<std::size_t>(eps)) {
      editor.insert(at++, skel.vertex((*geo)[t], skel.colorOf(a)));
    }
  }
  RefinedLoop out;
  out.loop.vertices = editor.sequence();
  out.moves = std::move(editor.moves());
  return out;
}

TransportedDisk transportDisk(const QiMap& q, const RipsSkeleton& skelH,
                              const SimplicialLoop& loop,
                              const RipsSkeleton& skelG,
                              const ImageFiller& filler) {
  if (skelH.colors() != 1 || skelG.colors() != 1) {
    throw PreconditionError("disk transport works on uncolored complexes");
  }
  TransportedDisk t;
  t.sourceLoop = loop;
  t.k = q.k();
  t.C = q.C;
  t.a = skelH.d();
  t.d = skelG.d();
  t.epsilon = epsilonFor(q, t.d);
  t.classicalBound = ceilRational(Rational(t.k * t.k * t.epsilon) + (t.k + 2) * q.C);
  const std::int64_t needed = ceilRational(Rational(t.k * t.d) + 3 * q.C);
  if (t.a < needed) {
    throw PreconditionError("transport needs a >= k d + 3C = " +
                            std::to_string(needed) + ", got a = " +
                            std::to_string(t.a));
  }

  const BallTable& hb = skelH.ball();
  const BallTable& gb = skelG.ball();
  ElementPool& hp = *hb.pool();
  ElementPool& gp = *gb.pool();

  RefinedLoop refined = interpolateLoop(skelH, loop, static_cast<int>(t.epsilon));
  t.refinedLoop = refined.loop;
  for (RVertex x : refined.loop.vertices) {
    t.imageLoop.vertices.push_back(
        skelG.vertex(gp.intern(q.forward(hp.element(skelH.elementOf(x)))), 0));
  }

  auto filled = filler(t.imageLoop);
  if (!filled) {
    t.failure = "image loop not filled";
    return t;
  }
  t.imageFilling = *filled;

  // Walk the image filling with a parallel H sequence.
  std::vector<RVertex> seqG = t.imageLoop.vertices;
  std::vector<RVertex> seqH = refined.loop.vertices;
  t.transported.loop = loop;
  t.transported.moves = refined.moves;

  const VertexId hOrigin = hp.intern(hb.engine().identity());
  const Element fOrigin = q.forward(hb.engine().identity());
  const VertexId gOrigin = gp.intern(fOrigin);
  t.guaranteedRadius = Rational(-1);
  t.measuredRadius = -1;

  auto audit = [&](VertexId hv, VertexId gv) {
    ++t.avoidanceChecked;
    auto dg = gb.pairDistance(gOrigin, gv);
    auto dh = hb.pairDistance(hOrigin, hv);
    if (!dg || !dh) {
      ++t.unknownDistances;
      return;
    }
    Rational lb = (Rational(*dg) - 3 * q.C) / t.k - q.C;
    if (Rational(*dh) < lb) ++t.avoidanceViolations;
    if (t.measuredRadius < 0 || *dh < t.measuredRadius) t.measuredRadius = *dh;
    if (t.guaranteedRadius < 0 || lb < t.guaranteedRadius) {
      t.guaranteedRadius = std::max(lb, Rational(0));
    }
  };
  for (std::size_t i = 0; i < seqH.size(); ++i) {
    audit(skelH.elementOf(seqH[i]), skelG.elementOf(seqG[i]));
  }

  auto cite = [&](RVertex a, RVertex b) {
    if (a == b) return;
    auto dist = hb.pairDistance(skelH.elementOf(a), skelH.elementOf(b));
    if (!dist) {
      ++t.unknownDistances;
      return;
    }
    t.maxCitedDistance = std::max(t.maxCitedDistance, *dist);
  };

  for (const LoopMove& m : t.imageFilling.moves) {
    const std::size_t n = seqH.size();
    if (m.index >= n) {
      t.failure = "image filling move out of range";
      return t;
    }
    LoopMove mh = m;
    if (m.op == LoopMove::Insert) {
      VertexId gv = skelG.elementOf(m.vertex);
      VertexId hv = hp.intern(q.backward(gp.element(gv)));
      mh.vertex = skelH.vertex(hv, 0);
      RVertex prev = seqH[m.index], next = seqH[(m.index + 1) % n];
      mh.kind = classifyMove(prev, mh.vertex, next);
      cite(prev, mh.vertex);
      cite(mh.vertex, next);
      cite(prev, next);
      audit(hv, gv);
      seqH.insert(seqH.begin() + static_cast<std::ptrdiff_t>(m.index) + 1,
                  mh.vertex);
      seqG.insert(seqG.begin() + static_cast<std::ptrdiff_t>(m.index) + 1,
                  m.vertex);
    } else {
      RVertex prev = seqH[(m.index + n - 1) % n], v = seqH[m.index],
              next = seqH[(m.index + 1) % n];
      mh.kind = classifyMove(prev, v, next);
      cite(prev, v);
      cite(v, next);
      cite(prev, next);
      seqH.erase(seqH.begin() + static_cast<std::ptrdiff_t>(m.index));
      seqG.erase(seqG.begin() + static_cast<std::ptrdiff_t>(m.index));
    }
    t.transported.moves.push_back(mh);
  }

  // Lower bound of the map on pairs of the refined loop.
  const auto& xs = refined.loop.vertices;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      auto dh = hb.pairDistance(skelH.elementOf(xs[i]), skelH.elementOf(xs[j]));
      auto dg = gb.pairDistance(skelG.elementOf(t.imageLoop.vertices[i]),
                                skelG.elementOf(t.imageLoop.vertices[j]));
      if (!dh || !dg) {
        ++t.unknownDistances;
        continue;
      }
      if (Rational(*dg) < (Rational(*dh) - 3 * q.C) / t.k) ++t.derivedViolations;
    }
  }

  ReplayResult replay = replayFilling(t.transported, AnnulusView(skelH));
  t.replayOk = replay.ok;
  if (!replay.ok) {
    t.failure = "transported filling fails at move " +
                std::to_string(replay.failedMove) + ": " + replay.reason;
  }
  return t;
}

nlohmann::json toJson(const QiMap& q) {
  return {{"kind", q.kind},
          {"source", q.source.name},
          {"target", q.target.name},
          {"lambda", toString(q.lambda)},
          {"C", toString(q.C)},
          {"k", q.k()},
          {"audited_radius", q.auditedRadius}};
}

nlohmann::json toJson(const QiAudit& a) {
  return {{"pairs", a.pairs},
          {"unknown", a.unknown},
          {"violations", a.violations},
          {"derived_violations", a.derivedViolations},
          {"lambda", toString(a.lambda)},
          {"C", toString(a.C)},
          {"ok", a.ok()}};
}

nlohmann::json toJson(const TransportedDisk& t) {
  return {{"source_loop", toJson(t.sourceLoop)},
          {"refined_loop", toJson(t.refinedLoop)},
          {"image_loop", toJson(t.imageLoop)},
          {"image_filling", toJson(t.imageFilling)},
          {"transported", toJson(t.transported)},
          {"k", t.k},
          {"C", toString(t.C)},
          {"epsilon", t.epsilon},
          {"a", t.a},
          {"d", t.d},
          {"classical_bound", t.classicalBound},
          {"max_cited_distance", t.maxCitedDistance},
          {"replay_ok", t.replayOk},
          {"failure", t.failure},
          {"avoidance_checked", t.avoidanceChecked},
          {"avoidance_violations", t.avoidanceViolations},
          {"derived_violations", t.derivedViolations},
          {"unknown_distances", t.unknownDistances},
          {"guaranteed_radius", toString(t.guaranteedRadius)},
          {"measured_radius", t.measuredRadius},
          {"ok", t.ok()}};
}

}  // namespace topinf
