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

#include "topinf/vrate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>
#include <thread>

#include "topinf/error.hpp"
#include "topinf/pi1.hpp"
#include "topinf/presentation.hpp"

namespace topinf {

std::string VRatePolicy::describe() const {
  std::ostringstream os;
  os << "pi1-generators+random(" << randomLoops << ",walk=" << walkLength
     << (conjugate ? ",conjugated" : "") << ",seed=" << seed
     << ",states=" << budget.maxStates << ")";
  return os.str();
}

namespace {

using Adjacency = std::vector<std::vector<int>>;

Adjacency adjacencyOf(const ViewGraph& g) {
  Adjacency adj(g.vertices.size());
  for (const REdge& e : g.edges) {
    int a = g.local.at(e[0]), b = g.local.at(e[1]);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

/// Shortest path in the view graph, both ends included.
std::vector<int> shortestPath(const Adjacency& adj, int from, int to) {
  std::vector<int> prev(adj.size(), -2);
  std::deque<int> queue{from};
  prev[from] = -1;
  while (!queue.empty() && prev[to] == -2) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (prev[w] != -2) continue;
      prev[w] = v;
      queue.push_back(w);
    }
  }
  std::vector<int> path;
  for (int v = to; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<SimplicialLoop> sampleLoops(const AnnulusView& view,
                                        const VRatePolicy& policy,
                                        std::uint64_t seed) {
  std::vector<SimplicialLoop> out;
  const ViewGraph graph = buildViewGraph(view);
  if (graph.vertices.empty()) return out;
  std::vector<RVertex> roots;
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    if (graph.parent[i] == -1) roots.push_back(graph.vertices[i]);
  }
  for (RVertex root : roots) {
    Pi1Presentation p = pi1Presentation(view, root);
    for (int g : p.essential) out.push_back({p.generatorLoop(g)});
  }

  const Adjacency adj = adjacencyOf(graph);
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < policy.randomLoops; ++s) {
    int start = static_cast<int>(rng() % graph.vertices.size());
    std::vector<int> walk{start};
    for (std::size_t k = 0; k < policy.walkLength; ++k) {
      const auto& nb = adj[walk.back()];
      if (nb.empty()) break;
      walk.push_back(nb[rng() % nb.size()]);
    }
    std::vector<int> back = shortestPath(adj, walk.back(), start);
    if (back.size() > 2) walk.insert(walk.end(), back.begin() + 1, back.end() - 1);
    std::vector<RVertex> cycle;
    RVertex x0 = graph.vertices[start];
    std::vector<RVertex> stem;
    if (policy.conjugate) {
      RVertex root = x0;
      for (int v = start; v != -1; v = graph.parent[v]) root = graph.vertices[v];
      stem = graph.treePath(root, x0);
      stem.pop_back();
    }
    cycle = stem;
    for (int v : walk) cycle.push_back(graph.vertices[v]);
    if (!stem.empty()) {
      cycle.push_back(x0);
      cycle.insert(cycle.end(), stem.rbegin(), stem.rend() - 1);
    }
    out.push_back({std::move(cycle)});
  }
  return out;
}

std::optional<H1Certificate> findObstruction(const HomologyH1& source,
                                             const HomologyH1& target,
                                             const H1Map& map, int N) {
  for (std::size_t j = 0; j < map.source.rank + map.source.torsion.size();
       ++j) {
    bool nonzero = false;
    for (const auto& row : map.matrix) nonzero = nonzero || row[j] != 0;
    if (!nonzero) continue;
    for (const auto& cycle : source.basisCycles(j)) {
      auto cert = obstructLoop({cycle}, target, N, &source);
      if (cert) return cert;
    }
  }
  const ViewGraph& g = source.graph();
  for (std::size_t k = 0; k < g.generatorCount(); ++k) {
    auto cert = obstructLoop({g.generatorCycle(static_cast<int>(k))}, target,
                             N, &source);
    if (cert) return cert;
  }
  return std::nullopt;
}

std::uint64_t rowSeed(std::uint64_t seed, int r, int N) {
  std::uint64_t words[3] = {seed, static_cast<std::uint64_t>(r),
                            static_cast<std::uint64_t>(N)};
  return fnv1a(std::string_view(reinterpret_cast<const char*>(words),
                                sizeof words));
}

VRateRow estimateRow(const RipsSkeleton& skel, int r, int R,
                     const VRatePolicy& policy) {
  VRateRow row;
  row.r = r;
  row.lower = r;
  const AnnulusView target(skel, r, R);
  const HomologyH1 th(target);
  for (int N = r; N < R; ++N) {
    const AnnulusView source(skel, N, R);
    const HomologyH1 sh(source);
    const H1Map map = h1Map(sh, th);
    if (!map.zero()) {
      auto cert = findObstruction(sh, th, map, N);
      if (!cert) {
        throw ConsistencyError("nonzero H1 map without a witness loop at N = " +
                               std::to_string(N));
      }
      auto check = checkCertificate(*cert, skel);
      if (!check.ok) throw ConsistencyError("obstruction rejected: " + check.reason);
      row.lower = N;
      row.lowerTrivial = false;
      row.obstructions.push_back(std::move(*cert));
      continue;
    }
    bool all = true;
    std::vector<DiskFilling> fillings;
    for (const SimplicialLoop& loop :
         sampleLoops(source, policy, rowSeed(policy.seed, r, N))) {
      ++row.loopsTested;
      FillResult res = fillLoop(loop, target, policy.budget, &th);
      if (res.status == FillStatus::Filled) {
        fillings.push_back(std::move(*res.filling));
        continue;
      }
      if (res.status == FillStatus::Obstructed) {
        throw ConsistencyError("loop obstructed although the H1 map is zero");
      }
      ++row.inconclusive;
      all = false;
      break;
    }
    if (all) {
      row.upper = N;
      row.fillings = std::move(fillings);
      break;
    }
  }
  return row;
}

}  // namespace

std::map<std::int64_t, std::int64_t> VRateEstimate::upperTable() const {
  std::map<std::int64_t, std::int64_t> t;
  for (const auto& row : rows) {
    if (row.upper) t[row.r] = *row.upper;
  }
  return t;
}

std::string VRateEstimate::csv() const {
  std::ostringstream os;
  os << "r,N_lower,N_upper,inconclusive_count,truncation_R\n";
  for (const auto& row : rows) {
    os << row.r << ',' << row.lower << ','
       << (row.upper ? std::to_string(*row.upper) : std::string("none")) << ','
       << row.inconclusive << ',' << truncation << '\n';
  }
  return os.str();
}

VRateEstimate estimateVRate(const RipsSkeleton& skel, int rMin, int rMax,
                            const VRatePolicy& policy) {
  const int R = skel.ball().radius();
  if (!skel.materialized()) {
    throw PreconditionError("vanishing rates need a materialized complex");
  }
  if (rMin < 0 || rMin > rMax || rMax > R - skel.d() - 1) {
    throw PreconditionError("inner radii must satisfy 0 <= r <= R - d - 1 = " +
                            std::to_string(R - skel.d() - 1));
  }
  VRateEstimate e;
  e.d = skel.d();
  e.colors = skel.colors();
  e.truncation = R;
  e.policy = policy.describe();
  e.rows.resize(static_cast<std::size_t>(rMax - rMin + 1));

  const unsigned threads = std::max(1u, policy.threads);
  std::vector<std::exception_ptr> errors(e.rows.size());
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < e.rows.size(); i += threads) {
      try {
        e.rows[i] = estimateRow(skel, rMin + static_cast<int>(i), R, policy);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  for (std::size_t i = 1; i < e.rows.size(); ++i) {
    const VRateRow& a = e.rows[i - 1];
    const VRateRow& b = e.rows[i];
    if (b.lower < a.lower) {
      e.monotonicityIssues.push_back("N_lower drops from r = " +
                                     std::to_string(a.r) + " to r = " +
                                     std::to_string(b.r));
    }
    if (a.upper && b.upper && *b.upper < *a.upper) {
      e.monotonicityIssues.push_back("N_upper drops from r = " +
                                     std::to_string(a.r) + " to r = " +
                                     std::to_string(b.r));
    }
    if (!a.upper && b.upper) {
      e.monotonicityIssues.push_back("N_upper found at r = " +
                                     std::to_string(b.r) + " but not at r = " +
                                     std::to_string(a.r));
    }
  }
  return e;
}

LinearFit fitLinear(const std::vector<std::pair<double, double>>& xy) {
  LinearFit fit;
  fit.points = xy.size();
  if (xy.empty()) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(xy.size());
  const double den = n * sxx - sx * sx;
  fit.slope = den == 0 ? 0 : (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (auto [x, y] : xy) {
    fit.maxResidual =
        std::max(fit.maxResidual, std::abs(y - fit.slope * x - fit.intercept));
  }
  return fit;
}

LinearFit fitLinear(const VRateEstimate& e) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& row : e.rows) {
    if (row.upper) xy.emplace_back(row.r, (row.lower + *row.upper) / 2.0);
  }
  return fitLinear(xy);
}

namespace {

using Table = std::map<std::int64_t, std::int64_t>;

std::optional<std::int64_t> at(const Table& t, std::int64_t x) {
  auto it = t.find(x);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

/// Best additive constant for one side of the sandwich; nullopt when some
/// argument is missing. For the lower side returns min(g - c f), for the
/// upper side max(g - C f).
std::optional<Rational> slack(const Table& f, const Table& g,
                              const Rational& mul, const Rational& scale,
                              bool lowerSide) {
  std::optional<Rational> best;
  for (auto [R, gv] : g) {
    Rational x = scale * R;
    std::int64_t arg = lowerSide ? ceilRational(x) : floorRational(x);
    auto fv = at(f, arg);
    if (!fv) return std::nullopt;
    Rational s = Rational(gv) - mul * *fv;
    if (!best || (lowerSide ? s < *best : s > *best)) best = s;
  }
  return best;
}

}  // namespace

Comparison compareVRates(const Table& f, const Table& g) {
  static const std::vector<Rational> muls = {
      Rational(1), Rational(1, 2), Rational(2), Rational(1, 4), Rational(4)};
  static const std::vector<Rational> scales = {Rational(1), Rational(1, 2),
                                               Rational(2), Rational(3)};
  const Rational limit(10);
  Comparison c;
  if (f.empty() || g.empty()) {
    c.reason = "empty table";
    return c;
  }
  std::optional<std::pair<Rational, Rational>> low, high;
  Rational c3, C3;
  std::optional<Rational> lowMiss, highMiss;
  for (const Rational& s : scales) {
    for (const Rational& m : muls) {
      if (!low) {
        auto v = slack(f, g, m, s, true);
        if (v) {
          Rational add = *v >= 0 ? Rational(0) : Rational(floorRational(*v));
          if (add >= -limit) {
            low = {m, s};
            c3 = add;
          } else if (!lowMiss || -limit - add < *lowMiss) {
            lowMiss = -limit - add;
          }
        }
      }
      if (!high) {
        auto v = slack(f, g, m, s, false);
        if (v) {
          Rational add = *v <= 0 ? Rational(0) : Rational(ceilRational(*v));
          if (add <= limit) {
            high = {m, s};
            C3 = add;
          } else if (!highMiss || add - limit < *highMiss) {
            highMiss = add - limit;
          }
        }
      }
    }
  }
  if (low && high) {
    EquivalenceWitness w;
    w.c1 = low->first;
    w.c2 = low->second;
    w.c3 = c3;
    w.C1 = high->first;
    w.C2 = high->second;
    w.C3 = C3;
    w.rFrom = g.begin()->first;
    w.rTo = g.rbegin()->first;
    w.samples = g.size();
    c.witness = w;
    return c;
  }
  if (!low) c.lowerMiss = lowMiss.value_or(Rational(-1));
  if (!high) c.upperMiss = highMiss.value_or(Rational(-1));
  c.reason = !low && !high ? "neither side met on the grid"
             : !low        ? "lower side not met on the grid"
                           : "upper side not met on the grid";
  if ((!low && !lowMiss) || (!high && !highMiss)) {
    c.reason += " (arguments outside the tables; miss -1 means not evaluable)";
  }
  return c;
}

Comparison compareVRates(const VRateEstimate& f, const VRateEstimate& g) {
  return compareVRates(f.upperTable(), g.upperTable());
}

std::vector<PredictedRow> qiPredictedBound(const VRateEstimate& source,
                                           const QiMap& q,
                                           const VRateEstimate* measured) {
  const Table table = source.upperTable();
  std::vector<PredictedRow> out;
  auto add = [&](std::int64_t R, std::optional<std::int64_t> lower) {
    PredictedRow row;
    row.R = R;
    MRadius m = mRadius(q.lambda, q.C, table, R);
    row.argument = m.argument;
    row.predicted = m.value;
    row.measuredLower = lower;
    row.consistent = !row.predicted || !lower || *lower <= *row.predicted;
    out.push_back(row);
  };
  if (measured) {
    for (const auto& row : measured->rows) add(row.r, row.lower);
  } else {
    for (const auto& row : source.rows) add(row.r, std::nullopt);
  }
  return out;
}

nlohmann::json toJson(const VRateEstimate& e) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : e.rows) {
    nlohmann::json obs = nlohmann::json::array();
    for (const auto& c : row.obstructions) obs.push_back(toJson(c));
    nlohmann::json fills = nlohmann::json::array();
    for (const auto& f : row.fillings) fills.push_back(toJson(f));
    rows.push_back({{"r", row.r},
                    {"N_lower", row.lower},
                    {"lower_trivial", row.lowerTrivial},
                    {"N_upper", row.upper ? nlohmann::json(*row.upper)
                                          : nlohmann::json(nullptr)},
                    {"inconclusive", row.inconclusive},
                    {"loops_tested", row.loopsTested},
                    {"obstructions", std::move(obs)},
                    {"fillings", std::move(fills)}});
  }
  return {{"schema", "topinf-vrate 1"},
          {"d", e.d},
          {"colors", e.colors},
          {"truncation_R", e.truncation},
          {"policy", e.policy},
          {"upper_bounds_are_sample_relative", true},
          {"monotone", e.monotone()},
          {"monotonicity_issues", e.monotonicityIssues},
          {"rows", std::move(rows)}};
}

nlohmann::json toJson(const LinearFit& fit) {
  return {{"points", fit.points},
          {"slope", fit.slope},
          {"intercept", fit.intercept},
          {"max_residual", fit.maxResidual}};
}

nlohmann::json toJson(const Comparison& c) {
  if (c.witness) {
    const auto& w = *c.witness;
    return {{"shown", true},
            {"c1", toString(w.c1)}, {"c2", toString(w.c2)}, {"c3", toString(w.c3)},
            {"C1", toString(w.C1)}, {"C2", toString(w.C2)}, {"C3", toString(w.C3)},
            {"r_from", w.rFrom}, {"r_to", w.rTo}, {"samples", w.samples}};
  }
  return {{"shown", false},
          {"lower_miss", toString(c.lowerMiss)},
          {"upper_miss", toString(c.upperMiss)},
          {"reason", c.reason}};
}

nlohmann::json toJson(const std::vector<PredictedRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"R", r.R},
                   {"argument", r.argument},
                   {"predicted", r.predicted ? nlohmann::json(*r.predicted)
                                             : nlohmann::json("unknown")},
                   {"measured_lower", r.measuredLower
                                          ? nlohmann::json(*r.measuredLower)
                                          : nlohmann::json(nullptr)},
                   {"consistent", r.consistent}});
  }
  return out;
}

}  // namespace topinf
