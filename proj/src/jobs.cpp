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

#include "topinf/jobs.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include "topinf/ball.hpp"
#include "topinf/certify.hpp"
#include "topinf/fill.hpp"
#include "topinf/qi.hpp"
#include "topinf/rips.hpp"
#include "topinf/vrate.hpp"

namespace topinf {

namespace {

const std::vector<std::string> kCommands = {
    "ball", "rips", "certify-sci", "fill-loop", "vrate", "qi-audit"};

template <typename T>
void get(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s;
}

int smallestD(const GroupModel& model) {
  return model.presentation.maxRelatorLength() / 2 + 1;
}

std::shared_ptr<BallTable> ballFor(const GroupModel& model, int radius,
                                   const JobConfig& c) {
  if (c.cacheDir.empty()) return std::make_shared<BallTable>(buildBall(model, radius));
  return std::make_shared<BallTable>(buildBallCached(model, radius, c.cacheDir));
}

nlohmann::json modelJson(const GroupModel& m) {
  std::ostringstream fp;
  fp << std::hex << m.presentation.fingerprint();
  return {{"name", m.name},
          {"engine", m.engine->describe()},
          {"presentation", m.presentation.toText()},
          {"fingerprint", fp.str()},
          {"heuristic", m.heuristic}};
}

nlohmann::json freeActionJson(const FreeActionReport& r, const GroupModel& m) {
  return {{"free", r.free},
          {"simplices_checked", r.simplicesChecked},
          {"element", r.free ? nlohmann::json(nullptr)
                             : nlohmann::json(m.presentation.format(r.element))},
          {"simplex", r.simplex}};
}

}  // namespace

int statusOf(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Precondition:
    case ErrorKind::Io:
      return 2;
    case ErrorKind::Consistency:
      return 3;
    case ErrorKind::Budget:
      return 1;
  }
  return 3;
}

JobConfig jobConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionError("job config must be a JSON object");
  static const std::vector<std::string> keys = {
      "command", "family", "presentation_file", "allow_heuristic", "radius",
      "d", "m", "r_min", "r_max", "inner", "budget_states", "seed", "threads",
      "cache_dir", "compare", "qi", "qi_kind", "loop", "start", "random_loops",
      "max_loop_length", "pairs", "transport_loops"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw PreconditionError("unknown job config key '" + key + "'");
    }
  }
  JobConfig c;
  try {
    get(j, "command", c.command);
    get(j, "family", c.family);
    get(j, "presentation_file", c.presentationFile);
    get(j, "allow_heuristic", c.allowHeuristic);
    get(j, "radius", c.radius);
    get(j, "d", c.d);
    get(j, "m", c.m);
    get(j, "r_min", c.rMin);
    get(j, "r_max", c.rMax);
    get(j, "inner", c.inner);
    get(j, "budget_states", c.budgetStates);
    get(j, "seed", c.seed);
    get(j, "threads", c.threads);
    get(j, "cache_dir", c.cacheDir);
    get(j, "compare", c.compare);
    get(j, "qi", c.qi);
    get(j, "qi_kind", c.qiKind);
    get(j, "loop", c.loop);
    get(j, "start", c.start);
    get(j, "random_loops", c.randomLoops);
    get(j, "max_loop_length", c.maxLoopLength);
    get(j, "pairs", c.pairs);
    get(j, "transport_loops", c.transportLoops);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("bad job config: ") + e.what());
  }
  return c;
}

nlohmann::json toJson(const JobConfig& c) {
  return {{"command", c.command},
          {"family", c.family},
          {"presentation_file", c.presentationFile},
          {"allow_heuristic", c.allowHeuristic},
          {"radius", c.radius},
          {"d", c.d},
          {"m", c.m},
          {"r_min", c.rMin},
          {"r_max", c.rMax},
          {"inner", c.inner},
          {"budget_states", c.budgetStates},
          {"seed", c.seed},
          {"threads", c.threads},
          {"cache_dir", c.cacheDir},
          {"compare", c.compare},
          {"qi", c.qi},
          {"qi_kind", c.qiKind},
          {"loop", c.loop},
          {"start", c.start},
          {"random_loops", c.randomLoops},
          {"max_loop_length", c.maxLoopLength},
          {"pairs", c.pairs},
          {"transport_loops", c.transportLoops}};
}

GroupModel loadModel(const std::string& family,
                     const std::string& presentationFile, bool allowHeuristic) {
  if (!presentationFile.empty()) {
    if (!family.empty()) {
      throw PreconditionError("give either a family or a presentation file");
    }
    std::ifstream in(presentationFile);
    if (!in) throw IoError("cannot read " + presentationFile);
    std::stringstream text;
    text << in.rdbuf();
    GroupModel m = modelFromPresentation(parsePresentation(text.str()), allowHeuristic);
    m.name = presentationFile;
    return m;
  }
  if (family.empty()) throw PreconditionError("no group model given");
  GroupModel m = makeFamily(family);
  if (allowHeuristic) m.heuristic = true;
  return m;
}

GroupModel loadModel(const JobConfig& c) {
  return loadModel(c.family, c.presentationFile, c.allowHeuristic);
}

JobConfig resolveJob(const JobConfig& in) {
  JobConfig c = in;
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw PreconditionError("unknown command '" + c.command + "'");
  }
  if (c.m < 1) throw PreconditionError("m must be >= 1");
  if (c.threads < 1) c.threads = 1;
  if (c.budgetStates == 0) throw PreconditionError("budget must be positive");
  const GroupModel model = loadModel(c);
  const std::string& cmd = c.command;
  if (cmd == "ball" || cmd == "rips") {
    if (c.radius < 0) throw PreconditionError(cmd + " needs a radius");
    if (cmd == "rips" && c.d < 1) throw PreconditionError("rips needs d >= 1");
  } else if (cmd == "certify-sci" || cmd == "fill-loop") {
    if (c.d < 0) c.d = smallestD(model);
    if (c.d < 1) throw PreconditionError("d must be >= 1");
    if (c.radius < 0) c.radius = cmd == "certify-sci" ? 6 : 8;
    if (cmd == "fill-loop" && c.loop.empty()) {
      throw PreconditionError("fill-loop needs a loop word");
    }
    if (cmd == "fill-loop" && c.inner >= c.radius) {
      throw PreconditionError("annulus inner radius must be below the radius");
    }
  } else if (cmd == "vrate") {
    if (c.d < 0) c.d = smallestD(model);
    if (c.d < 1) throw PreconditionError("d must be >= 1");
    if (c.rMax < 0) throw PreconditionError("vrate needs r_max");
    if (c.rMin < 0) c.rMin = std::min(1, c.rMax);
    if (c.radius < 0) c.radius = std::max(2 * c.rMax + 2, c.rMax + c.d + 1);
    if (c.rMin > c.rMax || c.rMax > c.radius - c.d - 1) {
      throw PreconditionError("inner radii must satisfy r_min <= r_max <= R - d - 1");
    }
    if (c.qi && c.compare.empty()) {
      throw PreconditionError("--qi needs --compare with the source model");
    }
    if (!c.compare.empty()) loadModel(c.compare, "", false);
  } else if (cmd == "qi-audit") {
    if (c.compare.empty()) throw PreconditionError("qi-audit needs a source model");
    builtinQi(c.qiKind, loadModel(c.compare, "", false), model);
    if (c.radius < 0) c.radius = 12;
  }
  return c;
}

namespace {

JobResult runBall(const JobConfig& c, const GroupModel& model) {
  auto ball = ballFor(model, c.radius, c);
  std::vector<std::size_t> counts = ball->ballCounts();
  JobResult r;
  r.report = {{"schema", "topinf-ball 1"},
              {"model", modelJson(model)},
              {"radius", c.radius},
              {"ball_counts", counts}};
  r.text = "ball sizes B(0.." + std::to_string(c.radius) + "): " + join(counts) + "\n";
  return r;
}

JobResult runRips(const JobConfig& c, const GroupModel& model) {
  auto ball = ballFor(model, c.radius, c);
  RipsSkeleton skel = buildRips(ball, c.d, c.m);
  FreeActionReport free = checkFreeAction(skel);
  JobResult r;
  r.report = {{"schema", "topinf-rips 1"},
              {"model", modelJson(model)},
              {"radius", c.radius},
              {"d", c.d},
              {"m", c.m},
              {"vertices", skel.vertexCount()},
              {"edges", skel.edges().size()},
              {"triangles", skel.triangles().size()},
              {"free_action", freeActionJson(free, model)}};
  std::ostringstream os;
  os << "P_" << c.d << " (m=" << c.m << ") over B(" << c.radius << "): "
     << skel.vertexCount() << " vertices, " << skel.edges().size() << " edges, "
     << skel.triangles().size() << " triangles\n"
     << "free action: " << (free.free ? "yes" : "no");
  if (!free.free) os << " (fixed by " << model.presentation.format(free.element) << ")";
  os << "\n";
  r.text = os.str();
  return r;
}

JobResult runCertify(const JobConfig& c, const GroupModel& model) {
  auto ball = ballFor(model, c.radius, c);
  RipsSkeleton skel =
      c.m > 1 ? buildRips(ball, c.d, c.m) : makeImplicitRips(ball, c.d, c.m);
  CertifyOptions opt;
  opt.randomLoops = c.randomLoops;
  opt.maxLoopLength = c.maxLoopLength;
  opt.seed = c.seed;
  opt.budget.maxStates = c.budgetStates;
  auto sample = defaultSample(model.presentation, skel, opt);
  CertifyReport rep = certifySimplyConnected(model.presentation, skel, sample, opt.budget);
  JobResult r;
  r.report = {{"schema", "topinf-certify 1"},
              {"model", modelJson(model)},
              {"radius", c.radius},
              {"seed", c.seed},
              {"certificate", toJson(rep)}};
  std::ostringstream os;
  os << "d=" << c.d << " m=" << c.m << " max relator length "
     << rep.maxRelatorLength << ": filled " << rep.filled << "/"
     << rep.loops.size() << ", inconclusive " << rep.inconclusive << "\n";
  if (c.m > 1) {
    FreeActionReport free = checkFreeAction(skel);
    r.report["free_action"] = freeActionJson(free, model);
    os << "free action: " << (free.free ? "yes" : "no") << "\n";
  }
  r.text = os.str();
  r.status = rep.allFilled() ? 0 : 1;
  return r;
}

JobResult runFill(const JobConfig& c, const GroupModel& model) {
  auto ball = ballFor(model, c.radius, c);
  const bool annulus = c.inner >= 0;
  RipsSkeleton skel =
      annulus || c.m > 1 ? buildRips(ball, c.d, c.m) : makeImplicitRips(ball, c.d, c.m);
  const Word word = model.presentation.parseWord(c.loop);
  const Element startElement = model.engine->evaluate(model.presentation.parseWord(c.start));
  const VertexId start = ball->pool()->intern(startElement);
  SimplicialLoop loop = loopFromWord(skel, start, word, 0);
  AnnulusView view(skel, c.inner, annulus ? c.radius : AnnulusView::kUnbounded);
  std::unique_ptr<HomologyH1> h1;
  if (annulus) h1 = std::make_unique<HomologyH1>(view);
  FillBudget budget;
  budget.maxStates = c.budgetStates;
  FillResult res = fillLoop(loop, view, budget, h1.get());
  JobResult r;
  r.report = {{"schema", "topinf-fill 1"},
              {"model", modelJson(model)},
              {"radius", c.radius},
              {"d", c.d},
              {"inner", c.inner},
              {"word", c.loop},
              {"start", c.start},
              {"result", toJson(res)}};
  std::ostringstream os;
  os << "loop of length " << loop.vertices.size() << ": " << toString(res.status)
     << " after " << res.states << " states";
  if (res.filling) os << ", " << res.filling->moves.size() << " moves";
  os << "\n";
  r.text = os.str();
  r.status = res.status == FillStatus::Inconclusive ? 1 : 0;
  return r;
}

VRatePolicy policyOf(const JobConfig& c) {
  VRatePolicy p;
  p.seed = c.seed;
  p.threads = c.threads;
  p.budget.maxStates = std::min<std::size_t>(c.budgetStates, p.budget.maxStates);
  return p;
}

VRateEstimate estimateFor(const GroupModel& model, int radius, int d, int rMin,
                          int rMax, const JobConfig& c) {
  auto ball = ballFor(model, radius, c);
  RipsSkeleton skel = buildRips(ball, d, 1);
  return estimateVRate(skel, rMin, rMax, policyOf(c));
}

std::string rowsText(const VRateEstimate& e) {
  std::ostringstream os;
  for (const auto& row : e.rows) {
    os << "  r=" << row.r << "  N_lower=" << row.lower
       << (row.lowerTrivial ? " (trivial)" : "") << "  N_upper="
       << (row.upper ? std::to_string(*row.upper) : "none") << "  inconclusive="
       << row.inconclusive << "  obstructed_N=" << row.obstructions.size() << "\n";
  }
  return os.str();
}

JobResult runVrate(const JobConfig& c, const GroupModel& model) {
  JobResult r;
  VRateEstimate e = estimateFor(model, c.radius, c.d, c.rMin, c.rMax, c);
  LinearFit fit = fitLinear(e);
  r.csv = e.csv();
  r.report = {{"schema", "topinf-vrate-job 1"},
              {"model", modelJson(model)},
              {"estimate", toJson(e)},
              {"linear_fit", toJson(fit)}};
  std::ostringstream os;
  os << model.name << ", d=" << c.d << ", truncation R=" << c.radius
     << " (upper bounds are relative to the loop sample)\n"
     << rowsText(e);
  bool anyUpper = false;
  for (const auto& row : e.rows) anyUpper = anyUpper || row.upper.has_value();
  if (!anyUpper) os << "no upper bound found within the truncation\n";
  if (fit.points > 0) {
    os << "linear fit over " << fit.points << " midpoints: slope " << fit.slope
       << ", intercept " << fit.intercept << ", max residual " << fit.maxResidual << "\n";
  }
  for (const auto& row : e.rows) {
    if (!row.upper && row.inconclusive > 0) r.status = 1;
  }
  if (!e.monotone()) {
    for (const auto& issue : e.monotonicityIssues) os << "monotonicity: " << issue << "\n";
    r.status = 3;
  }

  if (!c.compare.empty()) {
    GroupModel other = loadModel(c.compare, "", false);
    VRateEstimate eo = estimateFor(other, c.radius, c.d, c.rMin, c.rMax, c);
    Comparison cmp = compareVRates(e, eo);
    r.report["compare"] = {{"model", modelJson(other)},
                           {"estimate", toJson(eo)},
                           {"comparison", toJson(cmp)}};
    os << "comparison with " << other.name << ":\n" << rowsText(eo);
    if (cmp.witness) {
      const auto& w = *cmp.witness;
      os << "equivalence witness c=(" << toString(w.c1) << ", " << toString(w.c2)
         << ", " << toString(w.c3) << ") C=(" << toString(w.C1) << ", "
         << toString(w.C2) << ", " << toString(w.C3) << ") on r in [" << w.rFrom
         << ", " << w.rTo << "]\n";
    } else {
      os << "equivalence not shown: " << cmp.reason << "\n";
    }

    if (c.qi) {
      // The map runs from the compared model H into this model G.
      QiMap q = builtinQi(c.qiKind, other, model);
      auto hb = ballFor(other, c.radius, c);
      auto gb = ballFor(model, c.radius, c);
      QiAudit audit = fitQi(q, *hb, *gb, c.pairs, c.seed);
      const int a = static_cast<int>(ceilRational(Rational(q.k() * c.d) + 3 * q.C));
      int covered = -1;
      const auto table = e.upperTable();
      for (int R = 0;; ++R) {
        if (!mRadius(q.lambda, q.C, table, R).value) break;
        covered = R;
      }
      std::optional<VRateEstimate> measured;
      if (covered >= 0) {
        measured = estimateFor(other, covered + a + 1, a, 0, covered, c);
      }
      auto rows = qiPredictedBound(e, q, measured ? &*measured : nullptr);
      bool consistent = true;
      for (const auto& row : rows) consistent = consistent && row.consistent;
      r.report["qi"] = {{"map", toJson(q)},
                        {"fit_audit", toJson(audit)},
                        {"a", a},
                        {"measured", measured ? toJson(*measured) : nlohmann::json(nullptr)},
                        {"predicted", toJson(rows)},
                        {"consistent", consistent}};
      os << "quasi-isometry " << q.kind << ": lambda " << toString(q.lambda)
         << ", C " << toString(q.C) << ", a=" << a << "\n";
      for (const auto& row : rows) {
        os << "  R=" << row.R << "  M(R)="
           << (row.predicted ? std::to_string(*row.predicted) : "unknown")
           << "  measured N_lower="
           << (row.measuredLower ? std::to_string(*row.measuredLower) : "-") << "\n";
      }
      os << "prediction consistency: " << (consistent ? "PASS" : "FAIL") << "\n";
      if (!consistent) r.status = 3;
    }
  }
  r.text = os.str();
  return r;
}

JobResult runQiAudit(const JobConfig& c, const GroupModel& model) {
  GroupModel source = loadModel(c.compare, "", false);
  QiMap q = builtinQi(c.qiKind, source, model);
  // Both tables reach 2R so that disks of loops starting in B(R/2) stay
  // inside them.
  auto hb = ballFor(source, 2 * c.radius, c);
  auto gb = ballFor(model, 2 * c.radius, c);
  QiAudit fit = fitQi(q, *hb, *gb, c.pairs, c.seed);
  QiAudit audit = auditQi(q, *hb, *gb, c.pairs, c.seed + 1);
  JobResult r;
  r.report = {{"schema", "topinf-qi 1"},
              {"source", modelJson(source)},
              {"target", modelJson(model)},
              {"map", toJson(q)},
              {"fit", toJson(fit)},
              {"audit", toJson(audit)}};
  std::ostringstream os;
  os << q.kind << " map " << source.name << " -> " << model.name << ": lambda "
     << toString(q.lambda) << ", C " << toString(q.C) << "; audit on "
     << audit.pairs << " pairs: " << (audit.ok() ? "ok" : "FAILED") << "\n";
  if (!audit.ok()) r.status = 3;

  if (c.transportLoops > 0) {
    const int k = static_cast<int>(q.k());
    const int d = std::max({c.d, k + static_cast<int>(ceilRational(q.C)),
                            smallestD(model)});
    const int a = static_cast<int>(ceilRational(Rational(k * d) + 3 * q.C));
    RipsSkeleton skelH = makeImplicitRips(hb, a, 1);
    RipsSkeleton skelG = makeImplicitRips(gb, d, 1);
    CertifyOptions opt;
    opt.randomLoops = c.transportLoops;
    opt.maxLoopLength = c.maxLoopLength;
    opt.seed = c.seed;
    opt.startRadius = std::max(0, c.radius / 2 - 2);
    std::vector<SampledLoop> loops;
    for (auto& s : defaultSample(source.presentation, skelH, opt)) {
      if (s.origin.rfind("random", 0) == 0) loops.push_back(std::move(s));
    }
    auto filler = [&](const SimplicialLoop& l) {
      return constructiveFilling(model.presentation, skelG, l, c.budgetStates);
    };
    nlohmann::json disks = nlohmann::json::array();
    std::size_t ok = 0, unfilled = 0;
    int maxCited = 0;
    for (const auto& s : loops) {
      TransportedDisk t = transportDisk(q, skelH, s.loop, skelG, filler);
      if (t.ok()) ++ok;
      else if (t.failure == "image loop not filled") ++unfilled;
      maxCited = std::max(maxCited, t.maxCitedDistance);
      nlohmann::json j = toJson(t);
      j["origin"] = s.origin;
      disks.push_back(std::move(j));
    }
    r.report["transport"] = {{"d", d}, {"a", a}, {"loops", loops.size()},
                             {"ok", ok}, {"image_unfilled", unfilled},
                             {"max_cited_distance", maxCited},
                             {"disks", std::move(disks)}};
    os << "transport into P_" << a << " via P_" << d << ": " << ok << "/"
       << loops.size() << " disks verified, largest cited distance " << maxCited
       << "\n";
    if (ok + unfilled < loops.size()) r.status = 3;
    else if (unfilled > 0 && r.status == 0) r.status = 1;
  }
  r.text = os.str();
  return r;
}

}  // namespace

JobResult runJob(const JobConfig& in) {
  const JobConfig c = resolveJob(in);
  const GroupModel model = loadModel(c);
  JobResult r;
  if (c.command == "ball") r = runBall(c, model);
  else if (c.command == "rips") r = runRips(c, model);
  else if (c.command == "certify-sci") r = runCertify(c, model);
  else if (c.command == "fill-loop") r = runFill(c, model);
  else if (c.command == "vrate") r = runVrate(c, model);
  else r = runQiAudit(c, model);
  r.report["config"] = toJson(c);
  r.report["status"] = r.status;
  return r;
}

}  // namespace topinf
