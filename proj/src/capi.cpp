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

#include "topinf/topinf.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "topinf/ball.hpp"
#include "topinf/families.hpp"
#include "topinf/homology.hpp"
#include "topinf/jobs.hpp"
#include "topinf/rips.hpp"

struct topinf_model {
  topinf::GroupModel model;
};

struct topinf_ball {
  std::shared_ptr<const topinf::GroupModel> model;
  std::shared_ptr<topinf::BallTable> ball;
};

struct topinf_complex {
  std::shared_ptr<topinf::BallTable> ball;
  topinf::RipsSkeleton skel;
};

namespace {

thread_local std::string lastError;

char* copyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
topinf_status guarded(F&& f) {
  lastError.clear();
  try {
    return f();
  } catch (const topinf::Error& e) {
    lastError = e.what();
    return static_cast<topinf_status>(topinf::statusOf(e.kind()));
  } catch (const std::exception& e) {
    lastError = e.what();
    return TOPINF_INTERNAL;
  } catch (...) {
    lastError = "unknown error";
    return TOPINF_INTERNAL;
  }
}

topinf_status nullArgument(const char* what) {
  lastError = std::string("null argument: ") + what;
  return TOPINF_PRECONDITION;
}

}  // namespace

extern "C" {

const char* topinf_version(void) { return TOPINF_VERSION; }

const char* topinf_last_error(void) { return lastError.c_str(); }

void topinf_string_free(char* s) { std::free(s); }

topinf_status topinf_model_family(const char* name, topinf_model** out) {
  if (!name || !out) return nullArgument("name/out");
  return guarded([&] {
    *out = new topinf_model{topinf::makeFamily(name)};
    return TOPINF_OK;
  });
}

topinf_status topinf_model_from_file(const char* path, int allow_heuristic,
                                     topinf_model** out) {
  if (!path || !out) return nullArgument("path/out");
  return guarded([&] {
    *out = new topinf_model{topinf::loadModel("", path, allow_heuristic != 0)};
    return TOPINF_OK;
  });
}

topinf_status topinf_model_describe(const topinf_model* model, char** out) {
  if (!model || !out) return nullArgument("model/out");
  return guarded([&] {
    *out = copyString(model->model.name + ": " + model->model.engine->describe() +
                      "\n" + model->model.presentation.toText());
    return TOPINF_OK;
  });
}

void topinf_model_free(topinf_model* model) { delete model; }

topinf_status topinf_ball_build(const topinf_model* model, int radius,
                                const char* cache_dir, topinf_ball** out) {
  if (!model || !out) return nullArgument("model/out");
  return guarded([&] {
    auto m = std::make_shared<const topinf::GroupModel>(model->model);
    auto b = std::make_shared<topinf::BallTable>(
        cache_dir ? topinf::buildBallCached(*m, radius, cache_dir)
                  : topinf::buildBall(*m, radius));
    *out = new topinf_ball{std::move(m), std::move(b)};
    return TOPINF_OK;
  });
}

int topinf_ball_radius(const topinf_ball* ball) {
  return ball ? ball->ball->radius() : -1;
}

topinf_status topinf_ball_count(const topinf_ball* ball, int k, size_t* out) {
  if (!ball || !out) return nullArgument("ball/out");
  return guarded([&] {
    if (k < 0 || k > ball->ball->radius()) {
      throw topinf::PreconditionError("radius outside the ball");
    }
    *out = ball->ball->ballCount(k);
    return TOPINF_OK;
  });
}

topinf_status topinf_ball_distance(const topinf_ball* ball, const char* u,
                                   const char* v, int* out) {
  if (!ball || !u || !v || !out) return nullArgument("ball/u/v/out");
  return guarded([&] {
    const auto& p = ball->model->presentation;
    const auto& engine = *ball->model->engine;
    auto& pool = *ball->ball->pool();
    auto a = pool.intern(engine.evaluate(p.parseWord(u)));
    auto b = pool.intern(engine.evaluate(p.parseWord(v)));
    *out = ball->ball->pairDistance(a, b).value_or(-1);
    return TOPINF_OK;
  });
}

void topinf_ball_free(topinf_ball* ball) { delete ball; }

topinf_status topinf_complex_build(const topinf_ball* ball, int d, int m,
                                   topinf_complex** out) {
  if (!ball || !out) return nullArgument("ball/out");
  return guarded([&] {
    *out = new topinf_complex{ball->ball, topinf::buildRips(ball->ball, d, m)};
    return TOPINF_OK;
  });
}

topinf_status topinf_complex_counts(const topinf_complex* complex,
                                    size_t* vertices, size_t* edges,
                                    size_t* triangles) {
  if (!complex) return nullArgument("complex");
  return guarded([&] {
    if (vertices) *vertices = complex->skel.vertexCount();
    if (edges) *edges = complex->skel.edges().size();
    if (triangles) *triangles = complex->skel.triangles().size();
    return TOPINF_OK;
  });
}

topinf_status topinf_complex_h1(const topinf_complex* complex, int inner,
                                int outer, char** json) {
  if (!complex || !json) return nullArgument("complex/json");
  return guarded([&] {
    topinf::AnnulusView view(complex->skel, inner,
                             outer < 0 ? topinf::AnnulusView::kUnbounded : outer);
    topinf::HomologyH1 h(view);
    *json = copyString(topinf::toJson(h.group()).dump());
    return TOPINF_OK;
  });
}

void topinf_complex_free(topinf_complex* complex) { delete complex; }

topinf_status topinf_run_job(const char* config_json, char** report,
                             char** csv, char** text) {
  if (!config_json) return nullArgument("config_json");
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      throw topinf::PreconditionError(std::string("config is not JSON: ") + e.what());
    }
    topinf::JobResult r = topinf::runJob(topinf::jobConfigFromJson(j));
    if (report) *report = copyString(r.report.dump(2) + "\n");
    if (csv) *csv = copyString(r.csv);
    if (text) *text = copyString(r.text);
    return static_cast<topinf_status>(r.status);
  });
}

}  // extern "C"
