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

#include "topinf/ball.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>

#include "topinf/error.hpp"

namespace topinf {

// ---------------------------------------------------------------- pool

ElementPool::ElementPool(EnginePtr engine) : engine_(std::move(engine)) {}

std::size_t ElementPool::size() const {
  std::shared_lock lock(mutex_);
  return elements_.size();
}

const Element& ElementPool::element(VertexId id) const {
  std::shared_lock lock(mutex_);
  return elements_.at(id);
}

std::optional<VertexId> ElementPool::findLocked(const Element& e,
                                                std::uint64_t h) const {
  auto range = index_.equal_range(h);
  for (auto it = range.first; it != range.second; ++it) {
    if (engine_->same(elements_[it->second], e)) return it->second;
  }
  return std::nullopt;
}

std::optional<VertexId> ElementPool::find(const Element& e) const {
  std::uint64_t h = engine_->hash(e);
  std::shared_lock lock(mutex_);
  return findLocked(e, h);
}

VertexId ElementPool::intern(const Element& e) {
  std::uint64_t h = engine_->hash(e);
  std::unique_lock lock(mutex_);
  if (auto id = findLocked(e, h)) return *id;
  auto id = static_cast<VertexId>(elements_.size());
  elements_.push_back(e);
  index_.emplace(h, id);
  return id;
}

// ---------------------------------------------------------------- ball

std::size_t BallTable::ballCount(int k) const {
  if (k < 0) return 0;
  if (k >= radius_) return size();
  return layerStart_[static_cast<std::size_t>(k) + 1];
}

std::vector<std::size_t> BallTable::ballCounts() const {
  std::vector<std::size_t> out;
  for (int k = 0; k <= radius_; ++k) out.push_back(ballCount(k));
  return out;
}

std::vector<VertexId> BallTable::sphereVertices(int k) const {
  std::vector<VertexId> out;
  if (k < 0 || k > radius_) return out;
  for (std::size_t v = layerStart_[static_cast<std::size_t>(k)];
       v < ballCount(k); ++v) {
    out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

std::optional<VertexId> BallTable::lookup(const Element& e) const {
  auto id = pool_->find(e);
  if (id && *id < size()) return id;
  return std::nullopt;
}

std::optional<int> BallTable::pairDistance(VertexId u, VertexId v) const {
  if (u == v) return 0;
  const Engine& g = engine();
  Element diff = g.multiply(g.inverse(pool_->element(u)), pool_->element(v));
  if (auto id = lookup(diff)) return dist_[*id];
  return std::nullopt;
}

std::vector<VertexId> BallTable::neighborsWithin(VertexId u, int d) const {
  if (d > radius_) {
    throw PreconditionError("neighborhood radius exceeds the ball radius");
  }
  std::vector<VertexId> out;
  if (inBall(u) && dist_[u] + d <= radius_) {
    // Every path of length <= d from u stays inside the ball.
    std::unordered_map<VertexId, int> seen{{u, 0}};
    std::vector<VertexId> frontier{u};
    for (int step = 0; step < d; ++step) {
      std::vector<VertexId> next;
      for (VertexId x : frontier) {
        for (int r = 0; r < letters_; ++r) {
          auto y = static_cast<VertexId>(neighbor(x, r));
          if (seen.emplace(y, step + 1).second) next.push_back(y);
        }
      }
      frontier = std::move(next);
    }
    for (const auto& [v, _] : seen) {
      if (v != u) out.push_back(v);
    }
  } else {
    const Engine& g = engine();
    const Element& eu = pool_->element(u);
    std::size_t local = ballCount(d);
    for (std::size_t s = 1; s < local; ++s) {
      if (auto id = lookup(g.multiply(eu, pool_->element(static_cast<VertexId>(s))))) {
        if (*id != u) out.push_back(*id);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<VertexId>> BallTable::geodesic(VertexId u,
                                                         VertexId v) const {
  const Engine& g = engine();
  Element diff = g.multiply(g.inverse(pool_->element(u)), pool_->element(v));
  auto id = lookup(diff);
  if (!id) return std::nullopt;
  std::vector<VertexId> path{u};
  Element cur = pool_->element(u);
  for (Letter x : witness_[*id]) {
    cur = g.multiplyLetter(cur, x);
    path.push_back(pool_->intern(cur));
  }
  return path;
}

namespace {

std::string hex64(std::uint64_t x) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << x;
  return s.str();
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  }
  if (s.size() > 48) s = s.substr(0, 48);
  return s;
}

}  // namespace

BallTable buildBall(const GroupModel& model, int radius,
                    const BallBudget& budget) {
  if (radius < 0) throw PreconditionError("ball radius must be >= 0");
  if (!model.engine->exact() && !budget.allowHeuristic && !model.heuristic) {
    throw PreconditionError(
        "engine is not exact; refusing to enumerate a ball without the "
        "heuristic override");
  }
  BallTable t;
  t.pool_ = std::make_shared<ElementPool>(model.engine);
  t.radius_ = radius;
  t.letters_ = 2 * model.engine->rank();
  t.modelName_ = model.name;
  t.fingerprint_ = model.presentation.fingerprint();
  t.heuristic_ = !model.engine->exact();
  const Engine& g = *model.engine;

  t.pool_->intern(g.identity());
  t.dist_.push_back(0);
  t.witness_.push_back({});
  t.layerStart_ = {0, 1};
  int completed = 0;
  for (std::size_t v = 0; v < t.dist_.size(); ++v) {
    int dv = t.dist_[v];
    if (dv >= radius) break;
    for (int r = 0; r < t.letters_; ++r) {
      Letter x = letterFromRank(r);
      Element next = g.multiplyLetter(t.pool_->element(static_cast<VertexId>(v)), x);
      if (t.pool_->find(next)) continue;
      if (t.dist_.size() >= budget.maxVertices) {
        throw BudgetError("ball vertex budget exceeded at radius " +
                          std::to_string(dv + 1) +
                          "; largest completed radius " +
                          std::to_string(completed));
      }
      t.pool_->intern(next);
      t.dist_.push_back(dv + 1);
      Word w = t.witness_[v];
      w.push_back(x);
      t.witness_.push_back(std::move(w));
    }
    if (v + 1 == t.dist_.size() || t.dist_[v + 1] != dv) {
      completed = dv + 1;
    }
  }
  // layer boundaries
  t.layerStart_.assign(static_cast<std::size_t>(radius) + 2, t.dist_.size());
  t.layerStart_[0] = 0;
  for (std::size_t v = t.dist_.size(); v-- > 0;) {
    t.layerStart_[static_cast<std::size_t>(t.dist_[v])] = v;
  }
  for (int k = radius; k >= 0; --k) {
    auto ku = static_cast<std::size_t>(k);
    t.layerStart_[ku] = std::min(t.layerStart_[ku], t.layerStart_[ku + 1]);
  }
  // adjacency
  t.adjacency_.assign(t.dist_.size() * static_cast<std::size_t>(t.letters_), -1);
  for (std::size_t v = 0; v < t.dist_.size(); ++v) {
    for (int r = 0; r < t.letters_; ++r) {
      Element next = g.multiplyLetter(t.pool_->element(static_cast<VertexId>(v)),
                                      letterFromRank(r));
      if (auto id = t.lookup(next)) {
        t.adjacency_[v * static_cast<std::size_t>(t.letters_) +
                     static_cast<std::size_t>(r)] = static_cast<std::int32_t>(*id);
      }
    }
  }
  return t;
}

std::string BallTable::cacheName(const GroupModel& model, int radius) {
  std::uint64_t h = fnv1a(model.engine->describe(),
                          model.presentation.fingerprint());
  return "ball-" + sanitize(model.name) + "-" + hex64(h) + "-r" +
         std::to_string(radius) + ".txt";
}

void BallTable::save(const std::string& path) const {
  std::ostringstream body;
  body << "topinf-ball 1\n";
  body << "engine " << engine().describe() << '\n';
  body << "presentation " << hex64(fingerprint_) << '\n';
  body << "radius " << radius_ << '\n';
  body << "letters " << letters_ << '\n';
  body << "vertices " << size() << '\n';
  for (std::size_t v = 0; v < size(); ++v) {
    body << dist_[v] << ' ';
    if (witness_[v].empty()) body << '.';
    for (std::size_t i = 0; i < witness_[v].size(); ++i) {
      body << (i ? "," : "") << witness_[v][i];
    }
    for (int r = 0; r < letters_; ++r) {
      body << ' ' << neighbor(static_cast<VertexId>(v), r);
    }
    body << '\n';
  }
  std::string text = body.str();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write ball cache '" + path + "'");
  out << text << "checksum " << hex64(fnv1a(text)) << '\n';
  if (!out) throw IoError("failed writing ball cache '" + path + "'");
}

BallTable BallTable::load(const GroupModel& model, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read ball cache '" + path + "'");
  std::string all((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  auto pos = all.rfind("checksum ");
  if (pos == std::string::npos) throw IoError("ball cache has no checksum");
  std::string text = all.substr(0, pos);
  std::string sum = all.substr(pos + 9);
  while (!sum.empty() && (sum.back() == '\n' || sum.back() == '\r')) sum.pop_back();
  if (sum != hex64(fnv1a(text))) throw IoError("ball cache checksum mismatch");

  std::istringstream s(text);
  std::string tag, line;
  int version = 0;
  s >> tag >> version;
  if (tag != "topinf-ball" || version != 1) {
    throw IoError("unsupported ball cache version");
  }
  std::getline(s, line);
  std::getline(s, line);
  if (line != "engine " + model.engine->describe()) {
    throw IoError("ball cache belongs to a different engine");
  }
  std::string key, fp;
  s >> key >> fp;
  if (fp != hex64(model.presentation.fingerprint())) {
    throw IoError("ball cache belongs to a different presentation");
  }
  BallTable t;
  std::size_t n = 0;
  s >> key >> t.radius_ >> key >> t.letters_ >> key >> n;
  if (!s || t.letters_ != 2 * model.engine->rank()) {
    throw IoError("malformed ball cache header");
  }
  t.pool_ = std::make_shared<ElementPool>(model.engine);
  t.modelName_ = model.name;
  t.fingerprint_ = model.presentation.fingerprint();
  t.heuristic_ = !model.engine->exact();
  t.dist_.resize(n);
  t.witness_.resize(n);
  t.adjacency_.resize(n * static_cast<std::size_t>(t.letters_));
  for (std::size_t v = 0; v < n; ++v) {
    std::string w;
    s >> t.dist_[v] >> w;
    if (w != ".") {
      std::stringstream ws(w);
      std::string item;
      while (std::getline(ws, item, ',')) {
        t.witness_[v].push_back(static_cast<Letter>(std::stoi(item)));
      }
    }
    for (int r = 0; r < t.letters_; ++r) {
      s >> t.adjacency_[v * static_cast<std::size_t>(t.letters_) +
                        static_cast<std::size_t>(r)];
    }
    if (!s) throw IoError("truncated ball cache");
    if (t.pool_->intern(model.engine->evaluate(t.witness_[v])) != v) {
      throw IoError("ball cache vertex order is inconsistent");
    }
  }
  t.layerStart_.assign(static_cast<std::size_t>(t.radius_) + 2, n);
  t.layerStart_[0] = 0;
  for (std::size_t v = n; v-- > 0;) {
    t.layerStart_[static_cast<std::size_t>(t.dist_[v])] = v;
  }
  for (int k = t.radius_; k >= 0; --k) {
    auto ku = static_cast<std::size_t>(k);
    t.layerStart_[ku] = std::min(t.layerStart_[ku], t.layerStart_[ku + 1]);
  }
  return t;
}

BallTable buildBallCached(const GroupModel& model, int radius,
                          const std::string& cacheDir,
                          const BallBudget& budget) {
  namespace fs = std::filesystem;
  fs::create_directories(cacheDir);
  fs::path path = fs::path(cacheDir) / BallTable::cacheName(model, radius);
  if (fs::exists(path)) {
    try {
      return BallTable::load(model, path.string());
    } catch (const IoError&) {
      // stale or corrupt entry: rebuild below
    }
  }
  BallTable t = buildBall(model, radius, budget);
  t.save(path.string());
  return t;
}

}  // namespace topinf
