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

#include "topinf/rewriting.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "topinf/error.hpp"

namespace topinf {

RewriteSystem::RewriteSystem(int rank, std::vector<int> generatorOrder)
    : rank_(rank) {
  if (generatorOrder.empty()) {
    generatorOrder.resize(static_cast<std::size_t>(rank));
    std::iota(generatorOrder.begin(), generatorOrder.end(), 0);
  }
  if (static_cast<int>(generatorOrder.size()) != rank) {
    throw PreconditionError("generator order has wrong length");
  }
  // generatorOrder lists generators from smallest to largest.
  order_.assign(static_cast<std::size_t>(rank), -1);
  for (std::size_t pos = 0; pos < generatorOrder.size(); ++pos) {
    int g = generatorOrder[pos];
    if (g < 0 || g >= rank || order_[static_cast<std::size_t>(g)] != -1) {
      throw PreconditionError("generator order is not a permutation");
    }
    order_[static_cast<std::size_t>(g)] = static_cast<int>(pos);
  }
}

int RewriteSystem::letterKey(Letter x) const {
  return 2 * order_[static_cast<std::size_t>(generatorOf(x))] +
         (isInverse(x) ? 1 : 0);
}

int RewriteSystem::compare(const Word& u, const Word& v) const {
  if (u.size() != v.size()) return u.size() < v.size() ? -1 : 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    int a = letterKey(u[i]), b = letterKey(v[i]);
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

void RewriteSystem::addRule(Word lhs, Word rhs) {
  if (compare(lhs, rhs) <= 0) {
    throw PreconditionError("rule is not shortlex-decreasing");
  }
  maxLhs_ = std::max(maxLhs_, lhs.size());
  index_[lhs] = rules_.size();
  rules_.push_back({std::move(lhs), std::move(rhs)});
}

void RewriteSystem::clear() {
  rules_.clear();
  index_.clear();
  maxLhs_ = 0;
  confluent_ = false;
}

void RewriteSystem::reindex() {
  index_.clear();
  maxLhs_ = 0;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    index_[rules_[i].lhs] = i;
    maxLhs_ = std::max(maxLhs_, rules_[i].lhs.size());
  }
}

void RewriteSystem::append(Word& w, std::span<const Letter> letters) const {
  std::vector<Letter> pending(letters.rbegin(), letters.rend());
  Word key;
  while (!pending.empty()) {
    w.push_back(pending.back());
    pending.pop_back();
    std::size_t upto = std::min(maxLhs_, w.size());
    for (std::size_t j = 1; j <= upto; ++j) {
      key.assign(w.end() - static_cast<std::ptrdiff_t>(j), w.end());
      auto it = index_.find(key);
      if (it != index_.end()) {
        const Rule& r = rules_[it->second];
        w.resize(w.size() - j);
        pending.insert(pending.end(), r.rhs.rbegin(), r.rhs.rend());
        break;
      }
    }
  }
}

Word RewriteSystem::rewrite(std::span<const Letter> w) const {
  Word out;
  append(out, w);
  return out;
}

std::vector<std::pair<Word, Word>> RewriteSystem::unresolvedCriticalPairs()
    const {
  std::vector<std::pair<Word, Word>> out;
  for (const Rule& r1 : rules_) {
    for (const Rule& r2 : rules_) {
      const std::size_t n1 = r1.lhs.size(), n2 = r2.lhs.size();
      // overlaps: suffix of lhs1 == prefix of lhs2
      for (std::size_t k = 1; k < n1 && k <= n2; ++k) {
        if (!std::equal(r1.lhs.end() - static_cast<std::ptrdiff_t>(k),
                        r1.lhs.end(), r2.lhs.begin())) {
          continue;
        }
        Word a = r1.rhs;
        a.insert(a.end(), r2.lhs.begin() + static_cast<std::ptrdiff_t>(k),
                 r2.lhs.end());
        Word b(r1.lhs.begin(), r1.lhs.end() - static_cast<std::ptrdiff_t>(k));
        b.insert(b.end(), r2.rhs.begin(), r2.rhs.end());
        Word na = rewrite(a), nb = rewrite(b);
        if (na != nb) out.emplace_back(std::move(na), std::move(nb));
      }
      // containment: lhs2 inside lhs1 (only when r1 != r2)
      if (&r1 != &r2 && n2 <= n1) {
        auto it = std::search(r1.lhs.begin(), r1.lhs.end(), r2.lhs.begin(),
                              r2.lhs.end());
        if (it != r1.lhs.end()) {
          Word b(r1.lhs.begin(), it);
          b.insert(b.end(), r2.rhs.begin(), r2.rhs.end());
          b.insert(b.end(), it + static_cast<std::ptrdiff_t>(n2), r1.lhs.end());
          Word na = rewrite(r1.rhs), nb = rewrite(b);
          if (na != nb) out.emplace_back(std::move(na), std::move(nb));
        }
      }
    }
  }
  return out;
}

std::string RewriteSystem::toText(const std::vector<std::string>& names) const {
  std::ostringstream out;
  for (const Rule& r : rules_) {
    out << formatWord(r.lhs, names) << " -> " << formatWord(r.rhs, names)
        << '\n';
  }
  return out.str();
}

RewriteSystem RewriteSystem::fromText(const std::string& text,
                                      const Presentation& p) {
  RewriteSystem rs(p.rank(), {});
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto arrow = line.find("->");
    if (arrow == std::string::npos) {
      throw ParseError(lineNo, 1, "expected 'lhs -> rhs'");
    }
    auto side = [&](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
      return s == "1" ? Word{} : p.parseWord(s);
    };
    rs.addRule(side(line.substr(0, arrow)), side(line.substr(arrow + 2)));
  }
  rs.setConfluent(rs.unresolvedCriticalPairs().empty());
  return rs;
}

// ---------------------------------------------------------------- completion

namespace {

class Completion {
 public:
  Completion(RewriteSystem& rs, const CompletionBudget& budget)
      : rs_(rs), budget_(budget) {}

  bool run(std::deque<std::pair<Word, Word>> equations) {
    pending_ = std::move(equations);
    for (;;) {
      while (!pending_.empty()) {
        auto [u, v] = std::move(pending_.front());
        pending_.pop_front();
        if (!process(std::move(u), std::move(v))) return false;
      }
      auto open = rs_.unresolvedCriticalPairs();
      if (open.empty()) return true;
      for (auto& p : open) pending_.push_back(std::move(p));
    }
  }

 private:
  bool process(Word u, Word v) {
    u = rs_.rewrite(u);
    v = rs_.rewrite(v);
    int c = rs_.compare(u, v);
    if (c == 0) return true;
    if (c < 0) std::swap(u, v);
    if (u.size() > budget_.maxRuleLength ||
        rs_.rules().size() >= budget_.maxRules ||
        ++pairsSeen_ > budget_.maxPairs) {
      return false;
    }
    // Remove rules made reducible by the new one and requeue them.
    std::vector<RewriteSystem::Rule> keep;
    std::vector<RewriteSystem::Rule> old = rs_.rules();
    RewriteSystem single(rs_.rank(), orderList());
    single.addRule(u, v);
    for (auto& r : old) {
      if (single.rewrite(r.lhs) != r.lhs) {
        pending_.emplace_back(std::move(r.lhs), std::move(r.rhs));
      } else {
        keep.push_back(std::move(r));
      }
    }
    rs_.clear();
    for (auto& r : keep) rs_.addRule(std::move(r.lhs), std::move(r.rhs));
    rs_.addRule(u, v);
    // Right-hand sides stay normal.
    std::vector<RewriteSystem::Rule> current = rs_.rules();
    rs_.clear();
    for (auto& r : current) rs_.addRule(r.lhs, r.rhs);
    for (std::size_t i = 0; i < current.size(); ++i) {
      Word nr = rs_.rewrite(current[i].rhs);
      current[i].rhs = std::move(nr);
    }
    rs_.clear();
    for (auto& r : current) rs_.addRule(std::move(r.lhs), std::move(r.rhs));
    // Critical pairs with the new rule.
    const RewriteSystem::Rule added = rs_.rules().back();
    for (const auto& r : rs_.rules()) {
      overlap(added, r);
      overlap(r, added);
    }
    return true;
  }

  std::vector<int> orderList() const {
    std::vector<int> list(rs_.generatorOrder().size());
    for (std::size_t g = 0; g < list.size(); ++g) {
      list[static_cast<std::size_t>(rs_.generatorOrder()[g])] =
          static_cast<int>(g);
    }
    return list;
  }

  void overlap(const RewriteSystem::Rule& r1, const RewriteSystem::Rule& r2) {
    const std::size_t n1 = r1.lhs.size(), n2 = r2.lhs.size();
    for (std::size_t k = 1; k < n1 && k <= n2; ++k) {
      if (!std::equal(r1.lhs.end() - static_cast<std::ptrdiff_t>(k),
                      r1.lhs.end(), r2.lhs.begin())) {
        continue;
      }
      Word a = r1.rhs;
      a.insert(a.end(), r2.lhs.begin() + static_cast<std::ptrdiff_t>(k),
               r2.lhs.end());
      Word b(r1.lhs.begin(), r1.lhs.end() - static_cast<std::ptrdiff_t>(k));
      b.insert(b.end(), r2.rhs.begin(), r2.rhs.end());
      pending_.emplace_back(std::move(a), std::move(b));
    }
  }

  RewriteSystem& rs_;
  const CompletionBudget& budget_;
  std::deque<std::pair<Word, Word>> pending_;
  std::size_t pairsSeen_ = 0;
};

class RewritingEngine final : public Engine {
 public:
  explicit RewritingEngine(RewriteSystem rs) : rs_(std::move(rs)) {}
  EngineKind kind() const override { return EngineKind::Rewriting; }
  std::string describe() const override {
    std::string s = "rewriting(" + std::to_string(rs_.rank()) + ";";
    for (const auto& r : rs_.rules()) {
      for (Letter x : r.lhs) s += std::to_string(x) + ",";
      s += ">";
      for (Letter x : r.rhs) s += std::to_string(x) + ",";
      s += ";";
    }
    return s + (rs_.confluent() ? "confluent)" : "partial)");
  }
  int rank() const override { return rs_.rank(); }
  bool exact() const override { return rs_.confluent(); }
  Element identity() const override { return Element{}; }
  Element multiplyLetter(const Element& e, Letter x) const override {
    Word w(e.data.begin(), e.data.end());
    Letter l[1] = {x};
    rs_.append(w, l);
    return Element{std::vector<std::int64_t>(w.begin(), w.end())};
  }
  Element multiply(const Element& a, const Element& b) const override {
    Word w(a.data.begin(), a.data.end());
    Word v(b.data.begin(), b.data.end());
    rs_.append(w, v);
    return Element{std::vector<std::int64_t>(w.begin(), w.end())};
  }
  Element inverse(const Element& e) const override {
    Word w(e.data.begin(), e.data.end());
    Word v = rs_.rewrite(topinf::inverse(w));
    return Element{std::vector<std::int64_t>(v.begin(), v.end())};
  }
  const RewriteSystem& system() const { return rs_; }

 private:
  RewriteSystem rs_;
};

}  // namespace

RewriteSystem knuthBendix(const Presentation& p, const CompletionBudget& budget,
                          std::vector<int> generatorOrder) {
  RewriteSystem rs(p.rank(), std::move(generatorOrder));
  std::deque<std::pair<Word, Word>> eqs;
  for (int g = 0; g < p.rank(); ++g) {
    eqs.push_back({Word{letterOf(g), letterOf(g, true)}, Word{}});
    eqs.push_back({Word{letterOf(g, true), letterOf(g)}, Word{}});
  }
  for (const Word& r : p.relators()) eqs.push_back({r, Word{}});
  Completion c(rs, budget);
  bool done = c.run(std::move(eqs));
  rs.setConfluent(done);
  return rs;
}

EnginePtr makeRewriting(RewriteSystem system) {
  return std::make_shared<RewritingEngine>(std::move(system));
}

}  // namespace topinf
