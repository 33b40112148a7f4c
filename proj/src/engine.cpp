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

#include "topinf/engine.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>

#include "topinf/error.hpp"

namespace topinf {

namespace {

std::int64_t checkedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw BudgetError("integer overflow in group arithmetic");
  }
  return r;
}

std::int64_t checkedMul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw BudgetError("integer overflow in group arithmetic");
  }
  return r;
}

std::int64_t checkedSub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw BudgetError("integer overflow in group arithmetic");
  }
  return r;
}

Word toWord(const Element& e) { return Word(e.data.begin(), e.data.end()); }
Element fromWord(const Word& w) {
  return Element{std::vector<std::int64_t>(w.begin(), w.end())};
}

// ---------------------------------------------------------------- Z^n

class FreeAbelianEngine final : public Engine {
 public:
  FreeAbelianEngine(int dimension,
                    std::vector<std::vector<std::int64_t>> generators)
      : dimension_(dimension), generators_(std::move(generators)) {
    for (const auto& g : generators_) {
      if (static_cast<int>(g.size()) != dimension_) {
        throw PreconditionError("generator vector has wrong dimension");
      }
    }
  }
  EngineKind kind() const override { return EngineKind::FreeAbelian; }
  std::string describe() const override {
    std::string s = "free-abelian(" + std::to_string(dimension_);
    bool standard = static_cast<int>(generators_.size()) == dimension_;
    for (int i = 0; standard && i < dimension_; ++i) {
      for (int j = 0; j < dimension_; ++j) {
        if (generators_[i][j] != (i == j ? 1 : 0)) standard = false;
      }
    }
    if (!standard) {
      s += ";";
      for (const auto& g : generators_) {
        s += "[";
        for (std::size_t j = 0; j < g.size(); ++j) {
          s += (j ? "," : "") + std::to_string(g[j]);
        }
        s += "]";
      }
    }
    return s + ")";
  }
  int rank() const override { return static_cast<int>(generators_.size()); }
  Element identity() const override {
    return Element{std::vector<std::int64_t>(dimension_, 0)};
  }
  Element multiplyLetter(const Element& e, Letter x) const override {
    Element out = e;
    const auto& g = generators_.at(static_cast<std::size_t>(generatorOf(x)));
    for (int i = 0; i < dimension_; ++i) {
      out.data[i] = isInverse(x) ? checkedSub(out.data[i], g[i])
                                 : checkedAdd(out.data[i], g[i]);
    }
    return out;
  }
  Element multiply(const Element& a, const Element& b) const override {
    Element out = a;
    for (int i = 0; i < dimension_; ++i) {
      out.data[i] = checkedAdd(a.data[i], b.data[i]);
    }
    return out;
  }
  Element inverse(const Element& e) const override {
    Element out = e;
    for (auto& v : out.data) v = checkedSub(0, v);
    return out;
  }

 private:
  int dimension_;
  std::vector<std::vector<std::int64_t>> generators_;
};

// ---------------------------------------------------------------- F_n

class FreeGroupEngine final : public Engine {
 public:
  explicit FreeGroupEngine(int n) : n_(n) {}
  EngineKind kind() const override { return EngineKind::FreeGroup; }
  std::string describe() const override {
    return "free(" + std::to_string(n_) + ")";
  }
  int rank() const override { return n_; }
  Element identity() const override { return Element{}; }
  Element multiplyLetter(const Element& e, Letter x) const override {
    Element out = e;
    if (!out.data.empty() && out.data.back() == -x) {
      out.data.pop_back();
    } else {
      out.data.push_back(x);
    }
    return out;
  }
  Element multiply(const Element& a, const Element& b) const override {
    return fromWord(freeReduce(concat(toWord(a), toWord(b))));
  }
  Element inverse(const Element& e) const override {
    return fromWord(topinf::inverse(toWord(e)));
  }

 private:
  int n_;
};

// ---------------------------------------------------------------- Heisenberg

// (a,b,c) <-> [[1,a,c],[0,1,b],[0,0,1]]
class HeisenbergEngine final : public Engine {
 public:
  EngineKind kind() const override { return EngineKind::Heisenberg; }
  std::string describe() const override { return "heisenberg"; }
  int rank() const override { return 2; }
  Element identity() const override { return Element{{0, 0, 0}}; }
  Element multiplyLetter(const Element& e, Letter x) const override {
    Element gen{{0, 0, 0}};
    gen.data[static_cast<std::size_t>(generatorOf(x))] = 1;
    return multiply(e, isInverse(x) ? inverse(gen) : gen);
  }
  Element multiply(const Element& p, const Element& q) const override {
    const auto& a = p.data;
    const auto& b = q.data;
    return Element{{checkedAdd(a[0], b[0]), checkedAdd(a[1], b[1]),
                    checkedAdd(checkedAdd(a[2], b[2]), checkedMul(a[0], b[1]))}};
  }
  Element inverse(const Element& e) const override {
    const auto& a = e.data;
    return Element{{-a[0], -a[1], checkedSub(checkedMul(a[0], a[1]), a[2])}};
  }
};

// ---------------------------------------------------------------- Sol

Matrix2 mul2(const Matrix2& x, const Matrix2& y) {
  return {checkedAdd(checkedMul(x[0], y[0]), checkedMul(x[1], y[2])),
          checkedAdd(checkedMul(x[0], y[1]), checkedMul(x[1], y[3])),
          checkedAdd(checkedMul(x[2], y[0]), checkedMul(x[3], y[2])),
          checkedAdd(checkedMul(x[2], y[1]), checkedMul(x[3], y[3]))};
}

// (v1, v2, s) with (v,s)(w,t) = (v + A^s w, s + t)
class SolEngine final : public Engine {
 public:
  explicit SolEngine(const Matrix2& a) : a_(a) {
    if (a[0] * a[3] - a[1] * a[2] != 1) {
      throw PreconditionError("Sol matrix must have determinant 1");
    }
    if (a[0] + a[3] <= 2) {
      throw PreconditionError("Sol matrix must have trace > 2");
    }
    inv_ = {a[3], -a[1], -a[2], a[0]};
  }
  EngineKind kind() const override { return EngineKind::SolLattice; }
  std::string describe() const override {
    return "sol([" + std::to_string(a_[0]) + "," + std::to_string(a_[1]) +
           "],[" + std::to_string(a_[2]) + "," + std::to_string(a_[3]) + "])";
  }
  int rank() const override { return 3; }
  Element identity() const override { return Element{{0, 0, 0}}; }
  Element multiplyLetter(const Element& e, Letter x) const override {
    Element gen{{0, 0, 0}};
    gen.data[static_cast<std::size_t>(generatorOf(x))] = 1;
    return multiply(e, isInverse(x) ? inverse(gen) : gen);
  }
  Element multiply(const Element& p, const Element& q) const override {
    Matrix2 m = power(p.data[2]);
    std::int64_t w0 = q.data[0], w1 = q.data[1];
    return Element{
        {checkedAdd(p.data[0], checkedAdd(checkedMul(m[0], w0), checkedMul(m[1], w1))),
         checkedAdd(p.data[1], checkedAdd(checkedMul(m[2], w0), checkedMul(m[3], w1))),
         checkedAdd(p.data[2], q.data[2])}};
  }
  Element inverse(const Element& e) const override {
    // (v,s)^-1 = (-A^-s v, -s)
    Matrix2 m = power(-e.data[2]);
    return Element{
        {-checkedAdd(checkedMul(m[0], e.data[0]), checkedMul(m[1], e.data[1])),
         -checkedAdd(checkedMul(m[2], e.data[0]), checkedMul(m[3], e.data[1])),
         -e.data[2]}};
  }

 private:
  Matrix2 power(std::int64_t s) const {
    Matrix2 base = s < 0 ? inv_ : a_;
    std::uint64_t k = s < 0 ? static_cast<std::uint64_t>(-s)
                            : static_cast<std::uint64_t>(s);
    Matrix2 result{1, 0, 0, 1};
    while (k) {
      if (k & 1) result = mul2(result, base);
      k >>= 1;
      if (k) base = mul2(base, base);
    }
    return result;
  }
  Matrix2 a_;
  Matrix2 inv_;
};

// ---------------------------------------------------------------- surface

// 2x2 matrices mod p for an invariant hash.
constexpr std::uint64_t kPrime = 2147483647ull;
using ModMatrix = std::array<std::uint64_t, 4>;

ModMatrix modMul(const ModMatrix& x, const ModMatrix& y) {
  return {(x[0] * y[0] + x[1] * y[2]) % kPrime,
          (x[0] * y[1] + x[1] * y[3]) % kPrime,
          (x[2] * y[0] + x[3] * y[2]) % kPrime,
          (x[2] * y[1] + x[3] * y[3]) % kPrime};
}

// Inverse of an SL(2) matrix mod p.
ModMatrix modInv(const ModMatrix& x) {
  return {x[3], (kPrime - x[1]) % kPrime, (kPrime - x[2]) % kPrime, x[0]};
}

class SurfaceEngine final : public Engine {
 public:
  explicit SurfaceEngine(int genus) : genus_(genus), dehn_(relator(genus)) {
    // Fixed SL(2, F_p) matrices. The homomorphism sends a1->A, b1->B,
    // a2->B, b2->A and all later generators to the identity, which kills
    // [A,B][B,A] and hence the relator.
    ModMatrix a{2, 1, 1, 1};
    ModMatrix b{1, 3, 0, 1};
    ModMatrix c{5, 2, 2, 1};  // det 1
    b = modMul(c, modMul(b, modInv(c)));
    images_.assign(static_cast<std::size_t>(2 * genus), ModMatrix{1, 0, 0, 1});
    images_[0] = a;
    images_[1] = b;
    images_[2] = b;
    images_[3] = a;
  }
  static Word relator(int genus) {
    if (genus < 2) throw PreconditionError("surface genus must be >= 2");
    Word r;
    for (int i = 0; i < genus; ++i) {
      Letter a = letterOf(2 * i), b = letterOf(2 * i + 1);
      r.insert(r.end(), {a, b, -a, -b});
    }
    return r;
  }
  EngineKind kind() const override { return EngineKind::SurfaceGroup; }
  std::string describe() const override {
    return "surface(" + std::to_string(genus_) + ")";
  }
  int rank() const override { return 2 * genus_; }
  Element identity() const override { return Element{}; }
  Element multiplyLetter(const Element& e, Letter x) const override {
    Word w = toWord(e);
    Letter l[1] = {x};
    dehn_.append(w, l);
    return fromWord(w);
  }
  Element multiply(const Element& a, const Element& b) const override {
    Word w = toWord(a);
    Word v = toWord(b);
    dehn_.append(w, v);
    return fromWord(w);
  }
  Element inverse(const Element& e) const override {
    return fromWord(topinf::inverse(toWord(e)));
  }
  bool uniqueRepresentation() const override { return false; }
  std::uint64_t hash(const Element& e) const override {
    std::vector<std::int64_t> ab(static_cast<std::size_t>(2 * genus_), 0);
    ModMatrix m{1, 0, 0, 1};
    for (auto x : e.data) {
      auto g = static_cast<std::size_t>(generatorOf(static_cast<Letter>(x)));
      ab[g] += x > 0 ? 1 : -1;
      m = modMul(m, x > 0 ? images_[g] : modInv(images_[g]));
    }
    std::vector<std::int64_t> all(ab);
    for (auto v : m) all.push_back(static_cast<std::int64_t>(v));
    return hashData(all);
  }
  bool same(const Element& a, const Element& b) const override {
    if (a == b) return true;
    Word w = topinf::inverse(toWord(a));
    Word v = toWord(b);
    dehn_.append(w, v);
    return w.empty();
  }
  CanonicalKey canonical(std::span<const Letter> w) const override {
    return key(evaluate(w));
  }
  // Shortlex-least geodesic, found by breadth-first enumeration with the
  // letters tried in rank order (first discovery is shortlex-least).
  CanonicalKey key(const Element& target) const override {
    Word bound = toWord(target);
    if (bound.empty()) return encodeData({});
    struct Node {
      Element e;
      Word w;
    };
    std::unordered_multimap<std::uint64_t, std::size_t> index;
    std::vector<Node> nodes{{identity(), {}}};
    index.emplace(hash(nodes[0].e), 0);
    std::size_t layerStart = 0;
    const std::uint64_t targetHash = hash(target);
    for (std::size_t radius = 0; radius < bound.size(); ++radius) {
      std::size_t layerEnd = nodes.size();
      for (std::size_t i = layerStart; i < layerEnd; ++i) {
        for (int r = 0; r < 2 * rank(); ++r) {
          Letter x = letterFromRank(r);
          Element next = multiplyLetter(nodes[i].e, x);
          std::uint64_t h = hash(next);
          bool seen = false;
          auto range = index.equal_range(h);
          for (auto it = range.first; it != range.second && !seen; ++it) {
            seen = same(nodes[it->second].e, next);
          }
          if (seen) continue;
          Word w = nodes[i].w;
          w.push_back(x);
          if (h == targetHash && same(next, target)) {
            return encodeData(Element{std::vector<std::int64_t>(w.begin(), w.end())}.data);
          }
          index.emplace(h, nodes.size());
          nodes.push_back({std::move(next), std::move(w)});
        }
      }
      layerStart = layerEnd;
    }
    // The Dehn-reduced word itself is a geodesic of its length.
    return encodeData(target.data);
  }

 private:
  int genus_;
  DehnReducer dehn_;
  std::vector<ModMatrix> images_;
};

// ---------------------------------------------------------------- G x Z^2

// data = [u, v, inner...]
class ProductZ2Engine final : public Engine {
 public:
  explicit ProductZ2Engine(EnginePtr inner) : inner_(std::move(inner)) {}
  EngineKind kind() const override { return EngineKind::DirectProductWithZ2; }
  std::string describe() const override {
    return "product-z2(" + inner_->describe() + ")";
  }
  int rank() const override { return inner_->rank() + 2; }
  bool exact() const override { return inner_->exact(); }
  Element identity() const override { return join(0, 0, inner_->identity()); }
  Element multiplyLetter(const Element& e, Letter x) const override {
    int g = generatorOf(x);
    if (g < inner_->rank()) {
      return join(e.data[0], e.data[1], inner_->multiplyLetter(innerOf(e), x));
    }
    Element out = e;
    std::size_t slot = static_cast<std::size_t>(g - inner_->rank());
    out.data[slot] = checkedAdd(out.data[slot], isInverse(x) ? -1 : 1);
    return out;
  }
  Element multiply(const Element& a, const Element& b) const override {
    return join(checkedAdd(a.data[0], b.data[0]),
                checkedAdd(a.data[1], b.data[1]),
                inner_->multiply(innerOf(a), innerOf(b)));
  }
  Element inverse(const Element& e) const override {
    return join(-e.data[0], -e.data[1], inner_->inverse(innerOf(e)));
  }
  bool uniqueRepresentation() const override {
    return inner_->uniqueRepresentation();
  }
  std::uint64_t hash(const Element& e) const override {
    std::int64_t uv[2] = {e.data[0], e.data[1]};
    return hashData(uv, inner_->hash(innerOf(e)));
  }
  bool same(const Element& a, const Element& b) const override {
    return a.data[0] == b.data[0] && a.data[1] == b.data[1] &&
           inner_->same(innerOf(a), innerOf(b));
  }
  CanonicalKey key(const Element& e) const override {
    std::int64_t uv[2] = {e.data[0], e.data[1]};
    return encodeData(uv) + inner_->key(innerOf(e));
  }

 private:
  static Element innerOf(const Element& e) {
    return Element{std::vector<std::int64_t>(e.data.begin() + 2, e.data.end())};
  }
  static Element join(std::int64_t u, std::int64_t v, const Element& inner) {
    Element out{{u, v}};
    out.data.insert(out.data.end(), inner.data.begin(), inner.data.end());
    return out;
  }
  EnginePtr inner_;
};

}  // namespace

std::string toString(EngineKind kind) {
  switch (kind) {
    case EngineKind::FreeAbelian: return "FreeAbelian";
    case EngineKind::FreeGroup: return "FreeGroup";
    case EngineKind::Heisenberg: return "Heisenberg";
    case EngineKind::SolLattice: return "SolLattice";
    case EngineKind::SurfaceGroup: return "SurfaceGroup";
    case EngineKind::DirectProductWithZ2: return "DirectProductWithZ2";
    case EngineKind::Rewriting: return "Rewriting";
  }
  return "?";
}

std::uint64_t hashData(std::span<const std::int64_t> data, std::uint64_t seed) {
  std::uint64_t h = seed ^ (data.size() * 0x100000001b3ull);
  for (std::int64_t v : data) {
    std::uint64_t x = static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull +
                      (h << 6) + (h >> 2);
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    h ^= x;
  }
  return h;
}

CanonicalKey encodeData(std::span<const std::int64_t> data) {
  CanonicalKey out(data.size() * 8, '\0');
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto u = static_cast<std::uint64_t>(data[i]);
    for (int b = 0; b < 8; ++b) {
      out[i * 8 + static_cast<std::size_t>(b)] =
          static_cast<char>((u >> (8 * b)) & 0xff);
    }
  }
  return out;
}

std::uint64_t Engine::hash(const Element& e) const { return hashData(e.data); }

Element Engine::evaluate(std::span<const Letter> w) const {
  Element e = identity();
  for (Letter x : w) e = multiplyLetter(e, x);
  return e;
}

CanonicalKey Engine::canonical(std::span<const Letter> w) const {
  return key(evaluate(w));
}

CanonicalKey Engine::key(const Element& e) const { return encodeData(e.data); }

EnginePtr makeFreeAbelian(int n) {
  if (n < 1) throw PreconditionError("free abelian rank must be >= 1");
  std::vector<std::vector<std::int64_t>> gens(static_cast<std::size_t>(n),
                                              std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) gens[i][i] = 1;
  return std::make_shared<FreeAbelianEngine>(n, std::move(gens));
}

EnginePtr makeFreeAbelian(int dimension,
                          std::vector<std::vector<std::int64_t>> generators) {
  if (dimension < 1 || generators.empty()) {
    throw PreconditionError("free abelian engine needs generators");
  }
  return std::make_shared<FreeAbelianEngine>(dimension, std::move(generators));
}

EnginePtr makeFreeGroup(int n) {
  if (n < 1) throw PreconditionError("free group rank must be >= 1");
  return std::make_shared<FreeGroupEngine>(n);
}

EnginePtr makeHeisenberg() { return std::make_shared<HeisenbergEngine>(); }

EnginePtr makeSolLattice(const Matrix2& a) {
  return std::make_shared<SolEngine>(a);
}

EnginePtr makeSurfaceGroup(int genus) {
  if (genus < 2) throw PreconditionError("surface genus must be >= 2");
  return std::make_shared<SurfaceEngine>(genus);
}

EnginePtr makeDirectProductWithZ2(EnginePtr inner) {
  if (!inner) throw PreconditionError("missing inner engine");
  return std::make_shared<ProductZ2Engine>(std::move(inner));
}

// ---------------------------------------------------------------- Dehn

DehnReducer::DehnReducer(const Word& relator) {
  Word r = cyclicReduce(relator);
  relatorLength_ = static_cast<int>(r.size());
  if (r.empty()) throw PreconditionError("empty relator");
  const std::size_t n = r.size();
  minLhs_ = relatorLength_ / 2 + 1;
  for (const Word& base : {r, topinf::inverse(r)}) {
    for (std::size_t rot = 0; rot < n; ++rot) {
      Word rho(n);
      for (std::size_t i = 0; i < n; ++i) rho[i] = base[(rot + i) % n];
      for (std::size_t j = static_cast<std::size_t>(minLhs_); j <= n; ++j) {
        Word lhs(rho.begin(), rho.begin() + static_cast<std::ptrdiff_t>(j));
        Word rest(rho.begin() + static_cast<std::ptrdiff_t>(j), rho.end());
        rules_.push_back({std::move(lhs), topinf::inverse(rest)});
      }
    }
  }
  std::sort(rules_.begin(), rules_.end(),
            [](const Rule& a, const Rule& b) { return a.lhs < b.lhs; });
  rules_.erase(std::unique(rules_.begin(), rules_.end(),
                           [](const Rule& a, const Rule& b) {
                             return a.lhs == b.lhs;
                           }),
               rules_.end());
}

const DehnReducer::Rule* DehnReducer::find(
    std::span<const Letter> suffix) const {
  Word key(suffix.begin(), suffix.end());
  auto it = std::lower_bound(
      rules_.begin(), rules_.end(), key,
      [](const Rule& r, const Word& k) { return r.lhs < k; });
  if (it != rules_.end() && it->lhs == key) return &*it;
  return nullptr;
}

void DehnReducer::append(Word& reduced, std::span<const Letter> letters) const {
  std::vector<Letter> pending(letters.rbegin(), letters.rend());
  while (!pending.empty()) {
    Letter x = pending.back();
    pending.pop_back();
    if (!reduced.empty() && reduced.back() == -x) {
      reduced.pop_back();
      continue;
    }
    reduced.push_back(x);
    // Longest match first; matches can only end at the new letter.
    for (int j = std::min<int>(relatorLength_, static_cast<int>(reduced.size()));
         j >= minLhs_; --j) {
      std::span<const Letter> tail(reduced.data() + reduced.size() - j,
                                   static_cast<std::size_t>(j));
      if (const Rule* rule = find(tail)) {
        reduced.resize(reduced.size() - static_cast<std::size_t>(j));
        pending.insert(pending.end(), rule->rhs.rbegin(), rule->rhs.rend());
        break;
      }
    }
  }
}

Word DehnReducer::reduce(std::span<const Letter> w) const {
  Word out;
  append(out, w);
  return out;
}

}  // namespace topinf
