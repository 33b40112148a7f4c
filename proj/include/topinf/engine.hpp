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

#ifndef TOPINF_ENGINE_HPP
#define TOPINF_ENGINE_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "topinf/word.hpp"

namespace topinf {

/// Engine-specific encoding of a group element: a coordinate vector for the
/// matrix and abelian models, a reduced word for the word-based ones.
struct Element {
  std::vector<std::int64_t> data;
  friend bool operator==(const Element&, const Element&) = default;
};

/// Opaque, deterministic byte string; equal keys iff equal elements.
using CanonicalKey = std::string;

enum class EngineKind {
  FreeAbelian,
  FreeGroup,
  Heisenberg,
  SolLattice,
  SurfaceGroup,
  DirectProductWithZ2,
  Rewriting,
};

std::string toString(EngineKind kind);

/// Decides equality of group elements for one presentation. Engines are
/// immutable after construction and safe to share between threads.
class Engine {
 public:
  virtual ~Engine() = default;

  virtual EngineKind kind() const = 0;
  /// Stable descriptor, e.g. "free-abelian(3)"; part of ball cache keys.
  virtual std::string describe() const = 0;
  virtual int rank() const = 0;
  /// False for a rewriting engine whose completion did not finish.
  virtual bool exact() const { return true; }

  virtual Element identity() const = 0;
  virtual Element multiplyLetter(const Element& e, Letter x) const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element inverse(const Element& e) const = 0;

  /// True when equal elements always carry identical data. Engines that
  /// answer false (surface groups) provide an invariant hash and an
  /// equality test instead.
  virtual bool uniqueRepresentation() const { return true; }
  virtual std::uint64_t hash(const Element& e) const;
  virtual bool same(const Element& a, const Element& b) const {
    return a == b;
  }

  Element evaluate(std::span<const Letter> w) const;
  Element letterElement(Letter x) const {
    return multiplyLetter(identity(), x);
  }
  bool equal(std::span<const Letter> u, std::span<const Letter> v) const {
    return same(evaluate(u), evaluate(v));
  }
  /// Canonical key of the element a word represents.
  virtual CanonicalKey canonical(std::span<const Letter> w) const;
  /// Canonical key of an element (for unique-representation engines the
  /// encoded data).
  virtual CanonicalKey key(const Element& e) const;
};

using EnginePtr = std::shared_ptr<const Engine>;

std::uint64_t hashData(std::span<const std::int64_t> data,
                       std::uint64_t seed = 0x9e3779b97f4a7c15ull);
CanonicalKey encodeData(std::span<const std::int64_t> data);

using Matrix2 = std::array<std::int64_t, 4>;  // row-major [[m0,m1],[m2,m3]]

/// Z^n; generator i acts as the given integer vector (default: the standard
/// basis, so Z^n with its usual generators).
EnginePtr makeFreeAbelian(int n);
EnginePtr makeFreeAbelian(int dimension,
                          std::vector<std::vector<std::int64_t>> generators);
EnginePtr makeFreeGroup(int n);
/// Integer unitriangular 3x3 matrices with generators x=(1,0,0), y=(0,1,0).
EnginePtr makeHeisenberg();
/// Z^2 x|_A Z with generators a, b (base) and t (stable letter); A must be
/// integral with determinant 1 and trace > 2.
EnginePtr makeSolLattice(const Matrix2& a);
/// Orientable surface group of the given genus (>= 2), generators
/// a1 b1 ... ag bg with the product of commutators as relator.
EnginePtr makeSurfaceGroup(int genus);
/// inner x Z^2; the two extra generators come after inner's.
EnginePtr makeDirectProductWithZ2(EnginePtr inner);

/// Dehn's algorithm for a single cyclically reduced relator satisfying the
/// small cancellation condition C'(1/6). Used by the surface engine and
/// exposed for tests.
class DehnReducer {
 public:
  explicit DehnReducer(const Word& relator);
  /// Appends letters to an already reduced word, reducing as it goes.
  void append(Word& reduced, std::span<const Letter> letters) const;
  Word reduce(std::span<const Letter> w) const;
  int relatorLength() const { return relatorLength_; }

 private:
  struct Rule {
    Word lhs;
    Word rhs;
  };
  std::vector<Rule> rules_;  // sorted by lhs for binary search
  int relatorLength_ = 0;
  int minLhs_ = 0;
  const Rule* find(std::span<const Letter> suffix) const;
};

}  // namespace topinf

#endif  // TOPINF_ENGINE_HPP
