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

#include "topinf/families.hpp"

#include <cctype>
#include <sstream>

#include "topinf/error.hpp"

namespace topinf {

namespace {

std::vector<std::string> defaultNames(int n) {
  static const char* letters[] = {"a", "b", "c", "d", "e", "f"};
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    names.push_back(n <= 6 ? std::string(letters[i])
                           : "x" + std::to_string(i + 1));
  }
  return names;
}

Word commutator(Letter x, Letter y) { return {x, y, -x, -y}; }

Word power(Letter x, std::int64_t k) {
  return Word(static_cast<std::size_t>(k < 0 ? -k : k), k < 0 ? -x : x);
}

std::vector<Word> allCommutators(int from, int to) {
  std::vector<Word> out;
  for (int i = from; i < to; ++i) {
    for (int j = i + 1; j < to; ++j) {
      out.push_back(commutator(letterOf(i), letterOf(j)));
    }
  }
  return out;
}

// Parses the integer suffix of a family name, e.g. "z3" -> 3.
bool suffixNumber(const std::string& name, const std::string& prefix,
                  int& out) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix)) {
    return false;
  }
  std::string rest = name.substr(prefix.size());
  for (char c : rest) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  if (rest.size() > 3) return false;
  out = std::stoi(rest);
  return true;
}

GroupModel solModel(const Matrix2& a, const std::string& name) {
  Letter A = letterOf(0), B = letterOf(1), t = letterOf(2);
  std::vector<Word> rels{commutator(A, B)};
  // t a t^-1 = a^{a00} b^{a10},  t b t^-1 = a^{a01} b^{a11}
  for (int col = 0; col < 2; ++col) {
    Word r{t, col == 0 ? A : B, -t};
    Word img = power(A, a[static_cast<std::size_t>(col)]);
    Word bpart = power(B, a[static_cast<std::size_t>(2 + col)]);
    img.insert(img.end(), bpart.begin(), bpart.end());
    Word inv = inverse(img);
    r.insert(r.end(), inv.begin(), inv.end());
    rels.push_back(std::move(r));
  }
  return {name, Presentation({"a", "b", "t"}, std::move(rels)),
          makeSolLattice(a), false};
}

}  // namespace

EnginePtr makeBuiltin(Family family, const std::vector<std::int64_t>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw PreconditionError("wrong number of family parameters");
    }
  };
  switch (family) {
    case Family::FreeAbelian:
      need(1);
      return makeFreeAbelian(static_cast<int>(params[0]));
    case Family::FreeGroup:
      need(1);
      return makeFreeGroup(static_cast<int>(params[0]));
    case Family::Heisenberg:
      need(0);
      return makeHeisenberg();
    case Family::SolLattice:
      need(4);
      return makeSolLattice({params[0], params[1], params[2], params[3]});
    case Family::SurfaceGroup:
      need(1);
      return makeSurfaceGroup(static_cast<int>(params[0]));
    case Family::ProductZ2:
      need(1);
      return makeDirectProductWithZ2(makeFreeGroup(static_cast<int>(params[0])));
  }
  throw PreconditionError("unknown family");
}

std::vector<std::string> familyNames() {
  return {"z<n>", "z2-altgens", "z3-altgens", "2z", "free<n>", "heisenberg",
          "sol[:a00,a01,a10,a11]", "surface<g>", "f2xz2", "cyclic<n>"};
}

GroupModel makeFamily(const std::string& name) {
  int n = 0;
  if (name == "z") return makeFamily("z1");
  if (name == "z2-altgens") {
    std::vector<Word> rels = allCommutators(0, 2);
    rels.push_back({letterOf(2), -letterOf(1), -letterOf(0)});
    return {name, Presentation({"a", "b", "c"}, rels),
            makeFreeAbelian(2, {{1, 0}, {0, 1}, {1, 1}}), false};
  }
  if (name == "z3-altgens") {
    std::vector<Word> rels = allCommutators(0, 3);
    rels.push_back({letterOf(3), -letterOf(1), -letterOf(0)});
    return {name, Presentation({"a", "b", "c", "d"}, rels),
            makeFreeAbelian(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}}),
            false};
  }
  if (name == "2z") {
    return {name, Presentation({"t"}, {}), makeFreeAbelian(1, {{2}}), false};
  }
  if (suffixNumber(name, "z", n)) {
    if (n < 1) throw PreconditionError("z<n> needs n >= 1");
    return {name, Presentation(defaultNames(n), allCommutators(0, n)),
            makeFreeAbelian(n), false};
  }
  if (suffixNumber(name, "free", n)) {
    if (n < 1) throw PreconditionError("free<n> needs n >= 1");
    return {name, Presentation(defaultNames(n), {}), makeFreeGroup(n), false};
  }
  if (name == "heisenberg") {
    Word z = commutator(letterOf(0), letterOf(1));
    std::vector<Word> rels;
    for (Letter g : {letterOf(0), letterOf(1)}) {
      Word r = z;
      r.push_back(g);
      Word zi = inverse(z);
      r.insert(r.end(), zi.begin(), zi.end());
      r.push_back(-g);
      rels.push_back(r);
    }
    return {name, Presentation({"x", "y"}, rels), makeHeisenberg(), false};
  }
  if (name == "sol") return solModel({2, 1, 1, 1}, name);
  if (name.rfind("sol:", 0) == 0) {
    std::vector<std::int64_t> v;
    std::stringstream in(name.substr(4));
    std::string item;
    while (std::getline(in, item, ',')) v.push_back(std::stoll(item));
    if (v.size() != 4) throw PreconditionError("sol:a00,a01,a10,a11 expected");
    return solModel({v[0], v[1], v[2], v[3]}, name);
  }
  if (suffixNumber(name, "surface", n)) {
    if (n < 2) throw PreconditionError("surface genus must be >= 2");
    std::vector<std::string> names;
    Word r;
    for (int i = 0; i < n; ++i) {
      names.push_back("a" + std::to_string(i + 1));
      names.push_back("b" + std::to_string(i + 1));
      Word c = commutator(letterOf(2 * i), letterOf(2 * i + 1));
      r.insert(r.end(), c.begin(), c.end());
    }
    return {name, Presentation(names, {r}), makeSurfaceGroup(n), false};
  }
  if (name == "f2xz2") {
    std::vector<Word> rels;
    for (int i = 0; i < 2; ++i) {
      for (int j = 2; j < 4; ++j) {
        rels.push_back(commutator(letterOf(i), letterOf(j)));
      }
    }
    rels.push_back(commutator(letterOf(2), letterOf(3)));
    return {name, Presentation({"a", "b", "c", "d"}, rels),
            makeDirectProductWithZ2(makeFreeGroup(2)), false};
  }
  if (suffixNumber(name, "cyclic", n)) {
    if (n < 1) throw PreconditionError("cyclic<n> needs n >= 1");
    GroupModel m = modelFromPresentation(
        Presentation({"a"}, {power(letterOf(0), n)}), false);
    m.name = name;
    return m;
  }
  throw PreconditionError("unknown family '" + name + "'");
}

GroupModel modelFromPresentation(Presentation p, bool allowHeuristic,
                                 const CompletionBudget& budget,
                                 std::vector<int> generatorOrder) {
  RewriteSystem rs = knuthBendix(p, budget, std::move(generatorOrder));
  bool confluent = rs.confluent();
  if (!confluent && !allowHeuristic) {
    throw PreconditionError(
        "Knuth-Bendix completion did not finish within budget; refusing to "
        "use a non-confluent rewriting engine (pass the heuristic override "
        "to proceed)");
  }
  return {"presentation", std::move(p), makeRewriting(std::move(rs)),
          !confluent};
}

}  // namespace topinf
