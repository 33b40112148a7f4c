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

#include "topinf/word.hpp"

#include <algorithm>

namespace topinf {

Word freeReduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

Word inverse(std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& x : out) x = -x;
  return out;
}

Word concat(std::span<const Letter> u, std::span<const Letter> v) {
  Word out(u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word conjugate(std::span<const Letter> w, std::span<const Letter> g) {
  Word out = inverse(g);
  out.insert(out.end(), w.begin(), w.end());
  out.insert(out.end(), g.begin(), g.end());
  return freeReduce(out);
}

Word cyclicReduce(std::span<const Letter> w) {
  Word r = freeReduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo),
              r.begin() + static_cast<std::ptrdiff_t>(hi));
}

bool isFreelyReduced(std::span<const Letter> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == -w[i - 1]) return false;
  }
  return true;
}

int shortlexCompare(std::span<const Letter> u, std::span<const Letter> v) {
  if (u.size() != v.size()) return u.size() < v.size() ? -1 : 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    int a = letterRank(u[i]), b = letterRank(v[i]);
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

std::string formatWord(std::span<const Letter> w,
                       const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter x : w) {
    if (!out.empty()) out += ' ';
    auto g = static_cast<std::size_t>(generatorOf(x));
    out += g < names.size() ? names[g] : "x" + std::to_string(g);
    if (isInverse(x)) out += "^-1";
  }
  return out;
}

}  // namespace topinf
