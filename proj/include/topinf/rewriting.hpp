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

#ifndef TOPINF_REWRITING_HPP
#define TOPINF_REWRITING_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "topinf/engine.hpp"
#include "topinf/presentation.hpp"

namespace topinf {

/// String rewriting system over the letters of a presentation (generators
/// and their inverses), oriented by shortlex. The letter order puts each
/// inverse right after its generator; the generator order is configurable.
class RewriteSystem {
 public:
  struct Rule {
    Word lhs;
    Word rhs;
  };

  RewriteSystem() = default;
  RewriteSystem(int rank, std::vector<int> generatorOrder);

  int rank() const { return rank_; }
  const std::vector<int>& generatorOrder() const { return order_; }
  const std::vector<Rule>& rules() const { return rules_; }
  bool confluent() const { return confluent_; }
  void setConfluent(bool c) { confluent_ = c; }

  /// Shortlex comparison in this system's letter order.
  int compare(const Word& u, const Word& v) const;
  /// Adds an oriented rule (lhs must be shortlex-greater than rhs).
  void addRule(Word lhs, Word rhs);
  void clear();

  Word rewrite(std::span<const Letter> w) const;
  /// Appends to an irreducible word, keeping it irreducible.
  void append(Word& irreducible, std::span<const Letter> letters) const;

  /// Critical pairs that do not resolve; empty iff locally confluent.
  std::vector<std::pair<Word, Word>> unresolvedCriticalPairs() const;

  /// One rule per line: "lhs -> rhs" with words in generator names.
  std::string toText(const std::vector<std::string>& names) const;
  static RewriteSystem fromText(const std::string& text,
                                const Presentation& p);

 private:
  int letterKey(Letter x) const;
  void reindex();

  int rank_ = 0;
  std::vector<int> order_;     // generator -> position
  std::vector<Rule> rules_;
  std::map<Word, std::size_t> index_;
  std::size_t maxLhs_ = 0;
  bool confluent_ = false;
};

struct CompletionBudget {
  std::size_t maxRules = 2000;
  std::size_t maxRuleLength = 40;
  std::size_t maxPairs = 2000000;
};

/// Knuth-Bendix completion under shortlex. Exhausting the budget is not an
/// error: the result is returned with confluent() == false.
RewriteSystem knuthBendix(const Presentation& p,
                          const CompletionBudget& budget = {},
                          std::vector<int> generatorOrder = {});

/// Normal-form engine backed by a rewrite system. Exact iff the system is
/// confluent.
EnginePtr makeRewriting(RewriteSystem system);

}  // namespace topinf

#endif  // TOPINF_REWRITING_HPP
