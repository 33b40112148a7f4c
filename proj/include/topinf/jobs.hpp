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

#ifndef TOPINF_JOBS_HPP
#define TOPINF_JOBS_HPP

#include <cstdint>
#include <string>

#include "json.hpp"

#include "topinf/error.hpp"
#include "topinf/families.hpp"

namespace topinf {

/// One batch job. Unset integers are -1 and get command-specific defaults.
struct JobConfig {
  std::string command;  // ball, rips, certify-sci, fill-loop, vrate, qi-audit
  std::string family;
  std::string presentationFile;
  bool allowHeuristic = false;
  int radius = -1;
  int d = -1;
  int m = 1;
  int rMin = -1;
  int rMax = -1;
  int inner = -1;  // fill-loop: annulus inner radius
  std::size_t budgetStates = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string cacheDir;
  std::string compare;  // vrate: second model; qi-audit: source model
  bool qi = false;
  std::string qiKind = "generating-set";
  std::string loop;   // fill-loop: closed word
  std::string start;  // fill-loop: word of the start vertex
  std::size_t randomLoops = 200;
  std::size_t maxLoopLength = 12;
  std::size_t pairs = 10'000;
  std::size_t transportLoops = 50;
};

JobConfig jobConfigFromJson(const nlohmann::json& j);
nlohmann::json toJson(const JobConfig& c);

/// Loads the configured model; throws PreconditionError on bad specs.
GroupModel loadModel(const JobConfig& c);
GroupModel loadModel(const std::string& family,
                     const std::string& presentationFile, bool allowHeuristic);

/// Fills in defaults and checks preconditions before any work starts.
JobConfig resolveJob(const JobConfig& c);

struct JobResult {
  int status = 0;  // 0 ok, 1 inconclusive, 2 precondition, 3 consistency
  nlohmann::json report;
  std::string csv;
  std::string text;  // human-readable summary
};

/// Runs a job. Errors from the library propagate as exceptions.
JobResult runJob(const JobConfig& c);

/// Exit status for an error kind.
int statusOf(ErrorKind kind);

}  // namespace topinf

#endif  // TOPINF_JOBS_HPP
