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

// Command-line front end. Everything goes through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "topinf/topinf.h"

namespace {

struct Options {
  std::string family;
  std::string presentation;
  bool allowHeuristic = false;
  int radius = -1;
  int d = -1;
  int m = 1;
  int rMin = -1;
  int rMax = -1;
  int inner = -1;
  std::size_t budgetStates = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string cacheDir;
  std::string compare;
  bool qi = false;
  std::string qiKind = "generating-set";
  std::string loop;
  std::string start;
  std::size_t randomLoops = 200;
  std::size_t maxLoopLength = 12;
  std::size_t pairs = 10'000;
  std::size_t transportLoops = 50;
  std::string out;
  bool json = false;
};

void addModel(CLI::App* cmd, Options& o) {
  cmd->add_option("--family", o.family, "built-in group family (z3, free2, surface2, ...)");
  cmd->add_option("--presentation", o.presentation, "presentation file");
  cmd->add_flag("--allow-heuristic", o.allowHeuristic,
                "accept a non-confluent rewriting system");
  cmd->add_option("--cache", o.cacheDir, "ball cache directory");
}

void addCommon(CLI::App* cmd, Options& o) {
  cmd->add_option("--budget-states", o.budgetStates, "state budget per loop");
  cmd->add_option("--seed", o.seed, "seed for all sampling");
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--out", o.out, "write <out>.json (and <out>.csv)");
  cmd->add_flag("--json", o.json, "print the JSON report to stdout");
}

std::string configOf(const std::string& command, const Options& o) {
  nlohmann::json j = {{"command", command},
                      {"family", o.family},
                      {"presentation_file", o.presentation},
                      {"allow_heuristic", o.allowHeuristic},
                      {"radius", o.radius},
                      {"d", o.d},
                      {"m", o.m},
                      {"r_min", o.rMin},
                      {"r_max", o.rMax},
                      {"inner", o.inner},
                      {"budget_states", o.budgetStates},
                      {"seed", o.seed},
                      {"threads", o.threads},
                      {"cache_dir", o.cacheDir},
                      {"compare", o.compare},
                      {"qi", o.qi},
                      {"qi_kind", o.qiKind},
                      {"loop", o.loop},
                      {"start", o.start},
                      {"random_loops", o.randomLoops},
                      {"max_loop_length", o.maxLoopLength},
                      {"pairs", o.pairs},
                      {"transport_loops", o.transportLoops}};
  return j.dump();
}

bool writeFile(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

int run(const std::string& command, const Options& o) {
  char* report = nullptr;
  char* csv = nullptr;
  char* text = nullptr;
  topinf_status st = topinf_run_job(configOf(command, o).c_str(), &report, &csv, &text);
  if (!report) {
    std::cerr << "topinf " << command << ": " << topinf_last_error() << "\n";
    return st;
  }
  std::cout << text;
  if (o.json) std::cout << report;
  if (!o.out.empty()) {
    bool ok = writeFile(o.out + ".json", report);
    if (csv && *csv) ok = writeFile(o.out + ".csv", csv) && ok;
    if (!ok) {
      std::cerr << "topinf " << command << ": cannot write " << o.out << ".*\n";
      if (st == TOPINF_OK) st = TOPINF_PRECONDITION;
    }
  }
  topinf_string_free(report);
  topinf_string_free(csv);
  topinf_string_free(text);
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simple connectivity at infinity of finitely presented groups"};
  app.set_version_flag("--version", topinf_version());
  app.require_subcommand(1);
  Options o;

  auto* ball = app.add_subcommand("ball", "build the word-metric ball and print |B(k)|");
  addModel(ball, o);
  addCommon(ball, o);
  ball->add_option("--radius", o.radius, "ball radius")->required();

  auto* rips = app.add_subcommand("rips", "build P_d (m colors) and check the free action");
  addModel(rips, o);
  addCommon(rips, o);
  rips->add_option("--radius", o.radius, "ball radius")->required();
  rips->add_option("--d", o.d, "Rips parameter")->required();
  rips->add_option("--m", o.m, "number of colors");

  auto* certify = app.add_subcommand("certify-sci", "fill relator and random loops in P_d");
  addModel(certify, o);
  addCommon(certify, o);
  certify->add_option("--radius", o.radius, "ball radius (default 6)");
  certify->add_option("--d", o.d, "Rips parameter (default: smallest with 2d > r)");
  certify->add_option("--m", o.m, "number of colors");
  certify->add_option("--loops", o.randomLoops, "random loops");
  certify->add_option("--max-length", o.maxLoopLength, "random loop length bound");

  auto* fill = app.add_subcommand("fill-loop", "fill one loop given as a word");
  addModel(fill, o);
  addCommon(fill, o);
  fill->add_option("--loop", o.loop, "closed word, e.g. \"[a,b]\"")->required();
  fill->add_option("--start", o.start, "word of the start vertex");
  fill->add_option("--radius", o.radius, "ball radius (default 8)");
  fill->add_option("--d", o.d, "Rips parameter");
  fill->add_option("--inner", o.inner, "fill in the annulus dist > inner");

  auto* vrate = app.add_subcommand("vrate", "bracket the vanishing rate V(r)");
  addModel(vrate, o);
  addCommon(vrate, o);
  vrate->add_option("--rmax", o.rMax, "largest inner radius")->required();
  vrate->add_option("--rmin", o.rMin, "smallest inner radius (default 1)");
  vrate->add_option("--radius", o.radius, "truncation radius (default 2 rmax + 2)");
  vrate->add_option("--d", o.d, "Rips parameter");
  vrate->add_option("--compare", o.compare, "second family to compare with");
  vrate->add_flag("--qi", o.qi, "predict the compared family's rate through a quasi-isometry");
  vrate->add_option("--qi-kind", o.qiKind, "identity, generating-set or index-two");
  vrate->add_option("--pairs", o.pairs, "pairs used to fit the quasi-isometry");

  auto* qi = app.add_subcommand("qi-audit", "fit, audit and transport disks along a quasi-isometry");
  addModel(qi, o);
  addCommon(qi, o);
  qi->add_option("--compare", o.compare, "source family of the map")->required();
  qi->add_option("--qi-kind", o.qiKind, "identity, generating-set or index-two");
  qi->add_option("--radius", o.radius, "source ball radius (default 12)");
  qi->add_option("--d", o.d, "Rips parameter in the target");
  qi->add_option("--pairs", o.pairs, "audited pairs");
  qi->add_option("--loops", o.transportLoops, "transported loops");
  qi->add_option("--max-length", o.maxLoopLength, "random loop length bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : TOPINF_PRECONDITION;
  }
  for (auto* sub : app.get_subcommands()) return run(sub->get_name(), o);
  return TOPINF_PRECONDITION;
}
