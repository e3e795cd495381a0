// Copyright 2026 The cliquelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cliquelab: command-line front end. Each experiment subcommand turns its
// flags into a config and runs it exactly like `run --config`.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cliquelab/experiments.hpp"

namespace {

using cliquelab::Command;
using nlohmann::json;

enum class Kind { kUint, kRational, kRationalList, kString, kPath, kFileText, kVertexList };

struct Flag {
  const char* name;  // flag without dashes
  const char* key;   // params key
  Kind kind;
  const char* help;
  std::vector<Command> commands;
};

const std::vector<Flag>& flags() {
  using C = Command;
  static const std::vector<Flag> table = {
      {"n", "n", Kind::kUint, "number of vertices",
       {C::kSample, C::kBuildDistinguisher, C::kMeasureSuccess, C::kCheckRobust, C::kFindSunflower, C::kClosure,
        C::kCompareProcesses, C::kVerifyLemma}},
      {"alpha", "alpha", Kind::kUint, "negative-side clique size",
       {C::kSample, C::kBuildDistinguisher, C::kMeasureSuccess, C::kApproximate}},
      {"beta", "beta", Kind::kUint, "planted clique size",
       {C::kSample, C::kBuildDistinguisher, C::kMeasureSuccess, C::kApproximate}},
      {"p", "p", Kind::kRationalList, "probability, e.g. 3/10 (comma list for compare-processes)",
       {C::kSample, C::kCheckRobust, C::kClosure, C::kApproximate, C::kCompareProcesses, C::kVerifyLemma}},
      {"eps", "eps", Kind::kRational, "error parameter",
       {C::kCheckRobust, C::kClosure, C::kApproximate, C::kVerifyLemma}},
      {"c", "c", Kind::kUint, "trim size / core size", {C::kApproximate, C::kVerifyLemma}},
      {"trials", "trials", Kind::kUint, "Monte-Carlo trials",
       {C::kMeasureSuccess, C::kCheckRobust, C::kClosure, C::kApproximate, C::kCompareProcesses}},
      {"mode", "mode", Kind::kString, "exact | mc", {C::kCheckRobust, C::kCompareProcesses}},
      {"count", "count", Kind::kUint, "samples or families", {C::kSample, C::kVerifyLemma}},
      {"dist", "dist", Kind::kString, "negative | positive", {C::kSample}},
      {"clique-size", "clique_size", Kind::kUint, "clique size to test in samples", {C::kSample}},
      {"ell", "ell", Kind::kUint, "set size / row multiplicity",
       {C::kBuildDistinguisher, C::kMeasureSuccess, C::kCompareProcesses, C::kVerifyLemma}},
      {"m", "m", Kind::kUint, "pinned indicator count", {C::kBuildDistinguisher, C::kMeasureSuccess}},
      {"tau", "tau", Kind::kUint, "pinned threshold", {C::kBuildDistinguisher, C::kMeasureSuccess}},
      {"k", "k", Kind::kUint, "petal count / uniformity", {C::kFindSunflower, C::kVerifyLemma}},
      {"family", "family", Kind::kFileText, "FAMILY file (inlined into the record)",
       {C::kCheckRobust, C::kFindSunflower, C::kClosure, C::kCompareProcesses, C::kVerifyLemma}},
      {"core", "core", Kind::kVertexList, "core vertices, e.g. 1,2", {C::kCheckRobust, C::kCompareProcesses}},
      {"kind", "kind", Kind::kString, "set | clique", {C::kCheckRobust}},
      {"lifting", "lifting", Kind::kString, "left | square | link | random", {C::kCompareProcesses}},
      {"lifting-json", "lifting_json", Kind::kFileText, "lifting JSON file (inlined into the record)",
       {C::kCompareProcesses}},
      {"lemma", "lemma", Kind::kString, "sunflower-rcs | rs-implies-rcs | erdos-rado | comparison | bridge",
       {C::kVerifyLemma}},
      {"min-n", "min_n", Kind::kUint, "smallest universe", {C::kVerifyLemma}},
      {"max-n", "max_n", Kind::kUint, "largest universe", {C::kVerifyLemma}},
      {"circuit", "circuit_file", Kind::kPath, "MONO v1 circuit file", {C::kApproximate}},
      {"compression", "compression", Kind::kString, "standard | identity | trim", {C::kApproximate}},
      {"circuit-out", "circuit_out", Kind::kPath, "write the circuit as MONO v1", {C::kBuildDistinguisher}},
      {"trace-out", "trace_out", Kind::kPath, "write the gate trace as JSON lines", {C::kApproximate}},
  };
  return table;
}

json to_param(const Flag& flag, const std::string& raw) {
  switch (flag.kind) {
    case Kind::kUint:
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(raw, &used);
        if (used != raw.size() || raw.front() == '-') throw std::invalid_argument(raw);
        return v;
      } catch (const std::exception&) {
        throw cliquelab::UsageError(std::string("--") + flag.name, "expected a non-negative integer");
      }
    case Kind::kRationalList:
      if (raw.find(',') != std::string::npos) {
        json a = json::array();
        std::stringstream ss(raw);
        for (std::string item; std::getline(ss, item, ',');) a.push_back(item);
        return a;
      }
      return raw;
    case Kind::kVertexList: {
      json a = json::array();
      std::stringstream ss(raw);
      for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        Flag as_uint = flag;
        as_uint.kind = Kind::kUint;
        a.push_back(to_param(as_uint, item));
      }
      return a;
    }
    case Kind::kFileText: {
      std::ifstream in(raw, std::ios::binary);
      if (!in) throw cliquelab::UsageError(std::string("--") + flag.name, "cannot read " + raw);
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }
    case Kind::kRational:
    case Kind::kString:
    case Kind::kPath:
      return raw;
  }
  return raw;
}

struct Subcommand {
  Command command;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::uint64_t seed = 0;
  std::string out;
};

void print_record(const cliquelab::RunRecord& r) { std::cout << r.to_line() << "\n"; }

int run_config(const cliquelab::ExperimentConfig& config) {
  const auto record = cliquelab::run(config);
  print_record(record);
  return cliquelab::exit_code(record);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cliquelab: monotone clique circuit experiments"};
  app.require_subcommand(1);

  std::vector<Subcommand> subs;
  subs.reserve(cliquelab::all_commands().size());
  for (Command c : cliquelab::all_commands()) {
    Subcommand& s = subs.emplace_back();
    s.command = c;
    s.app = app.add_subcommand(cliquelab::command_name(c), std::string("run the ") + cliquelab::command_name(c) +
                                                                 " experiment");
    for (const Flag& f : flags()) {
      if (std::find(f.commands.begin(), f.commands.end(), c) == f.commands.end()) continue;
      s.app->add_option_function<std::string>(std::string("--") + f.name,
                                              [&s, name = f.name](const std::string& v) { s.values[name] = v; },
                                              f.help);
    }
    s.app->add_option("--seed", s.seed, "master seed");
    s.app->add_option("--out", s.out, "append the run record to this JSON-lines log");
  }

  std::string config_path;
  CLI::App* run_cmd = app.add_subcommand("run", "run an experiment config file");
  run_cmd->add_option("--config", config_path, "config JSON")->required();

  std::string log_path, format = "csv";
  CLI::App* report_cmd = app.add_subcommand("report", "flatten a run log into a table");
  report_cmd->add_option("log", log_path, "JSON-lines run log")->required();
  report_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) return run_config(cliquelab::load_config(config_path));

    if (report_cmd->parsed()) {
      std::ifstream in(log_path);
      if (!in) {
        std::cerr << "error: cannot read " << log_path << "\n";
        return 1;
      }
      const auto table = cliquelab::build_report(in);
      if (table.skipped > 0) std::cerr << "warning: skipped " << table.skipped << " corrupt records\n";
      std::cout << (format == "json" ? table.to_json() + "\n" : table.to_csv());
      return 0;
    }

    for (const Subcommand& s : subs) {
      if (!s.app->parsed()) continue;
      cliquelab::ExperimentConfig config;
      config.command = s.command;
      config.master_seed = s.seed;
      config.output_path = s.out;
      for (const Flag& f : flags()) {
        const auto it = s.values.find(f.name);
        if (it != s.values.end()) config.params[f.key] = to_param(f, it->second);
      }
      return run_config(config);
    }
  } catch (const cliquelab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
