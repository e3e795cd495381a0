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

#ifndef CLIQUELAB_EXPERIMENTS_HPP_
#define CLIQUELAB_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cliquelab/common.hpp"
#include "json.hpp"

namespace cliquelab {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum class Command {
  kSample,
  kBuildDistinguisher,
  kMeasureSuccess,
  kCheckRobust,
  kFindSunflower,
  kClosure,
  kApproximate,
  kCompareProcesses,
  kVerifyLemma,
};

/// "sample", "build-distinguisher", ...
const char* command_name(Command c);
std::optional<Command> command_from_name(std::string_view name);
const std::vector<Command>& all_commands();

/// A config failed validation. `field()` is a dotted path such as
/// "params.beta".
class UsageError : public Error {
 public:
  UsageError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// {"command": ..., "seed": <uint64>, "params": {...}, "output": <path>}.
/// Only "command" is required; params are checked by the command itself.
struct ExperimentConfig {
  Command command = Command::kSample;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t master_seed = 0;
  std::string output_path;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Reads and validates a config file; malformed JSON is a UsageError on "".
ExperimentConfig load_config(const std::string& path);

/// FNV-1a 64 of the canonical JSON of command, seed and params, as 16 hex
/// digits. The output path does not take part.
std::string config_hash(const ExperimentConfig& config);

struct Outcome {
  nlohmann::json result = nlohmann::json::object();
  bool passed = true;
};

/// Dispatches to the owning module. Parameter problems raise UsageError;
/// capacity errors pass through unchanged.
Outcome execute(const ExperimentConfig& config);

struct RunRecord {
  std::string version = kArtifactVersion;
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string started;   // ISO 8601 UTC
  std::string finished;
  nlohmann::json params = nlohmann::json::object();
  bool passed = true;
  nlohmann::json result = nlohmann::json::object();

  nlohmann::json to_json() const;
  /// Throws ParseError when a required key is missing or mistyped.
  static RunRecord from_json(const nlohmann::json& j);
  std::string to_line() const { return to_json().dump(); }
};

/// Executes and stamps a record; appends it to config.output_path when set.
RunRecord run(const ExperimentConfig& config);

/// Appends one JSON line. Writers within a process are serialized.
void append_record(const std::string& path, const RunRecord& record);

/// 0 when the record passed, 2 otherwise.
int exit_code(const RunRecord& record);

struct ReportTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::size_t skipped = 0;  // corrupt lines

  std::string to_csv() const;
  /// Array of row objects keyed by column.
  std::string to_json() const;
};

/// Flattens a JSON-lines log. Fixed columns come first (command,
/// config_hash, seed, passed, started, finished, version), then the sorted
/// union of params.* and result.* leaves. Blank lines are ignored.
ReportTable build_report(std::istream& log);

}  // namespace cliquelab

#endif  // CLIQUELAB_EXPERIMENTS_HPP_
