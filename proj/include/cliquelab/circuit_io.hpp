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

#ifndef CLIQUELAB_CIRCUIT_IO_HPP_
#define CLIQUELAB_CIRCUIT_IO_HPP_

#include <string>

#include "cliquelab/circuit.hpp"

namespace cliquelab {

/// "MONO v1" text:
///
///   MONO v1 n=<n> gates=<g>
///   <id> INPUT <u> <v>      (1-based vertices, u < v)
///   <id> AND <a> <b>
///   <id> OR <a> <b>
///   <id> CONST <0|1>
///   OUTPUT <id>
///
/// Gate ids run 1..g in order; operands must name earlier gates.
std::string to_mono_text(const MonotoneCircuit& c);

/// Inverse of to_mono_text. Dangling or forward references, bad headers and
/// malformed lines raise ParseError with the offending line number.
MonotoneCircuit parse_mono(const std::string& text);

}  // namespace cliquelab

#endif  // CLIQUELAB_CIRCUIT_IO_HPP_
