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

#include "cliquelab/circuit_io.hpp"

#include <sstream>
#include <vector>

#include "cliquelab/common.hpp"

namespace cliquelab {

std::string to_mono_text(const MonotoneCircuit& c) {
  std::ostringstream out;
  out << "MONO v1 n=" << c.n_vertices() << " gates=" << c.gates().size() << '\n';
  std::size_t id = 1;
  for (const Gate& g : c.gates()) {
    out << id++ << ' ';
    switch (g.kind) {
      case GateKind::kInput: out << "INPUT " << g.a + 1 << ' ' << g.b + 1; break;
      case GateKind::kAnd: out << "AND " << g.a + 1 << ' ' << g.b + 1; break;
      case GateKind::kOr: out << "OR " << g.a + 1 << ' ' << g.b + 1; break;
      case GateKind::kConst0: out << "CONST 0"; break;
      case GateKind::kConst1: out << "CONST 1"; break;
    }
    out << '\n';
  }
  out << "OUTPUT " << c.output() + 1 << '\n';
  return out.str();
}

namespace {

long read_number(std::istringstream& in, std::size_t lineno, const char* what) {
  long value = 0;
  if (!(in >> value)) throw ParseError(lineno, std::string("expected ") + what);
  return value;
}

void expect_end(std::istringstream& in, std::size_t lineno) {
  std::string rest;
  if (in >> rest) throw ParseError(lineno, "unexpected trailing token '" + rest + "'");
}

}  // namespace

MonotoneCircuit parse_mono(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(1, "empty input");
  long n = -1, gate_count = -1;
  {
    std::istringstream header(line);
    std::string magic, version, n_field, g_field;
    header >> magic >> version >> n_field >> g_field;
    if (magic != "MONO" || version != "v1") throw ParseError(lineno, "expected header 'MONO v1'");
    try {
      if (n_field.rfind("n=", 0) != 0 || g_field.rfind("gates=", 0) != 0) throw std::invalid_argument("");
      std::size_t used = 0;
      n = std::stol(n_field.substr(2), &used);
      if (used != n_field.size() - 2) throw std::invalid_argument("");
      gate_count = std::stol(g_field.substr(6), &used);
      if (used != g_field.size() - 6) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
      throw ParseError(lineno, "expected 'n=<n> gates=<g>' in header");
    }
    expect_end(header, lineno);
    if (n < 0 || n > static_cast<long>(kMaxVertices)) throw ParseError(lineno, "vertex count out of range");
    if (gate_count < 1) throw ParseError(lineno, "circuit needs at least one gate");
  }

  std::vector<Gate> gates;
  gates.reserve(static_cast<std::size_t>(gate_count));
  for (long expected = 1; expected <= gate_count; ++expected) {
    if (!next_line()) throw ParseError(lineno + 1, "missing gate " + std::to_string(expected));
    std::istringstream fields(line);
    const long id = read_number(fields, lineno, "gate id");
    if (id != expected)
      throw ParseError(lineno, "gate id " + std::to_string(id) + " out of order (expected " +
                                   std::to_string(expected) + ")");
    std::string op;
    fields >> op;
    Gate g;
    if (op == "INPUT") {
      const long u = read_number(fields, lineno, "vertex");
      const long v = read_number(fields, lineno, "vertex");
      if (u < 1 || v < 1 || u > n || v > n) throw ParseError(lineno, "input vertex out of range");
      if (u >= v) throw ParseError(lineno, "input edge must be written 'u v' with u < v");
      g = {GateKind::kInput, static_cast<std::uint32_t>(u - 1), static_cast<std::uint32_t>(v - 1)};
    } else if (op == "AND" || op == "OR") {
      const long a = read_number(fields, lineno, "operand");
      const long b = read_number(fields, lineno, "operand");
      for (long ref : {a, b})
        if (ref < 1 || ref >= id)
          throw ParseError(lineno, "gate " + std::to_string(id) + " references undefined gate " + std::to_string(ref));
      g = {op == "AND" ? GateKind::kAnd : GateKind::kOr, static_cast<std::uint32_t>(a - 1),
           static_cast<std::uint32_t>(b - 1)};
    } else if (op == "CONST") {
      const long value = read_number(fields, lineno, "constant");
      if (value != 0 && value != 1) throw ParseError(lineno, "constant must be 0 or 1");
      g = {value == 1 ? GateKind::kConst1 : GateKind::kConst0, 0, 0};
    } else {
      throw ParseError(lineno, "unknown gate kind '" + op + "'");
    }
    expect_end(fields, lineno);
    gates.push_back(g);
  }

  if (!next_line()) throw ParseError(lineno + 1, "missing OUTPUT line");
  std::istringstream footer(line);
  std::string keyword;
  footer >> keyword;
  if (keyword != "OUTPUT") throw ParseError(lineno, "expected 'OUTPUT <id>'");
  const long out = read_number(footer, lineno, "output id");
  expect_end(footer, lineno);
  if (out < 1 || out > gate_count) throw ParseError(lineno, "output references undefined gate");
  if (next_line()) throw ParseError(lineno, "content after OUTPUT line");
  return MonotoneCircuit(static_cast<unsigned>(n), std::move(gates), static_cast<GateId>(out - 1));
}

}  // namespace cliquelab
