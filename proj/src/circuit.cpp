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

#include "cliquelab/circuit.hpp"

#include <string>

#include "cliquelab/common.hpp"

namespace cliquelab {

MonotoneCircuit::MonotoneCircuit(unsigned n_vertices, std::vector<Gate> gates, GateId output)
    : n_vertices_(n_vertices), gates_(std::move(gates)), output_(output) {
  if (n_vertices_ > kMaxVertices) throw ParameterError("circuit vertex count exceeds capacity");
  for (std::size_t id = 0; id < gates_.size(); ++id) {
    const Gate& g = gates_[id];
    switch (g.kind) {
      case GateKind::kInput:
        if (g.a >= g.b || g.b >= n_vertices_)
          throw ParameterError("gate " + std::to_string(id) + ": invalid input edge");
        break;
      case GateKind::kAnd:
      case GateKind::kOr:
        if (g.a >= id || g.b >= id)
          throw ParameterError("gate " + std::to_string(id) + ": operand is not an earlier gate");
        break;
      case GateKind::kConst0:
      case GateKind::kConst1:
        break;
    }
  }
  if (output_ >= gates_.size()) throw ParameterError("output gate does not exist");
}

std::size_t MonotoneCircuit::size() const {
  std::size_t count = 0;
  for (const Gate& g : gates_)
    if (g.kind == GateKind::kAnd || g.kind == GateKind::kOr) ++count;
  return count;
}

CircuitBuilder::CircuitBuilder(unsigned n_vertices) : n_vertices_(n_vertices) {
  if (n_vertices > kMaxVertices) throw ParameterError("circuit vertex count exceeds capacity");
}

CircuitBuilder::CircuitBuilder(const MonotoneCircuit& base)
    : n_vertices_(base.n_vertices()), gates_(base.gates()) {
  for (GateId id = 0; id < gates_.size(); ++id)
    if (gates_[id].kind == GateKind::kInput) inputs_.try_emplace({gates_[id].a, gates_[id].b}, id);
}

GateId CircuitBuilder::push(Gate g) {
  const auto id = static_cast<GateId>(gates_.size());
  if ((g.kind == GateKind::kAnd || g.kind == GateKind::kOr) && (g.a >= id || g.b >= id))
    throw ParameterError("operand is not an earlier gate");
  gates_.push_back(g);
  return id;
}

GateId CircuitBuilder::input(unsigned u, unsigned v) {
  if (u == v || u >= n_vertices_ || v >= n_vertices_) throw ParameterError("invalid input edge");
  if (u > v) std::swap(u, v);
  if (auto it = inputs_.find({u, v}); it != inputs_.end()) return it->second;
  const GateId id = push({GateKind::kInput, u, v});
  inputs_.emplace(std::make_pair(u, v), id);
  return id;
}

GateId CircuitBuilder::constant(bool value) { return push({value ? GateKind::kConst1 : GateKind::kConst0, 0, 0}); }

GateId CircuitBuilder::balanced(std::span<const GateId> operands, GateKind kind) {
  std::vector<GateId> level(operands.begin(), operands.end());
  while (level.size() > 1) {
    std::vector<GateId> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(push({kind, level[i], level[i + 1]}));
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

GateId CircuitBuilder::and_all(std::span<const GateId> operands) {
  if (operands.empty()) return constant(true);
  return balanced(operands, GateKind::kAnd);
}

GateId CircuitBuilder::or_all(std::span<const GateId> operands) {
  if (operands.empty()) return constant(false);
  return balanced(operands, GateKind::kOr);
}

MonotoneCircuit CircuitBuilder::build(GateId output) const { return MonotoneCircuit(n_vertices_, gates_, output); }

GateId add_clique_indicator(CircuitBuilder& builder, const VertexSet& members) {
  if (members.bound() > builder.n_vertices()) throw ParameterError("clique indicator support outside [n]");
  const std::vector<unsigned> vs = members.members();
  std::vector<GateId> edges;
  edges.reserve(vs.size() * vs.size() / 2);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) edges.push_back(builder.input(vs[i], vs[j]));
  return builder.and_all(edges);
}

MonotoneCircuit build_clique_indicator(const VertexSet& members, unsigned n) {
  CircuitBuilder builder(n);
  const GateId out = add_clique_indicator(builder, members);
  return builder.build(out);
}

ComparatorNetwork build_sorting_network(unsigned m) {
  if (m < 1) throw ParameterError("sorting network needs at least one wire");
  ComparatorNetwork net{m, {}};
  std::uint64_t padded = 1;
  while (padded < m) padded <<= 1;
  // Knuth's iterative formulation of Batcher's odd-even merge.
  for (std::uint64_t p = 1; p < padded; p <<= 1)
    for (std::uint64_t k = p; k >= 1; k >>= 1)
      for (std::uint64_t j = k % p; j + k < padded; j += 2 * k)
        for (std::uint64_t i = 0; i < std::min(k, padded - j - k); ++i)
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) {
            const std::uint64_t lo = i + j, hi = i + j + k;
            if (hi < m) net.comparators.emplace_back(static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi));
          }
  return net;
}

GateId add_threshold(CircuitBuilder& builder, std::span<const GateId> inputs, unsigned tau) {
  const auto m = static_cast<unsigned>(inputs.size());
  if (m == 0) throw ParameterError("threshold over zero inputs");
  if (tau < 1 || tau > m)
    throw ParameterError("threshold tau=" + std::to_string(tau) + " outside [1, " + std::to_string(m) + "]");
  std::vector<GateId> wires(inputs.begin(), inputs.end());
  for (auto [i, j] : build_sorting_network(m).comparators) {
    const GateId hi = builder.or_gate(wires[i], wires[j]);
    const GateId lo = builder.and_gate(wires[i], wires[j]);
    wires[i] = hi;
    wires[j] = lo;
  }
  return wires[tau - 1];
}

MonotoneCircuit build_threshold(unsigned m, unsigned tau, std::span<const GateId> inputs, const MonotoneCircuit& base) {
  if (inputs.size() != m) throw ParameterError("threshold input count does not match m");
  for (GateId id : inputs)
    if (id >= base.gates().size()) throw ParameterError("threshold input is not a gate of the base circuit");
  CircuitBuilder builder(base);
  const GateId out = add_threshold(builder, inputs, tau);
  return builder.build(out);
}

std::vector<std::uint64_t> evaluate_lanes(const MonotoneCircuit& c,
                                          const std::function<std::uint64_t(unsigned, unsigned)>& input_lanes) {
  const auto& gates = c.gates();
  std::vector<std::uint64_t> value(gates.size());
  for (std::size_t id = 0; id < gates.size(); ++id) {
    const Gate& g = gates[id];
    switch (g.kind) {
      case GateKind::kInput: value[id] = input_lanes(g.a, g.b); break;
      case GateKind::kAnd: value[id] = value[g.a] & value[g.b]; break;
      case GateKind::kOr: value[id] = value[g.a] | value[g.b]; break;
      case GateKind::kConst0: value[id] = 0; break;
      case GateKind::kConst1: value[id] = ~std::uint64_t{0}; break;
    }
  }
  return value;
}

bool evaluate(const MonotoneCircuit& c, const Graph& g) {
  if (c.n_vertices() != g.n()) throw ParameterError("circuit and graph vertex counts differ");
  const auto& gates = c.gates();
  std::vector<std::uint8_t> value(gates.size());
  for (std::size_t id = 0; id < gates.size(); ++id) {
    const Gate& gate = gates[id];
    switch (gate.kind) {
      case GateKind::kInput: value[id] = g.has_edge(gate.a, gate.b); break;
      case GateKind::kAnd: value[id] = value[gate.a] & value[gate.b]; break;
      case GateKind::kOr: value[id] = value[gate.a] | value[gate.b]; break;
      case GateKind::kConst0: value[id] = 0; break;
      case GateKind::kConst1: value[id] = 1; break;
    }
  }
  return value[c.output()] != 0;
}

std::uint64_t evaluate_batch(const MonotoneCircuit& c, std::span<const Graph> graphs) {
  if (graphs.size() > 64) throw ParameterError("evaluate_batch takes at most 64 graphs");
  for (const Graph& g : graphs)
    if (g.n() != c.n_vertices()) throw ParameterError("circuit and graph vertex counts differ");
  const auto values = evaluate_lanes(c, [&](unsigned u, unsigned v) {
    std::uint64_t lanes = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i)
      if (graphs[i].has_edge(u, v)) lanes |= std::uint64_t{1} << i;
    return lanes;
  });
  const std::uint64_t used = graphs.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << graphs.size()) - 1;
  return values[c.output()] & used;
}

}  // namespace cliquelab
