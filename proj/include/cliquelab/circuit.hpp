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

#ifndef CLIQUELAB_CIRCUIT_HPP_
#define CLIQUELAB_CIRCUIT_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cliquelab/graph.hpp"

namespace cliquelab {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { kInput, kAnd, kOr, kConst0, kConst1 };

/// For kInput, `a < b` are the 0-based endpoints of the edge variable; for
/// kAnd/kOr they are the ids of two earlier gates; constants ignore both.
struct Gate {
  GateKind kind = GateKind::kConst0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// A monotone circuit over the C(n,2) edge variables of a graph on n
/// vertices. Gates are stored in topological order, so every operand id is
/// smaller than the gate's own id. Immutable once built.
class MonotoneCircuit {
 public:
  MonotoneCircuit() = default;
  /// Validates operand order, edge endpoints and the output id.
  MonotoneCircuit(unsigned n_vertices, std::vector<Gate> gates, GateId output);

  unsigned n_vertices() const { return n_vertices_; }
  const std::vector<Gate>& gates() const { return gates_; }
  GateId output() const { return output_; }

  /// Number of AND and OR gates.
  std::size_t size() const;

  friend bool operator==(const MonotoneCircuit&, const MonotoneCircuit&) = default;

 private:
  unsigned n_vertices_ = 0;
  std::vector<Gate> gates_;
  GateId output_ = 0;
};

/// Appends gates in topological order. Input gates are shared: asking for
/// the same edge twice returns the same id.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(unsigned n_vertices);
  /// Continues from an existing circuit; its gates keep their ids.
  explicit CircuitBuilder(const MonotoneCircuit& base);

  GateId input(unsigned u, unsigned v);
  GateId and_gate(GateId a, GateId b) { return push({GateKind::kAnd, a, b}); }
  GateId or_gate(GateId a, GateId b) { return push({GateKind::kOr, a, b}); }
  GateId constant(bool value);

  /// Balanced binary trees; an empty AND is Const1, an empty OR is Const0.
  GateId and_all(std::span<const GateId> operands);
  GateId or_all(std::span<const GateId> operands);

  std::size_t gate_count() const { return gates_.size(); }
  unsigned n_vertices() const { return n_vertices_; }

  MonotoneCircuit build(GateId output) const;

 private:
  GateId push(Gate g);
  GateId balanced(std::span<const GateId> operands, GateKind kind);

  unsigned n_vertices_;
  std::vector<Gate> gates_;
  std::map<std::pair<unsigned, unsigned>, GateId> inputs_;
};

/// Appends the clique indicator of `members` (AND over all C(|A|,2) edges,
/// as a balanced tree) and returns its output gate. |A| <= 1 yields Const1.
GateId add_clique_indicator(CircuitBuilder& builder, const VertexSet& members);

/// Stand-alone clique indicator on [n].
MonotoneCircuit build_clique_indicator(const VertexSet& members, unsigned n);

/// A comparator network on `width` wires. Comparator (i, j), i < j, moves
/// the larger value to wire i, so a sorting network sorts descending.
struct ComparatorNetwork {
  unsigned width = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> comparators;

  /// Applies the network in place; values.size() must equal width.
  template <typename T>
  void apply(std::span<T> values) const {
    for (auto [i, j] : comparators)
      if (values[i] < values[j]) std::swap(values[i], values[j]);
  }
};

/// Batcher odd-even mergesort on m wires (m >= 1). Built for the next power
/// of two; comparators touching padding wires are dropped, which is exact
/// because padding holds the minimum and never moves.
ComparatorNetwork build_sorting_network(unsigned m);

/// Appends a threshold block over `inputs` (m = inputs.size()): the inputs
/// pass through the sorting network with each comparator compiled to an OR
/// (max) and an AND (min), and the tau-th wire is returned. Requires
/// 1 <= tau <= m.
GateId add_threshold(CircuitBuilder& builder, std::span<const GateId> inputs, unsigned tau);

/// Extends `base` with a threshold block over `inputs` and makes it the
/// output. The block outputs 1 iff at least tau of the m inputs are 1.
MonotoneCircuit build_threshold(unsigned m, unsigned tau, std::span<const GateId> inputs,
                                const MonotoneCircuit& base);

/// Single forward pass. Throws ParameterError on a vertex-count mismatch.
bool evaluate(const MonotoneCircuit& c, const Graph& g);

/// Evaluates up to 64 graphs at once; bit i of the result is graph i.
std::uint64_t evaluate_batch(const MonotoneCircuit& c, std::span<const Graph> graphs);

/// Bit-sliced evaluation with caller-provided input lanes: `input_lanes(u,v)`
/// gives the 64 values of edge {u,v} across lanes. Returns all gate values.
std::vector<std::uint64_t> evaluate_lanes(const MonotoneCircuit& c,
                                          const std::function<std::uint64_t(unsigned, unsigned)>& input_lanes);

}  // namespace cliquelab

#endif  // CLIQUELAB_CIRCUIT_HPP_
