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

#ifndef CLIQUELAB_GRAPH_HPP_
#define CLIQUELAB_GRAPH_HPP_

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cliquelab {

/// Largest supported vertex count. Desk-scale experiments stay well below.
inline constexpr unsigned kMaxVertices = 128;

/// A subset of [n] as a fixed-width bitset. Vertices are 0-based internally;
/// every text format is 1-based.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  VertexSet(std::initializer_list<unsigned> members);
  static VertexSet range(unsigned begin, unsigned end);

  void insert(unsigned v) { words_[v >> 6] |= bit(v); }
  void erase(unsigned v) { words_[v >> 6] &= ~bit(v); }
  bool contains(unsigned v) const { return (words_[v >> 6] & bit(v)) != 0; }

  unsigned size() const {
    return static_cast<unsigned>(std::popcount(words_[0]) + std::popcount(words_[1]));
  }
  bool empty() const { return (words_[0] | words_[1]) == 0; }

  bool is_subset_of(const VertexSet& other) const {
    return (words_[0] & ~other.words_[0]) == 0 && (words_[1] & ~other.words_[1]) == 0;
  }
  bool intersects(const VertexSet& other) const {
    return ((words_[0] & other.words_[0]) | (words_[1] & other.words_[1])) != 0;
  }

  /// Smallest member; the set must be non-empty.
  unsigned first() const {
    return words_[0] != 0 ? static_cast<unsigned>(std::countr_zero(words_[0]))
                          : 64 + static_cast<unsigned>(std::countr_zero(words_[1]));
  }

  /// Largest member + 1, or 0 for the empty set.
  unsigned bound() const;

  std::vector<unsigned> members() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (unsigned w = 0; w < 2; ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        fn(static_cast<unsigned>(w * 64 + std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

  VertexSet& operator|=(const VertexSet& o) {
    words_[0] |= o.words_[0];
    words_[1] |= o.words_[1];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    words_[0] &= o.words_[0];
    words_[1] &= o.words_[1];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    words_[0] &= ~o.words_[0];
    words_[1] &= ~o.words_[1];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  /// Canonical order: by size, then lexicographically by sorted members.
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b);

  std::size_t hash() const {
    return static_cast<std::size_t>(words_[0] * 0x9E3779B97F4A7C15ULL ^ (words_[1] + 0x632BE59BD9B4E019ULL));
  }

  /// "{1,2,5}" using 1-based labels.
  std::string to_string() const;

 private:
  static constexpr std::uint64_t bit(unsigned v) { return std::uint64_t{1} << (v & 63); }
  std::array<std::uint64_t, 2> words_{};
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

/// Number of edge slots C(n, 2).
constexpr std::size_t edge_slot_count(unsigned n) {
  return static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
}

/// Canonical slot of {u, v}: lexicographic on (min, max). Requires u != v.
std::size_t edge_slot(unsigned n, unsigned u, unsigned v);

/// Inverse of edge_slot; returns (u, v) with u < v.
std::pair<unsigned, unsigned> edge_from_slot(unsigned n, std::size_t slot);

/// Simple undirected graph on [n], stored as adjacency bitsets.
class Graph {
 public:
  Graph() = default;
  explicit Graph(unsigned n);

  static Graph complete(unsigned n);
  /// K_B plus isolated vertices.
  static Graph clique_on(unsigned n, const VertexSet& members);

  unsigned n() const { return n_; }

  void add_edge(unsigned u, unsigned v);
  void remove_edge(unsigned u, unsigned v);
  bool has_edge(unsigned u, unsigned v) const { return adjacency_[u].contains(v); }
  const VertexSet& neighbors(unsigned u) const { return adjacency_[u]; }

  std::size_t edge_count() const;
  /// Edges as (u, v) with u < v in canonical slot order.
  std::vector<std::pair<unsigned, unsigned>> edges() const;

  /// True when every edge of this graph is an edge of `other`.
  bool is_subgraph_of(const Graph& other) const;

  /// True when K_S is contained in the graph.
  bool contains_clique_on(const VertexSet& s) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  unsigned n_ = 0;
  std::vector<VertexSet> adjacency_;
};

/// GRAPH text format: "GRAPH n=<n>" then one "u v" line per edge (1-based,
/// canonical order), terminated by a blank line.
std::string to_graph_text(const Graph& g);

/// Parses one GRAPH block. Rejects loops, duplicates and out-of-range
/// vertices with a ParseError naming the line.
Graph parse_graph(const std::string& text);

/// Parses consecutive GRAPH blocks separated by blank lines.
std::vector<Graph> parse_graphs(std::istream& in);

}  // namespace cliquelab

#endif  // CLIQUELAB_GRAPH_HPP_
