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

#include "cliquelab/graph.hpp"

#include <istream>
#include <sstream>

#include "cliquelab/common.hpp"

namespace cliquelab {

VertexSet::VertexSet(std::initializer_list<unsigned> members) {
  for (unsigned v : members) {
    if (v >= kMaxVertices) throw ParameterError("vertex " + std::to_string(v) + " exceeds capacity");
    insert(v);
  }
}

VertexSet VertexSet::range(unsigned begin, unsigned end) {
  VertexSet s;
  for (unsigned v = begin; v < end; ++v) s.insert(v);
  return s;
}

unsigned VertexSet::bound() const {
  if (words_[1] != 0) return 128 - static_cast<unsigned>(std::countl_zero(words_[1]));
  if (words_[0] != 0) return 64 - static_cast<unsigned>(std::countl_zero(words_[0]));
  return 0;
}

std::vector<unsigned> VertexSet::members() const {
  std::vector<unsigned> out;
  out.reserve(size());
  for_each([&](unsigned v) { out.push_back(v); });
  return out;
}

std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  // Same size: the first differing vertex decides; the set holding the
  // smaller vertex comes first.
  for (unsigned w = 0; w < 2; ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff == 0) continue;
    const std::uint64_t lowest = diff & (0 - diff);
    return (a.words_[w] & lowest) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string VertexSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](unsigned v) {
    if (!first) out += ',';
    out += std::to_string(v + 1);
    first = false;
  });
  return out + "}";
}

std::size_t edge_slot(unsigned n, unsigned u, unsigned v) {
  if (u == v || u >= n || v >= n) throw ParameterError("invalid edge endpoints");
  if (u > v) std::swap(u, v);
  const std::size_t uu = u;
  return uu * n - uu * (uu + 1) / 2 + (v - u - 1);
}

std::pair<unsigned, unsigned> edge_from_slot(unsigned n, std::size_t slot) {
  if (slot >= edge_slot_count(n)) throw ParameterError("edge slot out of range");
  unsigned u = 0;
  std::size_t row = n - 1;
  while (slot >= row) {
    slot -= row;
    --row;
    ++u;
  }
  return {u, static_cast<unsigned>(u + 1 + slot)};
}

Graph::Graph(unsigned n) : n_(n), adjacency_(n) {
  if (n > kMaxVertices) throw ParameterError("graph has more than " + std::to_string(kMaxVertices) + " vertices");
}

Graph Graph::complete(unsigned n) { return clique_on(n, VertexSet::range(0, n)); }

Graph Graph::clique_on(unsigned n, const VertexSet& members) {
  if (members.bound() > n) throw ParameterError("clique support outside [n]");
  Graph g(n);
  members.for_each([&](unsigned v) {
    g.adjacency_[v] = members;
    g.adjacency_[v].erase(v);
  });
  return g;
}

void Graph::add_edge(unsigned u, unsigned v) {
  if (u == v) throw ParameterError("self-loop");
  if (u >= n_ || v >= n_) throw ParameterError("edge endpoint out of range");
  adjacency_[u].insert(v);
  adjacency_[v].insert(u);
}

void Graph::remove_edge(unsigned u, unsigned v) {
  if (u >= n_ || v >= n_) throw ParameterError("edge endpoint out of range");
  adjacency_[u].erase(v);
  adjacency_[v].erase(u);
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency_) twice += row.size();
  return twice / 2;
}

std::vector<std::pair<unsigned, unsigned>> Graph::edges() const {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned u = 0; u < n_; ++u)
    adjacency_[u].for_each([&](unsigned v) {
      if (v > u) out.emplace_back(u, v);
    });
  return out;
}

bool Graph::is_subgraph_of(const Graph& other) const {
  if (n_ != other.n_) return false;
  for (unsigned u = 0; u < n_; ++u)
    if (!adjacency_[u].is_subset_of(other.adjacency_[u])) return false;
  return true;
}

bool Graph::contains_clique_on(const VertexSet& s) const {
  bool ok = true;
  s.for_each([&](unsigned v) {
    if (!ok) return;
    if (v >= n_) {
      ok = false;
      return;
    }
    VertexSet rest = s;
    rest.erase(v);
    ok = rest.is_subset_of(adjacency_[v]);
  });
  return ok;
}

std::string to_graph_text(const Graph& g) {
  std::ostringstream out;
  out << "GRAPH n=" << g.n() << '\n';
  for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
  out << '\n';
  return out.str();
}

namespace {

unsigned parse_header_n(const std::string& line, const std::string& tag, std::size_t lineno) {
  const std::string prefix = tag + " n=";
  if (line.rfind(prefix, 0) != 0) throw ParseError(lineno, "expected '" + prefix + "<n>'");
  std::istringstream in(line.substr(prefix.size()));
  long n = -1;
  std::string rest;
  if (!(in >> n) || (in >> rest) || n < 0) throw ParseError(lineno, "bad vertex count");
  if (n > static_cast<long>(kMaxVertices)) throw ParseError(lineno, "vertex count exceeds capacity");
  return static_cast<unsigned>(n);
}

// Reads one block; returns false at end of input before any header.
bool read_graph_block(std::istream& in, std::size_t& lineno, Graph& out) {
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line.empty()) continue;
      out = Graph(parse_header_n(line, "GRAPH", lineno));
      have_header = true;
      continue;
    }
    if (line.empty()) return true;
    std::istringstream fields(line);
    long u = 0, v = 0;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest)) throw ParseError(lineno, "expected 'u v'");
    if (u < 1 || v < 1 || u > out.n() || v > out.n()) throw ParseError(lineno, "vertex out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    const auto a = static_cast<unsigned>(u - 1), b = static_cast<unsigned>(v - 1);
    if (out.has_edge(a, b)) throw ParseError(lineno, "duplicate edge");
    out.add_edge(a, b);
  }
  return have_header;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::size_t lineno = 0;
  Graph g;
  if (!read_graph_block(in, lineno, g)) throw ParseError(0, "missing GRAPH header");
  return g;
}

std::vector<Graph> parse_graphs(std::istream& in) {
  std::vector<Graph> out;
  std::size_t lineno = 0;
  Graph g;
  while (read_graph_block(in, lineno, g)) out.push_back(g);
  return out;
}

}  // namespace cliquelab
