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

#ifndef CLIQUELAB_PROCESS_HPP_
#define CLIQUELAB_PROCESS_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cliquelab/common.hpp"
#include "cliquelab/enumeration.hpp"
#include "cliquelab/random.hpp"
#include "cliquelab/sunflower.hpp"

namespace cliquelab {

/// A cell (row, col) of the n x n grid, 0-based.
struct Cell {
  unsigned row = 0;
  unsigned col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// A map from the members of a k-uniform family to cell sets. Properness
/// (exactly ell cells in each row of S) is not enforced here; see
/// validate_proper.
class Lifting {
 public:
  Lifting() = default;
  /// Checks that the family is k-uniform, that there is one image per set,
  /// and that images are duplicate-free sets of in-range cells.
  Lifting(SetFamily domain, unsigned ell, std::vector<std::vector<Cell>> images);

  const SetFamily& domain() const { return domain_; }
  unsigned n() const { return domain_.n(); }
  unsigned ell() const { return ell_; }
  unsigned k() const { return k_; }
  const std::vector<std::vector<Cell>>& images() const { return images_; }

  friend bool operator==(const Lifting&, const Lifting&) = default;

 private:
  SetFamily domain_;
  unsigned ell_ = 0;
  unsigned k_ = 0;
  std::vector<std::vector<Cell>> images_;  // each sorted
};

/// S -> S x [ell]. Requires ell <= n.
Lifting lifting_left(const SetFamily& f, unsigned ell);
/// S -> S x S. Requires ell == k.
Lifting lifting_square(const SetFamily& f, unsigned ell);
/// S -> S x (core u S), row multiplicity |core| + k. Requires S disjoint
/// from core for every member.
Lifting lifting_link(const SetFamily& f, const VertexSet& core);
/// For each S and each row i in S, ell distinct uniform columns.
Lifting random_proper_lifting(const SetFamily& f, unsigned ell, Rng& rng);

/// Every row i in S holds exactly ell cells of phi(S) and no other row does.
bool validate_proper(const Lifting& phi);

/// phi_t: agrees with phi on rows 0..t-1 and with S x [ell] on rows >= t, so
/// phi_0 = lifting_left and phi_n = phi. Requires t <= n.
Lifting interpolate(const Lifting& phi, unsigned t);

/// JSON: {"n", "ell", "sets": [{"set": [...], "cells": [[i, j], ...]}]},
/// 1-based.
std::string lifting_to_json(const Lifting& phi);
Lifting lifting_from_json(const std::string& text);

/// Finite-support cell distribution with exact rational probabilities.
struct CellDistribution {
  std::vector<Rational> values;
  std::vector<Rational> probs;

  static CellDistribution bernoulli(const Rational& p);
  /// Checks non-negative probabilities summing to 1 and distinct values.
  void validate() const;
  Rational mean() const;
  Rational max_value() const;
  bool is_bernoulli() const;
};

struct SupExact {};
struct SupMonteCarlo {
  std::uint64_t trials = 0;
  SeedSpec seed;
};
using SupMode = std::variant<SupExact, SupMonteCarlo>;

/// Largest number of relevant cells enumerated for Bernoulli cells; general
/// distributions are limited to the same number of states.
inline constexpr unsigned kMaxRelevantCells = 22;

struct SupValue {
  bool exact = true;
  Rational value;          // exact mode
  double estimate = 0.0;   // Monte-Carlo mode
  double half_width = 0.0; // 99% normal interval
  std::uint64_t trials = 0;
  unsigned relevant_cells = 0;

  double as_double() const { return exact ? to_double(value) : estimate; }
};

/// E sup over S of the sum of i.i.d. cells on phi(S). Only cells in some
/// image are enumerated or sampled; the rest do not affect the supremum.
SupValue expected_sup(const Lifting& phi, const CellDistribution& d, const SupMode& mode);

/// Profile of the supremum for Bernoulli cells over the relevant cells, so
/// one enumeration serves every p.
BernoulliProfile sup_profile(const Lifting& phi);

struct ComparisonReport {
  std::vector<Rational> chain;  // E sup under phi_0, ..., phi_n
  bool non_decreasing = true;
  Rational lhs;                 // E sup under S x [ell]
  Rational rhs;                 // E sup under phi
  bool lhs_le_rhs = true;
};

/// Exact E sup for every interpolation step.
ComparisonReport verify_comparison_chain(const Lifting& phi, const CellDistribution& d);
/// Bernoulli(p) cells for each p in `ps`, enumerating each phi_t once.
std::vector<ComparisonReport> verify_comparison_chain(const Lifting& phi, const std::vector<Rational>& ps);

struct BridgeReport {
  unsigned ell = 0;
  unsigned k = 0;
  bool premise = false;        // set coverage at p^ell >= 1 - eps/ell^2
  Rational set_coverage;
  Rational lhs;                // E sup under S' x [ell]
  Rational rhs;                // E sup under S' x (C u S')
  Rational target;             // ell k - eps
  bool lhs_holds = false;      // lhs >= target
  bool rhs_holds = false;      // rhs >= target
  Rational p0;                 // Pr[no image is all ones]
  bool p0_holds = false;       // p0 <= eps
};

/// The comparison step behind "robust sunflower implies robust clique
/// sunflower": with C the intersection of the l-uniform family f and
/// S' = {S \ C}, checks E sup over S' x [l] and over S' x (C u S') against
/// l k - eps with Bernoulli(p) cells.
BridgeReport verify_bridge(const SetFamily& f, const Rational& p, const Rational& eps);

}  // namespace cliquelab

#endif  // CLIQUELAB_PROCESS_HPP_
