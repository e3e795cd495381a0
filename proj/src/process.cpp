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

#include "cliquelab/process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "cliquelab/acceptance.hpp"
#include "cliquelab/distributions.hpp"
#include "cliquelab/parallel.hpp"
#include "json.hpp"

namespace cliquelab {
namespace {

constexpr std::uint64_t kMaxExactStates = std::uint64_t{1} << kMaxRelevantCells;

unsigned uniformity_of(const SetFamily& f) {
  if (f.size() == 0) return 0;
  const unsigned k = f[0].size();
  for (const auto& s : f.sets())
    if (s.size() != k) throw ParameterError("lifting domain must be a uniform family");
  return k;
}

// Relevant cells in sorted order and, per image, the indices of its cells.
struct CellIndex {
  std::vector<Cell> cells;
  std::vector<std::vector<unsigned>> members;
};

CellIndex index_cells(const Lifting& phi) {
  CellIndex idx;
  for (const auto& image : phi.images()) idx.cells.insert(idx.cells.end(), image.begin(), image.end());
  std::sort(idx.cells.begin(), idx.cells.end());
  idx.cells.erase(std::unique(idx.cells.begin(), idx.cells.end()), idx.cells.end());
  for (const auto& image : phi.images()) {
    std::vector<unsigned> m;
    m.reserve(image.size());
    for (const Cell& c : image)
      m.push_back(static_cast<unsigned>(std::lower_bound(idx.cells.begin(), idx.cells.end(), c) - idx.cells.begin()));
    idx.members.push_back(std::move(m));
  }
  return idx;
}

void require_domain(const Lifting& phi) {
  if (phi.domain().size() == 0) throw ParameterError("supremum over an empty family");
}

std::vector<std::uint32_t> image_masks(const CellIndex& idx) {
  std::vector<std::uint32_t> masks;
  for (const auto& m : idx.members) {
    std::uint32_t mask = 0;
    for (unsigned c : m) mask |= std::uint32_t{1} << c;
    masks.push_back(mask);
  }
  return masks;
}

Rational bernoulli_p(const CellDistribution& d) {
  for (std::size_t i = 0; i < d.values.size(); ++i)
    if (d.values[i] == 1) return d.probs[i];
  return Rational(0);
}

// General finite support: enumerate |support|^r states, bucket the integer
// supremum sums by how often each support value occurs, then weight each
// bucket by its exact probability.
Rational exact_general(const CellIndex& idx, const CellDistribution& d) {
  const unsigned r = static_cast<unsigned>(idx.cells.size());
  const unsigned s = static_cast<unsigned>(d.values.size());
  std::uint64_t states = 1;
  for (unsigned i = 0; i < r; ++i) {
    if (states > kMaxExactStates / s)
      throw CapacityError("exact supremum over " + std::to_string(r) + " cells with support " + std::to_string(s) +
                          " exceeds " + std::to_string(kMaxExactStates) + " states");
    states *= s;
  }

  BigInt lcm = 1;
  for (const auto& v : d.values) {
    const BigInt den = boost::multiprecision::denominator(v);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  std::vector<std::int64_t> scaled;
  BigInt largest = 0;
  for (const auto& v : d.values) {
    const BigInt num = boost::multiprecision::numerator(v) * (lcm / boost::multiprecision::denominator(v));
    largest = std::max(largest, BigInt(boost::multiprecision::abs(num)));
    if (largest >= BigInt(1) << 40) throw CapacityError("cell values too large for exact enumeration");
    scaled.push_back(static_cast<std::int64_t>(num));
  }
  if (largest * std::max(r, 1U) * states >= BigInt(1) << 62)
    throw CapacityError("cell values too large for exact enumeration");

  std::vector<std::vector<unsigned>> sets_of_cell(r);
  for (unsigned set = 0; set < idx.members.size(); ++set)
    for (unsigned c : idx.members[set]) sets_of_cell[c].push_back(set);

  std::vector<unsigned> digit(r, 0);
  std::vector<std::uint16_t> count(s, 0);
  count[0] = static_cast<std::uint16_t>(r);
  std::vector<std::int64_t> sums(idx.members.size());
  for (unsigned set = 0; set < idx.members.size(); ++set)
    sums[set] = static_cast<std::int64_t>(idx.members[set].size()) * scaled[0];

  std::map<std::vector<std::uint16_t>, std::int64_t> buckets;
  for (std::uint64_t state = 0;; ++state) {
    buckets[count] += *std::max_element(sums.begin(), sums.end());
    if (state + 1 == states) break;
    unsigned c = 0;
    while (digit[c] + 1 == s) {
      for (unsigned set : sets_of_cell[c]) sums[set] += scaled[0] - scaled[digit[c]];
      --count[digit[c]];
      ++count[0];
      digit[c] = 0;
      ++c;
    }
    for (unsigned set : sets_of_cell[c]) sums[set] += scaled[digit[c] + 1] - scaled[digit[c]];
    --count[digit[c]];
    ++count[digit[c] + 1];
    ++digit[c];
  }

  Rational total = 0;
  for (const auto& [key, sum] : buckets) {
    Rational weight = 1;
    for (unsigned v = 0; v < s; ++v) weight *= power(d.probs[v], key[v]);
    total += weight * Rational(sum);
  }
  return total / Rational(lcm);
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

SupValue monte_carlo(const CellIndex& idx, const CellDistribution& d, const SupMonteCarlo& mc) {
  if (mc.trials < 2) throw ParameterError("Monte-Carlo supremum needs at least 2 trials");
  std::vector<double> values, cumulative;
  double acc = 0.0;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    values.push_back(to_double(d.values[i]));
    acc += to_double(d.probs[i]);
    cumulative.push_back(acc);
  }
  const unsigned r = static_cast<unsigned>(idx.cells.size());
  const Moments m = parallel_reduce<Moments>(
      mc.trials,
      [&](std::uint64_t begin, std::uint64_t end) {
        Moments local;
        std::vector<double> cell(r);
        for (std::uint64_t t = begin; t < end; ++t) {
          Rng rng = Rng::for_trial(mc.seed, t);
          for (unsigned c = 0; c < r; ++c) {
            const double u = rng.uniform01() * acc;
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            cell[c] = values[std::min<std::size_t>(it - cumulative.begin(), values.size() - 1)];
          }
          double best = -std::numeric_limits<double>::infinity();
          for (const auto& members : idx.members) {
            double sum = 0.0;
            for (unsigned c : members) sum += cell[c];
            best = std::max(best, sum);
          }
          local.sum += best;
          local.sum_sq += best * best;
        }
        return local;
      },
      [](Moments a, const Moments& b) {
        a.sum += b.sum;
        a.sum_sq += b.sum_sq;
        return a;
      });
  SupValue out;
  out.exact = false;
  out.trials = mc.trials;
  out.relevant_cells = r;
  const double n = static_cast<double>(mc.trials);
  out.estimate = m.sum / n;
  const double var = std::max(0.0, (m.sum_sq - n * out.estimate * out.estimate) / (n - 1.0));
  out.half_width = kZ99 * std::sqrt(var / n);
  return out;
}

}  // namespace

Lifting::Lifting(SetFamily domain, unsigned ell, std::vector<std::vector<Cell>> images)
    : domain_(std::move(domain)), ell_(ell), images_(std::move(images)) {
  k_ = uniformity_of(domain_);
  if (!domain_.empty()) domain_ = SetFamily(domain_.n(), domain_.sets(), k_);
  if (ell_ == 0) throw ParameterError("row multiplicity must be positive");
  if (images_.size() != domain_.size()) throw ParameterError("lifting needs one image per set");
  for (auto& image : images_) {
    for (const Cell& c : image)
      if (c.row >= n() || c.col >= n())
        throw ParameterError("cell (" + std::to_string(c.row + 1) + "," + std::to_string(c.col + 1) +
                             ") outside [n] x [n]");
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end())
      throw ParameterError("lifting image repeats a cell");
  }
}

Lifting lifting_left(const SetFamily& f, unsigned ell) {
  if (ell == 0 || ell > f.n()) throw ParameterError("left lifting needs 1 <= ell <= n");
  std::vector<std::vector<Cell>> images;
  for (const auto& s : f.sets()) {
    std::vector<Cell> image;
    s.for_each([&](unsigned i) {
      for (unsigned j = 0; j < ell; ++j) image.push_back({i, j});
    });
    images.push_back(std::move(image));
  }
  return Lifting(f, ell, std::move(images));
}

Lifting lifting_square(const SetFamily& f, unsigned ell) {
  const unsigned k = uniformity_of(f);
  if (f.size() > 0 && ell != k)
    throw ParameterError("square lifting needs ell = k, got ell=" + std::to_string(ell) + " k=" + std::to_string(k));
  std::vector<std::vector<Cell>> images;
  for (const auto& s : f.sets()) {
    std::vector<Cell> image;
    s.for_each([&](unsigned i) { s.for_each([&](unsigned j) { image.push_back({i, j}); }); });
    images.push_back(std::move(image));
  }
  return Lifting(f, ell, std::move(images));
}

Lifting lifting_link(const SetFamily& f, const VertexSet& core) {
  const unsigned k = uniformity_of(f);
  if (core.bound() > f.n()) throw ParameterError("core outside the universe");
  std::vector<std::vector<Cell>> images;
  for (const auto& s : f.sets()) {
    if (s.intersects(core)) throw ParameterError("link lifting needs sets disjoint from the core");
    const VertexSet cols = core | s;
    std::vector<Cell> image;
    s.for_each([&](unsigned i) { cols.for_each([&](unsigned j) { image.push_back({i, j}); }); });
    images.push_back(std::move(image));
  }
  return Lifting(f, core.size() + k, std::move(images));
}

Lifting random_proper_lifting(const SetFamily& f, unsigned ell, Rng& rng) {
  if (ell == 0 || ell > f.n()) throw ParameterError("random lifting needs 1 <= ell <= n");
  std::vector<std::vector<Cell>> images;
  for (const auto& s : f.sets()) {
    std::vector<Cell> image;
    s.for_each([&](unsigned i) { sample_subset(f.n(), ell, rng).for_each([&](unsigned j) { image.push_back({i, j}); }); });
    images.push_back(std::move(image));
  }
  return Lifting(f, ell, std::move(images));
}

bool validate_proper(const Lifting& phi) {
  for (std::size_t i = 0; i < phi.images().size(); ++i) {
    const VertexSet& s = phi.domain()[i];
    std::vector<unsigned> per_row(phi.n(), 0);
    for (const Cell& c : phi.images()[i]) ++per_row[c.row];
    for (unsigned row = 0; row < phi.n(); ++row)
      if (per_row[row] != (s.contains(row) ? phi.ell() : 0)) return false;
  }
  return true;
}

Lifting interpolate(const Lifting& phi, unsigned t) {
  if (t > phi.n()) throw ParameterError("interpolation step beyond n");
  if (phi.ell() > phi.n()) throw ParameterError("interpolation needs ell <= n");
  std::vector<std::vector<Cell>> images;
  for (std::size_t i = 0; i < phi.images().size(); ++i) {
    std::vector<Cell> image;
    for (const Cell& c : phi.images()[i])
      if (c.row < t) image.push_back(c);
    phi.domain()[i].for_each([&](unsigned row) {
      if (row < t) return;
      for (unsigned j = 0; j < phi.ell(); ++j) image.push_back({row, j});
    });
    images.push_back(std::move(image));
  }
  return Lifting(phi.domain(), phi.ell(), std::move(images));
}

std::string lifting_to_json(const Lifting& phi) {
  nlohmann::json j;
  j["n"] = phi.n();
  j["ell"] = phi.ell();
  j["sets"] = nlohmann::json::array();
  for (std::size_t i = 0; i < phi.images().size(); ++i) {
    nlohmann::json entry;
    entry["set"] = nlohmann::json::array();
    phi.domain()[i].for_each([&](unsigned v) { entry["set"].push_back(v + 1); });
    entry["cells"] = nlohmann::json::array();
    for (const Cell& c : phi.images()[i]) entry["cells"].push_back({c.row + 1, c.col + 1});
    j["sets"].push_back(std::move(entry));
  }
  return j.dump();
}

Lifting lifting_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("lifting JSON: ") + e.what());
  }
  auto positive = [](const nlohmann::json& v, const std::string& what) {
    if (!v.is_number_unsigned() || v.get<unsigned>() == 0) throw ParseError(0, what + " must be a positive integer");
    return v.get<unsigned>();
  };
  if (!j.is_object() || !j.contains("n") || !j.contains("ell") || !j.contains("sets") || !j["sets"].is_array())
    throw ParseError(0, "lifting JSON needs n, ell and sets");
  const unsigned n = positive(j["n"], "n");
  const unsigned ell = positive(j["ell"], "ell");
  std::vector<VertexSet> sets;
  std::vector<std::vector<Cell>> images;
  for (const auto& entry : j["sets"]) {
    if (!entry.is_object() || !entry.contains("set") || !entry.contains("cells") || !entry["set"].is_array() ||
        !entry["cells"].is_array())
      throw ParseError(0, "each lifting entry needs set and cells arrays");
    VertexSet s;
    for (const auto& v : entry["set"]) {
      const unsigned x = positive(v, "set member");
      if (x > n || x > kMaxVertices) throw ParseError(0, "set member " + std::to_string(x) + " outside [n]");
      s.insert(x - 1);
    }
    std::vector<Cell> image;
    for (const auto& c : entry["cells"]) {
      if (!c.is_array() || c.size() != 2) throw ParseError(0, "cells are [row, col] pairs");
      image.push_back({positive(c[0], "row") - 1, positive(c[1], "col") - 1});
    }
    sets.push_back(s);
    images.push_back(std::move(image));
  }
  try {
    return Lifting(SetFamily(n, std::move(sets)), ell, std::move(images));
  } catch (const ParameterError& e) {
    throw ParseError(0, e.what());
  }
}

CellDistribution CellDistribution::bernoulli(const Rational& p) {
  if (p < 0 || p > 1) throw ParameterError("Bernoulli parameter outside [0, 1]");
  return CellDistribution{{Rational(0), Rational(1)}, {1 - p, p}};
}

void CellDistribution::validate() const {
  if (values.empty() || values.size() != probs.size())
    throw ParameterError("cell distribution needs matching non-empty values and probabilities");
  Rational total = 0;
  for (const auto& q : probs) {
    if (q < 0) throw ParameterError("negative cell probability");
    total += q;
  }
  if (total != 1) throw ParameterError("cell probabilities must sum to 1");
  std::vector<Rational> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParameterError("cell distribution repeats a value");
}

Rational CellDistribution::mean() const {
  Rational m = 0;
  for (std::size_t i = 0; i < values.size(); ++i) m += values[i] * probs[i];
  return m;
}

Rational CellDistribution::max_value() const { return *std::max_element(values.begin(), values.end()); }

bool CellDistribution::is_bernoulli() const {
  return values.size() == 2 && ((values[0] == 0 && values[1] == 1) || (values[0] == 1 && values[1] == 0));
}

BernoulliProfile sup_profile(const Lifting& phi) {
  require_domain(phi);
  const CellIndex idx = index_cells(phi);
  const auto r = static_cast<unsigned>(idx.cells.size());
  if (r > kMaxRelevantCells)
    throw CapacityError(std::to_string(r) + " relevant cells exceed the exact limit of " +
                        std::to_string(kMaxRelevantCells));
  const auto masks = image_masks(idx);
  return max_overlap_profile(masks, r, kMaxRelevantCells);
}

SupValue expected_sup(const Lifting& phi, const CellDistribution& d, const SupMode& mode) {
  require_domain(phi);
  d.validate();
  if (const auto* mc = std::get_if<SupMonteCarlo>(&mode)) return monte_carlo(index_cells(phi), d, *mc);
  SupValue out;
  if (d.is_bernoulli()) {
    const BernoulliProfile profile = sup_profile(phi);
    out.relevant_cells = profile.variables;
    out.value = profile.expectation(bernoulli_p(d));
  } else {
    const CellIndex idx = index_cells(phi);
    out.relevant_cells = static_cast<unsigned>(idx.cells.size());
    out.value = exact_general(idx, d);
  }
  return out;
}

namespace {

ComparisonReport summarize(std::vector<Rational> chain) {
  ComparisonReport report;
  for (std::size_t t = 1; t < chain.size(); ++t)
    if (chain[t] < chain[t - 1]) report.non_decreasing = false;
  report.lhs = chain.front();
  report.rhs = chain.back();
  report.lhs_le_rhs = report.lhs <= report.rhs;
  report.chain = std::move(chain);
  return report;
}

}  // namespace

ComparisonReport verify_comparison_chain(const Lifting& phi, const CellDistribution& d) {
  std::vector<Rational> chain;
  for (unsigned t = 0; t <= phi.n(); ++t) chain.push_back(expected_sup(interpolate(phi, t), d, SupExact{}).value);
  return summarize(std::move(chain));
}

std::vector<ComparisonReport> verify_comparison_chain(const Lifting& phi, const std::vector<Rational>& ps) {
  std::vector<std::vector<Rational>> chains(ps.size());
  for (unsigned t = 0; t <= phi.n(); ++t) {
    const BernoulliProfile profile = sup_profile(interpolate(phi, t));
    for (std::size_t i = 0; i < ps.size(); ++i) chains[i].push_back(profile.expectation(ps[i]));
  }
  std::vector<ComparisonReport> out;
  for (auto& chain : chains) out.push_back(summarize(std::move(chain)));
  return out;
}

BridgeReport verify_bridge(const SetFamily& f, const Rational& p, const Rational& eps) {
  if (p < 0 || p > 1) throw ParameterError("p outside [0, 1]");
  if (f.size() < 2) throw ParameterError("bridge needs at least two sets");
  BridgeReport report;
  report.ell = uniformity_of(f);
  const VertexSet core = f.intersection();
  report.k = report.ell - core.size();
  std::vector<VertexSet> residues;
  for (const auto& s : f.sets()) residues.push_back(s - core);
  const SetFamily stripped(f.n(), std::move(residues), report.k);

  const Rational pl = power(p, report.ell);
  report.set_coverage = coverage_prob_set(f, core, pl, ExactMode{}).value;
  report.premise = report.set_coverage >= 1 - eps / (report.ell * report.ell);

  const auto d = CellDistribution::bernoulli(p);
  report.lhs = expected_sup(lifting_left(stripped, report.ell), d, SupExact{}).value;
  const Lifting link = lifting_link(stripped, core);
  report.rhs = expected_sup(link, d, SupExact{}).value;
  report.target = Rational(report.ell * report.k) - eps;
  report.lhs_holds = report.lhs >= report.target;
  report.rhs_holds = report.rhs >= report.target;

  const CellIndex idx = index_cells(link);
  const auto masks = image_masks(idx);
  report.p0 = 1 - covering_profile(masks, static_cast<unsigned>(idx.cells.size()), kMaxRelevantCells).expectation(p);
  report.p0_holds = report.p0 <= eps;
  return report;
}

}  // namespace cliquelab
