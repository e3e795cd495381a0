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

#include "cliquelab/sunflower.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cliquelab/distributions.hpp"
#include "cliquelab/enumeration.hpp"
#include "cliquelab/parallel.hpp"

namespace cliquelab {

SetFamily::SetFamily(unsigned n, std::vector<VertexSet> sets, std::optional<unsigned> uniformity)
    : n_(n), sets_(std::move(sets)), uniformity_(uniformity) {
  if (n_ > kMaxVertices) throw ParameterError("universe exceeds " + std::to_string(kMaxVertices));
  std::set<VertexSet> seen;
  for (const auto& s : sets_) {
    if (s.bound() > n_) throw ParameterError("set " + s.to_string() + " is not a subset of [" + std::to_string(n_) + "]");
    if (uniformity_ && s.size() != *uniformity_)
      throw ParameterError("set " + s.to_string() + " does not have size " + std::to_string(*uniformity_));
    if (!seen.insert(s).second) throw ParameterError("duplicate set " + s.to_string());
  }
}

VertexSet SetFamily::union_of() const {
  VertexSet u;
  for (const auto& s : sets_) u |= s;
  return u;
}

VertexSet SetFamily::intersection() const {
  if (sets_.empty()) return {};
  VertexSet x = sets_.front();
  for (const auto& s : sets_) x &= s;
  return x;
}

SetFamily SetFamily::subfamily(std::span<const std::size_t> indices) const {
  std::vector<VertexSet> chosen;
  for (std::size_t i : indices) chosen.push_back(sets_.at(i));
  return SetFamily(n_, std::move(chosen), uniformity_);
}

std::string to_family_text(const SetFamily& f) {
  std::ostringstream out;
  out << "FAMILY n=" << f.n() << "\n";
  for (const auto& s : f.sets()) {
    out << "S:";
    s.for_each([&](unsigned v) { out << ' ' << v + 1; });
    out << "\n";
  }
  return out.str();
}

SetFamily parse_family(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  unsigned n = 0;
  bool header = false;
  std::vector<VertexSet> sets;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (!header) {
      std::string size_field;
      fields >> size_field;
      if (tag != "FAMILY" || size_field.rfind("n=", 0) != 0) throw ParseError(line_no, "expected 'FAMILY n=<n>'");
      try {
        n = static_cast<unsigned>(std::stoul(size_field.substr(2)));
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad universe size");
      }
      if (n > kMaxVertices) throw ParseError(line_no, "universe exceeds " + std::to_string(kMaxVertices));
      header = true;
      continue;
    }
    if (tag != "S:") throw ParseError(line_no, "expected 'S:'");
    VertexSet s;
    long prev = 0;
    std::string token;
    while (fields >> token) {
      long v = 0;
      try {
        std::size_t used = 0;
        v = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad vertex '" + token + "'");
      }
      if (v < 1 || v > static_cast<long>(n)) throw ParseError(line_no, "vertex " + token + " outside [1, n]");
      if (v <= prev) throw ParseError(line_no, "vertices must be strictly ascending");
      prev = v;
      s.insert(static_cast<unsigned>(v - 1));
    }
    for (const auto& t : sets)
      if (t == s) throw ParseError(line_no, "duplicate set");
    sets.push_back(s);
  }
  if (!header) throw ParseError(line_no, "missing FAMILY header");
  return SetFamily(n, std::move(sets));
}

bool is_sunflower(const SetFamily& f, std::span<const std::size_t> petals, const VertexSet& core) {
  for (std::size_t i = 0; i < petals.size(); ++i)
    for (std::size_t j = i + 1; j < petals.size(); ++j)
      if ((f[petals[i]] & f[petals[j]]) != core) return false;
  if (petals.size() == 1) return core == f[petals[0]];
  return true;
}

namespace {

class PetalSearch {
 public:
  PetalSearch(std::vector<VertexSet> residues, unsigned k, std::uint64_t& nodes, std::uint64_t budget)
      : residues_(std::move(residues)), k_(k), nodes_(nodes), budget_(budget) {}

  bool run(std::vector<std::size_t>& chosen) { return extend(chosen, 0, VertexSet{}); }

 private:
  bool extend(std::vector<std::size_t>& chosen, std::size_t start, const VertexSet& used) {
    if (chosen.size() == k_) return true;
    if (++nodes_ > budget_) throw CapacityError("sunflower search exceeded its node budget");
    for (std::size_t i = start; i + (k_ - chosen.size()) <= residues_.size(); ++i) {
      if (residues_[i].intersects(used)) continue;
      chosen.push_back(i);
      if (extend(chosen, i + 1, used | residues_[i])) return true;
      chosen.pop_back();
    }
    return false;
  }

  std::vector<VertexSet> residues_;
  unsigned k_;
  std::uint64_t& nodes_;
  std::uint64_t budget_;
};

}  // namespace

std::optional<SunflowerWitness> find_k_sunflower(const SetFamily& f, unsigned k, std::uint64_t budget) {
  if (k == 0) throw ParameterError("k must be positive");
  if (f.size() < k) return std::nullopt;
  if (k == 1) return SunflowerWitness{{0}, f[0]};

  std::set<VertexSet> cores;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) cores.insert(f[i] & f[j]);

  std::uint64_t nodes = 0;
  for (const auto& core : cores) {
    std::vector<std::size_t> members;
    std::vector<VertexSet> residues;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (core.is_subset_of(f[i])) {
        members.push_back(i);
        residues.push_back(f[i] - core);
      }
    if (members.size() < k) continue;
    std::vector<std::size_t> chosen;
    if (PetalSearch(std::move(residues), k, nodes, budget).run(chosen)) {
      SunflowerWitness w{{}, core};
      for (std::size_t c : chosen) w.petal_indices.push_back(members[c]);
      return w;
    }
  }
  return std::nullopt;
}

std::uint64_t erdos_rado_bound(unsigned ell, unsigned k) {
  if (k == 0) throw ParameterError("k must be positive");
  std::uint64_t bound = 1;
  for (unsigned i = 2; i <= ell; ++i) bound *= i;
  for (unsigned i = 0; i < ell; ++i) bound *= (k - 1);
  return bound;
}

namespace {

std::vector<VertexSet> all_subsets(unsigned n, unsigned k) {
  std::vector<VertexSet> out;
  for_each_subset(n, k, [&](const VertexSet& s) { out.push_back(s); });
  return out;
}

// `count` distinct elements of `pool` in random order.
std::vector<VertexSet> sample_distinct(const std::vector<VertexSet>& pool, std::size_t count, Rng& rng) {
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
    std::swap(idx[i], idx[j]);
    out.push_back(pool[idx[i]]);
  }
  return out;
}

}  // namespace

ErdosRadoReport verify_erdos_rado(unsigned ell, unsigned k, unsigned min_n, unsigned max_n, std::uint64_t count,
                                  const SeedSpec& seed, std::size_t family_size) {
  if (ell == 0 || k == 0) throw ParameterError("ell and k must be positive");
  ErdosRadoReport report;
  report.ell = ell;
  report.k = k;
  report.family_size = family_size != 0 ? family_size : erdos_rado_bound(ell, k);
  std::vector<unsigned> universes;
  for (unsigned n = std::max(min_n, ell); n <= max_n; ++n)
    if (binomial(n, ell) >= report.family_size) universes.push_back(n);
  if (universes.empty()) throw ParameterError("no universe size in range holds enough " + std::to_string(ell) + "-sets");
  std::map<unsigned, std::vector<VertexSet>> pools;
  for (unsigned n : universes) pools[n] = all_subsets(n, ell);

  for (std::uint64_t t = 0; t < count; ++t) {
    Rng rng = Rng::for_trial(seed, t);
    const unsigned n = universes[rng.below(universes.size())];
    SetFamily f(n, sample_distinct(pools[n], report.family_size, rng), ell);
    ++report.families_checked;
    if (!find_k_sunflower(f, k)) report.without_sunflower.push_back(f);
  }
  return report;
}

namespace {

class FreeFamilySearch {
 public:
  FreeFamilySearch(unsigned n, unsigned ell, unsigned k, std::size_t size, std::uint64_t budget)
      : n_(n), ell_(ell), k_(k), size_(size), budget_(budget), pool_(all_subsets(n, ell)) {}

  std::optional<SetFamily> run() {
    if (size_ == 0) return SetFamily(n_, {}, ell_);
    if (pool_.size() < size_) return std::nullopt;
    // Every nonempty family is isomorphic to one containing {0, ..., l-1},
    // which is pool_[0].
    chosen_.push_back(pool_[0]);
    if (extend(1)) return SetFamily(n_, chosen_, ell_);
    return std::nullopt;
  }

 private:
  bool extend(std::size_t start) {
    if (++nodes_ > budget_) throw CapacityError("sunflower-free search exceeded its node budget");
    if (find_k_sunflower(SetFamily(n_, chosen_), k_)) return false;
    if (chosen_.size() == size_) return true;
    for (std::size_t i = start; i + (size_ - chosen_.size()) <= pool_.size(); ++i) {
      chosen_.push_back(pool_[i]);
      if (extend(i + 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  unsigned n_, ell_, k_;
  std::size_t size_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<VertexSet> pool_;
  std::vector<VertexSet> chosen_;
};

}  // namespace

std::optional<SetFamily> find_sunflower_free_family(unsigned n, unsigned ell, unsigned k, std::size_t size,
                                                    std::uint64_t budget) {
  if (ell > n) throw ParameterError("ell exceeds n");
  if (k < 2) throw ParameterError("k must be at least 2");
  return FreeFamilySearch(n, ell, k, size, budget).run();
}

namespace {

// The coverage event over r relevant Bernoulli items: some mask is a subset
// of the sampled items. Masks are dynamic bitsets of ceil(r/64) words.
struct MaskSystem {
  unsigned r = 0;
  std::vector<std::vector<std::uint64_t>> masks;

  std::size_t words() const { return (r + 63) / 64; }
};

MaskSystem set_system(const SetFamily& f, const VertexSet& core) {
  MaskSystem sys;
  std::map<unsigned, unsigned> index;
  (f.union_of() - core).for_each([&](unsigned v) { index.emplace(v, static_cast<unsigned>(index.size())); });
  sys.r = static_cast<unsigned>(index.size());
  for (const auto& s : f.sets()) {
    std::vector<std::uint64_t> m(sys.words(), 0);
    (s - core).for_each([&](unsigned v) {
      const unsigned b = index.at(v);
      m[b / 64] |= std::uint64_t{1} << (b % 64);
    });
    sys.masks.push_back(std::move(m));
  }
  return sys;
}

MaskSystem clique_system(const SetFamily& f, const VertexSet& core) {
  MaskSystem sys;
  std::map<std::pair<unsigned, unsigned>, unsigned> index;
  auto relevant_edges = [&](const VertexSet& s, auto&& fn) {
    const auto members = s.members();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (!(core.contains(members[i]) && core.contains(members[j]))) fn(members[i], members[j]);
  };
  for (const auto& s : f.sets())
    relevant_edges(s, [&](unsigned u, unsigned v) { index.emplace(std::pair{u, v}, 0); });
  unsigned next = 0;
  for (auto& [edge, id] : index) id = next++;
  sys.r = next;
  for (const auto& s : f.sets()) {
    std::vector<std::uint64_t> m(sys.words(), 0);
    relevant_edges(s, [&](unsigned u, unsigned v) {
      const unsigned b = index.at({u, v});
      m[b / 64] |= std::uint64_t{1} << (b % 64);
    });
    sys.masks.push_back(std::move(m));
  }
  return sys;
}

Coverage evaluate_coverage(const MaskSystem& sys, const Rational& p, const CoverageMode& mode) {
  if (p < 0 || p > 1) throw ParameterError("probability outside [0, 1]");
  Coverage cov;
  cov.relevant = sys.r;
  if (std::holds_alternative<ExactMode>(mode)) {
    if (sys.r > kExactCapacity)
      throw CapacityError("exact coverage needs " + std::to_string(sys.r) + " relevant items; capacity is " +
                          std::to_string(kExactCapacity));
    std::vector<std::uint32_t> masks;
    for (const auto& m : sys.masks) masks.push_back(sys.r == 0 ? 0u : static_cast<std::uint32_t>(m[0]));
    cov.exact = true;
    cov.value = covering_profile(masks, sys.r).expectation(p);
    return cov;
  }

  const auto& mc = std::get<MonteCarloMode>(mode);
  if (mc.trials == 0) throw ParameterError("Monte-Carlo mode needs at least one trial");
  const double pd = to_double(p);
  const std::size_t words = sys.words();
  const std::uint64_t hits = parallel_sum<std::uint64_t>(mc.trials, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    std::vector<std::uint64_t> sample(words);
    for (std::uint64_t t = begin; t < end; ++t) {
      Rng rng = Rng::for_trial(mc.seed, t);
      std::fill(sample.begin(), sample.end(), 0);
      for (unsigned b = 0; b < sys.r; ++b)
        if (rng.bernoulli(pd)) sample[b / 64] |= std::uint64_t{1} << (b % 64);
      const bool covered = std::any_of(sys.masks.begin(), sys.masks.end(), [&](const auto& m) {
        for (std::size_t w = 0; w < words; ++w)
          if ((m[w] & ~sample[w]) != 0) return false;
        return true;
      });
      local += covered;
    }
    return local;
  });
  cov.exact = false;
  cov.estimate = FrequencyEstimate::from_counts(hits, mc.trials);
  return cov;
}

void check_universe(const SetFamily& f, const VertexSet& core) {
  if (core.bound() > f.n()) throw ParameterError("core is not a subset of the universe");
}

}  // namespace

Coverage coverage_prob_set(const SetFamily& f, const VertexSet& core, const Rational& p, const CoverageMode& mode) {
  check_universe(f, core);
  return evaluate_coverage(set_system(f, core), p, mode);
}

Coverage coverage_prob_clique(const SetFamily& f, const VertexSet& core, const Rational& p,
                              const CoverageMode& mode) {
  check_universe(f, core);
  return evaluate_coverage(clique_system(f, core), p, mode);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

RobustnessVerdict check_robust(const SetFamily& f, const VertexSet& core, const Rational& p, const Rational& eps,
                               RobustnessKind kind, const CoverageMode& mode) {
  if (eps < 0 || eps > 1) throw ParameterError("eps outside [0, 1]");
  RobustnessVerdict v;
  v.kind = kind;
  v.threshold = 1 - eps;
  v.probability = kind == RobustnessKind::kSet ? coverage_prob_set(f, core, p, mode)
                                                : coverage_prob_clique(f, core, p, mode);
  if (v.probability.exact) {
    v.verdict = v.probability.value >= v.threshold ? Verdict::kPass : Verdict::kFail;
  } else {
    const auto& e = v.probability.estimate;
    const Rational lo(e.estimate - e.half_width);
    const Rational hi(e.estimate + e.half_width);
    if (lo >= v.threshold)
      v.verdict = Verdict::kPass;
    else if (hi < v.threshold)
      v.verdict = Verdict::kFail;
    else
      v.verdict = Verdict::kInconclusive;
  }
  return v;
}

SetFamily canonical_sunflower(unsigned ell, unsigned k, unsigned c) {
  if (c >= ell) throw ParameterError("core must be smaller than the sets");
  const unsigned n = c + k * (ell - c);
  if (n > kMaxVertices) throw ParameterError("canonical sunflower exceeds " + std::to_string(kMaxVertices) + " vertices");
  const VertexSet core = VertexSet::range(0, c);
  std::vector<VertexSet> sets;
  for (unsigned i = 0; i < k; ++i) sets.push_back(core | VertexSet::range(c + i * (ell - c), c + (i + 1) * (ell - c)));
  return SetFamily(n, std::move(sets), ell);
}

SunflowerRcsReport verify_sunflower_is_rcs(unsigned ell, unsigned k, unsigned c, const Rational& p) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  if (ell < 2 || k < 1) throw ParameterError("need ell >= 2 and k >= 1");
  const SetFamily f = canonical_sunflower(ell, k, c);
  SunflowerRcsReport r;
  r.ell = ell;
  r.k = k;
  r.c = c;
  r.p = p;
  r.failure = 1 - coverage_prob_clique(f, VertexSet::range(0, c), p, ExactMode{}).value;
  r.closed_form = power(1 - power(p, static_cast<unsigned>(choose2(ell) - choose2(c))), k);
  const Float exponent = -Float(k) * Float(power(p, static_cast<unsigned>(choose2(ell))));
  const Float bound = boost::multiprecision::exp(exponent);
  r.bound = static_cast<double>(bound);
  r.within_bound = Float(r.failure) <= bound;
  return r;
}

SetFamily random_uniform_family(unsigned n, unsigned ell, Rng& rng) {
  if (ell > n) throw ParameterError("ell exceeds n");
  std::vector<VertexSet> pool;
  if (rng.below(4) == 0) {
    pool = all_subsets(n, ell);
  } else {
    const auto core = sample_subset(n, static_cast<unsigned>(rng.below(ell)), rng);
    for_each_subset(n, ell, [&](const VertexSet& s) {
      if (core.is_subset_of(s)) pool.push_back(s);
    });
  }
  const std::size_t count = pool.size() <= 1 ? pool.size() : 2 + static_cast<std::size_t>(rng.below(pool.size() - 1));
  return SetFamily(n, sample_distinct(pool, count, rng), ell);
}

RsImpliesRcsReport verify_rs_implies_rcs(std::uint64_t premise_target, unsigned max_n, unsigned ell,
                                         const Rational& p, const Rational& eps, const SeedSpec& seed,
                                         std::uint64_t max_attempts) {
  if (ell < 2 || max_n <= ell) throw ParameterError("need 2 <= ell < max_n");
  const Rational p_set = power(p, ell);
  const Rational premise_threshold = 1 - eps / (ell * ell);
  const Rational conclusion_threshold = 1 - eps;
  RsImpliesRcsReport report;
  for (std::uint64_t t = 0; t < max_attempts && report.premise_satisfied < premise_target; ++t) {
    Rng rng = Rng::for_trial(seed, t);
    const unsigned n = ell + 1 + static_cast<unsigned>(rng.below(max_n - ell));
    const SetFamily f = random_uniform_family(n, ell, rng);
    ++report.generated;
    if (f.size() < 2) continue;
    const VertexSet core = f.intersection();
    const MaskSystem edges = clique_system(f, core);
    if (edges.r > kExactCapacity) continue;
    if (coverage_prob_set(f, core, p_set, ExactMode{}).value < premise_threshold) continue;
    ++report.premise_satisfied;
    if (evaluate_coverage(edges, p, ExactMode{}).value < conclusion_threshold) report.counterexamples.push_back(f);
  }
  return report;
}

}  // namespace cliquelab
