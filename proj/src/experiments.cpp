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

#include "cliquelab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "cliquelab/approx.hpp"
#include "cliquelab/circuit_io.hpp"
#include "cliquelab/distinguisher.hpp"
#include "cliquelab/distributions.hpp"
#include "cliquelab/parallel.hpp"
#include "cliquelab/process.hpp"
#include "cliquelab/sunflower.hpp"

namespace cliquelab {
namespace {

using json = nlohmann::json;

constexpr std::pair<Command, const char*> kCommandNames[] = {
    {Command::kSample, "sample"},
    {Command::kBuildDistinguisher, "build-distinguisher"},
    {Command::kMeasureSuccess, "measure-success"},
    {Command::kCheckRobust, "check-robust"},
    {Command::kFindSunflower, "find-sunflower"},
    {Command::kClosure, "closure"},
    {Command::kApproximate, "approximate"},
    {Command::kCompareProcesses, "compare-processes"},
    {Command::kVerifyLemma, "verify-lemma"},
};

bool is_count(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::string read_file(const std::string& path, const std::string& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(field, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Typed access to the params object; every failure names "params.<key>".
class Fields {
 public:
  explicit Fields(const json& params) : j_(params) {}

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& at(const char* key) const {
    if (!has(key)) throw UsageError(path(key), "missing required field");
    return j_.at(key);
  }

  std::uint64_t u64(const char* key) const {
    const json& v = at(key);
    if (!is_count(v)) throw UsageError(path(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }
  std::uint64_t u64(const char* key, std::uint64_t fallback) const { return has(key) ? u64(key) : fallback; }

  unsigned uint(const char* key) const {
    const std::uint64_t v = u64(key);
    if (v > 1'000'000'000) throw UsageError(path(key), "value too large");
    return static_cast<unsigned>(v);
  }
  unsigned uint(const char* key, unsigned fallback) const { return has(key) ? uint(key) : fallback; }

  Rational rational(const json& v, const std::string& where) const {
    try {
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number()) return parse_rational(v.dump());
    } catch (const Error& e) {
      throw UsageError(where, e.what());
    }
    throw UsageError(where, "expected a number or a fraction string");
  }
  Rational rational(const char* key) const { return rational(at(key), path(key)); }
  Rational rational(const char* key, const Rational& fallback) const { return has(key) ? rational(key) : fallback; }

  /// A single rational or an array of them.
  std::vector<Rational> rationals(const char* key) const {
    const json& v = at(key);
    std::vector<Rational> out;
    if (!v.is_array()) return {rational(key)};
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], path(key) + "[" + std::to_string(i) + "]"));
    if (out.empty()) throw UsageError(path(key), "empty list");
    return out;
  }

  std::string str(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_string()) throw UsageError(path(key), "expected a string");
    return j_.at(key).get<std::string>();
  }

  std::string choice(const char* key, std::initializer_list<const char*> options, const char* fallback) const {
    const std::string v = str(key, fallback);
    for (const char* o : options)
      if (v == o) return v;
    std::string list;
    for (const char* o : options) list += std::string(list.empty() ? "" : ", ") + o;
    throw UsageError(path(key), "expected one of " + list);
  }

  /// 1-based member list.
  VertexSet set(const json& v, const std::string& where, unsigned n) const {
    if (!v.is_array()) throw UsageError(where, "expected an array of vertices");
    VertexSet s;
    for (const auto& x : v) {
      if (!is_count(x) || x.get<std::uint64_t>() == 0 || x.get<std::uint64_t>() > n)
        throw UsageError(where, "vertices must lie in 1.." + std::to_string(n));
      s.insert(x.get<unsigned>() - 1);
    }
    return s;
  }
  VertexSet set(const char* key, unsigned n) const { return set(at(key), path(key), n); }

  /// FAMILY text, a FAMILY file (key "<key>_file"), or an array of 1-based
  /// sets on [params.n].
  SetFamily family(const char* key) const {
    const std::string file_key = std::string(key) + "_file";
    if (!has(key) && has(file_key.c_str())) {
      const std::string file = str(file_key.c_str(), "");
      return parse_family_text(read_file(file, path(file_key.c_str())), path(file_key.c_str()));
    }
    const json& v = at(key);
    if (v.is_string()) return parse_family_text(v.get<std::string>(), path(key));
    if (!v.is_array()) throw UsageError(path(key), "expected FAMILY text or an array of sets");
    const unsigned n = uint("n");
    if (n == 0 || n > kMaxVertices) throw UsageError(path("n"), "must lie in 1.." + std::to_string(kMaxVertices));
    std::vector<VertexSet> sets;
    for (std::size_t i = 0; i < v.size(); ++i) sets.push_back(set(v[i], path(key) + "[" + std::to_string(i) + "]", n));
    try {
      return SetFamily(n, std::move(sets));
    } catch (const ParameterError& e) {
      throw UsageError(path(key), e.what());
    }
  }

  static std::string path(const char* key) { return std::string("params.") + key; }

 private:
  static SetFamily parse_family_text(const std::string& text, const std::string& where) {
    try {
      return parse_family(text);
    } catch (const ParseError& e) {
      throw UsageError(where, e.what());
    }
  }

  const json& j_;
};

json set_json(const VertexSet& s) {
  json a = json::array();
  s.for_each([&](unsigned v) { a.push_back(v + 1); });
  return a;
}

json family_json(const std::vector<VertexSet>& sets) {
  json a = json::array();
  for (const auto& s : sets) a.push_back(set_json(s));
  return a;
}

void put_rational(json& j, const std::string& key, const Rational& r) {
  j[key] = r.str();
  j[key + "_approx"] = to_double(r);
}

json coverage_json(const Coverage& c) {
  json j;
  j["exact"] = c.exact;
  j["relevant"] = c.relevant;
  if (c.exact) {
    put_rational(j, "value", c.value);
  } else {
    j["estimate"] = c.estimate.estimate;
    j["ci"] = {c.estimate.estimate - c.estimate.half_width, c.estimate.estimate + c.estimate.half_width};
    j["trials"] = c.estimate.trials;
  }
  return j;
}

CoverageMode coverage_mode(const Fields& f, const SeedSpec& seed) {
  if (f.choice("mode", {"exact", "mc"}, "exact") == "exact") return ExactMode{};
  return MonteCarloMode{f.u64("trials", 20000), seed};
}

// Parameter checks inside the modules surface as usage errors on params.
template <typename Fn>
auto with_params(Fn&& fn) {
  try {
    return fn();
  } catch (const InfeasibleError&) {
    throw;
  } catch (const ParameterError& e) {
    throw UsageError("params", e.what());
  }
}

Outcome run_sample(const Fields& f, const SeedSpec& seed) {
  const unsigned n = f.uint("n");
  const std::string dist = f.choice("dist", {"negative", "positive"}, "negative");
  const std::uint64_t count = f.u64("count", 1);
  if (count == 0) throw UsageError(Fields::path("count"), "must be positive");
  Outcome out;
  json& r = out.result;
  unsigned clique = 0;
  Distribution d;
  if (dist == "negative") {
    const NegDistParams neg = with_params([&] {
      return f.has("p") ? NegDistParams::with_edge_probability(n, to_double(f.rational("p")))
                        : NegDistParams::from_alpha(n, f.uint("alpha"));
    });
    clique = f.uint("clique_size", neg.alpha);
    r["p"] = neg.p;
    d = neg;
  } else {
    d = with_params([&] { return PosDistParams::make(n, f.uint("beta")); });
    clique = f.uint("clique_size", 0);
  }
  if (clique > n) throw UsageError(Fields::path("clique_size"), "exceeds n");

  struct Tally {
    double edges = 0.0;
    std::uint64_t with_clique = 0;
  };
  const Tally t = parallel_reduce<Tally>(
      count,
      [&](std::uint64_t begin, std::uint64_t end) {
        Tally local;
        for (std::uint64_t i = begin; i < end; ++i) {
          Rng rng = Rng::for_trial(seed, i);
          const Graph g = sample(d, rng);
          local.edges += static_cast<double>(g.edge_count());
          if (clique > 0 && contains_clique(g, clique)) ++local.with_clique;
        }
        return local;
      },
      [](Tally a, const Tally& b) {
        a.edges += b.edges;
        a.with_clique += b.with_clique;
        return a;
      });
  r["n"] = n;
  r["dist"] = dist;
  r["count"] = count;
  r["mean_edges"] = t.edges / static_cast<double>(count);
  if (clique > 0) {
    r["clique_size"] = clique;
    r["clique_fraction"] = static_cast<double>(t.with_clique) / static_cast<double>(count);
  }
  if (count <= 16) {
    r["graphs"] = json::array();
    for (std::uint64_t i = 0; i < count; ++i) {
      Rng rng = Rng::for_trial(seed, i);
      r["graphs"].push_back(to_graph_text(sample(d, rng)));
    }
  }
  return out;
}

// Either planned from (n, alpha, beta) or pinned by explicit ell, m, tau so
// a beta sweep can reuse one circuit.
DistinguisherParams distinguisher_params(const Fields& f, const SeedSpec& seed) {
  const unsigned n = f.uint("n");
  const unsigned alpha = f.uint("alpha");
  const unsigned beta = f.uint("beta");
  if (f.has("ell") || f.has("m") || f.has("tau")) {
    DistinguisherParams p;
    p.n = n;
    p.alpha = alpha;
    p.beta = beta;
    p.ell = f.uint("ell");
    p.m = f.uint("m");
    p.tau = f.uint("tau");
    p.seed = seed;
    return p;
  }
  return with_params([&] { return plan_distinguisher(n, alpha, beta, seed); });
}

Outcome run_build_distinguisher(const Fields& f, const SeedSpec& seed) {
  Outcome out;
  json& r = out.result;
  DistinguisherParams p;
  try {
    p = distinguisher_params(f, seed);
  } catch (const InfeasibleError& e) {
    r["feasible"] = false;
    r["best_ratio"] = e.best_ratio();
    r["message"] = e.what();
    out.passed = false;
    return out;
  }
  const MonotoneCircuit c = with_params([&] { return build_distinguisher(p); });
  r["feasible"] = true;
  r["n"] = p.n;
  r["alpha"] = p.alpha;
  r["beta"] = p.beta;
  r["ell"] = p.ell;
  r["m"] = p.m;
  r["tau"] = p.tau;
  r["q"] = p.q;
  r["p_ind"] = p.p_ind;
  r["gamma"] = p.gamma;
  r["circuit_size"] = c.size();
  if (f.has("circuit_out")) {
    const std::string path = f.str("circuit_out", "");
    std::ofstream o(path, std::ios::binary);
    if (!o) throw UsageError(Fields::path("circuit_out"), "cannot write " + path);
    o << to_mono_text(c);
    r["circuit_out"] = path;
  }
  return out;
}

Outcome run_measure_success(const Fields& f, const SeedSpec& seed) {
  Outcome out;
  DistinguisherParams p;
  try {
    p = distinguisher_params(f, seed);
  } catch (const InfeasibleError& e) {
    out.result["feasible"] = false;
    out.result["best_ratio"] = e.best_ratio();
    out.passed = false;
    return out;
  }
  const SuccessReport rep = with_params([&] { return measure_success(p, f.u64("trials", 1000)); });
  out.result = json::parse(rep.to_json());
  out.result["feasible"] = p.feasible();
  out.result["passes"] = rep.passes();
  out.passed = rep.passes();
  return out;
}

Outcome run_check_robust(const Fields& f, const SeedSpec& seed) {
  const SetFamily fam = f.family("family");
  const VertexSet core = f.has("core") ? f.set("core", fam.n()) : fam.intersection();
  const RobustnessKind kind =
      f.choice("kind", {"set", "clique"}, "clique") == "set" ? RobustnessKind::kSet : RobustnessKind::kClique;
  const auto v = with_params(
      [&] { return check_robust(fam, core, f.rational("p"), f.rational("eps"), kind, coverage_mode(f, seed)); });
  Outcome out;
  out.result["kind"] = kind == RobustnessKind::kSet ? "set" : "clique";
  out.result["core"] = set_json(core);
  out.result["coverage"] = coverage_json(v.probability);
  put_rational(out.result, "threshold", v.threshold);
  out.result["verdict"] = verdict_name(v.verdict);
  out.passed = v.verdict == Verdict::kPass;
  return out;
}

Outcome run_find_sunflower(const Fields& f) {
  const SetFamily fam = f.family("family");
  const unsigned k = f.uint("k");
  const auto w = with_params([&] { return find_k_sunflower(fam, k, f.u64("budget", kDefaultSearchBudget)); });
  Outcome out;
  out.result["k"] = k;
  out.result["family_size"] = fam.size();
  out.result["found"] = w.has_value();
  if (w) {
    json petals = json::array();
    for (std::size_t i : w->petal_indices) petals.push_back(i + 1);
    out.result["petals"] = petals;
    out.result["core"] = set_json(w->core);
  }
  out.passed = w.has_value();
  return out;
}

json replacements_json(const std::vector<Replacement>& log, const Rational& p, Rational& total_error,
                       bool& within_eps, const Rational& eps) {
  json a = json::array();
  for (const auto& rep : log) {
    json j;
    j["petals"] = family_json(rep.petals.sets());
    j["core"] = set_json(rep.core);
    j["coverage"] = coverage_json(rep.coverage);
    if (rep.coverage.exact) {
      const Rational err = replacement_negative_error(rep, p);
      put_rational(j, "negative_error", err);
      total_error += err;
      if (err > eps) within_eps = false;
    }
    a.push_back(std::move(j));
  }
  return a;
}

Outcome run_closure(const Fields& f, const SeedSpec& seed) {
  const SetFamily fam = f.family("family");
  ClosureParams cp;
  cp.p = f.rational("p");
  cp.eps = f.rational("eps");
  cp.mc_trials = f.u64("trials", cp.mc_trials);
  cp.seed = seed;
  const ClosureResult res = with_params([&] { return closure(Approximator::from_family(fam), cp); });
  Outcome out;
  Rational total = 0;
  bool within = true;
  out.result["terms"] = family_json(res.result.terms());
  out.result["replacements"] = replacements_json(res.log, cp.p, total, within, cp.eps);
  out.result["replacement_count"] = res.log.size();
  put_rational(out.result, "negative_error_total", total);
  out.result["within_eps"] = within;
  out.passed = within;
  return out;
}

MonotoneCircuit circuit_param(const Fields& f) {
  std::string text;
  std::string where;
  if (f.has("circuit")) {
    where = Fields::path("circuit");
    text = f.str("circuit", "");
  } else {
    if (!f.has("circuit_file")) throw UsageError(Fields::path("circuit"), "missing required field");
    where = Fields::path("circuit_file");
    text = read_file(f.str("circuit_file", ""), where);
  }
  try {
    return parse_mono(text);
  } catch (const ParseError& e) {
    throw UsageError(where, e.what());
  }
}

Outcome run_approximate(const Fields& f, const SeedSpec& seed) {
  const MonotoneCircuit c = circuit_param(f);
  const std::string kind = f.choice("compression", {"standard", "identity", "trim"}, "standard");
  const unsigned cut = f.uint("c", 2);
  CompressionParams params = with_params([&] {
    if (kind == "identity") return CompressionParams::identity();
    if (kind == "trim") return CompressionParams::trim_only(cut);
    return CompressionParams::standard(f.rational("p"), f.rational("eps"), cut);
  });
  if (params.closure) {
    params.closure->mc_trials = f.u64("trials", params.closure->mc_trials);
    params.closure->seed = seed.substream(0);
  }
  const ApproximationResult res = with_params([&] { return approximate_circuit(c, params); });
  Outcome out;
  json& r = out.result;
  r["n"] = c.n_vertices();
  r["gates"] = c.size();
  r["compression"] = kind;
  r["output_terms"] = family_json(res.output.terms());
  json hist = json::array();
  for (auto h : res.output.size_histogram()) hist.push_back(h);
  r["histogram"] = hist;
  const std::size_t count = res.trace.replacement_count();
  r["replacement_count"] = count;
  const double bound = std::pow(static_cast<double>(c.n_vertices()), 2.0 * cut);
  r["replacement_bound"] = bound;
  out.passed = static_cast<double>(count) <= bound;
  if (f.has("alpha") && f.has("beta")) {
    const auto errors = with_params([&] {
      return estimate_step_errors(res.trace, NegDistParams::from_alpha(c.n_vertices(), f.uint("alpha")),
                                  PosDistParams::make(c.n_vertices(), f.uint("beta")), f.u64("error_trials", 2000),
                                  seed.substream(1));
    });
    double plus = 0.0, minus = 0.0;
    for (const auto& e : errors) {
      plus += e.zeta_plus.estimate;
      minus += e.zeta_minus.estimate;
    }
    r["zeta_plus_total"] = plus;
    r["zeta_minus_total"] = minus;
  }
  if (f.has("trace_out")) {
    const std::string path = f.str("trace_out", "");
    std::ofstream o(path, std::ios::binary);
    if (!o) throw UsageError(Fields::path("trace_out"), "cannot write " + path);
    o << res.trace.to_json_lines();
    r["trace_out"] = path;
  }
  return out;
}

Lifting lifting_param(const Fields& f, const SetFamily& fam, const SeedSpec& seed) {
  if (f.has("lifting_json")) {
    const json& v = f.at("lifting_json");
    try {
      return lifting_from_json(v.is_string() ? v.get<std::string>() : v.dump());
    } catch (const ParseError& e) {
      throw UsageError(Fields::path("lifting_json"), e.what());
    }
  }
  const std::string name = f.choice("lifting", {"left", "square", "link", "random"}, "square");
  return with_params([&] {
    if (name == "link") return lifting_link(fam, f.has("core") ? f.set("core", fam.n()) : VertexSet{});
    const unsigned ell = f.uint("ell");
    if (name == "left") return lifting_left(fam, ell);
    if (name == "square") return lifting_square(fam, ell);
    Rng rng = Rng::for_trial(seed, 0);
    return random_proper_lifting(fam, ell, rng);
  });
}

Outcome run_compare_processes(const Fields& f, const SeedSpec& seed) {
  const SetFamily fam = f.family("family");
  const Lifting phi = lifting_param(f, fam, seed);
  const std::vector<Rational> ps = f.rationals("p");
  Outcome out;
  json& r = out.result;
  r["proper"] = validate_proper(phi);
  r["ell"] = phi.ell();
  r["k"] = phi.k();
  if (f.choice("mode", {"exact", "mc"}, "exact") == "exact") {
    const auto reports = with_params([&] { return verify_comparison_chain(phi, ps); });
    json per_p = json::array();
    bool ok = true;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      json j;
      j["p"] = ps[i].str();
      json chain = json::array();
      for (const auto& v : reports[i].chain) chain.push_back(v.str());
      j["chain"] = chain;
      put_rational(j, "lhs", reports[i].lhs);
      put_rational(j, "rhs", reports[i].rhs);
      j["non_decreasing"] = reports[i].non_decreasing;
      j["lhs_le_rhs"] = reports[i].lhs_le_rhs;
      ok = ok && reports[i].non_decreasing && reports[i].lhs_le_rhs;
      per_p.push_back(std::move(j));
    }
    r["results"] = per_p;
    out.passed = ok;
  } else {
    const std::uint64_t trials = f.u64("trials", 20000);
    json per_p = json::array();
    bool ok = true;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const auto d = CellDistribution::bernoulli(ps[i]);
      const auto lhs = with_params(
          [&] { return expected_sup(lifting_left(fam, phi.ell()), d, SupMonteCarlo{trials, seed.substream(2 * i)}); });
      const auto rhs =
          with_params([&] { return expected_sup(phi, d, SupMonteCarlo{trials, seed.substream(2 * i + 1)}); });
      json j;
      j["p"] = ps[i].str();
      j["lhs"] = lhs.estimate;
      j["lhs_half_width"] = lhs.half_width;
      j["rhs"] = rhs.estimate;
      j["rhs_half_width"] = rhs.half_width;
      const bool consistent = lhs.estimate - lhs.half_width <= rhs.estimate + rhs.half_width;
      j["consistent"] = consistent;
      ok = ok && consistent;
      per_p.push_back(std::move(j));
    }
    r["results"] = per_p;
    out.passed = ok;
  }
  return out;
}

Outcome run_verify_lemma(const Fields& f, const SeedSpec& seed) {
  const std::string lemma =
      f.choice("lemma", {"sunflower-rcs", "rs-implies-rcs", "erdos-rado", "comparison", "bridge"}, "sunflower-rcs");
  Outcome out;
  json& r = out.result;
  r["lemma"] = lemma;
  if (lemma == "sunflower-rcs") {
    const auto rep = with_params(
        [&] { return verify_sunflower_is_rcs(f.uint("ell"), f.uint("k"), f.uint("c", 0), f.rational("p")); });
    put_rational(r, "failure", rep.failure);
    put_rational(r, "closed_form", rep.closed_form);
    r["bound"] = rep.bound;
    r["within_bound"] = rep.within_bound;
    out.passed = rep.within_bound && rep.failure == rep.closed_form;
  } else if (lemma == "rs-implies-rcs") {
    const std::uint64_t target = f.u64("count", 100);
    const auto rep = with_params([&] {
      return verify_rs_implies_rcs(target, f.uint("max_n", 8), f.uint("ell"), f.rational("p"), f.rational("eps"), seed,
                                   f.u64("max_attempts", 1'000'000));
    });
    r["generated"] = rep.generated;
    r["premise_satisfied"] = rep.premise_satisfied;
    r["counterexamples"] = rep.counterexamples.size();
    r["reached_target"] = rep.premise_satisfied >= target;
    json ce = json::array();
    for (const auto& fam : rep.counterexamples) ce.push_back(to_family_text(fam));
    r["counterexample_families"] = ce;
    out.passed = rep.counterexamples.empty();
  } else if (lemma == "erdos-rado") {
    const auto rep = with_params([&] {
      return verify_erdos_rado(f.uint("ell"), f.uint("k"), f.uint("min_n"), f.uint("max_n"), f.u64("count", 1000),
                               seed, f.u64("family_size", 0));
    });
    r["family_size"] = rep.family_size;
    r["families_checked"] = rep.families_checked;
    r["without_sunflower"] = rep.without_sunflower.size();
    out.passed = rep.without_sunflower.empty();
  } else if (lemma == "comparison") {
    const unsigned n = f.uint("n");
    const unsigned k = f.uint("k");
    const unsigned ell = f.uint("ell");
    const std::uint64_t count = f.u64("count", 50);
    const std::vector<Rational> ps = f.rationals("p");
    std::uint64_t checked = 0, violations = 0, skipped = 0;
    for (std::uint64_t t = 0; t < count; ++t) {
      Rng rng = Rng::for_trial(seed, t);
      const SetFamily fam = with_params([&] { return random_uniform_family(n, k, rng); });
      const Lifting phi = with_params([&] { return random_proper_lifting(fam, ell, rng); });
      try {
        for (const auto& rep : verify_comparison_chain(phi, ps)) {
          ++checked;
          if (!rep.non_decreasing || !rep.lhs_le_rhs) ++violations;
        }
      } catch (const CapacityError&) {
        ++skipped;
      }
    }
    r["checked"] = checked;
    r["skipped_capacity"] = skipped;
    r["violations"] = violations;
    out.passed = violations == 0;
  } else {
    const SetFamily fam = f.family("family");
    const auto rep = with_params([&] { return verify_bridge(fam, f.rational("p"), f.rational("eps")); });
    r["ell"] = rep.ell;
    r["k"] = rep.k;
    r["premise"] = rep.premise;
    put_rational(r, "set_coverage", rep.set_coverage);
    put_rational(r, "lhs", rep.lhs);
    put_rational(r, "rhs", rep.rhs);
    put_rational(r, "target", rep.target);
    put_rational(r, "p0", rep.p0);
    r["lhs_holds"] = rep.lhs_holds;
    r["rhs_holds"] = rep.rhs_holds;
    r["p0_holds"] = rep.p0_holds;
    out.passed = !rep.premise || (rep.lhs_holds && rep.rhs_holds && rep.p0_holds);
  }
  return out;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

void flatten(const std::string& prefix, const json& j, std::map<std::string, std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(prefix + "." + k, v, out);
  } else if (j.is_string()) {
    out[prefix] = j.get<std::string>();
  } else {
    out[prefix] = j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

const char* command_name(Command c) {
  for (const auto& [cmd, name] : kCommandNames)
    if (cmd == c) return name;
  return "?";
}

std::optional<Command> command_from_name(std::string_view name) {
  for (const auto& [cmd, n] : kCommandNames)
    if (name == n) return cmd;
  return std::nullopt;
}

const std::vector<Command>& all_commands() {
  static const std::vector<Command> all = [] {
    std::vector<Command> v;
    for (const auto& entry : kCommandNames) v.push_back(entry.first);
    return v;
  }();
  return all;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw UsageError("", "config must be a JSON object");
  if (!j.contains("command")) throw UsageError("command", "missing required field");
  if (!j["command"].is_string()) throw UsageError("command", "expected a string");
  ExperimentConfig c;
  const auto cmd = command_from_name(j["command"].get<std::string>());
  if (!cmd) throw UsageError("command", "unknown command '" + j["command"].get<std::string>() + "'");
  c.command = *cmd;
  if (j.contains("seed")) {
    if (!is_count(j["seed"])) throw UsageError("seed", "expected a non-negative integer");
    c.master_seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw UsageError("params", "expected an object");
    c.params = j["params"];
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw UsageError("output", "expected a path string");
    c.output_path = j["output"].get<std::string>();
  }
  for (const auto& [key, value] : j.items())
    if (key != "command" && key != "seed" && key != "params" && key != "output")
      throw UsageError(key, "unknown field");
  return c;
}

json ExperimentConfig::to_json() const {
  json j;
  j["command"] = command_name(command);
  j["seed"] = master_seed;
  j["params"] = params;
  if (!output_path.empty()) j["output"] = output_path;
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  const std::string text = read_file(path, "config");
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError("config", std::string("invalid JSON: ") + e.what());
  }
  return ExperimentConfig::from_json(j);
}

std::string config_hash(const ExperimentConfig& config) {
  json j;
  j["command"] = command_name(config.command);
  j["seed"] = config.master_seed;
  j["params"] = config.params;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Outcome execute(const ExperimentConfig& config) {
  const Fields f(config.params);
  const SeedSpec seed{config.master_seed, 0};
  switch (config.command) {
    case Command::kSample: return run_sample(f, seed);
    case Command::kBuildDistinguisher: return run_build_distinguisher(f, seed);
    case Command::kMeasureSuccess: return run_measure_success(f, seed);
    case Command::kCheckRobust: return run_check_robust(f, seed);
    case Command::kFindSunflower: return run_find_sunflower(f);
    case Command::kClosure: return run_closure(f, seed);
    case Command::kApproximate: return run_approximate(f, seed);
    case Command::kCompareProcesses: return run_compare_processes(f, seed);
    case Command::kVerifyLemma: return run_verify_lemma(f, seed);
  }
  throw Error("unhandled command");
}

json RunRecord::to_json() const {
  json j;
  j["version"] = version;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  j["started"] = started;
  j["finished"] = finished;
  j["params"] = params;
  j["passed"] = passed;
  j["result"] = result;
  return j;
}

RunRecord RunRecord::from_json(const json& j) {
  auto need = [&](const char* key, bool ok) {
    if (!j.contains(key) || !ok) throw ParseError(0, std::string("run record: bad or missing '") + key + "'");
  };
  if (!j.is_object()) throw ParseError(0, "run record must be an object");
  need("version", j.contains("version") && j["version"].is_string());
  need("command", j.contains("command") && j["command"].is_string());
  need("config_hash", j.contains("config_hash") && j["config_hash"].is_string());
  need("seed", j.contains("seed") && j["seed"].is_number_unsigned());
  need("started", j.contains("started") && j["started"].is_string());
  need("finished", j.contains("finished") && j["finished"].is_string());
  need("params", j.contains("params") && j["params"].is_object());
  need("passed", j.contains("passed") && j["passed"].is_boolean());
  need("result", j.contains("result") && j["result"].is_object());
  RunRecord r;
  r.version = j["version"];
  r.command = j["command"];
  r.config_hash = j["config_hash"];
  r.seed = j["seed"];
  r.started = j["started"];
  r.finished = j["finished"];
  r.params = j["params"];
  r.passed = j["passed"];
  r.result = j["result"];
  return r;
}

RunRecord run(const ExperimentConfig& config) {
  RunRecord r;
  r.command = command_name(config.command);
  r.config_hash = config_hash(config);
  r.seed = config.master_seed;
  r.params = config.params;
  r.started = utc_now();
  const Outcome o = execute(config);
  r.finished = utc_now();
  r.passed = o.passed;
  r.result = o.result;
  if (!config.output_path.empty()) append_record(config.output_path, r);
  return r;
}

void append_record(const std::string& path, const RunRecord& record) {
  static std::mutex mu;
  const std::string line = record.to_line() + "\n";
  std::lock_guard<std::mutex> lock(mu);
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot append to " + path);
  out << line;
  if (!out.flush()) throw Error("write to " + path + " failed");
}

int exit_code(const RunRecord& record) { return record.passed ? 0 : 2; }

std::string ReportTable::to_csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
    out += "\n";
  };
  if (!columns.empty()) line(columns);
  for (const auto& row : rows) line(row);
  return out;
}

std::string ReportTable::to_json() const {
  json a = json::array();
  for (const auto& row : rows) {
    json o = json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = row[i];
    a.push_back(std::move(o));
  }
  return a.dump();
}

ReportTable build_report(std::istream& log) {
  static const std::vector<std::string> kFixed = {"command", "config_hash", "seed", "passed",
                                                  "started", "finished",    "version"};
  ReportTable table;
  std::vector<std::map<std::string, std::string>> flat;
  std::set<std::string> extra;
  std::string line;
  while (std::getline(log, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    RunRecord r;
    try {
      r = RunRecord::from_json(json::parse(line));
    } catch (const std::exception&) {
      ++table.skipped;
      continue;
    }
    std::map<std::string, std::string> cells;
    cells["command"] = r.command;
    cells["config_hash"] = r.config_hash;
    cells["seed"] = std::to_string(r.seed);
    cells["passed"] = r.passed ? "true" : "false";
    cells["started"] = r.started;
    cells["finished"] = r.finished;
    cells["version"] = r.version;
    std::map<std::string, std::string> leaves;
    flatten("params", r.params, leaves);
    flatten("result", r.result, leaves);
    for (auto& [k, v] : leaves) {
      extra.insert(k);
      cells[k] = std::move(v);
    }
    flat.push_back(std::move(cells));
  }
  if (flat.empty()) return table;
  table.columns = kFixed;
  table.columns.insert(table.columns.end(), extra.begin(), extra.end());
  for (const auto& cells : flat) {
    std::vector<std::string> row;
    for (const auto& c : table.columns) {
      const auto it = cells.find(c);
      row.push_back(it == cells.end() ? "" : it->second);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace cliquelab
