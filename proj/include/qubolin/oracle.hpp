#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qubolin/branch_bound.hpp"
#include "qubolin/build.hpp"
#include "qubolin/qubo.hpp"

namespace qubolin {

struct BruteForceResult {
  long long value = 0;
  std::vector<std::vector<int>> argmax;  // all maximizers, capped
  bool argmax_truncated = false;
};

/// Exact optimum by Gray-code enumeration of all 2^n assignments; each flip
/// updates the objective in O(n) integer operations.
inline BruteForceResult brute_force_opt(const QuboInstance& inst, int n_cap = 24,
                                        int argmax_cap = 64) {
  if (inst.n > n_cap) throw SolveError("brute_force_opt: instance exceeds cap");
  const int n = inst.n;
  std::vector<int> x(n, 0);
  long long f = 0;
  BruteForceResult best;
  best.value = 0;
  std::vector<std::uint32_t> masks{0};
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    int b = 0;
    while (!((k >> b) & 1)) ++b;  // Gray code: flip the lowest set bit position of k
    long long delta = inst.c[b];
    x[b] ^= 1;
    for (int j = 0; j < n; ++j)
      if (j != b && x[j]) delta += inst.q[b][j] + inst.q[j][b];
    f += x[b] ? delta : -delta;
    if (f > best.value) {
      best.value = f;
      masks.clear();
    }
    if (f == best.value) {
      std::uint32_t mask = 0;
      for (int j = 0; j < n; ++j)
        if (x[j]) mask |= 1u << j;
      if (static_cast<int>(masks.size()) < argmax_cap)
        masks.push_back(mask);
      else
        best.argmax_truncated = true;
    }
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  for (std::uint32_t mask : masks) {
    std::vector<int> v(n);
    for (int j = 0; j < n; ++j) v[j] = (mask >> j) & 1;
    best.argmax.push_back(std::move(v));
  }
  return best;
}

enum class Verdict { kValidConfirmed, kInvalidWitness, kInconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kValidConfirmed: return "VALID_CONFIRMED";
    case Verdict::kInvalidWitness: return "INVALID_WITNESS";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct VerificationReport {
  ModelId model;
  Verdict verdict = Verdict::kInconclusive;
  int instances_tested = 0;
  std::vector<std::uint64_t> seeds;
  std::string detail;
  // witness, when invalid
  std::optional<QuboInstance> witness_instance;
  long long witness_model_objective = 0;
  long long witness_true_optimum = 0;
  /// True when the witness is an optimal solution whose recomputed objective
  /// disagrees with the reported one (value-equal but solution-wrong model).
  bool witness_is_solution_mismatch = false;
};

/// Solves the MILP on each instance and compares against the brute-force
/// optimum, exactly in integers. The first mismatch becomes the witness.
/// Confirmation is always scoped to the tested set.
inline VerificationReport verify_model(ModelId id, const std::vector<QuboInstance>& suite,
                                       const WeightSet& w = {}, int brute_cap = 24) {
  VerificationReport rep;
  rep.model = id;
  BuildOptions opts;
  opts.allow_invalid = true;  // the verifier exists to probe the invalid ones
  for (const auto& inst : suite) {
    ++rep.instances_tested;
    try {
      const MilpModel m = build(id, inst, w, opts);
      const MilpResult r = solve_milp(m, inst);
      if (r.status != MilpStatus::kOptimal) {
        rep.verdict = Verdict::kInconclusive;
        rep.detail = "solver did not reach optimality on " + inst.id;
        return rep;
      }
      const BruteForceResult bf = brute_force_opt(inst, brute_cap);
      const long long model_obj = std::llround(r.model_objective);
      if (model_obj != bf.value) {
        rep.verdict = Verdict::kInvalidWitness;
        rep.witness_instance = inst;
        rep.witness_model_objective = model_obj;
        rep.witness_true_optimum = bf.value;
        rep.detail = "model optimum " + std::to_string(model_obj) + " vs brute-force " +
                     std::to_string(bf.value) + " on " + inst.id;
        return rep;
      }
      if (r.recomputed_qubo != model_obj) {
        // Value matches the true optimum but the reported solution does not
        // recompute to it: the optimal solution is not a QUBO optimizer.
        rep.verdict = Verdict::kInvalidWitness;
        rep.witness_instance = inst;
        rep.witness_model_objective = model_obj;
        rep.witness_true_optimum = r.recomputed_qubo;
        rep.witness_is_solution_mismatch = true;
        rep.detail = "optimal solution recomputes to " + std::to_string(r.recomputed_qubo) +
                     " instead of " + std::to_string(model_obj) + " on " + inst.id;
        return rep;
      }
    } catch (const std::exception& e) {
      rep.verdict = Verdict::kInconclusive;
      rep.detail = std::string("failure on ") + inst.id + ": " + e.what();
      return rep;
    }
  }
  rep.verdict = Verdict::kValidConfirmed;
  rep.detail = "matched brute force on all " + std::to_string(rep.instances_tested) + " instances";
  return rep;
}

/// Randomized counterexample search for invalid formulations without a known
/// witness instance: seeded instances with small coefficients, and for
/// weighted aggregations random positive integer weights as well. Exhausting
/// the budget yields INCONCLUSIVE, never VALID.
inline VerificationReport search_counterexample(ModelId id, std::uint64_t seed, int attempts = 10000,
                                                int n_min = 3, int n_max = 6) {
  VerificationReport rep;
  rep.model = id;
  rep.seeds.push_back(seed);
  std::mt19937_64 rng(seed);
  for (int a = 0; a < attempts; ++a) {
    const int n = static_cast<int>(uniform_int(rng, n_min, n_max));
    QuboInstance inst = QuboInstance::zeros(n);
    inst.id = "search-" + std::to_string(a);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inst.set_pair(i, j, uniform_int(rng, -10, 10));
    for (int i = 0; i < n; ++i) inst.c[i] = uniform_int(rng, -10, 10);
    WeightSet w;
    w.mode = WeightMode::kCustom;
    const IndexSets sets = index_sets(inst);
    for (const auto& [kind, i, j] : required_weights(id, sets))
      w.table(kind)[{i, j}] = static_cast<double>(uniform_int(rng, 1, 7));
    VerificationReport one = verify_model(id, {inst}, w);
    rep.instances_tested += one.instances_tested;
    if (one.verdict == Verdict::kInvalidWitness) {
      one.instances_tested = rep.instances_tested;
      one.seeds = rep.seeds;
      return one;
    }
  }
  rep.verdict = Verdict::kInconclusive;
  rep.detail = "no witness found in " + std::to_string(attempts) + " random instances";
  return rep;
}

struct PrecisionReport {
  bool precise = true;
  // witness of optimality restriction, when not precise
  std::vector<double> witness;     // full variable assignment
  int wi = 0, wj = 0;              // offending pair, 1-based
  double witness_model_objective = 0.0;
  long long witness_recomputed = 0;
};

/// A model is precise when no feasible integral solution admits a completion
/// with y_ij away from x_i x_j; decided by full enumeration (n <= cap).
inline PrecisionReport check_precision(ModelId id, const QuboInstance& inst,
                                       const WeightSet& w = {}, int n_cap = 4) {
  const MilpModel m = build(id, inst, w, {.allow_invalid = true});
  PrecisionReport rep;
  for (const auto& entry : feasible_integral_enumeration(m, inst, n_cap)) {
    if (!entry.has_nonproduct) continue;
    rep.precise = false;
    rep.witness = entry.completion;
    rep.wi = entry.wi;
    rep.wj = entry.wj;
    rep.witness_model_objective = entry.witness_objective;
    std::vector<int> x(m.num_x);
    for (int i = 0; i < m.num_x; ++i) x[i] = static_cast<int>(std::llround(entry.completion[i]));
    rep.witness_recomputed = qubo_value(inst, x);
    return rep;
  }
  return rep;
}

}  // namespace qubolin
