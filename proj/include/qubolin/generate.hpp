#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qubolin/build.hpp"
#include "qubolin/qubo.hpp"
#include "qubolin/simplex.hpp"

namespace qubolin {

enum class BalanceRule { kAllHalf, kHalfIntegralSet };

struct GeneratorConfig {
  int n = 10;
  long long c_min = -10, c_max = 10;
  long long q_min = -20, q_max = 20;
  std::uint64_t seed = 1;
  BalanceRule rule = BalanceRule::kAllHalf;
  int max_attempts = 10000;
};

struct BalancedTrace {
  int attempts = 0;   // accepted draw included
  int rejected = 0;
};

namespace detail {

inline QuboInstance draw_symmetric(std::mt19937_64& rng, int n, long long c_min, long long c_max,
                                   long long q_min, long long q_max) {
  QuboInstance inst = QuboInstance::zeros(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) inst.set_pair(i, j, uniform_int(rng, q_min, q_max));
  for (int i = 0; i < n; ++i) inst.c[i] = uniform_int(rng, c_min, c_max);
  return inst;
}

inline bool balance_accepts(const QuboInstance& inst, BalanceRule rule) {
  const MilpModel gw = build(ModelId::GW, inst);
  const LpResult lp = solve_lp(gw);
  if (lp.status != LpStatus::kOptimal) return false;
  bool any_half = false;
  for (int i = 0; i < inst.n; ++i) {
    const double x = lp.primal[i];
    const bool is_half = std::fabs(x - 0.5) <= 1e-7;
    if (rule == BalanceRule::kAllHalf) {
      if (!is_half) return false;
    } else {
      const bool is_int = std::fabs(x) <= 1e-7 || std::fabs(x - 1.0) <= 1e-7;
      if (!is_half && !is_int) return false;
    }
    any_half = any_half || is_half;
  }
  return rule == BalanceRule::kAllHalf || any_half;
}

}  // namespace detail

/// Draws instances until the standard linearization's LP relaxation has the
/// required half-integral x (all 1/2 by default). Rejected draws advance the
/// same seeded stream, so the accepted instance is a function of the seed.
inline QuboInstance generate_balanced(const GeneratorConfig& cfg, BalancedTrace* trace = nullptr) {
  if (cfg.n < 2) throw BuildError("balanced generation needs n >= 2");
  if (cfg.c_min > cfg.c_max || cfg.q_min > cfg.q_max) throw BuildError("empty coefficient range");
  std::mt19937_64 rng(cfg.seed);
  for (int attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
    QuboInstance inst =
        detail::draw_symmetric(rng, cfg.n, cfg.c_min, cfg.c_max, cfg.q_min, cfg.q_max);
    inst.id = "bal-n" + std::to_string(cfg.n) + "-s" + std::to_string(cfg.seed);
    if (detail::balance_accepts(inst, cfg.rule)) {
      if (trace) {
        trace->attempts = attempt;
        trace->rejected = attempt - 1;
      }
      return inst;
    }
  }
  throw SolveError("balanced generation: attempts exhausted (" +
                   std::to_string(cfg.max_attempts) + ")");
}

/// Uniform integer instance with a structural density: each unordered pair is
/// selected with probability `density` and then draws a nonzero value (zero
/// draws are redrawn so the nonzero pattern matches the density).
inline QuboInstance generate_uniform(int n, long long c_min, long long c_max, long long q_min,
                                     long long q_max, double density, std::uint64_t seed) {
  if (density <= 0.0 || density > 1.0) throw BuildError("density must be in (0,1]");
  if (q_min > q_max || c_min > c_max) throw BuildError("empty coefficient range");
  if (q_min == 0 && q_max == 0) throw BuildError("q range admits only zero");
  std::mt19937_64 rng(seed);
  QuboInstance inst = QuboInstance::zeros(n);
  inst.id = "rnd-n" + std::to_string(n) + "-s" + std::to_string(seed);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (density < 1.0 && uniform_real01(rng) >= density) continue;
      long long v = 0;
      while (v == 0) v = uniform_int(rng, q_min, q_max);
      inst.set_pair(i, j, v);
    }
  for (int i = 0; i < n; ++i) inst.c[i] = uniform_int(rng, c_min, c_max);
  return inst;
}

}  // namespace qubolin
