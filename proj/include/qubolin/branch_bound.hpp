#pragma once

#include <chrono>
#include <cmath>
#include <deque>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "qubolin/milp.hpp"
#include "qubolin/qubo.hpp"
#include "qubolin/simplex.hpp"

namespace qubolin {

enum class MilpStatus { kOptimal, kFeasibleTimeout, kInfeasible };

inline const char* milp_status_name(MilpStatus s) {
  switch (s) {
    case MilpStatus::kOptimal: return "OPTIMAL";
    case MilpStatus::kFeasibleTimeout: return "FEASIBLE_TIMEOUT";
    case MilpStatus::kInfeasible: return "INFEASIBLE";
  }
  return "?";
}

struct MilpOptions {
  double time_limit_s = kInf;
  long node_cap = 1L << 40;
  /// Emulate premature solver termination: return right after the dive
  /// heuristic produces the first incumbent (which completes the rounded x
  /// with any feasible y, not an optimized one).
  bool stop_after_first_incumbent = false;
  std::function<void(const std::string&)> progress;
};

struct MilpResult {
  MilpStatus status = MilpStatus::kInfeasible;
  bool has_incumbent = false;
  std::vector<double> incumbent;    // all model variables
  double model_objective = -kInf;   // incumbent value in the MILP
  long long recomputed_qubo = 0;    // qubo_value of the incumbent's x-part
  double best_bound = kInf;
  double root_lp = -kInf;
  long nodes = 0;
  double elapsed_s = 0.0;
};

namespace detail {

inline double frac_score(double v) {
  const double f = v - std::floor(v);
  return 0.5 - std::fabs(f - 0.5);
}

}  // namespace detail

/// Best-bound branch and bound over the LP relaxation. Branches the most
/// fractional binary x (ties by index); binary y variables are branched only
/// once every x is integral. No cuts, no presolve. Deterministic node counts
/// for fixed inputs.
inline MilpResult solve_milp(const MilpModel& m, const QuboInstance& inst, MilpOptions opts = {}) {
  if (m.relaxation_only) throw SolveError("model was built for LP study only");
  if (!m.fingerprint.empty() && m.fingerprint != inst.fingerprint())
    throw SolveError("model/instance fingerprint mismatch");
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  const int nv = static_cast<int>(m.vars.size());
  std::vector<double> lo(nv), up(nv);
  for (int j = 0; j < nv; ++j) lo[j] = m.vars[j].lower, up[j] = m.vars[j].upper;
  std::vector<int> bin;
  for (int j = 0; j < nv; ++j)
    if (m.vars[j].kind == VarKind::kBinary) bin.push_back(j);

  Simplex lp = make_simplex(m);
  MilpResult res;

  auto set_incumbent = [&](const std::vector<double>& vals, double obj) {
    res.has_incumbent = true;
    res.incumbent = vals;
    res.model_objective = obj;
    std::vector<int> x(m.num_x);
    for (int i = 0; i < m.num_x; ++i) x[i] = static_cast<int>(std::llround(vals[i]));
    res.recomputed_qubo = qubo_value(inst, x);
    if (opts.progress)
      opts.progress("event=incumbent objective=" + format_double(obj) +
                    " recomputed=" + std::to_string(res.recomputed_qubo) +
                    " nodes=" + std::to_string(res.nodes));
  };

  LpResult root = lp.solve(&lo, &up);
  if (root.status == LpStatus::kInfeasible) {
    res.status = MilpStatus::kInfeasible;
    res.best_bound = -kInf;
    res.elapsed_s = elapsed();
    return res;
  }
  if (root.status != LpStatus::kOptimal)
    throw SolveError(std::string("root relaxation failed: ") + lp_status_name(root.status));
  res.root_lp = root.objective;
  res.best_bound = root.objective;

  // Dive heuristic: round the root x, complete with any feasible assignment.
  // In forced-stop mode the completion ignores the objective, mirroring the
  // arbitrary quality of a solver's first incumbent.
  {
    std::vector<double> dlo = lo, dup = up;
    for (int i = 0; i < m.num_x; ++i) {
      const double v = std::max(0.0, std::min(1.0, std::llround(root.primal[i]) * 1.0));
      dlo[i] = dup[i] = v;
    }
    Simplex dive = make_simplex(m);
    if (opts.stop_after_first_incumbent)
      for (int j = 0; j < nv; ++j) dive.set_objective(j, 0.0);
    LpResult d = dive.solve(&dlo, &dup);
    if (d.status == LpStatus::kOptimal) {
      bool integral = true;
      for (int j : bin)
        if (std::fabs(d.primal[j] - std::llround(d.primal[j])) > 1e-6) integral = false;
      if (integral) set_incumbent(d.primal, model_objective_at(m, d.primal));
    }
    if (opts.stop_after_first_incumbent) {
      res.status = MilpStatus::kFeasibleTimeout;
      res.nodes = 1;
      res.elapsed_s = elapsed();
      return res;
    }
  }

  struct Node {
    std::vector<std::pair<int, int>> fixes;  // (var, value)
    double bound;
    int depth;
    long seq;
  };
  std::deque<Node> store;
  auto cmp = [&](long a, long b) {
    const Node &na = store[a], &nb = store[b];
    if (na.bound != nb.bound) return na.bound < nb.bound;  // max-heap on bound
    if (na.depth != nb.depth) return na.depth < nb.depth;  // deeper first on ties
    return na.seq > nb.seq;                                // then FIFO
  };
  std::priority_queue<long, std::vector<long>, decltype(cmp)> open(cmp);
  long seq = 0;
  store.push_back({{}, root.objective, 0, seq++});
  open.push(0);

  const double gap_tol = 1e-6;
  bool out_of_budget = false;
  std::vector<double> nlo(nv), nup(nv);

  while (!open.empty()) {
    const long idx = open.top();
    const Node node = store[idx];
    open.pop();
    if (res.has_incumbent && node.bound <= res.model_objective + gap_tol) continue;
    if (elapsed() > opts.time_limit_s || res.nodes >= opts.node_cap) {
      out_of_budget = true;
      res.best_bound = std::max(node.bound, res.has_incumbent ? res.model_objective : -kInf);
      break;
    }
    ++res.nodes;
    nlo = lo;
    nup = up;
    for (const auto& [j, v] : node.fixes) nlo[j] = nup[j] = v;
    LpResult r = lp.solve(&nlo, &nup);
    if (r.status == LpStatus::kInfeasible) continue;
    if (r.status != LpStatus::kOptimal)
      throw SolveError(std::string("node relaxation failed: ") + lp_status_name(r.status));
    if (res.has_incumbent && r.objective <= res.model_objective + gap_tol) continue;
    // Branching variable: most fractional x, then most fractional binary y.
    int branch = -1;
    double best_score = 1e-6;
    for (int j : bin) {
      if (j >= m.num_x) break;
      const double s = detail::frac_score(r.primal[j]);
      if (s > best_score) best_score = s, branch = j;
    }
    if (branch < 0)
      for (int j : bin) {
        if (j < m.num_x) continue;
        const double s = detail::frac_score(r.primal[j]);
        if (s > best_score) best_score = s, branch = j;
      }
    if (branch < 0) {
      if (!res.has_incumbent || r.objective > res.model_objective + 1e-9)
        set_incumbent(r.primal, r.objective);
      continue;
    }
    for (int v : {0, 1}) {
      Node child;
      child.fixes = node.fixes;
      child.fixes.emplace_back(branch, v);
      child.bound = r.objective;
      child.depth = node.depth + 1;
      child.seq = seq++;
      store.push_back(std::move(child));
      open.push(static_cast<long>(store.size()) - 1);
    }
    if (opts.progress && res.nodes % 256 == 0)
      opts.progress("event=progress nodes=" + std::to_string(res.nodes) +
                    " bound=" + format_double(node.bound) + " open=" + std::to_string(open.size()));
  }

  if (out_of_budget) {
    res.status = MilpStatus::kFeasibleTimeout;
  } else {
    res.status = res.has_incumbent ? MilpStatus::kOptimal : MilpStatus::kInfeasible;
    res.best_bound = res.has_incumbent ? res.model_objective : -kInf;
  }
  res.elapsed_s = elapsed();
  return res;
}

/// One enumerated assignment of the model's binary variables, together with a
/// feasible completion of the continuous part and, when one exists, a
/// completion violating y_ij = x_i x_j.
struct EnumEntry {
  std::vector<int> binary_values;  // aligned with the model's binary variables
  std::vector<double> completion;  // all variables
  bool has_nonproduct = false;
  int wi = 0, wj = 0;              // 1-based witness pair
  double wy = 0.0;                 // witness value of y_wi_wj
  double witness_objective = 0.0;  // model objective at the witness completion
};

/// Enumerates every binary assignment (x and integer y), keeps the feasible
/// ones, and for each decides whether some feasible completion has a y
/// variable away from the corresponding product. Continuous ranges are probed
/// with per-variable min/max LPs.
inline std::vector<EnumEntry> feasible_integral_enumeration(const MilpModel& m,
                                                            const QuboInstance& inst,
                                                            int n_cap = 4) {
  if (m.num_x > n_cap) throw SolveError("feasible_integral_enumeration: instance exceeds cap");
  if (!m.fingerprint.empty() && m.fingerprint != inst.fingerprint())
    throw SolveError("model/instance fingerprint mismatch");
  const int nv = static_cast<int>(m.vars.size());
  std::vector<int> bin, cont;
  for (int j = 0; j < nv; ++j)
    (m.vars[j].kind == VarKind::kBinary ? bin : cont).push_back(j);
  if (bin.size() > 20) throw SolveError("feasible_integral_enumeration: too many binary variables");

  // Reverse lookup: variable index -> ordered pair.
  std::vector<std::pair<int, int>> pair_of(nv, {0, 0});
  for (const auto& [key, idx] : m.y_index) pair_of[idx] = key;

  std::vector<EnumEntry> out;
  std::vector<double> vals(nv, 0.0);
  std::vector<double> lo(nv), up(nv);

  const std::uint64_t total = 1ULL << bin.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t k = 0; k < bin.size(); ++k) vals[bin[k]] = (mask >> k) & 1 ? 1.0 : 0.0;
    // Quick reject on rows involving only binary variables.
    bool ok = true;
    for (const auto& r : m.rows) {
      bool binary_only = true;
      double lhs = 0.0;
      for (const auto& [j, coef] : r.terms) {
        if (m.vars[j].kind != VarKind::kBinary) {
          binary_only = false;
          break;
        }
        lhs += coef * vals[j];
      }
      if (!binary_only) continue;
      if (r.sense == Sense::kLe && lhs > r.rhs + 1e-9) ok = false;
      if (r.sense == Sense::kGe && lhs < r.rhs - 1e-9) ok = false;
      if (r.sense == Sense::kEq && std::fabs(lhs - r.rhs) > 1e-9) ok = false;
      if (!ok) break;
    }
    if (!ok) continue;

    for (int j = 0; j < nv; ++j) {
      lo[j] = m.vars[j].lower;
      up[j] = m.vars[j].upper;
    }
    for (int j : bin) lo[j] = up[j] = vals[j];

    EnumEntry entry;
    entry.binary_values.reserve(bin.size());
    for (int j : bin) entry.binary_values.push_back(static_cast<int>(vals[j]));

    if (cont.empty()) {
      entry.completion = vals;
    } else {
      Simplex zero = make_simplex(m);
      for (int j = 0; j < nv; ++j) zero.set_objective(j, 0.0);
      LpResult f = zero.solve(&lo, &up);
      if (f.status != LpStatus::kOptimal) continue;  // no feasible completion
      entry.completion = f.primal;
    }

    // Binary y variables: the assignment itself may violate the product.
    for (int j : bin) {
      if (j < m.num_x) continue;
      const auto [i1, j1] = pair_of[j];
      const double prod = vals[i1 - 1] * vals[j1 - 1];
      if (std::fabs(vals[j] - prod) > 1e-9 && !entry.has_nonproduct) {
        entry.has_nonproduct = true;
        entry.wi = i1;
        entry.wj = j1;
        entry.wy = vals[j];
        entry.witness_objective = model_objective_at(m, entry.completion);
      }
    }
    // Continuous y variables: probe the attainable range.
    for (int j : cont) {
      if (entry.has_nonproduct) break;
      const auto [i1, j1] = pair_of[j];
      if (i1 == 0) continue;
      const double prod = vals[i1 - 1] * vals[j1 - 1];
      for (double dir : {1.0, -1.0}) {
        Simplex probe = make_simplex(m);
        for (int k = 0; k < nv; ++k) probe.set_objective(k, 0.0);
        probe.set_objective(j, dir);
        LpResult p = probe.solve(&lo, &up);
        if (p.status == LpStatus::kUnbounded) {
          entry.has_nonproduct = true;
          entry.wi = i1;
          entry.wj = j1;
          entry.wy = dir * kInf;
          entry.witness_objective = model_objective_at(m, entry.completion);
          break;
        }
        if (p.status != LpStatus::kOptimal) continue;
        if (dir * (p.primal[j] - prod) > 1e-6) {
          entry.has_nonproduct = true;
          entry.wi = i1;
          entry.wj = j1;
          entry.wy = p.primal[j];
          entry.completion = p.primal;
          entry.witness_objective = model_objective_at(m, p.primal);
          break;
        }
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace qubolin
