#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qubolin/generate.hpp"
#include "qubolin/harness.hpp"
#include "qubolin/io.hpp"
#include "qubolin/lp_format.hpp"
#include "qubolin/mps_format.hpp"
#include "qubolin/oracle.hpp"

namespace qubolin::acceptance {

struct SuiteOptions {
  bool quick = false;  // smaller random suite, n <= 6
  int jobs = 1;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr std::uint64_t kSuiteSeed = 90210;

/// The fixed random regression suite: 50 seeded instances, n in 4..10,
/// coefficients in [-20,20], densities cycling {1.0, 0.8, 0.3}.
inline std::vector<QuboInstance> random_suite(bool quick) {
  std::vector<QuboInstance> out;
  const double densities[] = {1.0, 0.8, 0.3};
  for (int k = 0; k < 50; ++k) {
    const int n = 4 + k % 7;
    if (quick && n > 6) continue;
    QuboInstance inst =
        generate_uniform(n, -20, 20, -20, 20, densities[k % 3], kSuiteSeed + k);
    inst.id = "suite-" + std::to_string(k);
    out.push_back(std::move(inst));
    if (quick && out.size() >= 20) break;
  }
  return out;
}

inline std::vector<QuboInstance> symmetric_fixtures() {
  return {fixtures::ex1(), fixtures::ex2(), fixtures::ex3(),
          fixtures::ex6a(), fixtures::ex6b(), fixtures::ex8()};
}

namespace detail {

/// Runs fn(k) for k in [0, count) on `jobs` threads; fn must only touch slot k.
inline void parallel_for(long count, int jobs, const std::function<void(long)>& fn) {
  if (jobs <= 1) {
    for (long k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long k = next.fetch_add(1); k < count; k = next.fetch_add(1)) fn(k);
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

struct Check {
  bool ok = true;
  std::string msg;
  void fail(const std::string& m) {
    if (ok) msg = m;
    ok = false;
  }
};

inline long long milp_value(ModelId id, const QuboInstance& inst, const WeightSet& w = {},
                            BuildOptions opts = {.allow_invalid = true}) {
  const MilpModel m = build(id, inst, w, opts);
  const MilpResult r = solve_milp(m, inst);
  if (r.status != MilpStatus::kOptimal) throw SolveError("MILP did not reach optimality");
  if (std::fabs(r.model_objective - std::llround(r.model_objective)) > 1e-6)
    throw SolveError("MILP optimum is not integral");
  return std::llround(r.model_objective);
}

}  // namespace detail

inline CriterionResult criterion1_counterexamples() {
  detail::Check c;
  auto expect = [&](const char* label, long long got_model, long long want_model,
                    long long got_true, long long want_true) {
    if (got_model != want_model || got_true != want_true)
      c.fail(std::string(label) + ": got (" + std::to_string(got_model) + "," +
             std::to_string(got_true) + "), want (" + std::to_string(want_model) + "," +
             std::to_string(want_true) + ")");
  };
  {
    const auto inst = fixtures::ex3();
    expect("DW(*,b) on ex3", detail::milp_value(ModelId::DW_sb, inst),
           2, brute_force_opt(inst).value, 1);
  }
  {
    const auto inst = fixtures::ex6a();
    expect("ORDW-A on ex6a", detail::milp_value(ModelId::ORDW_A, inst), 7,
           brute_force_opt(inst).value, 6);
  }
  {
    const auto inst = fixtures::ex6b();
    expect("ORPK(*,b)-rb on ex6b", detail::milp_value(ModelId::ORPK_sb_rb, inst), 8,
           brute_force_opt(inst).value, 3);
  }
  {
    const auto inst = fixtures::ex2();
    WeightSet w;
    w.mode = WeightMode::kCustom;
    w.alpha[{1, 4}] = 3.0;
    w.alpha[{3, 4}] = 6.0;
    expect("bound-stripped PK(a) on ex2",
           detail::milp_value(ModelId::PK_a, inst, w,
                              {.allow_invalid = true, .strip_y_upper = true}),
           8, brute_force_opt(inst).value, 6);
    if (detail::milp_value(ModelId::PK_a, inst, w) != 6)
      c.fail("PK(a) with its y<=1 bounds must reach exactly 6 on ex2");
  }
  {
    const auto inst = fixtures::hm();
    expect("HM on its 2x2 instance", detail::milp_value(ModelId::HM, inst), 2,
           brute_force_opt(inst).value, 1);
  }
  return {1, "counterexample regression (exact integer values)", c.ok,
          c.ok ? "all five mis-aggregations reproduce their gaps" : c.msg, 0};
}

inline CriterionResult criterion2_lp_fixtures() {
  detail::Check c;
  auto lp_of = [&](ModelId id, const QuboInstance& inst) {
    const LpResult r = solve_lp(build(id, inst));
    if (r.status != LpStatus::kOptimal) throw SolveError("relaxation failed");
    return r.objective;
  };
  auto expect = [&](const char* label, double got, double want) {
    if (std::fabs(got - want) > 1e-6)
      c.fail(std::string(label) + ": got " + format_double(got) + ", want " + format_double(want));
  };
  const auto ex8 = fixtures::ex8();
  expect("GW relaxation on ex8", lp_of(ModelId::GW, ex8), 1.0);
  expect("DW relaxation on ex8", lp_of(ModelId::DW, ex8), 2.0);
  const auto ex7 = fixtures::ex7();
  expect("FT relaxation on ex7", lp_of(ModelId::FT, ex7), 0.0);
  expect("GW relaxation on ex7", lp_of(ModelId::GW, ex7), 0.5);
  expect("PK relaxation on ex7", lp_of(ModelId::PK, ex7), 2.0);
  return {2, "LP relaxation fixtures (1e-6)", c.ok,
          c.ok ? "ex8: GW=1 DW=2; ex7: FT=0 GW=0.5 PK=2" : c.msg, 0};
}

inline CriterionResult criterion3_oracle_equivalence(const SuiteOptions& opts) {
  std::vector<QuboInstance> instances = symmetric_fixtures();
  for (auto& inst : random_suite(opts.quick)) instances.push_back(std::move(inst));
  const std::vector<ModelId> models = catalog_valid();
  struct Cell {
    ModelId id;
    const QuboInstance* inst;
  };
  std::vector<Cell> cells;
  for (ModelId id : models)
    for (const auto& inst : instances) cells.push_back({id, &inst});
  std::vector<std::string> failures(cells.size());
  std::vector<long long> brute(instances.size());
  for (std::size_t k = 0; k < instances.size(); ++k) brute[k] = brute_force_opt(instances[k]).value;
  detail::parallel_for(static_cast<long>(cells.size()), opts.jobs, [&](long k) {
    const Cell& cell = cells[k];
    try {
      const long long got = detail::milp_value(cell.id, *cell.inst);
      const std::size_t ii = static_cast<std::size_t>(cell.inst - instances.data());
      if (got != brute[ii])
        failures[k] = model_name(cell.id) + " on " + cell.inst->id + ": " + std::to_string(got) +
                      " vs " + std::to_string(brute[ii]);
    } catch (const std::exception& e) {
      failures[k] = model_name(cell.id) + " on " + cell.inst->id + ": " + e.what();
    }
  });
  detail::Check c;
  for (const auto& f : failures)
    if (!f.empty()) c.fail(f);
  std::ostringstream d;
  d << models.size() << " valid models x " << instances.size() << " instances match brute force";
  return {3, "oracle equivalence for every valid model", c.ok, c.ok ? d.str() : c.msg, 0};
}

inline CriterionResult criterion4_lp_equivalence(const SuiteOptions& opts) {
  std::vector<QuboInstance> instances = {fixtures::ex8()};
  for (auto& inst : random_suite(opts.quick)) instances.push_back(std::move(inst));
  std::vector<LpEquivalenceRow> rows(instances.size());
  detail::parallel_for(static_cast<long>(instances.size()), opts.jobs,
                       [&](long k) { rows[k] = lp_equivalence_check(instances[k]); });
  detail::Check c;
  bool strict_gap = false;
  for (const auto& row : rows) {
    if (!row.pass)
      c.fail(row.instance_id + ": max relaxation deviation " + format_double(row.max_deviation));
    if (row.dw - row.gw > 0.5) strict_gap = true;
  }
  if (!strict_gap) c.fail("no instance with GW < DW - 0.5 (ex8 should provide one)");
  return {4, "relaxation equalities GW=FT=PK, GW<=DW, basic=OR", c.ok,
          c.ok ? std::to_string(rows.size()) + " instances pass; strict GW<DW gap present" : c.msg,
          0};
}

inline CriterionResult criterion5_dual_weights(const SuiteOptions& opts) {
  const std::vector<QuboInstance> instances = random_suite(opts.quick);
  const std::vector<ModelId> ids = dual_equality_models();
  struct Cell {
    ModelId id;
    const QuboInstance* inst;
  };
  std::vector<Cell> cells;
  for (ModelId id : ids)
    for (const auto& inst : instances) cells.push_back({id, &inst});
  std::vector<std::string> failures(cells.size());
  detail::parallel_for(static_cast<long>(cells.size()), opts.jobs, [&](long k) {
    try {
      const DualWeightRow row = dual_weight_check(*cells[k].inst, cells[k].id);
      if (!row.pass_exact)
        failures[k] = row.model + " on " + row.instance_id + ": exact-dual " +
                      format_double(row.dual_exact_lp) + " vs base " + format_double(row.base_lp);
      else if (!row.pass_unit)
        failures[k] = row.model + " on " + row.instance_id + ": unit weights fell below base";
      else if (!row.pass_safe)
        failures[k] = row.model + " on " + row.instance_id + ": safe duals fell below base";
    } catch (const std::exception& e) {
      failures[k] = model_name(cells[k].id) + " on " + cells[k].inst->id + ": " + e.what();
    }
  });
  detail::Check c;
  for (const auto& f : failures)
    if (!f.empty()) c.fail(f);
  return {5, "dual-weight aggregation equality (13 aggregations)", c.ok,
          c.ok ? std::to_string(ids.size()) + " aggregations x " + std::to_string(instances.size()) +
                     " instances: exact duals match, unit/safe dominate"
               : c.msg,
          0};
}

inline CriterionResult criterion6_precision(const SuiteOptions& opts) {
  detail::Check c;
  std::vector<QuboInstance> small;
  for (const auto& inst : symmetric_fixtures())
    if (inst.n <= 4) small.push_back(inst);
  for (const auto& inst : random_suite(opts.quick))
    if (inst.n <= 4) small.push_back(inst);
  for (ModelId id : {ModelId::DW, ModelId::GW, ModelId::FT, ModelId::PK})
    for (const auto& inst : small) {
      const PrecisionReport rep = check_precision(id, inst);
      if (!rep.precise)
        c.fail(model_name(id) + " not precise on " + inst.id + " (pair " + std::to_string(rep.wi) +
               "," + std::to_string(rep.wj) + ")");
    }
  const auto ex1 = fixtures::ex1();
  const PrecisionReport rep = check_precision(ModelId::ORDW, ex1);
  if (rep.precise) {
    c.fail("ORDW unexpectedly precise on ex1");
  } else {
    if (std::llround(rep.witness_model_objective) != 0 || rep.witness_recomputed != 2)
      c.fail("ORDW witness on ex1: model value " + format_double(rep.witness_model_objective) +
             ", recomputed " + std::to_string(rep.witness_recomputed) + "; want 0 and 2");
  }
  return {6, "precision classification and the ORDW witness", c.ok,
          c.ok ? "DW/GW/FT/PK precise on all n<=4 instances; ORDW witness is 0 vs 2" : c.msg, 0};
}

inline CriterionResult criterion7_constraint_counts() {
  detail::Check c;
  const double densities[] = {0.3, 0.8, 1.0};
  long checked = 0;
  for (int k = 0; k < 20; ++k) {
    const int n = 5 + k % 8;
    const QuboInstance inst =
        generate_uniform(n, -20, 20, -20, 20, densities[k % 3], kSuiteSeed + 1000 + k);
    const IndexSets sets = index_sets(inst);
    for (ModelId id : catalog()) {
      const MilpModel m = build(id, inst, {}, {.allow_invalid = true});
      const long got = count_general_constraints(m);
      const long want = expected_constraint_count(id, sets);
      ++checked;
      if (got != want)
        c.fail(model_name(id) + " on " + inst.id + ": " + std::to_string(got) + " rows vs closed form " +
               std::to_string(want));
    }
  }
  return {7, "constraint-count closed forms across densities", c.ok,
          c.ok ? std::to_string(checked) + " (model,instance) counts match exactly" : c.msg, 0};
}

inline CriterionResult criterion8_balanced_generator() {
  detail::Check c;
  GeneratorConfig cfg;
  cfg.n = 10;
  cfg.seed = 4242;
  cfg.max_attempts = 10000;
  BalancedTrace trace;
  std::string detail_msg;
  try {
    const QuboInstance inst = generate_balanced(cfg, &trace);
    if (auto err = validate(inst)) c.fail("accepted instance invalid: " + *err);
    const LpResult lp = solve_lp(build(ModelId::GW, inst));
    for (int i = 0; i < inst.n; ++i)
      if (std::fabs(lp.primal[i] - 0.5) > 1e-7)
        c.fail("x" + std::to_string(i + 1) + " = " + format_double(lp.primal[i]) + " is not 1/2");
    detail_msg = "accepted after " + std::to_string(trace.attempts) + " draw(s); all x = 1/2";
  } catch (const std::exception& e) {
    c.fail(e.what());
  }
  return {8, "balanced generator acceptance rule", c.ok, c.ok ? detail_msg : c.msg, 0};
}

inline CriterionResult criterion9_export_fidelity() {
  detail::Check c;
  const ModelId ids[] = {ModelId::GW,      ModelId::DW,      ModelId::PK,     ModelId::FT,
                         ModelId::ORPK_sb, ModelId::GW_agpd, ModelId::ORDW,   ModelId::FT_sgt,
                         ModelId::PK_sb,   ModelId::ORGW};
  for (int k = 0; k < 10; ++k) {
    const QuboInstance inst =
        generate_uniform(4 + k % 5, -20, 20, -20, 20, 1.0, kSuiteSeed + 2000 + k);
    const MilpModel m = build(ids[k], inst);
    const double direct = solve_lp(m).objective;
    const double via_lp = solve_lp(import_lp(export_lp(m))).objective;
    const double via_mps = solve_lp(import_mps(export_mps(m))).objective;
    if (std::fabs(direct - via_lp) > 1e-6)
      c.fail(model_name(ids[k]) + " on " + inst.id + ": LP-file round trip " +
             format_double(via_lp) + " vs direct " + format_double(direct));
    if (std::fabs(direct - via_mps) > 1e-6)
      c.fail(model_name(ids[k]) + " on " + inst.id + ": MPS round trip " + format_double(via_mps) +
             " vs direct " + format_double(direct));
  }
  return {9, "export fidelity (LP and MPS round trips)", c.ok,
          c.ok ? "10 model/instance pairs re-solve within 1e-6" : c.msg, 0};
}

inline CriterionResult criterion10_declared_non_reproduction() {
  detail::Check c;
  // The hour-budget commercial-solver rankings are hardware and solver bound
  // and are reproduced in form only: the grid, the CSV report and the
  // forced-stop heuristic mode. Exercise that form once.
  GridOptions gopts;
  gopts.stop_after_first_incumbent = true;
  const auto rows = run_grid({fixtures::ex1()}, {ModelId::ORDW}, {WeightMode::kUnit}, gopts);
  if (rows.size() != 1 || !rows[0].error.empty()) {
    c.fail("forced-stop grid cell failed: " + (rows.empty() ? "no rows" : rows[0].error));
  } else {
    if (rows[0].milp_status != "FEASIBLE_TIMEOUT")
      c.fail("forced-stop cell should report FEASIBLE_TIMEOUT");
    if (std::llround(rows[0].model_objective) != 0 || rows[0].recomputed_qubo != 2)
      c.fail("forced-stop on ex1 should report model 0 with recomputed 2, got " +
             format_double(rows[0].model_objective) + " / " +
             std::to_string(rows[0].recomputed_qubo));
    const std::string csv = emit_csv(rows);
    if (csv.find("instance,model") == std::string::npos || csv.find("ORDW") == std::string::npos)
      c.fail("CSV report malformed");
  }
  return {10, "declared: time-budget solver rankings reproduced in form only", c.ok,
          c.ok ? "grid + CSV + forced-stop mode exercised; rankings intentionally not reproduced"
               : c.msg,
          0};
}

inline std::vector<CriterionResult> run_all(const SuiteOptions& opts) {
  std::vector<std::function<CriterionResult()>> steps = {
      [&] { return criterion1_counterexamples(); },
      [&] { return criterion2_lp_fixtures(); },
      [&] { return criterion3_oracle_equivalence(opts); },
      [&] { return criterion4_lp_equivalence(opts); },
      [&] { return criterion5_dual_weights(opts); },
      [&] { return criterion6_precision(opts); },
      [&] { return criterion7_constraint_counts(); },
      [&] { return criterion8_balanced_generator(); },
      [&] { return criterion9_export_fidelity(); },
      [&] { return criterion10_declared_non_reproduction(); },
  };
  std::vector<CriterionResult> out;
  for (auto& step : steps) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = step();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

/// Runs the whole battery, prints one line per criterion, returns the number
/// of failures.
inline int run_and_print(std::ostream& os, const SuiteOptions& opts) {
  int failures = 0;
  for (const auto& r : run_all(opts)) {
    os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.number << ": " << r.title << " ["
       << std::fixed << std::setprecision(2) << r.seconds << "s] - " << r.detail << "\n";
    if (!r.pass) ++failures;
  }
  return failures;
}

}  // namespace qubolin::acceptance
