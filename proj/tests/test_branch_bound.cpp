#include <catch2/catch_amalgamated.hpp>

#include "qubolin/branch_bound.hpp"
#include "qubolin/build.hpp"
#include "qubolin/generate.hpp"
#include "qubolin/harness.hpp"
#include "qubolin/io.hpp"
#include "qubolin/oracle.hpp"

using namespace qubolin;

TEST_CASE("every valid formulation optimizes ex2 to 6") {
  const auto ex2 = fixtures::ex2();
  for (ModelId id : {ModelId::DW, ModelId::GW, ModelId::FT, ModelId::FTeq, ModelId::PK,
                     ModelId::ORDW, ModelId::ORPK_sb, ModelId::GW_agpd, ModelId::ORFT_agt}) {
    const MilpResult r = solve_milp(build(id, ex2), ex2);
    INFO(model_name(id));
    REQUIRE(r.status == MilpStatus::kOptimal);
    CHECK(std::llround(r.model_objective) == 6);
    CHECK(r.recomputed_qubo == 6);
    CHECK(r.model_objective <= r.best_bound + 1e-6);
  }
}

TEST_CASE("the known-invalid aggregations reproduce their gaps") {
  struct Row {
    ModelId id;
    QuboInstance inst;
    long long model, truth;
  };
  const Row rows[] = {
      {ModelId::DW_sb, fixtures::ex3(), 2, 1},
      {ModelId::ORDW_A, fixtures::ex6a(), 7, 6},
      {ModelId::ORPK_sb_rb, fixtures::ex6b(), 8, 3},
      {ModelId::HM, fixtures::hm(), 2, 1},
  };
  for (const auto& row : rows) {
    const MilpResult r = solve_milp(build(row.id, row.inst, {}, {.allow_invalid = true}), row.inst);
    INFO(model_name(row.id) << " on " << row.inst.id);
    REQUIRE(r.status == MilpStatus::kOptimal);
    CHECK(std::llround(r.model_objective) == row.model);
    CHECK(brute_force_opt(row.inst).value == row.truth);
  }
}

TEST_CASE("root bound equals the relaxation value") {
  const QuboInstance inst = generate_uniform(7, -10, 10, -20, 20, 1.0, 3100);
  for (ModelId id : {ModelId::GW, ModelId::ORDW, ModelId::PK_sb}) {
    const MilpModel m = build(id, inst);
    const double lp = solve_lp(m).objective;
    const MilpResult r = solve_milp(m, inst);
    CHECK(r.root_lp == Catch::Approx(lp).epsilon(1e-6));
    CHECK(r.model_objective <= r.root_lp + 1e-6);
    CHECK(r.recomputed_qubo <= std::llround(r.model_objective));
  }
}

TEST_CASE("node counts are deterministic") {
  const QuboInstance inst = generate_uniform(8, -10, 10, -20, 20, 0.8, 3200);
  const MilpModel m = build(ModelId::DW, inst);
  const MilpResult a = solve_milp(m, inst);
  const MilpResult b = solve_milp(m, inst);
  CHECK(a.nodes == b.nodes);
  CHECK(a.model_objective == b.model_objective);
  CHECK(a.incumbent == b.incumbent);
}

TEST_CASE("premature stop on ex1 reports the uncorrected value") {
  const auto ex1 = fixtures::ex1();
  const MilpModel m = build(ModelId::ORDW, ex1);
  MilpOptions opts;
  opts.stop_after_first_incumbent = true;
  const MilpResult r = solve_milp(m, ex1, opts);
  REQUIRE(r.status == MilpStatus::kFeasibleTimeout);
  REQUIRE(r.has_incumbent);
  CHECK(std::llround(r.model_objective) == 0);  // model says 0 ...
  CHECK(r.recomputed_qubo == 2);                // ... the solution is worth 2
  // Run to optimality and the model agrees with the instance again.
  const MilpResult full = solve_milp(m, ex1);
  CHECK(std::llround(full.model_objective) == 2);
  CHECK(full.recomputed_qubo == 2);
}

TEST_CASE("a node cap yields a feasible-timeout with a usable bound") {
  const QuboInstance inst = generate_uniform(9, -10, 10, -20, 20, 1.0, 3500);
  const MilpModel m = build(ModelId::DW, inst);
  MilpOptions opts;
  opts.node_cap = 2;
  const MilpResult r = solve_milp(m, inst, opts);
  if (r.status == MilpStatus::kFeasibleTimeout) {
    CHECK(r.nodes <= 2);
    CHECK(r.best_bound >= r.model_objective - 1e-6);
    const MilpResult full = solve_milp(m, inst);
    CHECK(full.status == MilpStatus::kOptimal);
    CHECK(full.model_objective <= r.best_bound + 1e-6);
  } else {
    CHECK(r.status == MilpStatus::kOptimal);  // solved within the cap
  }
}

TEST_CASE("fingerprint mismatch and LP-study models are rejected") {
  const MilpModel m = build(ModelId::GW, fixtures::ex2());
  CHECK_THROWS_AS(solve_milp(m, fixtures::ex3()), SolveError);
  WeightSet w = weights_for(ModelId::GW_a, fixtures::ex2(), WeightMode::kDualExact);
  const MilpModel study = build(ModelId::GW_a, fixtures::ex2(), w, {.lp_study = true});
  CHECK_THROWS_AS(solve_milp(study, fixtures::ex2()), SolveError);
}

TEST_CASE("integral enumeration separates precise from restricted") {
  SECTION("DW forces the products on ex1") {
    const MilpModel m = build(ModelId::DW, fixtures::ex1());
    for (const auto& e : feasible_integral_enumeration(m, fixtures::ex1()))
      CHECK_FALSE(e.has_nonproduct);
  }
  SECTION("ORDW admits x=(1,1) with y=0 on ex1") {
    const MilpModel m = build(ModelId::ORDW, fixtures::ex1());
    bool found = false;
    for (const auto& e : feasible_integral_enumeration(m, fixtures::ex1())) {
      if (!e.has_nonproduct) continue;
      // looking for the specific slack solution x=(1,1), y=(0,0): value 0
      if (e.completion[0] == 1.0 && e.completion[1] == 1.0 && e.completion[2] == 0.0 &&
          e.completion[3] == 0.0) {
        found = true;
        CHECK(std::llround(e.witness_objective) == 0);
      }
    }
    CHECK(found);
  }
  SECTION("PK completions on a 2x2 positive pair are forced to the products") {
    QuboInstance inst = QuboInstance::zeros(2);
    inst.set_pair(0, 1, 4);
    inst.c = {-1, -1};
    inst.id = "pos2";
    const MilpModel m = build(ModelId::PK, inst);
    const auto entries = feasible_integral_enumeration(m, inst);
    CHECK(entries.size() == 4);  // every x assignment is feasible
    for (const auto& e : entries) CHECK_FALSE(e.has_nonproduct);
  }
  SECTION("cap is enforced") {
    const QuboInstance inst = generate_uniform(6, -5, 5, -5, 5, 1.0, 3300);
    const MilpModel m = build(ModelId::GW, inst);
    CHECK_THROWS_AS(feasible_integral_enumeration(m, inst, 4), SolveError);
  }
}

TEST_CASE("progress stream emits incumbent records") {
  const QuboInstance inst = generate_uniform(6, -10, 10, -20, 20, 1.0, 3400);
  const MilpModel m = build(ModelId::GW, inst);
  std::vector<std::string> lines;
  MilpOptions opts;
  opts.progress = [&](const std::string& line) { lines.push_back(line); };
  solve_milp(m, inst, opts);
  REQUIRE_FALSE(lines.empty());
  CHECK(lines[0].find("event=incumbent") != std::string::npos);
  CHECK(lines[0].find("objective=") != std::string::npos);
}
