#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "qubolin/build.hpp"
#include "qubolin/generate.hpp"
#include "qubolin/io.hpp"
#include "qubolin/simplex.hpp"

using namespace qubolin;

TEST_CASE("textbook cases") {
  SECTION("simple optimum with duals") {
    // max 3a + 2b st a + b <= 4, a + 3b <= 6, a,b >= 0 -> 12 at (4, 0)
    Simplex s(2);
    s.set_objective(0, 3.0);
    s.set_objective(1, 2.0);
    s.add_row({{0, 1.0}, {1, 1.0}}, Sense::kLe, 4.0);
    s.add_row({{0, 1.0}, {1, 3.0}}, Sense::kLe, 6.0);
    const LpResult r = s.solve();
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.objective == Catch::Approx(12.0));
    CHECK(r.primal[0] == Catch::Approx(4.0));
    CHECK(r.primal[1] == Catch::Approx(0.0).margin(1e-9));
    CHECK(r.duals[0] == Catch::Approx(3.0));
    CHECK(r.duals[1] == Catch::Approx(0.0).margin(1e-9));
  }
  SECTION("infeasible") {
    Simplex s(1);
    s.set_bounds(0, 0.0, 1.0);
    s.add_row({{0, 1.0}}, Sense::kGe, 2.0);
    CHECK(s.solve().status == LpStatus::kInfeasible);
  }
  SECTION("unbounded") {
    Simplex s(1);
    s.set_bounds(0, 0.0, kInf);
    s.set_objective(0, 1.0);
    CHECK(s.solve().status == LpStatus::kUnbounded);
  }
  SECTION("equality rows and negative variables") {
    // max a - b st a + b = 1, a in [0,1], b in [-1, 1] -> a=1, b=0... a-b
    // is largest at b=-1? a + b = 1 forces a = 2, infeasible; so a=1, b=0.
    Simplex s(2);
    s.set_bounds(0, 0.0, 1.0);
    s.set_bounds(1, -1.0, 1.0);
    s.set_objective(0, 1.0);
    s.set_objective(1, -1.0);
    s.add_row({{0, 1.0}, {1, 1.0}}, Sense::kEq, 1.0);
    const LpResult r = s.solve();
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.objective == Catch::Approx(1.0));
  }
  SECTION("phase one from an infeasible slack basis") {
    // x + y >= 3 with x,y in [0,2]: the all-lower start violates the row.
    Simplex s(2);
    s.set_bounds(0, 0.0, 2.0);
    s.set_bounds(1, 0.0, 2.0);
    s.set_objective(0, -1.0);
    s.set_objective(1, -2.0);
    s.add_row({{0, 1.0}, {1, 1.0}}, Sense::kGe, 3.0);
    const LpResult r = s.solve();
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.objective == Catch::Approx(-4.0));  // x=2, y=1
  }
  SECTION("single variable objective") {
    QuboInstance one = QuboInstance::zeros(1);
    one.c[0] = 5;
    one.id = "one";
    CHECK(solve_lp(build(ModelId::GW, one)).objective == Catch::Approx(5.0));
  }
}

TEST_CASE("relaxation values on the study instances") {
  const auto ex8 = fixtures::ex8();
  const LpResult gw = solve_lp(build(ModelId::GW, ex8));
  REQUIRE(gw.status == LpStatus::kOptimal);
  CHECK(gw.objective == Catch::Approx(1.0));  // x=(1,1), y=(1,1) is one optimum
  CHECK(solve_lp(build(ModelId::DW, ex8)).objective == Catch::Approx(2.0));

  const auto ex7 = fixtures::ex7();
  CHECK(solve_lp(build(ModelId::FT, ex7)).objective == Catch::Approx(0.0).margin(1e-9));
  CHECK(solve_lp(build(ModelId::GW, ex7)).objective == Catch::Approx(0.5));
  CHECK(solve_lp(build(ModelId::PK, ex7)).objective == Catch::Approx(2.0));
}

TEST_CASE("strong duality holds on random relaxations") {
  for (int k = 0; k < 8; ++k) {
    const QuboInstance inst = generate_uniform(4 + k % 5, -10, 10, -20, 20, 1.0, 2100 + k);
    const ModelId id = catalog_valid()[(7 * k) % catalog_valid().size()];
    const MilpModel m = build(id, inst);
    const LpResult r = solve_lp(m);
    REQUIRE(r.status == LpStatus::kOptimal);
    double dual_obj = 0.0;
    for (std::size_t row = 0; row < m.rows.size(); ++row) dual_obj += r.duals[row] * m.rows[row].rhs;
    for (std::size_t j = 0; j < m.vars.size(); ++j) {
      // reduced-cost contribution of variables resting at a finite bound
      const double v = r.primal[j];
      const double red = r.reduced[j];
      if (std::fabs(red) < 1e-9) continue;
      CHECK((std::fabs(v - m.vars[j].lower) < 1e-6 || std::fabs(v - m.vars[j].upper) < 1e-6));
      dual_obj += red * v;
    }
    CHECK(r.objective == Catch::Approx(dual_obj).epsilon(1e-7));
    for (std::size_t row = 0; row < m.rows.size(); ++row)
      if (m.rows[row].sense == Sense::kLe) CHECK(r.duals[row] >= -1e-9);
  }
}

TEST_CASE("relaxation value is invariant under row and column permutation") {
  std::mt19937_64 rng(33);
  const QuboInstance inst = generate_uniform(6, -10, 10, -20, 20, 0.9, 2200);
  const MilpModel m = build(ModelId::GW, inst);
  const double base = solve_lp(m).objective;
  for (int round = 0; round < 5; ++round) {
    MilpModel p = m;
    std::shuffle(p.rows.begin(), p.rows.end(), rng);
    std::vector<int> perm(p.vars.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Variable> vars(p.vars.size());
    for (std::size_t j = 0; j < perm.size(); ++j) vars[perm[j]] = p.vars[j];
    p.vars = vars;
    for (auto& [id, coef] : p.objective) id = perm[id];
    for (auto& row : p.rows)
      for (auto& [id, coef] : row.terms) id = perm[id];
    CHECK(solve_lp(p).objective == Catch::Approx(base).epsilon(1e-6));
  }
}

TEST_CASE("dual extraction") {
  SECTION("type-1 duals of the standard linearization are nonnegative") {
    const auto m = build(ModelId::GW, fixtures::ex8());
    const LpResult r = solve_lp(m);
    const auto duals = extract_duals(m, r, "T1");
    CHECK(duals.size() == 2);
    for (const auto& [key, v] : duals) CHECK(v >= 0.0);
    CHECK_THROWS_AS(extract_duals(m, LpResult{}, "T1"), SolveError);
  }
  SECTION("reweighting an aggregation by block duals keeps the value") {
    // the surrogate-duality property behind every dual-weight equality
    for (int k = 0; k < 5; ++k) {
      const QuboInstance inst = generate_uniform(6, -10, 10, -20, 20, 1.0, 2300 + k);
      const MilpModel base = build(ModelId::GW, inst);
      const LpResult blp = solve_lp(base);
      WeightSet w;
      w.mode = WeightMode::kDualExact;
      w.alpha = extract_duals(base, blp, "T1");
      const MilpModel agg = build(ModelId::GW_a, inst, w, {.lp_study = true});
      const LpResult alp = solve_lp(agg);
      REQUIRE(alp.status == LpStatus::kOptimal);
      CHECK(alp.objective == Catch::Approx(blp.objective).epsilon(1e-6));
    }
  }
  SECTION("all-slack optimum has zero duals") {
    QuboInstance inst = QuboInstance::zeros(3);
    inst.id = "neg";
    inst.c = {-1, -2, -3};
    const auto m = build(ModelId::GW, inst);
    const LpResult r = solve_lp(m);
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.objective == Catch::Approx(0.0).margin(1e-12));
    for (double d : r.duals) CHECK(d == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("aggregation with any positive weights can only relax") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 6; ++k) {
    const QuboInstance inst = generate_uniform(5 + k % 3, -10, 10, -20, 20, 1.0, 2400 + k);
    const ModelId agg_ids[] = {ModelId::GW_a, ModelId::PK_sb, ModelId::FT_sg, ModelId::GW_sgpd};
    const ModelId id = agg_ids[k % 4];
    const MilpModel base = build(*dual_base(id), inst);
    const double base_lp = solve_lp(base).objective;
    WeightSet w;
    w.mode = WeightMode::kCustom;
    for (const auto& [kind, i, j] : required_weights(id, index_sets(inst)))
      w.table(kind)[{i, j}] = 0.25 + static_cast<double>(rng() % 16);
    const double agg_lp = solve_lp(build(id, inst, w)).objective;
    CHECK(agg_lp >= base_lp - 1e-6);
  }
}

TEST_CASE("writing the symmetry pairs as equalities keeps the relaxation") {
  // the inequality pair y_ij <= y_ji, y_ji <= y_ij already pins equality
  for (int k = 0; k < 4; ++k) {
    const QuboInstance inst = generate_uniform(5 + k, -10, 10, -20, 20, 0.8, 2600 + k);
    const double ft = solve_lp(build(ModelId::FT, inst)).objective;
    const double fteq = solve_lp(build(ModelId::FTeq, inst)).objective;
    CHECK(ft == Catch::Approx(fteq).epsilon(1e-6));
  }
}

TEST_CASE("deterministic pivoting yields identical results") {
  const QuboInstance inst = generate_uniform(7, -10, 10, -20, 20, 0.8, 2500);
  const MilpModel m = build(ModelId::FT, inst);
  const LpResult a = solve_lp(m);
  const LpResult b = solve_lp(m);
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
  CHECK(a.basis_fingerprint == b.basis_fingerprint);
  CHECK(a.primal == b.primal);
}
