#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "qubolin/build.hpp"
#include "qubolin/generate.hpp"
#include "qubolin/harness.hpp"
#include "qubolin/io.hpp"
#include "qubolin/lp_format.hpp"
#include "qubolin/mps_format.hpp"
#include "qubolin/simplex.hpp"

using namespace qubolin;

TEST_CASE("LP text for a one-variable model") {
  QuboInstance one = QuboInstance::zeros(1);
  one.c[0] = 5;
  one.id = "one";
  const std::string text = export_lp(build(ModelId::GW, one));
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("5 x1") != std::string::npos);
  CHECK(text.find("Binaries") != std::string::npos);
}

TEST_CASE("DW on ex1 exports four general rows and four binaries") {
  const auto m = build(ModelId::DW, fixtures::ex1());
  CHECK(count_general_constraints(m) == 4);
  const std::string text = export_lp(m);
  const MilpModel back = import_lp(text);
  CHECK(back.rows.size() == 4);
  int binaries = 0;
  for (const auto& v : back.vars) binaries += v.kind == VarKind::kBinary;
  CHECK(binaries == 4);  // x1 x2 y1_2 y2_1
}

TEST_CASE("export / import / export is a fixpoint") {
  for (ModelId id : {ModelId::GW, ModelId::ORDW, ModelId::ORPK_sb_rb, ModelId::GW_agpd,
                     ModelId::FTeq, ModelId::DW_sb}) {
    const QuboInstance inst = generate_uniform(5, -10, 10, -20, 20, 0.9, 404);
    const auto m = build(id, inst, {}, {.allow_invalid = true});
    const std::string once = export_lp(m);
    const std::string twice = export_lp(import_lp(once));
    CHECK(once == twice);
    const std::string mps_once = export_mps(m);
    const std::string mps_twice = export_mps(import_mps(mps_once));
    CHECK(mps_once == mps_twice);
  }
}

TEST_CASE("round trip preserves every coefficient exactly") {
  const QuboInstance inst = generate_uniform(6, -10, 10, -20, 20, 0.8, 808);
  WeightSet w = weights_for(ModelId::GW_agpd, inst, WeightMode::kDualMilpSafe);
  const auto m = build(ModelId::GW_agpd, inst, w);
  for (const MilpModel& back : {import_lp(export_lp(m)), import_mps(export_mps(m))}) {
    REQUIRE(back.vars.size() == m.vars.size());
    REQUIRE(back.rows.size() == m.rows.size());
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
      CHECK(back.rows[r].name == m.rows[r].name);
      CHECK(back.rows[r].rhs == m.rows[r].rhs);
      std::map<int, double> want(m.rows[r].terms.begin(), m.rows[r].terms.end());
      std::map<int, double> got(back.rows[r].terms.begin(), back.rows[r].terms.end());
      CHECK(want == got);
    }
    // Objective values agree on a fixed assignment.
    std::vector<double> vals(m.vars.size());
    for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = (j % 3) * 0.5;
    CHECK(model_objective_at(m, vals) == Catch::Approx(model_objective_at(back, vals)).margin(0));
  }
}

TEST_CASE("imports restore provenance tags and metadata") {
  const auto m = build(ModelId::ORGW_sgpd, fixtures::ex2());
  const MilpModel back = import_lp(export_lp(m));
  CHECK(back.name == m.name);
  CHECK(back.fingerprint == m.fingerprint);
  bool saw_t1 = false, saw_agg = false;
  for (const auto& r : back.rows) {
    if (r.tag == RowTag::kType1) saw_t1 = true;
    if (r.tag == RowTag::kAggType2) saw_agg = true;
  }
  CHECK(saw_t1);
  CHECK(saw_agg);
  const MilpModel foreign = import_lp(
      "Maximize\n obj: 2 x1\nSubject To\n weird_row: 1 x1 <= 1\nBounds\nEnd\n");
  CHECK(foreign.rows[0].tag == RowTag::kOther);
}

TEST_CASE("MPS re-solve matches the direct relaxation tightly") {
  const auto m = build(ModelId::GW, fixtures::ex8());
  const double direct = solve_lp(m).objective;
  const double via = solve_lp(import_mps(export_mps(m))).objective;
  CHECK(std::fabs(direct - via) <= 1e-9);
}

TEST_CASE("parse errors carry a line number") {
  try {
    import_lp("Maximize\n obj: 1 x1\nSubject To\n r1: 1 x1 <= $\nEnd\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 4);
  }
  CHECK_THROWS_AS(
      import_lp("Maximize\n obj: 1 x1\nSubject To\n r1: x1 <= 1\n r1: x1 <= 2\nEnd\n"),
      ParseError);
  CHECK_THROWS_AS(import_mps("ROWS\n X  bad\n"), ParseError);
}

TEST_CASE("free-below bounds survive both formats") {
  const auto m = build(ModelId::ORPK_sb_rb, fixtures::ex6b(), {}, {.allow_invalid = true});
  bool has_free_below = false;
  for (const auto& v : m.vars) has_free_below = has_free_below || v.lower == -kInf;
  REQUIRE(has_free_below);
  for (const MilpModel& back : {import_lp(export_lp(m)), import_mps(export_mps(m))}) {
    for (std::size_t j = 0; j < m.vars.size(); ++j) {
      CHECK(back.vars[j].lower == m.vars[j].lower);
      CHECK(back.vars[j].upper == m.vars[j].upper);
    }
  }
}
