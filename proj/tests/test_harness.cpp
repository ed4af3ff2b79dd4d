#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "qubolin/generate.hpp"
#include "qubolin/harness.hpp"
#include "qubolin/io.hpp"

using namespace qubolin;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (quoted) {
      if (c == '"' && k + 1 < text.size() && text[k + 1] == '"') {
        field += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n') {
      row.push_back(field);
      field.clear();
      rows.push_back(row);
      row.clear();
    } else {
      field += c;
    }
  }
  return rows;
}

}  // namespace

TEST_CASE("grid on ex8 reproduces the relaxation gap") {
  const auto rows = run_grid({fixtures::ex8()}, {ModelId::GW, ModelId::DW}, {WeightMode::kUnit});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].model == "GW");
  CHECK(rows[0].lp_value == Catch::Approx(1.0));
  CHECK(rows[1].model == "DW");
  CHECK(rows[1].lp_value == Catch::Approx(2.0));
  for (const auto& r : rows) {
    CHECK(r.error.empty());
    CHECK(std::llround(r.model_objective) == 1);  // both MILPs find the true optimum
    CHECK(r.gap >= -1e-6);
    CHECK(r.wall_ms == 0.0);  // timings off by default
  }
}

TEST_CASE("grid on a one-variable instance is flat across models") {
  for (long long c : {5LL, -5LL}) {
    QuboInstance one = QuboInstance::zeros(1);
    one.c[0] = c;
    one.id = "one";
    const long long want = std::max(c, 0LL);
    const auto rows = run_grid({one}, catalog_valid(), {WeightMode::kUnit});
    for (const auto& r : rows) {
      INFO(r.model << " with c=" << c);
      CHECK(r.error.empty());
      CHECK(r.lp_value == Catch::Approx(static_cast<double>(want)).margin(1e-9));
      CHECK(std::llround(r.model_objective) == want);
      CHECK(r.general_constraints == 0);
    }
  }
}

TEST_CASE("a zero quadratic part degenerates every model gracefully") {
  QuboInstance inst = QuboInstance::zeros(3);
  inst.c = {4, -2, 0};
  inst.id = "linonly";
  const auto rows = run_grid({inst}, catalog_valid(), {WeightMode::kUnit});
  for (const auto& r : rows) {
    INFO(r.model);
    CHECK(r.error.empty());
    CHECK(r.general_constraints == 0);
    CHECK(std::llround(r.model_objective) == 4);
  }
}

TEST_CASE("grid failures are recorded, not dropped") {
  // dual-exact weights are undefined for the basic models
  const auto rows = run_grid({fixtures::ex1()}, {ModelId::GW}, {WeightMode::kDualExact});
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].error.empty());
}

TEST_CASE("csv emission") {
  CHECK(emit_csv({}) == std::string(comparison_csv_header()) + "\n");
  ComparisonRow row;
  row.instance_id = "ex,1";  // needs quoting
  row.model = "GW";
  row.weight_mode = "unit";
  row.lp_value = 1.5;
  row.milp_status = "OPTIMAL";
  row.model_objective = 1;
  row.recomputed_qubo = 1;
  row.best_bound = 1;
  row.nodes = 3;
  row.general_constraints = 6;
  const std::string text = emit_csv({row});
  const auto parsed = parse_csv(text);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].size() == 13);
  CHECK(parsed[1][0] == "ex,1");
  CHECK(parsed[1][3] == "1.5");
  CHECK(parsed[1][9] == "3");
}

TEST_CASE("jsonl emission is one object per row") {
  const auto rows = run_grid({fixtures::ex8()}, {ModelId::GW}, {WeightMode::kUnit});
  const std::string text = emit_jsonl(rows);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  CHECK(text.find("\"model\":\"GW\"") != std::string::npos);
  CHECK(text.find("\"lp_value\":1") != std::string::npos);
}

TEST_CASE("parallel grids assemble in deterministic order") {
  std::vector<QuboInstance> instances;
  for (int k = 0; k < 4; ++k)
    instances.push_back(generate_uniform(5, -10, 10, -20, 20, 1.0, 6100 + k));
  const std::vector<ModelId> models = {ModelId::GW, ModelId::PK, ModelId::ORDW};
  GridOptions serial;
  GridOptions parallel;
  parallel.jobs = 4;
  const auto a = run_grid(instances, models, {WeightMode::kUnit}, serial);
  const auto b = run_grid(instances, models, {WeightMode::kUnit}, parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].instance_id == b[k].instance_id);
    CHECK(a[k].model == b[k].model);
    CHECK(a[k].lp_value == b[k].lp_value);
    CHECK(a[k].nodes == b[k].nodes);
  }
}

TEST_CASE("relaxation equalities hold on ex8 and random instances") {
  const auto row8 = lp_equivalence_check(fixtures::ex8());
  CHECK(row8.pass);
  CHECK(row8.dw - row8.gw == Catch::Approx(1.0));  // the strict gap instance
  for (int k = 0; k < 6; ++k) {
    const auto inst = generate_uniform(4 + k, -10, 10, -20, 20, 1.0, 6200 + k);
    const auto row = lp_equivalence_check(inst);
    INFO(inst.id << " deviation " << row.max_deviation);
    CHECK(row.pass);
  }
}

TEST_CASE("dual-weight equality across the aggregation list") {
  const auto inst = generate_uniform(8, -10, 10, -20, 20, 1.0, 6300);
  for (ModelId id : dual_equality_models()) {
    const auto row = dual_weight_check(inst, id);
    INFO(row.model);
    CHECK(row.pass_exact);
    CHECK(row.pass_unit);
    CHECK(row.pass_safe);
  }
}

TEST_CASE("zero-dual instances deteriorate but stay dominated") {
  // all coefficients nonpositive: relaxations sit at 0 and every dual is 0,
  // so the safe replacement swaps in unit weights
  QuboInstance inst = QuboInstance::zeros(4);
  inst.id = "nonpos";
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) inst.set_pair(i, j, -((i + j) % 3 + 1));
  for (int i = 0; i < 4; ++i) inst.c[i] = -1;
  const auto row = dual_weight_check(inst, ModelId::GW_a);
  CHECK(row.base_lp == Catch::Approx(0.0).margin(1e-9));
  CHECK(row.pass_exact);
  CHECK(row.pass_safe);
  CHECK(row.dual_safe_lp >= row.base_lp - 1e-6);
}
