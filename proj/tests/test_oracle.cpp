#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "qubolin/generate.hpp"
#include "qubolin/io.hpp"
#include "qubolin/oracle.hpp"

using namespace qubolin;

namespace {

long long naive_opt(const QuboInstance& inst) {
  long long best = std::numeric_limits<long long>::min();
  for (std::uint64_t mask = 0; mask < (1ULL << inst.n); ++mask) {
    std::vector<int> x(inst.n);
    for (int j = 0; j < inst.n; ++j) x[j] = (mask >> j) & 1;
    best = std::max(best, qubo_value(inst, x));
  }
  return best;
}

}  // namespace

TEST_CASE("brute force on the named instances") {
  const auto r2 = brute_force_opt(fixtures::ex2());
  CHECK(r2.value == 6);
  REQUIRE_FALSE(r2.argmax.empty());
  CHECK(std::find(r2.argmax.begin(), r2.argmax.end(), std::vector<int>{0, 1, 1, 0}) !=
        r2.argmax.end());
  CHECK(brute_force_opt(fixtures::ex3()).value == 1);
  QuboInstance flat = QuboInstance::zeros(3);
  flat.c = {-1, -1, -1};
  flat.id = "flat";
  const auto rz = brute_force_opt(flat);
  CHECK(rz.value == 0);
  CHECK(rz.argmax == std::vector<std::vector<int>>{{0, 0, 0}});
  CHECK_THROWS_AS(brute_force_opt(generate_uniform(8, -5, 5, -5, 5, 1.0, 1), 6), SolveError);
}

TEST_CASE("gray-code updates agree with direct evaluation") {
  for (int k = 0; k < 6; ++k) {
    const QuboInstance inst = generate_uniform(4 + k, -10, 10, -20, 20, 0.7, 4100 + k);
    CHECK(brute_force_opt(inst).value == naive_opt(inst));
  }
  // the asymmetric study instance uses the double sum as written
  CHECK(brute_force_opt(fixtures::ex7()).value == naive_opt(fixtures::ex7()));
}

TEST_CASE("optimum is invariant under simultaneous permutation") {
  std::mt19937_64 rng(55);
  const QuboInstance inst = generate_uniform(8, -10, 10, -20, 20, 1.0, 4200);
  const long long base = brute_force_opt(inst).value;
  std::vector<int> perm(inst.n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(perm.begin(), perm.end(), rng);
    QuboInstance p = QuboInstance::zeros(inst.n);
    p.id = "perm";
    for (int i = 0; i < inst.n; ++i) {
      p.c[perm[i]] = inst.c[i];
      for (int j = 0; j < inst.n; ++j) p.q[perm[i]][perm[j]] = inst.q[i][j];
    }
    CHECK(brute_force_opt(p).value == base);
  }
}

TEST_CASE("verification verdicts") {
  SECTION("the aggregated DW is caught on ex3") {
    const auto rep = verify_model(ModelId::DW_sb, {fixtures::ex3()});
    CHECK(rep.verdict == Verdict::kInvalidWitness);
    CHECK(rep.witness_model_objective == 2);
    CHECK(rep.witness_true_optimum == 1);
    REQUIRE(rep.witness_instance.has_value());
    CHECK(rep.witness_instance->id == "ex3");
  }
  SECTION("valid formulations are confirmed on a random suite") {
    std::vector<QuboInstance> suite;
    for (int k = 0; k < 8; ++k)
      suite.push_back(generate_uniform(4 + k % 4, -10, 10, -20, 20, 1.0, 4300 + k));
    for (ModelId id : {ModelId::PK, ModelId::ORGW_agpd, ModelId::FT_sgt}) {
      const auto rep = verify_model(id, suite);
      INFO(model_name(id));
      CHECK(rep.verdict == Verdict::kValidConfirmed);
      CHECK(rep.instances_tested == 8);
    }
  }
  SECTION("randomized search exposes the over-reduced ORDW aggregation") {
    // ORDW-AF coincides with ORDW-A on all-negative instances, so witnesses
    // are plentiful; ex6a itself is one.
    const auto direct = verify_model(ModelId::ORDW_AF, {fixtures::ex6a()});
    CHECK(direct.verdict == Verdict::kInvalidWitness);
    const auto rep = search_counterexample(ModelId::ORDW_AF, 13, 3000);
    CHECK(rep.verdict == Verdict::kInvalidWitness);
  }
  SECTION("search on a valid model stays inconclusive") {
    const auto rep = search_counterexample(ModelId::PK_sb, 13, 40, 3, 4);
    CHECK(rep.verdict == Verdict::kInconclusive);
  }
}

TEST_CASE("precision classification") {
  SECTION("the four basic models are precise on ex1") {
    for (ModelId id : {ModelId::DW, ModelId::GW, ModelId::FT, ModelId::PK})
      CHECK(check_precision(id, fixtures::ex1()).precise);
  }
  SECTION("ORDW on ex1 yields the 0-versus-2 witness") {
    const auto rep = check_precision(ModelId::ORDW, fixtures::ex1());
    REQUIRE_FALSE(rep.precise);
    CHECK(std::llround(rep.witness_model_objective) == 0);
    CHECK(rep.witness_recomputed == 2);
  }
  SECTION("random 3x3 instances keep the standard linearization precise") {
    for (int k = 0; k < 5; ++k) {
      const QuboInstance inst = generate_uniform(3, -10, 10, -20, 20, 1.0, 4400 + k);
      CHECK(check_precision(ModelId::GW, inst).precise);
    }
  }
  SECTION("every precise-form valid model forces the products") {
    const QuboInstance inst = generate_uniform(3, -10, 10, -20, 20, 1.0, 4500);
    for (const auto& e : model_table()) {
      if (e.known_invalid || e.restriction != Restriction::kPrecise) continue;
      INFO(e.name);
      CHECK(check_precision(e.id, inst).precise);
      CHECK(check_precision(e.id, fixtures::ex1()).precise);
    }
  }
  SECTION("optimality restricted forms admit slack off the optimum") {
    // the defining contrast: ORDW and ORPK leave room on ex1 that DW and PK
    // close
    CHECK_FALSE(check_precision(ModelId::ORDW, fixtures::ex1()).precise);
    CHECK_FALSE(check_precision(ModelId::ORPK, fixtures::ex3()).precise);
  }
}
