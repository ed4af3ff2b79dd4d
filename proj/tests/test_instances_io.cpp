#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qubolin/generate.hpp"
#include "qubolin/io.hpp"
#include "qubolin/simplex.hpp"

using namespace qubolin;

TEST_CASE("OR-Library parsing") {
  SECTION("off-diagonal entries land symmetrically") {
    const auto v = parse_orlib("1\n2 1\n1 2 5\n");
    REQUIRE(v.size() == 1);
    CHECK(v[0].n == 2);
    CHECK(v[0].q[0][1] == 5);
    CHECK(v[0].q[1][0] == 5);
    CHECK(v[0].c == std::vector<long long>{0, 0});
  }
  SECTION("diagonal entries become linear coefficients") {
    const auto v = parse_orlib("1\n2 1\n1 1 7\n");
    REQUIRE(v.size() == 1);
    CHECK(v[0].c == std::vector<long long>{7, 0});
    CHECK(v[0].q[0][1] == 0);
  }
  SECTION("count zero gives an empty list") { CHECK(parse_orlib("0\n").empty()); }
  SECTION("duplicates accumulate") {
    const auto v = parse_orlib("1\n3 3\n1 2 5\n2 1 -2\n1 1 4\n");
    CHECK(v[0].q[0][1] == 3);
    CHECK(v[0].q[1][0] == 3);
    CHECK(v[0].c[0] == 4);
  }
  SECTION("errors carry locations") {
    CHECK_THROWS_AS(parse_orlib("1\n2 1\n1 9 5\n"), ParseError);
    CHECK_THROWS_AS(parse_orlib("1\n2 2\n1 2 5\n"), ParseError);
    CHECK_THROWS_AS(parse_orlib("1\n2 1\n1 x 5\n"), ParseError);
  }
}

TEST_CASE("canonical text round trip") {
  for (const auto& name : {"ex1", "ex2", "ex3", "ex6b"}) {
    const QuboInstance inst = *fixtures::by_name(name);
    const QuboInstance back = load_canonical(save_canonical(inst), inst.id);
    CHECK(back.n == inst.n);
    CHECK(back.q == inst.q);
    CHECK(back.c == inst.c);
  }
  CHECK_THROWS_AS(save_canonical(fixtures::ex7()), BuildError);  // asymmetric
  CHECK_THROWS_AS(load_canonical("QUBO 2\nc 1\n"), ParseError);
  CHECK_THROWS_AS(load_canonical("QUBO 2\nc 1 2\n1 1 3\n"), ParseError);
}

TEST_CASE("orlib then canonical is the identity on the data") {
  const auto v = parse_orlib("1\n4 4\n1 2 5\n1 3 -2\n2 4 1\n3 3 -9\n");
  const QuboInstance back = load_canonical(save_canonical(v[0]));
  CHECK(back.q == v[0].q);
  CHECK(back.c == v[0].c);
}

TEST_CASE("uniform generator") {
  SECTION("repeating a seed reproduces the instance") {
    const auto a = generate_uniform(12, -10, 10, -20, 20, 0.5, 777);
    const auto b = generate_uniform(12, -10, 10, -20, 20, 0.5, 777);
    CHECK(a.q == b.q);
    CHECK(a.c == b.c);
    const auto c = generate_uniform(12, -10, 10, -20, 20, 0.5, 778);
    CHECK(a.q != c.q);
  }
  SECTION("instances validate and zeros are structural") {
    const auto inst = generate_uniform(10, -10, 10, -20, 20, 1.0, 9);
    CHECK_FALSE(validate(inst).has_value());
    for (int i = 0; i < inst.n; ++i)
      for (int j = i + 1; j < inst.n; ++j) CHECK(inst.q[i][j] != 0);  // density 1, no zero draws
  }
  SECTION("pair count tracks the density within 3 sigma") {
    const int n = 50;
    const double density = 0.3;
    const auto inst = generate_uniform(n, -10, 10, -20, 20, density, 123);
    int nonzero = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) nonzero += inst.q[i][j] != 0;
    const double trials = n * (n - 1) / 2.0;
    const double mean = trials * density;
    const double sigma = std::sqrt(trials * density * (1 - density));
    CHECK(std::fabs(nonzero - mean) <= 3 * sigma);
  }
  SECTION("degenerate ranges are rejected") {
    CHECK_THROWS_AS(generate_uniform(4, 0, 0, 0, 0, 1.0, 1), BuildError);
    CHECK_THROWS_AS(generate_uniform(4, -1, 1, -1, 1, 0.0, 1), BuildError);
  }
}

TEST_CASE("balanced generator") {
  SECTION("accepted instances re-satisfy the acceptance rule") {
    GeneratorConfig cfg;
    cfg.n = 6;
    cfg.seed = 31;
    BalancedTrace trace;
    const QuboInstance inst = generate_balanced(cfg, &trace);
    CHECK_FALSE(validate(inst).has_value());
    CHECK(trace.attempts >= 1);
    const LpResult lp = solve_lp(build(ModelId::GW, inst));
    for (int i = 0; i < inst.n; ++i) CHECK(std::fabs(lp.primal[i] - 0.5) <= 1e-7);
    for (int i = 0; i < inst.n; ++i) {
      CHECK(inst.c[i] >= cfg.c_min);
      CHECK(inst.c[i] <= cfg.c_max);
    }
  }
  SECTION("a zero quadratic range can never balance") {
    GeneratorConfig cfg;
    cfg.n = 4;
    cfg.q_min = cfg.q_max = 0;
    cfg.max_attempts = 25;
    CHECK_THROWS_AS(generate_balanced(cfg), SolveError);
  }
  SECTION("the half-integral-set rule accepts mixed vertices") {
    GeneratorConfig cfg;
    cfg.n = 6;
    cfg.seed = 31;
    cfg.rule = BalanceRule::kHalfIntegralSet;
    const QuboInstance inst = generate_balanced(cfg);
    const LpResult lp = solve_lp(build(ModelId::GW, inst));
    bool any_half = false;
    for (int i = 0; i < inst.n; ++i) {
      const double x = lp.primal[i];
      const bool half = std::fabs(x - 0.5) <= 1e-7;
      CHECK((half || std::fabs(x) <= 1e-7 || std::fabs(x - 1) <= 1e-7));
      any_half = any_half || half;
    }
    CHECK(any_half);
  }
}

TEST_CASE("fixture lookup") {
  for (const auto& name : fixtures::names()) {
    const auto inst = fixtures::by_name(name);
    REQUIRE(inst.has_value());
    CHECK(inst->id == name);
  }
  CHECK_FALSE(fixtures::by_name("ex99").has_value());
}
