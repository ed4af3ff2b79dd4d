#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "qubolin/generate.hpp"
#include "qubolin/io.hpp"
#include "qubolin/qubo.hpp"

using namespace qubolin;

TEST_CASE("objective value on the named instances") {
  const auto ex1 = fixtures::ex1();
  CHECK(qubo_value(ex1, {1, 1}) == 2);
  CHECK(qubo_value(ex1, {0, 0}) == 0);
  const auto ex2 = fixtures::ex2();
  CHECK(qubo_value(ex2, {0, 1, 1, 0}) == 6);
  CHECK(qubo_value(ex2, {0, 0, 0, 0}) == 0);
}

TEST_CASE("objective value rejects bad input") {
  const auto ex1 = fixtures::ex1();
  CHECK_THROWS(qubo_value(ex1, {1}));
  CHECK_THROWS(qubo_value(ex1, {1, 2}));
}

TEST_CASE("index sets split by sign") {
  const auto s1 = index_sets(fixtures::ex1());
  CHECK(s1.r[0] == std::vector<int>{1});
  CHECK(s1.r_plus[0] == std::vector<int>{1});
  CHECK(s1.r_minus[0].empty());

  const auto s2 = index_sets(fixtures::ex2());
  CHECK(s2.r[0] == std::vector<int>{1, 2, 3});
  CHECK(s2.r_plus[0] == std::vector<int>{1});
  CHECK(s2.r_minus[0] == std::vector<int>{2, 3});

  const auto sz = index_sets(QuboInstance::zeros(3));
  for (int i = 0; i < 3; ++i) {
    CHECK(sz.r[i].empty());
    CHECK(sz.r_plus[i].empty());
    CHECK(sz.r_minus[i].empty());
  }
}

TEST_CASE("index sets mirror by symmetry and partition") {
  const QuboInstance inst = generate_uniform(8, -10, 10, -20, 20, 0.7, 17);
  const auto sets = index_sets(inst);
  for (int i = 0; i < inst.n; ++i) {
    CHECK(sets.r[i] == sets.s[i]);
    CHECK(sets.r[i].size() == sets.r_plus[i].size() + sets.r_minus[i].size());
    for (int j : sets.r[i])
      CHECK(std::find(sets.r[j].begin(), sets.r[j].end(), i) != sets.r[j].end());
  }
}

TEST_CASE("validate reports the first violation") {
  CHECK_FALSE(validate(fixtures::ex1()).has_value());

  QuboInstance bad = QuboInstance::zeros(2);
  bad.q[0][1] = 1;
  bad.q[1][0] = 2;
  auto err = validate(bad);
  REQUIRE(err.has_value());
  CHECK(err->find("asymmetric at (1,2)") != std::string::npos);

  QuboInstance diag = QuboInstance::zeros(1);
  diag.q[0][0] = 1;
  err = validate(diag);
  REQUIRE(err.has_value());
  CHECK(err->find("nonzero diagonal at 1") != std::string::npos);
}

TEST_CASE("objective is invariant under simultaneous permutation") {
  std::mt19937_64 rng(5);
  const QuboInstance inst = generate_uniform(7, -10, 10, -15, 15, 0.8, 23);
  std::vector<int> perm(inst.n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(perm.begin(), perm.end(), rng);
    QuboInstance p = QuboInstance::zeros(inst.n);
    for (int i = 0; i < inst.n; ++i) {
      p.c[perm[i]] = inst.c[i];
      for (int j = 0; j < inst.n; ++j) p.q[perm[i]][perm[j]] = inst.q[i][j];
    }
    std::vector<int> x(inst.n), px(inst.n);
    for (int i = 0; i < inst.n; ++i) x[i] = static_cast<int>(rng() & 1);
    for (int i = 0; i < inst.n; ++i) px[perm[i]] = x[i];
    CHECK(qubo_value(inst, x) == qubo_value(p, px));
  }
}

TEST_CASE("double sum equals twice the upper triangle") {
  const QuboInstance inst = generate_uniform(6, -10, 10, -20, 20, 1.0, 31);
  std::mt19937_64 rng(7);
  for (int round = 0; round < 20; ++round) {
    std::vector<int> x(inst.n);
    for (int i = 0; i < inst.n; ++i) x[i] = static_cast<int>(rng() & 1);
    long long upper = 0;
    for (int i = 0; i < inst.n; ++i)
      for (int j = i + 1; j < inst.n; ++j)
        if (x[i] && x[j]) upper += inst.q[i][j];
    long long linear = 0;
    for (int i = 0; i < inst.n; ++i)
      if (x[i]) linear += inst.c[i];
    CHECK(qubo_value(inst, x) == 2 * upper + linear);
  }
}
