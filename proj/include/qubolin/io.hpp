#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qubolin/common.hpp"
#include "qubolin/qubo.hpp"

namespace qubolin {

/// Canonical instance text: "QUBO n", a "c ..." line, then the sparse upper
/// triangle as "i j q_ij" lines (1-based, ascending). Symmetric instances
/// only; exact integer round trip.
inline std::string save_canonical(const QuboInstance& inst) {
  if (inst.allow_asymmetric)
    throw BuildError("canonical format stores symmetric instances only");
  std::ostringstream os;
  os << "QUBO " << inst.n << "\n";
  os << "c";
  for (int i = 0; i < inst.n; ++i) os << " " << inst.c[i];
  os << "\n";
  for (int i = 0; i < inst.n; ++i)
    for (int j = i + 1; j < inst.n; ++j)
      if (inst.q[i][j] != 0) os << (i + 1) << " " << (j + 1) << " " << inst.q[i][j] << "\n";
  return os.str();
}

inline QuboInstance load_canonical(const std::string& text, const std::string& id = "") {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::size_t p = line.find_first_not_of(" \t");
      if (p == std::string::npos || line[p] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty instance file", 1);
  std::istringstream hs(line);
  std::string tag;
  long long n = 0;
  hs >> tag >> n;
  if (tag != "QUBO" || n < 1) throw ParseError("expected 'QUBO n' header", lineno);
  QuboInstance inst = QuboInstance::zeros(static_cast<int>(n));
  inst.id = id;
  if (!next_line()) throw ParseError("missing c line", lineno + 1);
  std::istringstream cs(line);
  cs >> tag;
  if (tag != "c") throw ParseError("expected c line", lineno);
  for (int i = 0; i < inst.n; ++i)
    if (!(cs >> inst.c[i])) throw ParseError("c line has fewer than n entries", lineno);
  while (next_line()) {
    std::istringstream ts(line);
    long long i = 0, j = 0, v = 0;
    if (!(ts >> i >> j >> v)) throw ParseError("expected 'i j q_ij'", lineno);
    if (i < 1 || i > n || j < 1 || j > n || i == j)
      throw ParseError("index out of range", lineno);
    inst.set_pair(static_cast<int>(i) - 1, static_cast<int>(j) - 1, v);
  }
  if (auto err = validate(inst)) throw ParseError(*err, lineno);
  return inst;
}

/// OR-Library bqp text: an instance count, then per instance a "n m" header
/// and m entries "i j v" (1-based). Diagonal entries become linear
/// coefficients (x_i^2 = x_i); off-diagonal values land symmetrically on
/// q_ij and q_ji; duplicates accumulate.
inline std::vector<QuboInstance> parse_orlib(const std::string& text,
                                             const std::string& id_prefix = "bqp") {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::vector<long long> pending;
  std::size_t pending_at = 0;
  auto next_tokens = [&](int count, std::vector<long long>& out) -> bool {
    out.clear();
    while (static_cast<int>(out.size()) < count) {
      if (pending_at == pending.size()) {
        if (!std::getline(is, line)) {
          if (out.empty()) return false;
          throw ParseError("unexpected end of file", lineno);
        }
        ++lineno;
        pending.clear();
        pending_at = 0;
        std::istringstream ts(line);
        std::string tok;
        while (ts >> tok) pending.push_back(parse_int(tok, lineno));
        continue;
      }
      out.push_back(pending[pending_at++]);
    }
    return true;
  };
  std::vector<long long> tok;
  if (!next_tokens(1, tok)) throw ParseError("missing instance count", 1);
  const long long count = tok[0];
  if (count < 0) throw ParseError("negative instance count", lineno);
  std::vector<QuboInstance> out;
  for (long long k = 0; k < count; ++k) {
    if (!next_tokens(2, tok)) throw ParseError("missing instance header", lineno);
    const long long n = tok[0], nnz = tok[1];
    if (n < 1) throw ParseError("bad dimension", lineno);
    QuboInstance inst = QuboInstance::zeros(static_cast<int>(n));
    inst.id = id_prefix + "-" + std::to_string(k + 1);
    for (long long e = 0; e < nnz; ++e) {
      if (!next_tokens(3, tok)) throw ParseError("missing matrix entry", lineno);
      const long long i = tok[0], j = tok[1], v = tok[2];
      if (i < 1 || i > n || j < 1 || j > n) throw ParseError("index out of range", lineno);
      if (i == j) {
        inst.c[i - 1] += v;
      } else {
        inst.q[i - 1][j - 1] += v;
        inst.q[j - 1][i - 1] += v;
      }
    }
    if (auto err = validate(inst)) throw ParseError(*err, lineno);
    out.push_back(std::move(inst));
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BuildError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BuildError("cannot write file: " + path);
  out << text;
}

namespace fixtures {

inline QuboInstance make(int n, std::vector<std::vector<long long>> q, std::vector<long long> c,
                         std::string id, bool asym = false) {
  QuboInstance inst;
  inst.n = n;
  inst.q = std::move(q);
  inst.c = std::move(c);
  inst.id = std::move(id);
  inst.allow_asymmetric = asym;
  if (auto err = validate(inst)) throw BuildError("fixture " + inst.id + ": " + *err);
  return inst;
}

/// The 2x2 instance with Q = [[0,a],[a,0]], c = 0 (a = 1): any solver stop at
/// x = (1,1) with the y's still zero reports 0 while the solution is worth 2.
inline QuboInstance ex1() { return make(2, {{0, 1}, {1, 0}}, {0, 0}, "ex1"); }

/// 4x4 instance whose optimum is 6; with the weights a_14=3, a_34=6 it shows
/// the y<=1 bounds of PK(a) are required (8 without them).
inline QuboInstance ex2() {
  return make(4,
              {{0, 3, -6, -3}, {3, 0, 6, 3}, {-6, 6, 0, -6}, {-3, 3, -6, 0}},
              {-3, -6, 0, 3}, "ex2");
}

/// 3x3 instance separating DW(*,b) from a valid model: aggregation reports 2,
/// the true optimum is 1.
inline QuboInstance ex3() {
  return make(3, {{0, 1, 1}, {1, 0, 0}, {1, 0, 0}}, {1, -5, -5}, "ex3");
}

/// All-negative 3x3 instance on which ORDW-A reports 7 against a true 6.
inline QuboInstance ex6a() {
  return make(3, {{0, -2, 0}, {-2, 0, -1}, {0, -1, 0}}, {5, 5, 0}, "ex6a");
}

/// Mixed-sign 3x3 instance on which the reduced-bound ORPK(*,b) reports 8
/// against a true 3 (a y variable escapes to -3).
inline QuboInstance ex6b() {
  return make(3, {{0, 6, 1}, {6, 0, -7}, {1, -7, 0}}, {-7, -2, -15}, "ex6b");
}

/// Asymmetric 2x2 study instance (a = 1): FT relaxes to 0 while GW relaxes to
/// 1/2 and PK to 2, so the relaxation equalities need symmetry.
inline QuboInstance ex7() {
  return make(2, {{0, 3}, {-1, 0}}, {-1, -1}, "ex7", /*asym=*/true);
}

/// Q = [[0,a/2],[a/2,0]], c = (-a, 1) at a = 2: GW relaxes to 1 while DW
/// relaxes to 1 + a/2 = 2, the gap that separates the two relaxations.
inline QuboInstance ex8() { return make(2, {{0, 1}, {1, 0}}, {-2, 1}, "ex8"); }

/// The instance exposing the mis-stated unweighted aggregation: the model
/// reports 2 while the true optimum is 1.
inline QuboInstance hm() { return make(2, {{0, 1}, {1, 0}}, {-2, 1}, "hm"); }

inline std::optional<QuboInstance> by_name(const std::string& name) {
  if (name == "ex1") return ex1();
  if (name == "ex2") return ex2();
  if (name == "ex3") return ex3();
  if (name == "ex6a") return ex6a();
  if (name == "ex6b") return ex6b();
  if (name == "ex7") return ex7();
  if (name == "ex8") return ex8();
  if (name == "hm") return hm();
  return std::nullopt;
}

inline std::vector<std::string> names() {
  return {"ex1", "ex2", "ex3", "ex6a", "ex6b", "ex7", "ex8", "hm"};
}

}  // namespace fixtures

/// Resolves a CLI --instance argument: a built-in fixture name or a path to a
/// canonical instance file.
inline QuboInstance load_instance_arg(const std::string& arg) {
  if (auto f = fixtures::by_name(arg)) return *f;
  QuboInstance inst = load_canonical(read_file(arg), arg);
  return inst;
}

}  // namespace qubolin
