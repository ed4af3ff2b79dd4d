#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qubolin/common.hpp"

namespace qubolin {

/// A QUBO instance: maximize x^T Q x + c^T x over binary x, with Q symmetric
/// and zero on the diagonal. Coefficients are integers, so every objective
/// value computed here is exact. Indices are 0-based in memory and 1-based in
/// every file format and report.
struct QuboInstance {
  int n = 0;
  std::vector<std::vector<long long>> q;  // n x n
  std::vector<long long> c;               // n
  /// Set only for the one asymmetric study instance; such instances are
  /// rejected by validate() unless this flag is on.
  bool allow_asymmetric = false;
  std::string id;  // short label used in reports ("ex3", "rnd-17", ...)

  static QuboInstance zeros(int n) {
    QuboInstance inst;
    inst.n = n;
    inst.q.assign(n, std::vector<long long>(n, 0));
    inst.c.assign(n, 0);
    return inst;
  }

  void set_pair(int i, int j, long long v) {  // 0-based, symmetric
    q[i][j] = v;
    q[j][i] = v;
  }

  std::uint64_t fingerprint_u64() const {
    std::uint64_t h = fnv1a_u64(static_cast<std::uint64_t>(n), 1469598103934665603ULL);
    for (int i = 0; i < n; ++i) h = fnv1a_u64(static_cast<std::uint64_t>(c[i]), h);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (q[i][j] != 0) {
          h = fnv1a_u64(static_cast<std::uint64_t>(i * 1000003 + j), h);
          h = fnv1a_u64(static_cast<std::uint64_t>(q[i][j]), h);
        }
    return h;
  }

  std::string fingerprint() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fingerprint_u64()));
    return buf;
  }
};

/// Per-row nonzero structure of Q. r[i] holds the j with q_ij != 0, split by
/// sign into r_plus / r_minus; s mirrors columns (equal to r when Q is
/// symmetric). All lists ascending.
struct IndexSets {
  std::vector<std::vector<int>> r, r_plus, r_minus;
  std::vector<std::vector<int>> s, s_plus, s_minus;
};

inline IndexSets index_sets(const QuboInstance& inst) {
  IndexSets sets;
  const int n = inst.n;
  sets.r.resize(n);
  sets.r_plus.resize(n);
  sets.r_minus.resize(n);
  sets.s.resize(n);
  sets.s_plus.resize(n);
  sets.s_minus.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (inst.q[i][j] != 0) {
        sets.r[i].push_back(j);
        (inst.q[i][j] > 0 ? sets.r_plus[i] : sets.r_minus[i]).push_back(j);
      }
      if (inst.q[j][i] != 0) {
        sets.s[i].push_back(j);
        (inst.q[j][i] > 0 ? sets.s_plus[i] : sets.s_minus[i]).push_back(j);
      }
    }
  }
  return sets;
}

/// Exact objective value; both orientations of every pair are summed, which
/// matches the double-sum objective the models linearize.
inline long long qubo_value(const QuboInstance& inst, const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != inst.n) throw BuildError("qubo_value: dimension mismatch");
  long long v = 0;
  for (int i = 0; i < inst.n; ++i) {
    if (x[i] != 0 && x[i] != 1) throw BuildError("qubo_value: non-binary entry at " + std::to_string(i + 1));
    if (!x[i]) continue;
    v += inst.c[i];
    for (int j = 0; j < inst.n; ++j)
      if (x[j] && inst.q[i][j] != 0) v += inst.q[i][j];
  }
  return v;
}

/// Empty result means the instance is well formed; otherwise the first
/// violation found, with 1-based indices.
inline std::optional<std::string> validate(const QuboInstance& inst) {
  if (inst.n < 1) return "dimension must be at least 1";
  if (static_cast<int>(inst.q.size()) != inst.n || static_cast<int>(inst.c.size()) != inst.n)
    return "matrix/vector size does not match n";
  for (int i = 0; i < inst.n; ++i) {
    if (static_cast<int>(inst.q[i].size()) != inst.n) return "row " + std::to_string(i + 1) + " has wrong length";
    if (inst.q[i][i] != 0) return "nonzero diagonal at " + std::to_string(i + 1);
  }
  for (int i = 0; i < inst.n; ++i)
    for (int j = i + 1; j < inst.n; ++j)
      if (inst.q[i][j] != inst.q[j][i]) {
        if (inst.allow_asymmetric) continue;
        return "asymmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      }
  if (inst.allow_asymmetric) {
    // Research mode still requires a symmetric support so that y_ij and y_ji
    // are defined together.
    for (int i = 0; i < inst.n; ++i)
      for (int j = 0; j < inst.n; ++j)
        if ((inst.q[i][j] != 0) != (inst.q[j][i] != 0))
          return "asymmetric support at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  }
  return std::nullopt;
}

}  // namespace qubolin
