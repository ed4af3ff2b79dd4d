#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qubolin/common.hpp"
#include "qubolin/milp.hpp"

namespace qubolin {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kStall };

inline const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "OPTIMAL";
    case LpStatus::kInfeasible: return "INFEASIBLE";
    case LpStatus::kUnbounded: return "UNBOUNDED";
    case LpStatus::kStall: return "SOLVER_STALL";
  }
  return "?";
}

struct LpResult {
  LpStatus status = LpStatus::kStall;
  double objective = 0.0;
  std::vector<double> primal;   // structural variable values
  std::vector<double> duals;    // one per general row; <=-rows nonnegative under max
  std::vector<double> reduced;  // structural reduced costs
  std::uint64_t basis_fingerprint = 0;
  int iterations = 0;
};

/// Dense bounded-variable primal simplex, two phases, Dantzig pricing with a
/// Bland fallback once the objective stalls. Deterministic: every tie is
/// broken by index. Never reports OPTIMAL without passing a primal/dual/gap
/// validation against the original rows.
class Simplex {
 public:
  explicit Simplex(int nstruct)
      : ns_(nstruct), lo_(nstruct, 0.0), up_(nstruct, kInf), c_(nstruct, 0.0) {}

  void set_bounds(int j, double lo, double up) {
    lo_[j] = lo;
    up_[j] = up;
  }
  void set_objective(int j, double c) { c_[j] = c; }

  void add_row(const std::vector<std::pair<int, double>>& terms, Sense sense, double rhs) {
    rows_.push_back({terms, sense, rhs});
    prepared_ = false;
  }

  /// Solve with the stored bounds, or with per-call structural bounds (used by
  /// the tree search, which reuses one prepared matrix across nodes).
  LpResult solve() { return solve(nullptr, nullptr); }

  LpResult solve(const std::vector<double>* lo_struct, const std::vector<double>* up_struct) {
    if (!prepared_) prepare();
    if (lo_struct)
      std::copy(lo_struct->begin(), lo_struct->begin() + ns_, lo_.begin());
    else
      std::copy(base_lo_.begin(), base_lo_.end(), lo_.begin());
    if (up_struct)
      std::copy(up_struct->begin(), up_struct->begin() + ns_, up_.begin());
    else
      std::copy(base_up_.begin(), base_up_.end(), up_.begin());
    reset_state();
    LpResult out;
    for (int attempt = 0; attempt < 3; ++attempt) {
      LpStatus st = run();
      if (st != LpStatus::kOptimal) {
        out.status = st;
        out.iterations = iters_;
        if (st == LpStatus::kInfeasible || st == LpStatus::kUnbounded) fill_primal(out);
        return out;
      }
      if (validate()) {
        out.status = LpStatus::kOptimal;
        out.objective = objective_value();
        fill_primal(out);
        out.duals.resize(m_);
        for (int r = 0; r < m_; ++r) out.duals[r] = -z_[ns_ + r];
        out.reduced.assign(z_.begin(), z_.begin() + ns_);
        out.iterations = iters_;
        out.basis_fingerprint = fingerprint();
        return out;
      }
      refactor();  // drift detected; rebuild the tableau from the basis and retry
    }
    out.status = LpStatus::kStall;
    out.iterations = iters_;
    return out;
  }

 private:
  struct RawRow {
    std::vector<std::pair<int, double>> terms;
    Sense sense;
    double rhs;
  };

  static constexpr double kFeasTol = 1e-9;
  static constexpr double kOptTol = 1e-9;
  static constexpr double kPivTol = 1e-9;

  enum NbState : unsigned char { kAtLo = 0, kAtUp = 1, kFree = 2 };

  int ns_;
  std::vector<double> lo_, up_, c_;
  std::vector<double> base_lo_, base_up_;
  std::vector<RawRow> rows_;
  bool prepared_ = false;

  int m_ = 0, tot_ = 0;
  std::vector<double> A_, T_;  // m x tot, row-major
  std::vector<double> rhs_, xB_, z_;
  std::vector<int> basic_, pos_;
  std::vector<NbState> state_;
  int iters_ = 0;
  bool bland_ = false;
  int no_improve_ = 0;
  double last_obj_ = -kInf;

  double* arow(int r) { return A_.data() + static_cast<std::size_t>(r) * tot_; }
  double* trow(int r) { return T_.data() + static_cast<std::size_t>(r) * tot_; }

  double val(int j) const {
    if (pos_[j] >= 0) return xB_[pos_[j]];
    switch (state_[j]) {
      case kAtLo: return lo_[j];
      case kAtUp: return up_[j];
      default: return 0.0;
    }
  }

  void prepare() {
    m_ = static_cast<int>(rows_.size());
    tot_ = ns_ + m_;
    base_lo_.assign(lo_.begin(), lo_.begin() + ns_);
    base_up_.assign(up_.begin(), up_.begin() + ns_);
    lo_.resize(tot_);
    up_.resize(tot_);
    c_.resize(tot_, 0.0);
    rhs_.resize(m_);
    A_.assign(static_cast<std::size_t>(m_) * tot_, 0.0);
    for (int r = 0; r < m_; ++r) {
      for (const auto& [j, coef] : rows_[r].terms) arow(r)[j] += coef;
      arow(r)[ns_ + r] = 1.0;
      rhs_[r] = rows_[r].rhs;
      switch (rows_[r].sense) {
        case Sense::kLe: lo_[ns_ + r] = 0.0, up_[ns_ + r] = kInf; break;
        case Sense::kGe: lo_[ns_ + r] = -kInf, up_[ns_ + r] = 0.0; break;
        case Sense::kEq: lo_[ns_ + r] = 0.0, up_[ns_ + r] = 0.0; break;
      }
    }
    prepared_ = true;
  }

  void reset_state() {
    T_ = A_;
    basic_.resize(m_);
    pos_.assign(tot_, -1);
    state_.assign(tot_, kAtLo);
    for (int j = 0; j < tot_; ++j) {
      if (lo_[j] > -kInf)
        state_[j] = kAtLo;
      else if (up_[j] < kInf)
        state_[j] = kAtUp;
      else
        state_[j] = kFree;
    }
    for (int r = 0; r < m_; ++r) {
      basic_[r] = ns_ + r;
      pos_[ns_ + r] = r;
    }
    recompute_xb();
    z_ = c_;
    iters_ = 0;
    bland_ = false;
    no_improve_ = 0;
    last_obj_ = -kInf;
  }

  void recompute_xb() {
    xB_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      double v = rhs_[r];
      const double* a = arow(r);
      for (int j = 0; j < tot_; ++j)
        if (pos_[j] < 0 && a[j] != 0.0) v -= a[j] * val(j);
      xB_[r] = v;
    }
  }

  double objective_value() const {
    double v = 0.0;
    for (int j = 0; j < tot_; ++j)
      if (c_[j] != 0.0) v += c_[j] * val(j);
    return v;
  }

  double infeasibility() const {
    double f = 0.0;
    for (int r = 0; r < m_; ++r) {
      const int b = basic_[r];
      if (xB_[r] < lo_[b]) f += lo_[b] - xB_[r];
      if (xB_[r] > up_[b]) f += xB_[r] - up_[b];
    }
    return f;
  }

  int max_iters() const { return 5000 + 60 * (m_ + tot_); }

  LpStatus run() {
    LpStatus st = phase1();
    if (st != LpStatus::kOptimal) return st;
    return phase2();
  }

  LpStatus phase1() {
    std::vector<double> slope(tot_);
    double phi = infeasibility();
    last_obj_ = -phi;
    no_improve_ = 0;
    while (phi > kFeasTol * (1.0 + static_cast<double>(m_))) {
      if (iters_ > max_iters()) return LpStatus::kStall;
      std::fill(slope.begin(), slope.end(), 0.0);
      for (int r = 0; r < m_; ++r) {
        const int b = basic_[r];
        double sgn = 0.0;
        if (xB_[r] < lo_[b] - kFeasTol)
          sgn = 1.0;
        else if (xB_[r] > up_[b] + kFeasTol)
          sgn = -1.0;
        if (sgn == 0.0) continue;
        const double* t = trow(r);
        for (int j = 0; j < tot_; ++j) slope[j] += sgn * t[j];
      }
      int enter = -1, dir = 0;
      double best = kOptTol;
      for (int j = 0; j < tot_; ++j) {
        if (pos_[j] >= 0) continue;
        if (lo_[j] == up_[j]) continue;
        const bool can_inc = state_[j] != kAtUp;
        const bool can_dec = state_[j] != kAtLo;
        double score = 0.0;
        int d = 0;
        if (can_inc && -slope[j] > score) score = -slope[j], d = 1;
        if (can_dec && slope[j] > score) score = slope[j], d = -1;
        if (d == 0 || score <= kOptTol) continue;
        if (bland_) {
          enter = j, dir = d;
          break;
        }
        if (score > best) best = score, enter = j, dir = d;
      }
      if (enter < 0) return LpStatus::kInfeasible;
      if (!step(enter, dir, /*phase1=*/true)) return LpStatus::kStall;
      const double phi_new = infeasibility();
      if (phi_new < phi - 1e-12)
        no_improve_ = 0;
      else if (++no_improve_ > 3 * (m_ + tot_))
        bland_ = true;
      phi = phi_new;
    }
    bland_ = false;
    no_improve_ = 0;
    return LpStatus::kOptimal;
  }

  LpStatus phase2() {
    last_obj_ = objective_value();
    while (true) {
      if (iters_ > max_iters()) return LpStatus::kStall;
      int enter = -1, dir = 0;
      double best = kOptTol;
      for (int j = 0; j < tot_; ++j) {
        if (pos_[j] >= 0) continue;
        if (lo_[j] == up_[j]) continue;
        const bool can_inc = state_[j] != kAtUp;
        const bool can_dec = state_[j] != kAtLo;
        double score = 0.0;
        int d = 0;
        if (can_inc && z_[j] > score) score = z_[j], d = 1;
        if (can_dec && -z_[j] > score) score = -z_[j], d = -1;
        if (d == 0 || score <= kOptTol) continue;
        if (bland_) {
          enter = j, dir = d;
          break;
        }
        if (score > best) best = score, enter = j, dir = d;
      }
      if (enter < 0) return LpStatus::kOptimal;
      if (!step(enter, dir, /*phase1=*/false)) return LpStatus::kUnbounded;
      const double obj = objective_value();
      if (obj > last_obj_ + 1e-9)
        no_improve_ = 0;
      else if (++no_improve_ > 3 * (m_ + tot_))
        bland_ = true;
      last_obj_ = obj;
    }
  }

  /// One ratio test plus pivot or bound flip. Returns false when the step is
  /// unbounded (phase 2) or lost (numerical trouble in phase 1).
  bool step(int enter, int dir, bool phase1) {
    ++iters_;
    double tbest = kInf;
    if (lo_[enter] > -kInf && up_[enter] < kInf) tbest = up_[enter] - lo_[enter];
    int leave = -1;
    int leave_bound = 0;  // 0 -> lower, 1 -> upper
    double ebest = 0.0;
    for (int r = 0; r < m_; ++r) {
      const double e = dir * trow(r)[enter];
      if (std::fabs(e) <= kPivTol) continue;
      const int b = basic_[r];
      const bool below = xB_[r] < lo_[b] - kFeasTol;
      const bool above = xB_[r] > up_[b] + kFeasTol;
      double t = kInf;
      int bound = 0;
      if (phase1 && below) {
        if (e < 0.0) t = (xB_[r] - lo_[b]) / e, bound = 0;
      } else if (phase1 && above) {
        if (e > 0.0) t = (xB_[r] - up_[b]) / e, bound = 1;
      } else {
        if (e > 0.0 && lo_[b] > -kInf)
          t = (xB_[r] - lo_[b]) / e, bound = 0;
        else if (e < 0.0 && up_[b] < kInf)
          t = (xB_[r] - up_[b]) / e, bound = 1;
      }
      if (t == kInf) continue;
      if (t < 0.0) t = 0.0;
      const bool wins =
          t < tbest - 1e-10 ||
          (t <= tbest + 1e-10 && leave >= 0 && std::fabs(e) > std::fabs(ebest) + 1e-12) ||
          (t <= tbest + 1e-10 && leave < 0 && t < tbest);
      if (wins) {
        tbest = t;
        leave = r;
        leave_bound = bound;
        ebest = e;
      }
    }
    if (tbest == kInf) return false;
    // Move the entering variable by tbest along dir.
    for (int r = 0; r < m_; ++r) {
      const double e = dir * trow(r)[enter];
      if (e != 0.0) xB_[r] -= e * tbest;
    }
    if (leave < 0) {  // bound flip
      state_[enter] = state_[enter] == kAtLo ? kAtUp : kAtLo;
      return true;
    }
    const double enter_val = val(enter) + dir * tbest;
    const int b = basic_[leave];
    pos_[b] = -1;
    state_[b] = leave_bound == 0 ? kAtLo : kAtUp;
    basic_[leave] = enter;
    pos_[enter] = leave;
    xB_[leave] = enter_val;
    eliminate(leave, enter);
    return true;
  }

  void eliminate(int p, int jcol) {
    double* tp = trow(p);
    const double piv = tp[jcol];
    const double inv = 1.0 / piv;
    for (int j = 0; j < tot_; ++j) tp[j] *= inv;
    tp[jcol] = 1.0;
    for (int r = 0; r < m_; ++r) {
      if (r == p) continue;
      double* tr = trow(r);
      const double f = tr[jcol];
      if (std::fabs(f) < 1e-13) {
        tr[jcol] = 0.0;
        continue;
      }
      for (int j = 0; j < tot_; ++j) tr[j] -= f * tp[j];
      tr[jcol] = 0.0;
    }
    const double zf = z_[jcol];
    if (zf != 0.0) {
      for (int j = 0; j < tot_; ++j) z_[j] -= zf * tp[j];
      z_[jcol] = 0.0;
    }
  }

  bool validate() const {
    // Primal: equation residuals and bounds.
    for (int r = 0; r < m_; ++r) {
      double lhs = 0.0;
      const double* a = A_.data() + static_cast<std::size_t>(r) * tot_;
      for (int j = 0; j < tot_; ++j)
        if (a[j] != 0.0) lhs += a[j] * val(j);
      if (std::fabs(lhs - rhs_[r]) > 1e-9 * (1.0 + std::fabs(rhs_[r]))) return false;
    }
    for (int j = 0; j < tot_; ++j) {
      const double v = val(j);
      if (v < lo_[j] - kFeasTol || v > up_[j] + kFeasTol) return false;
    }
    // Dual feasibility at the claimed optimum.
    for (int j = 0; j < tot_; ++j) {
      if (pos_[j] >= 0 || lo_[j] == up_[j]) continue;
      if (state_[j] == kAtLo && z_[j] > 2e-9) return false;
      if (state_[j] == kAtUp && z_[j] < -2e-9) return false;
      if (state_[j] == kFree && std::fabs(z_[j]) > 2e-9) return false;
    }
    // Strong duality.
    double dual_obj = 0.0;
    for (int r = 0; r < m_; ++r) dual_obj += -z_[ns_ + r] * rhs_[r];
    for (int j = 0; j < ns_; ++j)
      if (pos_[j] < 0 && state_[j] != kFree) dual_obj += z_[j] * val(j);
    const double obj = objective_value();
    return std::fabs(obj - dual_obj) <= 1e-7 * (1.0 + std::fabs(obj));
  }

  /// Rebuild T, xB and z from the current basis via an LU factorization of
  /// the basis matrix; clears accumulated pivot drift.
  void refactor() {
    std::vector<double> M(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r)
      for (int k = 0; k < m_; ++k) M[static_cast<std::size_t>(r) * m_ + k] = arow(r)[basic_[k]];
    std::vector<int> perm(m_);
    for (int i = 0; i < m_; ++i) perm[i] = i;
    for (int k = 0; k < m_; ++k) {  // in-place LU, partial pivoting
      int p = k;
      double mx = std::fabs(M[static_cast<std::size_t>(perm[k]) * m_ + k]);
      for (int r = k + 1; r < m_; ++r) {
        const double v = std::fabs(M[static_cast<std::size_t>(perm[r]) * m_ + k]);
        if (v > mx) mx = v, p = r;
      }
      std::swap(perm[k], perm[p]);
      const double piv = M[static_cast<std::size_t>(perm[k]) * m_ + k];
      if (std::fabs(piv) < 1e-12) continue;  // leaves drift; validation decides
      for (int r = k + 1; r < m_; ++r) {
        double& f = M[static_cast<std::size_t>(perm[r]) * m_ + k];
        f /= piv;
        if (f == 0.0) continue;
        for (int j = k + 1; j < m_; ++j)
          M[static_cast<std::size_t>(perm[r]) * m_ + j] -=
              f * M[static_cast<std::size_t>(perm[k]) * m_ + j];
      }
    }
    auto lu_solve = [&](std::vector<double>& x) {
      std::vector<double> y(m_);
      for (int r = 0; r < m_; ++r) {
        double v = x[perm[r]];
        for (int k = 0; k < r; ++k) v -= M[static_cast<std::size_t>(perm[r]) * m_ + k] * y[k];
        y[r] = v;
      }
      for (int r = m_ - 1; r >= 0; --r) {
        double v = y[r];
        for (int k = r + 1; k < m_; ++k) v -= M[static_cast<std::size_t>(perm[r]) * m_ + k] * x[k];
        const double d = M[static_cast<std::size_t>(perm[r]) * m_ + r];
        x[r] = std::fabs(d) < 1e-300 ? 0.0 : v / d;
      }
    };
    std::vector<double> col(m_);
    for (int j = 0; j < tot_; ++j) {
      for (int r = 0; r < m_; ++r) col[r] = arow(r)[j];
      lu_solve(col);
      for (int r = 0; r < m_; ++r) trow(r)[j] = col[r];
    }
    for (int r = 0; r < m_; ++r) {
      col[r] = rhs_[r];
      const double* a = arow(r);
      for (int j = 0; j < tot_; ++j)
        if (pos_[j] < 0 && a[j] != 0.0) col[r] -= a[j] * val(j);
    }
    std::vector<double> xb = col;
    lu_solve(xb);
    xB_ = xb;
    for (int j = 0; j < tot_; ++j) {
      double zj = c_[j];
      for (int r = 0; r < m_; ++r) zj -= c_[basic_[r]] * trow(r)[j];
      z_[j] = zj;
    }
  }

  void fill_primal(LpResult& out) const {
    out.primal.resize(ns_);
    for (int j = 0; j < ns_; ++j)
      out.primal[j] = std::min(std::max(val(j), lo_[j]), up_[j] < kInf ? up_[j] : val(j));
  }

  std::uint64_t fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (int r = 0; r < m_; ++r) h = fnv1a_u64(static_cast<std::uint64_t>(basic_[r]), h);
    for (int j = 0; j < tot_; ++j)
      if (pos_[j] < 0) h = fnv1a_u64(static_cast<std::uint64_t>(state_[j]) + 11400714819323198485ULL, h);
    return h;
  }
};

/// A solver instance preloaded with the model's rows, bounds and objective.
inline Simplex make_simplex(const MilpModel& m) {
  Simplex s(static_cast<int>(m.vars.size()));
  for (int j = 0; j < static_cast<int>(m.vars.size()); ++j)
    s.set_bounds(j, m.vars[j].lower, m.vars[j].upper);
  for (const auto& [j, coef] : m.objective) s.set_objective(j, coef);
  for (const auto& r : m.rows) s.add_row(r.terms, r.sense, r.rhs);
  return s;
}

inline LpResult solve_lp_bounds(const MilpModel& m, const std::vector<double>* lo_override,
                                const std::vector<double>* up_override) {
  Simplex s = make_simplex(m);
  return s.solve(lo_override, up_override);
}

/// LP relaxation of a model: integrality dropped, bounds kept.
inline LpResult solve_lp(const MilpModel& m) { return solve_lp_bounds(m, nullptr, nullptr); }

/// Duals of one row class, keyed by the row's (i,j) provenance indices.
/// Tiny negative duals on <=-rows are clamped to zero.
inline std::map<std::pair<int, int>, double> extract_duals(const MilpModel& m, const LpResult& res,
                                                           const std::string& prefix) {
  if (res.status != LpStatus::kOptimal) throw SolveError("extract_duals requires an OPTIMAL result");
  std::map<std::pair<int, int>, double> out;
  for (int r = 0; r < static_cast<int>(m.rows.size()); ++r) {
    const auto& row = m.rows[r];
    if (row.name.size() <= prefix.size() || row.name.compare(0, prefix.size(), prefix) != 0 ||
        row.name[prefix.size()] != '_')
      continue;
    double d = res.duals[r];
    if (row.sense == Sense::kLe && d < 0.0 && d > -1e-7) d = 0.0;
    out[{row.ci, row.cj}] = d;
  }
  return out;
}

}  // namespace qubolin
