#pragma once

#include <map>
#include <string>
#include <utility>

#include "qubolin/common.hpp"
#include "qubolin/model_id.hpp"

namespace qubolin {

enum class WeightMode { kUnit, kCustom, kDualExact, kDualMilpSafe };

inline const char* weight_mode_name(WeightMode m) {
  switch (m) {
    case WeightMode::kUnit: return "unit";
    case WeightMode::kCustom: return "custom";
    case WeightMode::kDualExact: return "dual-exact";
    case WeightMode::kDualMilpSafe: return "dual-safe";
  }
  return "?";
}

/// Aggregation multipliers, keyed by 1-based ordered pair. UNIT mode needs no
/// stored entries. DUAL_EXACT may carry zeros and is admissible only for LP
/// study; DUAL_MILP_SAFE is the same data with zeros replaced by a positive
/// fallback (1 by default, the experimental convention).
struct WeightSet {
  WeightMode mode = WeightMode::kUnit;
  std::map<std::pair<int, int>, double> alpha, beta, gamma, delta, theta;

  const std::map<std::pair<int, int>, double>& table(WeightKind k) const {
    switch (k) {
      case WeightKind::kAlpha: return alpha;
      case WeightKind::kBeta: return beta;
      case WeightKind::kGamma: return gamma;
      case WeightKind::kDelta: return delta;
      case WeightKind::kTheta: return theta;
    }
    return alpha;
  }
  std::map<std::pair<int, int>, double>& table(WeightKind k) {
    return const_cast<std::map<std::pair<int, int>, double>&>(
        static_cast<const WeightSet*>(this)->table(k));
  }

  double get(WeightKind k, int i, int j) const {
    if (mode == WeightMode::kUnit) return 1.0;
    const auto& t = table(k);
    auto it = t.find({i, j});
    if (it == t.end()) {
      if (mode == WeightMode::kCustom) return 1.0;  // unspecified entries default to 1
      throw BuildError(std::string("missing ") + weight_kind_name(k) + " weight for (" +
                       std::to_string(i) + "," + std::to_string(j) + ")");
    }
    return it->second;
  }

  /// Zeros replaced by `eps`, negatives rejected.
  WeightSet milp_safe(double eps = 1.0) const {
    WeightSet w = *this;
    w.mode = WeightMode::kDualMilpSafe;
    for (WeightKind k : {WeightKind::kAlpha, WeightKind::kBeta, WeightKind::kGamma,
                         WeightKind::kDelta, WeightKind::kTheta})
      for (auto& [key, v] : w.table(k)) {
        if (v < 0.0) throw BuildError("negative weight cannot be made MILP-safe");
        if (v == 0.0) v = eps;
      }
    return w;
  }
};

inline WeightSet unit_weights() { return WeightSet{}; }

}  // namespace qubolin
