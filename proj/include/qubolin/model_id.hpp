#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qubolin/common.hpp"

namespace qubolin {

/// Every formulation in the catalog. Naming scheme, used verbatim by the CLI
/// and in report columns:
///   families      DW GW FT PK, prefixed OR for optimality restricted forms
///   slot letters  a=type-1 weights, b/g/d/t=type-2 weights, * = slot kept
///   "FTeq"        FT with its symmetry pairs written as equalities
///   "-A"/"-AF"    the over-reduced aggregations of ORDW (type-2 block kept
///                 in optimality restricted form)
///   "-rb"         ORPK(*,b) with lower bounds reduced to the negative pairs
///   "t="          the symmetry aggregation written as an equality
///   "HM"          the mis-stated unweighted aggregation of GW
enum class ModelId {
  DW, GW, FT, FTeq, PK,
  ORDW, ORGW, ORFT, ORPK,
  DW_a, GW_a, FT_a, PK_a,
  DW_sb,                                    // invalid
  PK_sb, FT_sg, FT_st, FT_sgt,
  GW_sgpd, GW_sgd, GW_sg, GW_sd,
  GW_agpd, GW_agd, GW_ag, GW_ad,
  FT_ag, FT_at, FT_agt,
  FT_agt_eq,                                // invalid
  PK_ab,
  HM,                                       // invalid
  ORDW_a, ORGW_a, ORFT_a, ORPK_a,
  ORDW_A, ORDW_AF,                          // invalid
  ORPK_sb,
  ORPK_sb_rb,                               // invalid
  ORGW_sgpd, ORGW_sgd, ORGW_sg, ORGW_sd,
  ORFT_sg, ORFT_st, ORFT_sgt,
  ORPK_ab,
  ORGW_agpd, ORGW_agd, ORGW_ag, ORGW_ad,
  ORFT_ag, ORFT_at, ORFT_agt,
};

enum class Family { kDW, kGW, kFT, kPK };
enum class Restriction { kPrecise, kOptimalityRestricted };
enum class WeightKind { kAlpha, kBeta, kGamma, kDelta, kTheta };

inline const char* weight_kind_name(WeightKind k) {
  switch (k) {
    case WeightKind::kAlpha: return "alpha";
    case WeightKind::kBeta: return "beta";
    case WeightKind::kGamma: return "gamma";
    case WeightKind::kDelta: return "delta";
    case WeightKind::kTheta: return "theta";
  }
  return "?";
}

struct ModelInfo {
  ModelId id;
  const char* name;
  Family family;
  Restriction restriction;
  bool type1_aggregated;
  bool type2_aggregated;
  bool known_invalid;
};

inline const std::array<ModelInfo, 55>& model_table() {
  using M = ModelId;
  using F = Family;
  constexpr auto P = Restriction::kPrecise;
  constexpr auto O = Restriction::kOptimalityRestricted;
  static const std::array<ModelInfo, 55> table = {{
      {M::DW, "DW", F::kDW, P, false, false, false},
      {M::GW, "GW", F::kGW, P, false, false, false},
      {M::FT, "FT", F::kFT, P, false, false, false},
      {M::FTeq, "FTeq", F::kFT, P, false, false, false},
      {M::PK, "PK", F::kPK, P, false, false, false},
      {M::ORDW, "ORDW", F::kDW, O, false, false, false},
      {M::ORGW, "ORGW", F::kGW, O, false, false, false},
      {M::ORFT, "ORFT", F::kFT, O, false, false, false},
      {M::ORPK, "ORPK", F::kPK, O, false, false, false},
      {M::DW_a, "DW(a)", F::kDW, P, true, false, false},
      {M::GW_a, "GW(a)", F::kGW, P, true, false, false},
      {M::FT_a, "FT(a)", F::kFT, P, true, false, false},
      {M::PK_a, "PK(a)", F::kPK, P, true, false, false},
      {M::DW_sb, "DW(*,b)", F::kDW, P, false, true, true},
      {M::PK_sb, "PK(*,b)", F::kPK, P, false, true, false},
      {M::FT_sg, "FT(*,g)", F::kFT, P, false, true, false},
      {M::FT_st, "FT(*,t)", F::kFT, P, false, true, false},
      {M::FT_sgt, "FT(*,g,t)", F::kFT, P, false, true, false},
      {M::GW_sgpd, "GW(*,g+d)", F::kGW, P, false, true, false},
      {M::GW_sgd, "GW(*,g,d)", F::kGW, P, false, true, false},
      {M::GW_sg, "GW(*,g)", F::kGW, P, false, true, false},
      {M::GW_sd, "GW(*,d)", F::kGW, P, false, true, false},
      {M::GW_agpd, "GW(a,g+d)", F::kGW, P, true, true, false},
      {M::GW_agd, "GW(a,g,d)", F::kGW, P, true, true, false},
      {M::GW_ag, "GW(a,g)", F::kGW, P, true, true, false},
      {M::GW_ad, "GW(a,d)", F::kGW, P, true, true, false},
      {M::FT_ag, "FT(a,g,*)", F::kFT, P, true, true, false},
      {M::FT_at, "FT(a,*,t)", F::kFT, P, true, true, false},
      {M::FT_agt, "FT(a,g,t)", F::kFT, P, true, true, false},
      {M::FT_agt_eq, "FT(a,g,t=)", F::kFT, P, true, true, true},
      {M::PK_ab, "PK(a,b)", F::kPK, P, true, true, false},
      {M::HM, "HM", F::kGW, P, false, true, true},
      {M::ORDW_a, "ORDW(a)", F::kDW, O, true, false, false},
      {M::ORGW_a, "ORGW(a)", F::kGW, O, true, false, false},
      {M::ORFT_a, "ORFT(a)", F::kFT, O, true, false, false},
      {M::ORPK_a, "ORPK(a)", F::kPK, O, true, false, false},
      {M::ORDW_A, "ORDW-A", F::kDW, O, true, false, true},
      {M::ORDW_AF, "ORDW-AF", F::kDW, O, true, false, true},
      {M::ORPK_sb, "ORPK(*,b)", F::kPK, O, false, true, false},
      {M::ORPK_sb_rb, "ORPK(*,b)-rb", F::kPK, O, false, true, true},
      {M::ORGW_sgpd, "ORGW(*,g+d)", F::kGW, O, false, true, false},
      {M::ORGW_sgd, "ORGW(*,g,d)", F::kGW, O, false, true, false},
      {M::ORGW_sg, "ORGW(*,g)", F::kGW, O, false, true, false},
      {M::ORGW_sd, "ORGW(*,d)", F::kGW, O, false, true, false},
      {M::ORFT_sg, "ORFT(*,g)", F::kFT, O, false, true, false},
      {M::ORFT_st, "ORFT(*,t)", F::kFT, O, false, true, false},
      {M::ORFT_sgt, "ORFT(*,g,t)", F::kFT, O, false, true, false},
      {M::ORPK_ab, "ORPK(a,b)", F::kPK, O, true, true, false},
      {M::ORGW_agpd, "ORGW(a,g+d)", F::kGW, O, true, true, false},
      {M::ORGW_agd, "ORGW(a,g,d)", F::kGW, O, true, true, false},
      {M::ORGW_ag, "ORGW(a,g)", F::kGW, O, true, true, false},
      {M::ORGW_ad, "ORGW(a,d)", F::kGW, O, true, true, false},
      {M::ORFT_ag, "ORFT(a,g)", F::kFT, O, true, true, false},
      {M::ORFT_at, "ORFT(a,t)", F::kFT, O, true, true, false},
      {M::ORFT_agt, "ORFT(a,g,t)", F::kFT, O, true, true, false},
  }};
  return table;
}

inline const ModelInfo& model_info(ModelId id) {
  for (const auto& e : model_table())
    if (e.id == id) return e;
  throw BuildError("unknown model id");
}

inline std::string model_name(ModelId id) { return model_info(id).name; }

inline std::optional<ModelId> parse_model_name(std::string_view name) {
  for (const auto& e : model_table())
    if (name == e.name) return e.id;
  return std::nullopt;
}

/// Complete, duplicate-free catalog in a stable order.
inline std::vector<ModelId> catalog() {
  std::vector<ModelId> ids;
  ids.reserve(model_table().size());
  for (const auto& e : model_table()) ids.push_back(e.id);
  return ids;
}

inline std::vector<ModelId> catalog_valid() {
  std::vector<ModelId> ids;
  for (const auto& e : model_table())
    if (!e.known_invalid) ids.push_back(e.id);
  return ids;
}

}  // namespace qubolin
