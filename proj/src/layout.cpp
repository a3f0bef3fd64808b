#include "sopf/layout.hpp"

#include <stdexcept>

#include "sopf/handles.hpp"

namespace sopf {

VariableLayout::VariableLayout(const NetworkCase& c) : periods_(c.periods()) {
  const int nb = c.bus_count();
  const int ng = static_cast<int>(c.generators.size());
  const int nr = static_cast<int>(c.renewables.size());
  const int ns = static_cast<int>(c.storages.size());
  const int nv = static_cast<int>(c.svcs.size());
  counts_ = {nb, nb, ng, ng, ng, ng, nr, nr, ns, ns, ns, nv};
  int off = 0;
  for (int k = 0; k < kVarKindCount; ++k) {
    offsets_[k] = off;
    off += counts_[k] * periods_;
  }
  dimension_ = off;
}

VarRef VariableLayout::lookup(int idx) const {
  if (idx < 0 || idx >= dimension_) throw std::out_of_range("variable index out of range");
  for (int k = kVarKindCount - 1; k >= 0; --k) {
    if (counts_[k] > 0 && idx >= offsets_[k]) {
      const int rel = idx - offsets_[k];
      return {static_cast<VarKind>(k), rel / periods_, rel % periods_};
    }
  }
  throw std::logic_error("unreachable variable lookup");
}

std::string VariableLayout::name(int idx) const {
  const VarRef r = lookup(idx);
  return std::string(var_kind_name(r.kind)) + "[" + std::to_string(r.entity) + "," +
         std::to_string(r.period) + "]";
}

std::string_view var_kind_name(VarKind kind) {
  switch (kind) {
    case VarKind::voltage: return "V";
    case VarKind::angle: return "theta";
    case VarKind::gen_p: return "p_g";
    case VarKind::gen_q: return "q_g";
    case VarKind::gen_ru: return "ru";
    case VarKind::gen_rd: return "rd";
    case VarKind::rg_p: return "p_rg";
    case VarKind::rg_q: return "q_rg";
    case VarKind::ess_ch: return "p_ch";
    case VarKind::ess_dc: return "p_dc";
    case VarKind::ess_q: return "q_ess";
    case VarKind::svc_q: return "q_svc";
  }
  return "?";
}

std::string_view kind_name(RowKind kind) {
  switch (kind) {
    case RowKind::active_balance: return "active_balance";
    case RowKind::reactive_balance: return "reactive_balance";
    case RowKind::ch_lower: return "ch_lower";
    case RowKind::ch_upper: return "ch_upper";
    case RowKind::dc_lower: return "dc_lower";
    case RowKind::dc_upper: return "dc_upper";
    case RowKind::circle_dc: return "circle_dc";
    case RowKind::circle_ch: return "circle_ch";
    case RowKind::soc_lower: return "soc_lower";
    case RowKind::soc_upper: return "soc_upper";
    case RowKind::soc_terminal: return "soc_terminal";
    case RowKind::relax_cut: return "relax_cut";
    case RowKind::gen_p: return "gen_p";
    case RowKind::gen_q: return "gen_q";
    case RowKind::ramp: return "ramp";
    case RowKind::reserve_ru: return "reserve_ru";
    case RowKind::reserve_rd: return "reserve_rd";
    case RowKind::system_reserve: return "system_reserve";
    case RowKind::rg_p: return "rg_p";
    case RowKind::rg_circle: return "rg_circle";
    case RowKind::svc_q: return "svc_q";
    case RowKind::v_bounds: return "v_bounds";
    case RowKind::thermal: return "thermal";
    case RowKind::angle_ref: return "angle_ref";
    case RowKind::mode_fix: return "mode_fix";
    case RowKind::generic: return "generic";
  }
  return "?";
}

std::string_view side_name(RowSide side) {
  switch (side) {
    case RowSide::none: return "";
    case RowSide::lower: return "lower";
    case RowSide::upper: return "upper";
    case RowSide::headroom: return "headroom";
  }
  return "";
}

std::string ConstraintHandle::to_string() const {
  std::string s(kind_name(kind));
  if (side != RowSide::none) {
    s += ".";
    s += side_name(side);
  }
  s += "[" + std::to_string(entity) + "," + std::to_string(period) + "]";
  return s;
}

}  // namespace sopf
