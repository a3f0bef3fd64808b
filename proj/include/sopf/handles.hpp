#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace sopf {

/// Identifies one scalar constraint row of the storage ACOPF model. The
/// comment on each kind names the multiplier it carries.
enum class RowKind {
  active_balance,    // lambda^p_{j,t}: the LMP
  reactive_balance,
  ch_lower,          // lambda^{ch,1}
  ch_upper,          // lambda^{ch,2}
  dc_lower,          // lambda^{dc,1}
  dc_upper,          // lambda^{dc,2}
  circle_dc,         // lambda^{S,1}
  circle_ch,         // lambda^{S,2}
  soc_lower,         // lambda^{SOC,1}
  soc_upper,         // lambda^{SOC,2}
  soc_terminal,
  relax_cut,         // lambda^{relax}
  gen_p,
  gen_q,
  ramp,
  reserve_ru,
  reserve_rd,
  system_reserve,
  rg_p,
  rg_circle,
  svc_q,
  v_bounds,
  thermal,
  angle_ref,
  mode_fix,          // charge_only / discharge_only rows of the exact model
  generic,           // rows of hand-written NLPs (tests, toy problems)
};

/// Distinguishes the rows sharing one (kind, entity, period) triple:
/// lower/upper box sides, the headroom row of the reserve pair, and the
/// up/down halves of the system reserve (upper = up, lower = down).
enum class RowSide { none, lower, upper, headroom };

struct ConstraintHandle {
  RowKind kind = RowKind::generic;
  int entity = 0;
  int period = 0;
  RowSide side = RowSide::none;

  auto operator<=>(const ConstraintHandle&) const = default;
  std::string to_string() const;
};

std::string_view kind_name(RowKind kind);
std::string_view side_name(RowSide side);

}  // namespace sopf
