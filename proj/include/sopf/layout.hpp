#pragma once

#include <array>
#include <string>

#include "sopf/network.hpp"

namespace sopf {

enum class VarKind {
  voltage,     // V_{i,t}
  angle,       // theta_{i,t}
  gen_p,
  gen_q,
  gen_ru,
  gen_rd,
  rg_p,
  rg_q,
  ess_ch,
  ess_dc,
  ess_q,
  svc_q,
};

inline constexpr int kVarKindCount = 12;

struct VarRef {
  VarKind kind;
  int entity;
  int period;
  bool operator==(const VarRef&) const = default;
};

/// Bijection between named model variables and positions of the flat
/// decision vector. Each kind occupies one contiguous block, ordered
/// entity-major: index = offset(kind) + entity * T + t.
class VariableLayout {
 public:
  VariableLayout() = default;
  explicit VariableLayout(const NetworkCase& c);

  int dimension() const { return dimension_; }
  int periods() const { return periods_; }
  int count(VarKind kind) const { return counts_[static_cast<int>(kind)]; }
  int offset(VarKind kind) const { return offsets_[static_cast<int>(kind)]; }

  int index(VarKind kind, int entity, int t) const {
    return offsets_[static_cast<int>(kind)] + entity * periods_ + t;
  }
  int index(const VarRef& v) const { return index(v.kind, v.entity, v.period); }

  VarRef lookup(int index) const;
  std::string name(int index) const;

  // Shorthands used throughout the formulation.
  int v(int bus, int t) const { return index(VarKind::voltage, bus, t); }
  int theta(int bus, int t) const { return index(VarKind::angle, bus, t); }
  int pg(int g, int t) const { return index(VarKind::gen_p, g, t); }
  int qg(int g, int t) const { return index(VarKind::gen_q, g, t); }
  int ru(int g, int t) const { return index(VarKind::gen_ru, g, t); }
  int rd(int g, int t) const { return index(VarKind::gen_rd, g, t); }
  int prg(int r, int t) const { return index(VarKind::rg_p, r, t); }
  int qrg(int r, int t) const { return index(VarKind::rg_q, r, t); }
  int pch(int n, int t) const { return index(VarKind::ess_ch, n, t); }
  int pdc(int n, int t) const { return index(VarKind::ess_dc, n, t); }
  int qess(int n, int t) const { return index(VarKind::ess_q, n, t); }
  int qsvc(int s, int t) const { return index(VarKind::svc_q, s, t); }

 private:
  int periods_ = 0;
  int dimension_ = 0;
  std::array<int, kVarKindCount> counts_{};   // entities per kind
  std::array<int, kVarKindCount> offsets_{};
};

std::string_view var_kind_name(VarKind kind);

}  // namespace sopf
