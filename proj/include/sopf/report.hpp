#pragma once

// Serialization of solves and condition reports. CSV bodies carry no
// timestamps so that repeated runs compare byte for byte.

#include <iosfwd>

#include "json.hpp"
#include "sopf/conditions.hpp"

namespace sopf {

/// Status, objective and named primal values, plus the raw x and duals
/// needed by read_solution_document.
nlohmann::json solution_document(const NetworkCase& c, const SolveResult& r);

/// Rebuilds a relaxed SolveResult from solution_document output. Duals are
/// matched to the relaxed model's rows by position; a size mismatch throws
/// CaseParseError.
SolveResult read_solution_document(const NetworkCase& c, const nlohmann::json& doc);

/// kind,side,entity,period,value; prices converted to $/MWh for balance rows.
void write_duals_csv(std::ostream& os, const NetworkCase& c, const DualRecord& d);

/// n,t,lmp,c1,c2,c3,grad_ch,grad_dc,scd,C1..C8
void write_conditions_csv(std::ostream& os, const ConditionReport& rep);

nlohmann::json condition_summary(const NetworkCase& c, const ConditionReport& rep);

}  // namespace sopf
