#include "sopf/network.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sopf {

using nlohmann::json;

int NetworkCase::reference_bus() const {
  for (int i = 0; i < bus_count(); ++i) {
    if (buses[i].is_reference) return i;
  }
  return -1;
}

std::string Violation::to_string() const {
  return entity + "." + field + ": " + rule;
}

namespace {

std::string indexed(const char* collection, std::size_t i) {
  return std::string(collection) + "[" + std::to_string(i) + "]";
}

class ViolationSink {
 public:
  void add(std::string entity, std::string field, std::string rule) {
    out_.push_back({std::move(entity), std::move(field), std::move(rule)});
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

bool bus_exists(const NetworkCase& c, int bus) {
  return bus >= 0 && bus < c.bus_count();
}

void check_bus_ref(const NetworkCase& c, ViolationSink& sink,
                   const std::string& entity, const char* field, int bus) {
  if (!bus_exists(c, bus)) {
    sink.add(entity, field,
             "bus " + std::to_string(bus) + " does not exist (case has " +
                 std::to_string(c.bus_count()) + " buses)");
  }
}

void check_length(ViolationSink& sink, const std::string& entity,
                  const char* field, std::size_t len, int T) {
  if (len != static_cast<std::size_t>(T)) {
    sink.add(entity, field,
             "expected " + std::to_string(T) + " entries, found " +
                 std::to_string(len));
  }
}

bool connected(const NetworkCase& c) {
  const int n = c.bus_count();
  if (n == 0) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  int components = n;
  for (const auto& br : c.branches) {
    if (!bus_exists(c, br.from_bus) || !bus_exists(c, br.to_bus)) continue;
    int a = find(br.from_bus), b = find(br.to_bus);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

std::vector<Violation> validate(const NetworkCase& c) {
  ViolationSink sink;
  const int T = c.time_grid.period_count;

  if (!(c.base_mva > 0)) sink.add("case", "base_mva", "must be > 0");
  if (T < 1) sink.add("time", "T", "must be >= 1");
  if (!(c.time_grid.interval > 0)) sink.add("time", "dt_hours", "must be > 0");
  check_length(sink, "time", "sru", c.time_grid.reserve_up.size(), T);
  check_length(sink, "time", "srd", c.time_grid.reserve_down.size(), T);

  if (c.buses.empty()) sink.add("case", "buses", "at least one bus required");
  int refs = 0;
  for (std::size_t i = 0; i < c.buses.size(); ++i) {
    const auto& b = c.buses[i];
    const auto e = indexed("buses", i);
    if (b.id != static_cast<int>(i)) {
      sink.add(e, "id", "bus ids must be contiguous from 0 (expected " +
                            std::to_string(i) + ")");
    }
    if (!(b.voltage_min > 0)) sink.add(e, "voltage_min", "must be > 0");
    if (!(b.voltage_min <= b.voltage_max)) {
      sink.add(e, "voltage_max", "voltage_min <= voltage_max violated");
    }
    if (b.is_reference) ++refs;
  }
  if (!c.buses.empty() && refs != 1) {
    sink.add("case", "buses",
             "exactly one reference bus required, found " + std::to_string(refs));
  }

  if (c.time_grid.load_p.size() != c.buses.size() ||
      c.time_grid.load_q.size() != c.buses.size()) {
    sink.add("time", "loads", "load arrays must have one row per bus");
  } else {
    for (std::size_t j = 0; j < c.buses.size(); ++j) {
      check_length(sink, indexed("loads", j), "p_mw", c.time_grid.load_p[j].size(), T);
      check_length(sink, indexed("loads", j), "q_mvar", c.time_grid.load_q[j].size(), T);
    }
  }

  for (std::size_t k = 0; k < c.branches.size(); ++k) {
    const auto& br = c.branches[k];
    const auto e = indexed("branches", k);
    check_bus_ref(c, sink, e, "from_bus", br.from_bus);
    check_bus_ref(c, sink, e, "to_bus", br.to_bus);
    if (br.from_bus == br.to_bus) sink.add(e, "to_bus", "from_bus != to_bus violated");
    if (!(br.thermal_limit > 0)) sink.add(e, "thermal_limit", "must be > 0");
    check_length(sink, e, "tap_ratio", br.tap_ratio.size(), T);
    check_length(sink, e, "phase_shift", br.phase_shift.size(), T);
    for (double tau : br.tap_ratio) {
      if (!(tau > 0)) {
        sink.add(e, "tap_ratio", "entries must be > 0");
        break;
      }
    }
  }

  for (std::size_t k = 0; k < c.generators.size(); ++k) {
    const auto& g = c.generators[k];
    const auto e = indexed("generators", k);
    check_bus_ref(c, sink, e, "bus", g.bus);
    if (!(g.p_min <= g.p_max)) sink.add(e, "p_max", "p_min <= p_max violated");
    if (!(g.q_min <= g.q_max)) sink.add(e, "q_max", "q_min <= q_max violated");
    if (!(g.ramp_up >= 0)) sink.add(e, "ramp_up", "must be >= 0");
    if (!(g.ramp_down >= 0)) sink.add(e, "ramp_down", "must be >= 0");
    if (!(g.cost_quadratic >= 0)) sink.add(e, "cost_quadratic", "must be >= 0");
  }

  for (std::size_t k = 0; k < c.renewables.size(); ++k) {
    const auto& r = c.renewables[k];
    const auto e = indexed("renewables", k);
    check_bus_ref(c, sink, e, "bus", r.bus);
    check_length(sink, e, "forecast", r.forecast.size(), T);
    check_length(sink, e, "p_min", r.p_min.size(), T);
    check_length(sink, e, "cost_linear", r.cost_linear.size(), T);
    if (!(r.apparent_capacity > 0)) sink.add(e, "apparent_capacity", "must be > 0");
    if (!(r.curtail_penalty >= 0)) sink.add(e, "curtail_penalty", "must be >= 0");
    const std::size_t n = std::min(r.forecast.size(), r.p_min.size());
    for (std::size_t t = 0; t < n; ++t) {
      if (!(r.p_min[t] >= 0 && r.p_min[t] <= r.forecast[t])) {
        sink.add(e, "p_min", "0 <= p_min <= forecast violated at t=" + std::to_string(t));
        break;
      }
    }
  }

  for (std::size_t k = 0; k < c.storages.size(); ++k) {
    const auto& s = c.storages[k];
    const auto e = indexed("storages", k);
    check_bus_ref(c, sink, e, "bus", s.bus);
    if (!(s.eta_ch > 0 && s.eta_ch <= 1)) sink.add(e, "eta_ch", "must lie in (0, 1]");
    if (!(s.eta_dc > 0 && s.eta_dc <= 1)) sink.add(e, "eta_dc", "must lie in (0, 1]");
    if (s.eta_dc > 0 && !(1.0 / s.eta_dc > s.eta_ch)) {
      sink.add(e, "eta_dc", "1/eta_dc > eta_ch violated");
    }
    if (!(s.self_discharge >= 0 && s.self_discharge < 1)) {
      sink.add(e, "self_discharge", "must lie in [0, 1)");
    }
    if (!(s.soc_min <= s.soc_initial)) sink.add(e, "soc_initial", "soc_min <= soc_initial violated");
    if (!(s.soc_initial <= s.soc_max)) sink.add(e, "soc_initial", "soc_initial <= soc_max violated");
    if (!(s.p_ch_max > 0)) sink.add(e, "p_ch_max", "must be > 0");
    if (!(s.p_dc_max > 0)) sink.add(e, "p_dc_max", "must be > 0");
    if (!(s.apparent_capacity > 0)) sink.add(e, "apparent_capacity", "must be > 0");
    check_length(sink, e, "charge_fee", s.charge_fee.size(), T);
    check_length(sink, e, "discharge_fee", s.discharge_fee.size(), T);
  }

  for (std::size_t k = 0; k < c.svcs.size(); ++k) {
    const auto& v = c.svcs[k];
    const auto e = indexed("svcs", k);
    check_bus_ref(c, sink, e, "bus", v.bus);
    if (!(v.q_min <= v.q_max)) sink.add(e, "q_max", "q_min <= q_max violated");
  }

  if (!connected(c)) sink.add("case", "branches", "network graph is not connected");
  return sink.take();
}

// ---------------------------------------------------------------------------
// JSON <-> NetworkCase

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw CaseParseError(where + ": missing required key '" + key + "'");
  }
  return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw CaseParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback,
                 const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return number(obj, key, where);
}

// Accepts either a scalar (broadcast over all periods) or an array of length T.
std::vector<double> series(const json& obj, const char* key, int T,
                           const std::string& where, double scale = 1.0) {
  const json& v = require(obj, key, where);
  std::vector<double> out;
  if (v.is_number()) {
    out.assign(static_cast<std::size_t>(std::max(T, 0)), v.get<double>() * scale);
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number()) throw CaseParseError(where + "." + key + ": expected numbers");
      out.push_back(e.get<double>() * scale);
    }
    if (out.size() != static_cast<std::size_t>(T)) {
      throw CaseParseError(where + "." + key + ": expected " + std::to_string(T) +
                           " entries, found " + std::to_string(out.size()));
    }
  } else {
    throw CaseParseError(where + "." + key + ": expected a number or an array");
  }
  return out;
}

std::vector<double> series_or(const json& obj, const char* key, int T, double fallback,
                              const std::string& where, double scale = 1.0) {
  if (!obj.contains(key)) return std::vector<double>(static_cast<std::size_t>(T), fallback);
  return series(obj, key, T, where, scale);
}

const json& array_or_empty(const json& doc, const char* key) {
  static const json empty = json::array();
  if (!doc.contains(key)) return empty;
  const json& v = doc.at(key);
  if (!v.is_array()) throw CaseParseError(std::string(key) + ": expected an array");
  return v;
}

json scaled(const std::vector<double>& v, double scale) {
  json out = json::array();
  for (double x : v) out.push_back(x * scale);
  return out;
}

}  // namespace

NetworkCase case_from_json(const json& doc) {
  if (!doc.is_object()) throw CaseParseError("case document must be an object");
  NetworkCase c;
  c.base_mva = number(doc, "base_mva", "case");
  if (!(c.base_mva > 0)) {
    throw CaseValidationError({"case", "base_mva", "must be > 0"});
  }
  const double base = c.base_mva;
  const double inv = 1.0 / base;

  const json& time = require(doc, "time", "case");
  const json& Tj = require(time, "T", "time");
  if (!Tj.is_number_integer()) throw CaseParseError("time.T: expected an integer");
  const int T = Tj.get<int>();
  if (T < 1) throw CaseValidationError({"time", "T", "must be >= 1"});
  c.time_grid.period_count = T;
  c.time_grid.interval = number(time, "dt_hours", "time");
  c.time_grid.reserve_up = series_or(time, "sru", T, 0.0, "time", inv);
  c.time_grid.reserve_down = series_or(time, "srd", T, 0.0, "time", inv);

  const json& buses = require(doc, "buses", "case");
  if (!buses.is_array()) throw CaseParseError("buses: expected an array");
  for (std::size_t i = 0; i < buses.size(); ++i) {
    const auto w = indexed("buses", i);
    const json& b = buses[i];
    Bus bus;
    bus.id = static_cast<int>(number(b, "id", w));
    bus.voltage_min = number(b, "voltage_min", w);
    bus.voltage_max = number(b, "voltage_max", w);
    bus.shunt_conductance = number_or(b, "shunt_conductance", 0.0, w);
    bus.shunt_susceptance = number_or(b, "shunt_susceptance", 0.0, w);
    bus.is_reference = b.value("is_reference", false);
    c.buses.push_back(bus);
  }

  for (std::size_t k = 0; const json& b : array_or_empty(doc, "branches")) {
    const auto w = indexed("branches", k++);
    Branch br;
    br.from_bus = static_cast<int>(number(b, "from_bus", w));
    br.to_bus = static_cast<int>(number(b, "to_bus", w));
    br.series_conductance = number(b, "series_conductance", w);
    br.series_susceptance = number(b, "series_susceptance", w);
    br.charging_susceptance = number_or(b, "charging_susceptance", 0.0, w);
    br.tap_ratio = series_or(b, "tap_ratio", T, 1.0, w);
    br.phase_shift = series_or(b, "phase_shift", T, 0.0, w);
    br.thermal_limit = number(b, "thermal_limit", w) * inv;
    c.branches.push_back(std::move(br));
  }

  for (std::size_t k = 0; const json& g : array_or_empty(doc, "generators")) {
    const auto w = indexed("generators", k++);
    Generator gen;
    gen.bus = static_cast<int>(number(g, "bus", w));
    gen.p_min = number(g, "p_min", w) * inv;
    gen.p_max = number(g, "p_max", w) * inv;
    gen.q_min = number(g, "q_min", w) * inv;
    gen.q_max = number(g, "q_max", w) * inv;
    gen.cost_quadratic = number_or(g, "cost_quadratic", 0.0, w) * base * base;
    gen.cost_linear = number_or(g, "cost_linear", 0.0, w) * base;
    gen.cost_constant = number_or(g, "cost_constant", 0.0, w);
    gen.ramp_up = number(g, "ramp_up", w) * inv;
    gen.ramp_down = number(g, "ramp_down", w) * inv;
    gen.initial_output = number(g, "initial_output", w) * inv;
    c.generators.push_back(gen);
  }

  for (std::size_t k = 0; const json& r : array_or_empty(doc, "renewables")) {
    const auto w = indexed("renewables", k++);
    RenewableGen rg;
    rg.bus = static_cast<int>(number(r, "bus", w));
    rg.forecast = series(r, "forecast", T, w, inv);
    rg.p_min = series_or(r, "p_min", T, 0.0, w, inv);
    rg.cost_linear = series(r, "cost_linear", T, w, base);
    rg.curtail_penalty = number_or(r, "curtail_penalty", 0.0, w) * base;
    rg.apparent_capacity = number(r, "apparent_capacity", w) * inv;
    c.renewables.push_back(std::move(rg));
  }

  for (std::size_t k = 0; const json& s : array_or_empty(doc, "storages")) {
    const auto w = indexed("storages", k++);
    StorageUnit st;
    st.bus = static_cast<int>(number(s, "bus", w));
    st.eta_ch = number(s, "eta_ch", w);
    st.eta_dc = number(s, "eta_dc", w);
    st.self_discharge = number_or(s, "self_discharge", 0.0, w);
    st.soc_initial = number(s, "soc_initial", w) * inv;
    st.soc_min = number(s, "soc_min", w) * inv;
    st.soc_max = number(s, "soc_max", w) * inv;
    st.p_ch_max = number(s, "p_ch_max", w) * inv;
    st.p_dc_max = number(s, "p_dc_max", w) * inv;
    st.apparent_capacity = number(s, "apparent_capacity", w) * inv;
    st.charge_fee = series(s, "charge_fee", T, w, base);
    st.discharge_fee = series(s, "discharge_fee", T, w, base);
    st.loss_penalty = number_or(s, "loss_penalty", 0.0, w) * base;
    c.storages.push_back(std::move(st));
  }

  for (std::size_t k = 0; const json& v : array_or_empty(doc, "svcs")) {
    const auto w = indexed("svcs", k++);
    Svc svc;
    svc.bus = static_cast<int>(number(v, "bus", w));
    svc.q_min = number(v, "q_min", w) * inv;
    svc.q_max = number(v, "q_max", w) * inv;
    c.svcs.push_back(svc);
  }

  const std::size_t nb = c.buses.size();
  c.time_grid.load_p.assign(nb, std::vector<double>(T, 0.0));
  c.time_grid.load_q.assign(nb, std::vector<double>(T, 0.0));
  for (std::size_t k = 0; const json& l : array_or_empty(doc, "loads")) {
    const auto w = indexed("loads", k++);
    const int bus = static_cast<int>(number(l, "bus", w));
    if (bus < 0 || static_cast<std::size_t>(bus) >= nb) {
      throw CaseValidationError({w, "bus",
                                 "bus " + std::to_string(bus) + " does not exist (case has " +
                                     std::to_string(nb) + " buses)"});
    }
    const auto p = series_or(l, "p_mw", T, 0.0, w, inv);
    const auto q = series_or(l, "q_mvar", T, 0.0, w, inv);
    for (int t = 0; t < T; ++t) {
      c.time_grid.load_p[bus][t] += p[t];
      c.time_grid.load_q[bus][t] += q[t];
    }
  }

  if (auto violations = validate(c); !violations.empty()) {
    throw CaseValidationError(violations.front());
  }
  return c;
}

NetworkCase load_case(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CaseParseError("cannot open case file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw CaseParseError(path.string() + ": " + e.what());
  }
  return case_from_json(doc);
}

json case_to_json(const NetworkCase& c) {
  const double base = c.base_mva;
  const double inv = 1.0 / base;
  json doc;
  doc["base_mva"] = base;
  doc["time"] = {{"T", c.time_grid.period_count},
                 {"dt_hours", c.time_grid.interval},
                 {"sru", scaled(c.time_grid.reserve_up, base)},
                 {"srd", scaled(c.time_grid.reserve_down, base)}};

  json buses = json::array();
  for (const auto& b : c.buses) {
    buses.push_back({{"id", b.id},
                     {"voltage_min", b.voltage_min},
                     {"voltage_max", b.voltage_max},
                     {"shunt_conductance", b.shunt_conductance},
                     {"shunt_susceptance", b.shunt_susceptance},
                     {"is_reference", b.is_reference}});
  }
  doc["buses"] = std::move(buses);

  json branches = json::array();
  for (const auto& br : c.branches) {
    branches.push_back({{"from_bus", br.from_bus},
                        {"to_bus", br.to_bus},
                        {"series_conductance", br.series_conductance},
                        {"series_susceptance", br.series_susceptance},
                        {"charging_susceptance", br.charging_susceptance},
                        {"tap_ratio", br.tap_ratio},
                        {"phase_shift", br.phase_shift},
                        {"thermal_limit", br.thermal_limit * base}});
  }
  doc["branches"] = std::move(branches);

  json gens = json::array();
  for (const auto& g : c.generators) {
    gens.push_back({{"bus", g.bus},
                    {"p_min", g.p_min * base},
                    {"p_max", g.p_max * base},
                    {"q_min", g.q_min * base},
                    {"q_max", g.q_max * base},
                    {"cost_quadratic", g.cost_quadratic * inv * inv},
                    {"cost_linear", g.cost_linear * inv},
                    {"cost_constant", g.cost_constant},
                    {"ramp_up", g.ramp_up * base},
                    {"ramp_down", g.ramp_down * base},
                    {"initial_output", g.initial_output * base}});
  }
  doc["generators"] = std::move(gens);

  json rgs = json::array();
  for (const auto& r : c.renewables) {
    rgs.push_back({{"bus", r.bus},
                   {"forecast", scaled(r.forecast, base)},
                   {"p_min", scaled(r.p_min, base)},
                   {"cost_linear", scaled(r.cost_linear, inv)},
                   {"curtail_penalty", r.curtail_penalty * inv},
                   {"apparent_capacity", r.apparent_capacity * base}});
  }
  doc["renewables"] = std::move(rgs);

  json ess = json::array();
  for (const auto& s : c.storages) {
    ess.push_back({{"bus", s.bus},
                   {"eta_ch", s.eta_ch},
                   {"eta_dc", s.eta_dc},
                   {"self_discharge", s.self_discharge},
                   {"soc_initial", s.soc_initial * base},
                   {"soc_min", s.soc_min * base},
                   {"soc_max", s.soc_max * base},
                   {"p_ch_max", s.p_ch_max * base},
                   {"p_dc_max", s.p_dc_max * base},
                   {"apparent_capacity", s.apparent_capacity * base},
                   {"charge_fee", scaled(s.charge_fee, inv)},
                   {"discharge_fee", scaled(s.discharge_fee, inv)},
                   {"loss_penalty", s.loss_penalty * inv}});
  }
  doc["storages"] = std::move(ess);

  json svcs = json::array();
  for (const auto& v : c.svcs) {
    svcs.push_back({{"bus", v.bus}, {"q_min", v.q_min * base}, {"q_max", v.q_max * base}});
  }
  doc["svcs"] = std::move(svcs);

  json loads = json::array();
  for (int j = 0; j < c.bus_count(); ++j) {
    const auto& p = c.time_grid.load_p[j];
    const auto& q = c.time_grid.load_q[j];
    const bool any = std::any_of(p.begin(), p.end(), [](double v) { return v != 0.0; }) ||
                     std::any_of(q.begin(), q.end(), [](double v) { return v != 0.0; });
    if (!any) continue;
    loads.push_back({{"bus", j}, {"p_mw", scaled(p, base)}, {"q_mvar", scaled(q, base)}});
  }
  doc["loads"] = std::move(loads);
  return doc;
}

void save_case(const NetworkCase& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << case_to_json(c).dump(2) << '\n';
}

}  // namespace sopf
