#include <gtest/gtest.h>

#include "support.hpp"

using namespace sopf;
using nlohmann::json;

namespace {

json storage_entry(int bus) {
  return {{"bus", bus},          {"eta_ch", 0.9},   {"eta_dc", 0.9},        {"soc_initial", 10},
          {"soc_min", 0},        {"soc_max", 20},   {"p_ch_max", 10},       {"p_dc_max", 10},
          {"apparent_capacity", 12}, {"charge_fee", 5}, {"discharge_fee", 15}};
}

json five_bus_doc() {
  json doc = test::two_bus_doc();
  for (int i = 2; i < 5; ++i) {
    doc["buses"].push_back({{"id", i}, {"voltage_min", 0.9}, {"voltage_max", 1.1}});
    doc["branches"].push_back({{"from_bus", i - 1}, {"to_bus", i}, {"series_conductance", 0.0},
                               {"series_susceptance", -10.0}, {"thermal_limit", 500}});
  }
  return doc;
}

}  // namespace

TEST(LoadCase, MinimalTwoBusCase) {
  const NetworkCase c = case_from_json(test::two_bus_doc());
  EXPECT_EQ(c.bus_count(), 2);
  EXPECT_EQ(c.branches.size(), 1u);
  EXPECT_EQ(c.periods(), 1);
  EXPECT_EQ(c.reference_bus(), 0);
}

TEST(LoadCase, UnitEfficienciesViolateDenominatorRule) {
  json doc = test::two_bus_doc();
  json s = storage_entry(1);
  s["eta_ch"] = 1.0;
  s["eta_dc"] = 1.0;
  doc["storages"] = {s};
  try {
    case_from_json(doc);
    FAIL() << "expected a validation error";
  } catch (const CaseValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("1/eta_dc > eta_ch violated"), std::string::npos) << e.what();
    EXPECT_EQ(e.violation().entity, "storages[0]");
  }
}

TEST(LoadCase, StorageOnMissingBusNamesStorageAndBus) {
  json doc = five_bus_doc();
  doc["storages"] = {storage_entry(99)};
  try {
    case_from_json(doc);
    FAIL() << "expected a validation error";
  } catch (const CaseValidationError& e) {
    const std::string msg = e.what();
    EXPECT_EQ(e.violation().entity, "storages[0]");
    EXPECT_NE(msg.find("99"), std::string::npos) << msg;
  }
}

TEST(LoadCase, MalformedDocumentIsParseError) {
  EXPECT_THROW(case_from_json(json::parse(R"({"base_mva": 100})")), CaseParseError);
  EXPECT_THROW(case_from_json(json::array()), CaseParseError);
  EXPECT_THROW(load_case("/nonexistent/case.json"), CaseParseError);
}

TEST(LoadCase, ArrayLengthsCheckedAgainstT) {
  json doc = test::two_bus_doc();
  doc["loads"][0]["p_mw"] = {10, 20};
  EXPECT_ANY_THROW(case_from_json(doc));
}

TEST(Validate, BundledCasesAreValid) {
  for (const std::string& name : test::bundled_names()) EXPECT_TRUE(validate(test::bundled(name)).empty()) << name;
}

TEST(Validate, InitialSocAboveCapacity) {
  NetworkCase c = test::bundled("three_bus");
  c.storages[0].soc_initial = c.storages[0].soc_max * 1.5;
  const auto v = validate(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].entity, "storages[0]");
  EXPECT_EQ(v[0].field, "soc_initial");
}

TEST(Validate, DisconnectedBus) {
  NetworkCase c = case_from_json(test::two_bus_doc());
  c.buses.push_back({.id = 2});
  c.time_grid.load_p.push_back({0.0});
  c.time_grid.load_q.push_back({0.0});
  const auto v = validate(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "branches");
  EXPECT_NE(v[0].rule.find("connected"), std::string::npos);
}

TEST(Validate, EachDescriptorNamesEntityFieldRule) {
  NetworkCase c = test::bundled("nine_bus");
  c.generators[1].p_min = c.generators[1].p_max + 1.0;
  c.branches[2].thermal_limit = -1.0;
  const auto found = validate(c);
  ASSERT_EQ(found.size(), 2u);
  for (const Violation& d : found) {
    EXPECT_FALSE(d.entity.empty());
    EXPECT_FALSE(d.field.empty());
    EXPECT_FALSE(d.rule.empty());
  }
}

TEST(Serialization, RoundTripIsFieldwiseEqual) {
  for (const std::string& name : test::bundled_names()) {
    const NetworkCase a = test::bundled(name);
    const json doc = case_to_json(a);
    const NetworkCase b = case_from_json(doc);
    EXPECT_EQ(case_to_json(b), doc) << name;
  }
}

TEST(Serialization, UnitConversionIsIdentity) {
  const NetworkCase a = test::bundled("nine_bus");
  const NetworkCase b = case_from_json(case_to_json(a));
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)); };
  for (std::size_t k = 0; k < a.generators.size(); ++k) {
    EXPECT_TRUE(close(a.generators[k].p_max, b.generators[k].p_max));
    EXPECT_TRUE(close(a.generators[k].cost_quadratic, b.generators[k].cost_quadratic));
    EXPECT_TRUE(close(a.generators[k].cost_linear, b.generators[k].cost_linear));
  }
  for (std::size_t n = 0; n < a.storages.size(); ++n) {
    EXPECT_TRUE(close(a.storages[n].soc_max, b.storages[n].soc_max));
    EXPECT_TRUE(close(a.storages[n].loss_penalty, b.storages[n].loss_penalty));
    for (int t = 0; t < a.periods(); ++t) EXPECT_TRUE(close(a.storages[n].charge_fee[t], b.storages[n].charge_fee[t]));
  }
  for (int j = 0; j < a.bus_count(); ++j)
    for (int t = 0; t < a.periods(); ++t) EXPECT_TRUE(close(a.time_grid.load_p[j][t], b.time_grid.load_p[j][t]));
}

TEST(Serialization, StoresPerUnit) {
  const NetworkCase c = case_from_json(test::two_bus_doc(50.0));
  EXPECT_DOUBLE_EQ(c.time_grid.load_p[1][0], 0.5);
  EXPECT_DOUBLE_EQ(c.generators[0].p_max, 3.0);
  EXPECT_DOUBLE_EQ(c.generators[0].cost_linear, 1000.0);
  EXPECT_DOUBLE_EQ(c.generators[0].cost_quadratic, 400.0);
}
