#include <hypershift/hypershift.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include <memory>
#include <string>

namespace {

using json = nlohmann::json;

struct Text {
  char* p = nullptr;
  ~Text() { hs_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Handle {
  hs_schedule* s = nullptr;
  ~Handle() { hs_schedule_free(s); }
};

hs_config faithful() {
  hs_config c{};
  c.mode = "faithful";
  return c;
}

hs_config accelerated(const char* density, uint64_t budget = 0, bool complex = false) {
  hs_config c{};
  c.mode = complex ? "accelerated-complex" : "accelerated";
  c.density = density;
  c.budget = budget;
  return c;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(hs_version(), "");
  EXPECT_STREQ(hs_status_name(HS_OK), "Ok");
  EXPECT_STREQ(hs_status_name(static_cast<hs_status>(99)), "Unknown");
  EXPECT_STREQ(hs_status_name(HS_OUT_OF_REACH), "OutOfReach");
  EXPECT_STREQ(hs_status_name(HS_BUDGET_EXCEEDED), "BudgetExceeded");
}

TEST(CApi, DefaultsAndConfigEcho) {
  Handle h;
  ASSERT_EQ(hs_schedule_create(nullptr, &h.s), HS_OK);
  Text t;
  ASSERT_EQ(hs_schedule_config_json(h.s, &t.p), HS_OK);
  json j = json::parse(t.str());
  EXPECT_EQ(j["mode"], "accelerated");
  EXPECT_EQ(j["density"], "const:1");
  EXPECT_EQ(j["k_start"], 20);
  EXPECT_EQ(j["precision_digits"], 40);
  hs_config f = faithful();
  Handle h2;
  ASSERT_EQ(hs_schedule_create(&f, &h2.s), HS_OK);
  Text t2;
  ASSERT_EQ(hs_schedule_config_json(h2.s, &t2.p), HS_OK);
  json j2 = json::parse(t2.str());
  EXPECT_EQ(j2["mode"], "faithful-real");
  EXPECT_EQ(j2["density"], "lnln");
  EXPECT_EQ(j2["precision_digits"], 60);
}

TEST(CApi, RejectsBadInput) {
  hs_config c{};
  c.mode = "turbo";
  hs_schedule* s = nullptr;
  EXPECT_EQ(hs_schedule_create(&c, &s), HS_INVALID_ARGUMENT);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(hs_last_error()).find("turbo"), std::string::npos);
  c = accelerated("const:0.5");
  EXPECT_EQ(hs_schedule_create(&c, &s), HS_INVALID_ARGUMENT);
  EXPECT_EQ(hs_schedule_create(nullptr, nullptr), HS_INVALID_ARGUMENT);
  EXPECT_EQ(hs_entries_csv(nullptr, 20, 21, nullptr), HS_INVALID_ARGUMENT);
  hs_schedule_free(nullptr);
  hs_string_free(nullptr);
}

TEST(CApi, TargetsAndEntries) {
  Text t;
  ASSERT_EQ(hs_targets_csv(1, 3, &t.p), HS_OK);
  std::string csv = t.str();
  EXPECT_EQ(csv.rfind("l,coords,alpha,eps\n1,1+0i,0,0.5\n2,0+1i,0,0.5\n", 0), 0u);
  hs_config f = faithful();
  Handle h;
  ASSERT_EQ(hs_schedule_create(&f, &h.s), HS_OK);
  Text e;
  ASSERT_EQ(hs_entries_csv(h.s, 20, 23, &e.p), HS_OK);
  std::string rows = e.str();
  EXPECT_NE(rows.find("\n21,2,1,8,"), std::string::npos);
  EXPECT_NE(rows.find("\n23,2,1,26,"), std::string::npos);
  Text bad;
  EXPECT_EQ(hs_targets_csv(0, 3, &bad.p), HS_INVALID_ARGUMENT);
  EXPECT_EQ(bad.p, nullptr);
}

TEST(CApi, StepsReportCarriesBracket) {
  hs_config c = accelerated("const:1", 1000000);
  Handle h;
  ASSERT_EQ(hs_schedule_create(&c, &h.s), HS_OK);
  Text t;
  ASSERT_EQ(hs_steps_json(h.s, 3, &t.p), HS_BUDGET_EXCEEDED);
  json j = json::parse(t.str());
  EXPECT_EQ(j["status"], "BudgetExceeded");
  ASSERT_EQ(j["steps"].size(), 2u);
  const json& b = j["steps"][1]["bracket"];
  EXPECT_EQ(b["scanned_cycle_starts"], 1000000);
  // The step truly ends at 93037372.
  EXPECT_LE(std::stod(b["lo"].get<std::string>()), 93037372.0);
  EXPECT_GE(std::stod(b["hi"].get<std::string>()), 93037372.0);
  EXPECT_EQ(j["config"]["budget"], 1000000);
  EXPECT_FALSE(j["version_hash"].get<std::string>().empty());
}

TEST(CApi, OrbitWitness) {
  hs_config c = accelerated("const:10");
  Handle h;
  ASSERT_EQ(hs_schedule_create(&c, &h.s), HS_OK);
  Text t;
  ASSERT_EQ(hs_verify_orbit_json(h.s, "2,0", 1, nullptr, &t.p), HS_OK);
  json j = json::parse(t.str());
  EXPECT_EQ(j["k"], 20);
  EXPECT_EQ(j["l"], 1);
  EXPECT_LT(std::stod(j["log_dist_upper"].get<std::string>()), std::log(1.5));
  Text again;
  ASSERT_EQ(hs_verify_orbit_json(h.s, "2,0", 1, nullptr, &again.p), HS_OK);
  EXPECT_EQ(t.str(), again.str());
  Text bad;
  EXPECT_EQ(hs_verify_orbit_json(h.s, "1,0", 1, nullptr, &bad.p), HS_INVALID_ARGUMENT);
  EXPECT_EQ(hs_verify_orbit_json(h.s, "x", 1, nullptr, &bad.p), HS_INVALID_ARGUMENT);
  hs_config small = accelerated("const:10", 100000);
  Handle h2;
  ASSERT_EQ(hs_schedule_create(&small, &h2.s), HS_OK);
  hs_search opt{0, 100000, 4};
  EXPECT_EQ(hs_verify_orbit_json(h2.s, "5,0", 1, &opt, &bad.p), HS_OUT_OF_REACH);
  EXPECT_NE(std::string(hs_last_error()).find("bracket"), std::string::npos);
}

TEST(CApi, ComplexOrbitAndCovering) {
  hs_config c = accelerated("const:10", 0, true);
  Handle h;
  ASSERT_EQ(hs_schedule_create(&c, &h.s), HS_OK);
  Text t;
  ASSERT_EQ(hs_verify_orbit_json(h.s, "e@0", 1, nullptr, &t.p), HS_OK);
  EXPECT_EQ(json::parse(t.str())["config"]["mode"], "accelerated-complex");
  hs_config f = faithful();
  Handle r;
  ASSERT_EQ(hs_schedule_create(&f, &r.s), HS_OK);
  Text cov;
  // y_23 = 1 + 1/52 exactly, at a cycle start.
  ASSERT_EQ(hs_verify_covering_json(r.s, 1, "53/52", "1/1000000", nullptr, &cov.p), HS_OK);
  json j = json::parse(cov.str());
  EXPECT_EQ(j["k"], 23);
  EXPECT_EQ(j["M"], "26");
}

TEST(CApi, DensityGridAndDivergence) {
  hs_config c = accelerated("const:10");
  Handle h;
  ASSERT_EQ(hs_schedule_create(&c, &h.s), HS_OK);
  const char* grid[] = {"2,0", "e,0"};
  Text t;
  ASSERT_EQ(hs_verify_density_csv(h.s, grid, 2, 1, nullptr, &t.p), HS_OK);
  std::string csv = t.str();
  EXPECT_EQ(csv.rfind("z,l,status,k,M,log_dist_upper,margin\n", 0), 0u);
  EXPECT_NE(csv.find("\"2,0\",1,ok,20,"), std::string::npos);
  EXPECT_NE(csv.find("\"e,0\",1,ok,"), std::string::npos);
  hs_config fc = faithful();
  Handle f;
  ASSERT_EQ(hs_schedule_create(&fc, &f.s), HS_OK);
  Text d;
  ASSERT_EQ(hs_divergence_json(f.s, 1, 10000, &d.p), HS_OK);
  json j = json::parse(d.str());
  EXPECT_GT(j["orbit"].size(), 1u);
  EXPECT_GT(j["minorant"].size(), 1u);
}
