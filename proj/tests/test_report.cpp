#include <gtest/gtest.h>

#include <cstdlib>

#include "dext/report.hpp"

using namespace dext;

namespace {

std::string sample(const std::string& name) { return std::string(DEXT_SAMPLES_DIR) + "/" + name; }

VerifyReport verify_default(char name, int N = 6) {
  const auto& cat = default_catalog();
  const FamilyRecord& rec = find_family(name);
  VerifyOptions opt;
  opt.N = N;
  return verify_family(cat, rec, rec.specializations[0], opt);
}

}  // namespace

TEST(Report, VerifySPassesEveryCheck) {
  VerifyReport r = verify_default('S');
  EXPECT_TRUE(r.pass()) << format_report(r);
  ASSERT_EQ(r.checks.size(), kCheckNames.size());
  for (size_t i = 0; i < kCheckNames.size(); ++i) EXPECT_EQ(r.checks[i].name, kCheckNames[i]);
  EXPECT_EQ(r.detsigma, (std::vector<std::string>{"4", "0", "0", "4"}));
  EXPECT_EQ(r.dims, polynomial_ring_dims(6));
  EXPECT_EQ(r.check("duality_witness")->status, "pass");
}

TEST(Report, WitnessRunsOnHolderAndSkipsOnPartner) {
  VerifyReport w = verify_default('W');
  VerifyReport z = verify_default('Z');
  EXPECT_TRUE(w.pass() && z.pass());
  const CheckResult* held = w.check("duality_witness")->status == "pass" ? w.check("duality_witness")
                                                                         : z.check("duality_witness");
  EXPECT_EQ(held->status, "pass");
  EXPECT_NE(w.check("duality_witness")->status, z.check("duality_witness")->status);
}

TEST(Report, ZCarriesRelationNote) {
  VerifyReport z = verify_default('Z', 4);
  ASSERT_EQ(z.notes.size(), 1u);
  EXPECT_NE(z.notes[0].find("y1x1 = x1y1 + x2y2"), std::string::npos);
}

TEST(Report, JsonRoundTrip) {
  VerifyReport r = verify_default('K', 5);
  nlohmann::ordered_json j = to_json(r);
  EXPECT_EQ(j["schema"], "dext.verify/1");
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(report_from_json(j.dump()), r);
  EXPECT_EQ(report_from_json(j), r);
}

TEST(Report, JsonSchemaErrors) {
  nlohmann::ordered_json j = to_json(verify_default('B', 4));
  nlohmann::ordered_json bad = j;
  bad["schema"] = "dext.verify/0";
  EXPECT_THROW(report_from_json(bad), ParseError);
  nlohmann::ordered_json lying = j;
  lying["status"] = "fail";
  EXPECT_THROW(report_from_json(lying), ParseError);
  EXPECT_THROW(report_from_json(std::string("{\"schema\": \"dext.verify/1\"")), ParseError);
  EXPECT_THROW(report_from_json(std::string("{\"schema\": \"dext.verify/1\"}")), ParseError);
}

TEST(Report, FileTargets) {
  VerifyOptions opt;
  opt.N = 5;
  VerifyReport good = verify_data(read_de_file(sample("commutative.de")), "commutative.de", opt);
  EXPECT_TRUE(good.pass()) << format_report(good);
  EXPECT_EQ(good.check("detsigma_match")->status, "skip");
  VerifyReport bad = verify_data(read_de_file(sample("broken.de")), "broken.de", opt);
  EXPECT_FALSE(bad.pass());
  EXPECT_EQ(bad.check("system_c")->status, "fail");
  EXPECT_NE(format_report(bad).find("FAIL"), std::string::npos);
}

TEST(Report, SuiteSubset) {
  SuiteResult s = run_suite(default_catalog(), {'A', 'B', 'C'}, 5);
  ASSERT_EQ(s.rows.size(), 3u);
  EXPECT_TRUE(s.pass());
  EXPECT_EQ(s.rows[0].family, 'A');
  EXPECT_EQ(s.rows[0].runs, 3);
  EXPECT_NE(format_suite(s).find("3/3 families pass"), std::string::npos);
}

TEST(Report, SuiteCatchesMutatedSign) {
  std::vector<FamilyRecord> cat = default_catalog();
  FamilyRecord& y = cat['Y' - 'A'];
  ASSERT_EQ(y.sigma[5], "-1");
  y.sigma[5] = "1";
  SuiteResult s = run_suite(cat, {}, 5);
  ASSERT_EQ(s.rows.size(), 26u);
  EXPECT_EQ(s.passed(), 25u);
  const SuiteRow& row = s.rows['Y' - 'A'];
  EXPECT_FALSE(row.pass());
  EXPECT_TRUE(row.cells.at("system_c") == "FAIL" || row.cells.at("detsigma_match") == "FAIL");
}

TEST(Report, DegreeBoundFromEnvironment) {
  unsetenv("DEXT_DEGREE_BOUND");
  EXPECT_EQ(default_degree_bound(), 8);
  setenv("DEXT_DEGREE_BOUND", "5", 1);
  EXPECT_EQ(default_degree_bound(), 5);
  setenv("DEXT_DEGREE_BOUND", "3", 1);
  EXPECT_THROW(default_degree_bound(), std::invalid_argument);
  setenv("DEXT_DEGREE_BOUND", "eight", 1);
  EXPECT_THROW(default_degree_bound(), std::invalid_argument);
  unsetenv("DEXT_DEGREE_BOUND");
}
