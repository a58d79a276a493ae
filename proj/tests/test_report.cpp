#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "lnmgf/lnmgf.hpp"
#include "report.hpp"

using namespace lnmgf;

namespace {

MethodSettings fast_settings() {
  MethodSettings s;
  s.monte_carlo.n_samples = 10'000;
  return s;
}

}  // namespace

TEST(Methods, NamesRoundTrip) {
  for (Method m : kAllMethods) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_EQ(parse_method("ze"), Method::zero_entropy);
  EXPECT_EQ(parse_method("tt"), Method::thin_tile);
  EXPECT_EQ(parse_method("laplace"), Method::laplace_w);
  EXPECT_EQ(parse_method("mc"), Method::monte_carlo);
  EXPECT_FALSE(parse_method("simpson").has_value());
}

TEST(Methods, ValidatedQuery) {
  EXPECT_THROW(MgfQuery(0.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(MgfQuery(0.0, 1.0, INFINITY), DomainError);
}

TEST(Tables, Definitions) {
  EXPECT_THROW(paper_table(4), DomainError);
  const PaperTable& t2 = paper_table(2);
  EXPECT_EQ(t2.sigma, 0.0625);
  EXPECT_EQ(t2.theta[4], -8.0);
  EXPECT_EQ(t2.paper_value(Method::thin_tile, 1), 0.367880);
  EXPECT_EQ(paper_table(3).paper_value(Method::zero_entropy, 3), 0.159668);
  EXPECT_EQ(paper_table(1).paper_value(Method::laplace_w, 4), 3.364990);
}

TEST(Report, EveryMethodOnceInOrder) {
  const auto r = cli::run_report(MgfQuery(0.0, 0.1, 0.5), kAllMethods, fast_settings());
  ASSERT_EQ(r.results.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(r.results[i].method, kAllMethods[i]);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.deltas().size(), 6u);
}

TEST(Report, ErrorsAreRecordedPerMethod) {
  const std::vector<Method> ms{Method::laplace_w, Method::thin_tile};
  const auto r = cli::run_report(MgfQuery(0.0, 0.1, 40.0), ms, fast_settings());
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.results[0].error_kind, "DomainError");
  EXPECT_FALSE(r.results[0].error_message.empty());
  EXPECT_TRUE(r.deltas().empty());
}

TEST(Report, JsonSchema) {
  const auto r = cli::run_report(MgfQuery(0.0, 1.0, -1.0), kAllMethods, fast_settings());
  const nlohmann::json j = cli::to_json(r);
  for (const char* key : {"query", "results", "deltas", "timings"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["results"].size(), 4u);
  EXPECT_EQ(j["results"][2]["method"], "laplace_w");
  EXPECT_TRUE(j["timings"].contains("monte_carlo"));
  EXPECT_EQ(j["query"]["theta"], -1.0);
}

TEST(Report, CsvUsesNineSignificantDigits) {
  const std::vector<Method> ms{Method::laplace_w};
  const auto r = cli::run_report(MgfQuery(0.0, 0.0625, -1.0), ms, fast_settings());
  std::ostringstream os;
  cli::write_csv(os, std::span(&r, 1));
  const std::string want_value = cli::sig9(r.results[0].estimate->value);
  EXPECT_EQ(want_value, "0.367880828");
  EXPECT_NE(os.str().find(",laplace_w," + want_value + ","), std::string::npos) << os.str();
  EXPECT_EQ(os.str().rfind("table,mu,sigma,theta,method,value,std_error,paper_value,status\n", 0), 0u);
}

TEST(Report, TablePaperValuesAttached) {
  const auto reports = cli::run_table(paper_table(2), kAllMethods, fast_settings());
  ASSERT_EQ(reports.size(), 5u);
  EXPECT_EQ(reports[4].results[1].paper_value, 0.000373);
  std::ostringstream os;
  cli::write_text_table(os, reports);
  EXPECT_NE(os.str().find("Table 2"), std::string::npos);
  EXPECT_NE(os.str().find("0.367880"), std::string::npos);
}
