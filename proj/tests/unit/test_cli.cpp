#include <gtest/gtest.h>

#include "tracelab/error.hpp"
#include "tracelab/fixture_io.hpp"
#include "tracelab_tools/experiments.hpp"

using namespace tracelab;
namespace cli = tracelab::cli;

namespace {

ErrorCode code_of(const std::string& sub, cli::Config c) {
  std::vector<std::string> notes;
  try {
    cli::validate(sub, std::move(c), notes);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

bool has_notice(const std::vector<std::string>& notes, const std::string& needle) {
  for (const auto& n : notes)
    if (n.find(needle) != std::string::npos) return true;
  return false;
}

// Drops the header line carrying the config hash.
std::string body(const std::string& csv) { return csv.substr(csv.find('\n') + 1); }

}  // namespace

TEST(Validate, RejectsBadFields) {
  EXPECT_EQ(code_of("percolate", {{"n", 100}, {"sigma", -1.0}}), ErrorCode::ConfigError);
  EXPECT_EQ(code_of("generate", {{"n", 100}, {"colour", "red"}}), ErrorCode::ConfigError);
  EXPECT_EQ(code_of("generate", {{"n", "abc"}}), ErrorCode::ConfigError);
  EXPECT_EQ(code_of("generate", {{"model", "ba"}, {"n", 10}}), ErrorCode::ConfigError);
  EXPECT_EQ(code_of("frobnicate", cli::Config::object()), ErrorCode::ConfigError);
  EXPECT_EQ(code_of("percolate", {{"n", 100}, {"mode", "edge"}}), ErrorCode::ConfigError);
}

TEST(Validate, DefaultsAndNotices) {
  std::vector<std::string> notes;
  const auto c = cli::validate("limit-compare", {{"n", 1000}, {"tau", 3.0}}, notes);
  EXPECT_DOUBLE_EQ(c.at("afrak").get<double>(), 3.0);
  EXPECT_TRUE(has_notice(notes, "afrak defaults"));
  EXPECT_TRUE(has_notice(notes, "tau <= log n"));
  EXPECT_EQ(c.at("replicas").get<int>(), 100);
  std::vector<std::string> quiet;
  cli::validate("limit-compare", {{"n", 1000}, {"tau", 50.0}, {"afrak", 3.0}, {"degree", 3}}, quiet);
  EXPECT_TRUE(quiet.empty());
}

TEST(Validate, FlagsArriveAsStrings) {
  std::vector<std::string> notes;
  const auto c = cli::validate("generate", {{"n", "40"}, {"degree", "4"}}, notes);
  EXPECT_EQ(c.at("n").get<int>(), 40);
  EXPECT_EQ(c.at("degree").get<int>(), 4);
}

TEST(Generate, RegularGraphJson) {
  std::vector<std::string> notes;
  const auto c = cli::validate("generate", {{"n", 100}, {"degree", 3}, {"seed", 5}}, notes);
  const auto out = cli::run("generate", c, 1);
  EXPECT_EQ(out.status, 0);
  const auto rg = parse_fixture(out.text);
  EXPECT_EQ(rg.graph.num_vertices(), 100u);
  EXPECT_EQ(rg.graph.num_edges(), 150u);
}

TEST(Run, DeterministicAcrossThreadCounts) {
  std::vector<std::string> notes;
  const auto perc =
      cli::validate("percolate", {{"n", 400}, {"sigma", 0.5}, {"k-list", "1,10"}, {"replicas", 6}}, notes);
  EXPECT_EQ(cli::run("percolate", perc, 1).text, cli::run("percolate", perc, 4).text);
  const auto ex = cli::validate("explore-couple", {{"n", 2000}, {"replicas", 8}}, notes);
  EXPECT_EQ(cli::run("explore-couple", ex, 1).text, cli::run("explore-couple", ex, 3).text);
}

TEST(Run, HeaderCarriesHash) {
  std::vector<std::string> notes;
  const auto c = cli::validate("percolate", {{"n", 200}, {"sigma", 1.0}, {"replicas", 2}}, notes);
  const auto text = cli::run("percolate", c, 1).text;
  EXPECT_EQ(text.rfind("# tracelab 0.1.0 config=" + cli::config_hash(c), 0), 0u);
  auto c2 = c;
  c2["seed"] = 2;
  EXPECT_NE(cli::config_hash(c), cli::config_hash(c2));
  EXPECT_EQ(cli::config_hash(c), cli::config_hash(cli::validate("percolate", c, notes)));
  EXPECT_NE(body(text), body(cli::run("percolate", c2, 1).text));
}

TEST(Run, BoundsAuditOnSmallCycle) {
  std::vector<std::string> notes;
  const auto c = cli::validate(
      "bounds-audit", {{"fixture", std::string(TRACELAB_TEST_DATA) + "/c20.json"}, {"tau", 5.0}, {"B", "0"}}, notes);
  const auto out = cli::run("bounds-audit", c, 1);
  EXPECT_EQ(out.status, 0);
  EXPECT_NE(out.text.find("lemma_b"), std::string::npos);
  EXPECT_NE(out.text.find("visit_bound"), std::string::npos);
}
