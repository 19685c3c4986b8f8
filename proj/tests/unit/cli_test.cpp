#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "arminer/apriori.hpp"
#include "arminer/bench.hpp"
#include "arminer/fpgrowth.hpp"
#include "test_support.hpp"

namespace arminer::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("arminer_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
             std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::size_t lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

TEST(Cli, MineDb5) {
  for (const char* algo : {"apriori", "fpgrowth", "bruteforce"}) {
    const auto r = run({"mine", test::fixture_path("db5.csv"), "--min-support", "3",
                        "--algorithm", algo});
    EXPECT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(r.out, "itemset,support\na,4\nb,4\nc,4\na|b,3\na|c,3\nb|c,3\n") << algo;
  }
  const auto frac = run({"mine", test::fixture_path("db5.csv"), "--min-support-frac", "0.6"});
  EXPECT_EQ(frac.code, kOk);
  EXPECT_EQ(lines(frac.out), 7u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"--bogus"}).code, kUsageError);
  EXPECT_EQ(run({}).code, kUsageError);
  EXPECT_EQ(run({"mine", test::fixture_path("db5.csv")}).code, kUsageError);
  EXPECT_EQ(run({"mine", test::fixture_path("db5.csv"), "--min-support", "3",
                 "--min-support-frac", "0.5"})
                .code,
            kUsageError);
  EXPECT_EQ(run({"mine", test::fixture_path("db5.csv"), "--min-support", "3", "--algorithm",
                 "eclat"})
                .code,
            kUsageError);
  EXPECT_EQ(run({"rules", "--min-confidence", "0.5"}).code, kUsageError);
  EXPECT_EQ(run({"rules", "--support-fixture", test::fixture_path("apriori_support.csv"),
                 "--min-confidence", "0.5", "--min-support", "3"})
                .code,
            kUsageError);
  const auto r = run({"bench", "--axis", "mean_len", "--values", "2,3"});
  EXPECT_EQ(r.code, kUsageError);
  EXPECT_NE(r.err.find("--min-support"), std::string::npos);
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("mine"), std::string::npos);
}

TEST(Cli, MissingFileNamesThePath) {
  const auto r = run({"mine", "/nonexistent/input.csv", "--min-support", "2"});
  EXPECT_EQ(r.code, kDataError);
  EXPECT_NE(r.err.find("/nonexistent/input.csv"), std::string::npos) << r.err;
}

TEST(Cli, RulesFromSupportFixture) {
  const auto r = run({"rules", "--support-fixture", test::fixture_path("apriori_support.csv"),
                      "--min-confidence", "0.5"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("\nOngoing fears,Under 18,595,0.6918604651162791,Accepted\n"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.err.find("skipped"), std::string::npos);
}

TEST(Cli, RulesFromDb) {
  const auto r = run({"rules", test::fixture_path("db5.csv"), "--min-support", "3",
                      "--min-confidence", "75%"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(lines(r.out), 7u);
  const auto none = run({"rules", test::fixture_path("db5.csv"), "--min-support", "3",
                         "--min-confidence", "0.76"});
  EXPECT_EQ(lines(none.out), 1u);
  const auto all = run({"rules", test::fixture_path("db5.csv"), "--min-support", "3",
                        "--min-confidence", "0.76", "--include-rejected"});
  EXPECT_EQ(lines(all.out), 7u);
  EXPECT_NE(all.out.find("Rejected"), std::string::npos);
}

TEST(Cli, RulesFromItemsetsFile) {
  TempDir dir;
  const auto path = dir.file("itemsets.csv");
  ASSERT_EQ(run({"mine", test::fixture_path("db5.csv"), "--min-support", "3", "--output", path})
                .code,
            kOk);
  const auto r = run({"rules", "--itemsets", path, "--min-confidence", "0.75"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(lines(r.out), 7u);
}

TEST(Cli, Recode) {
  const auto r = run({"recode", test::fixture_path("survey_sample.csv")});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out, "Under 18,Anxiety,Intense fear\nAnxiety,18-24\nUnder 18,Anxiety\n");
  const auto missing = run({"recode", test::fixture_path("survey_sample.csv"), "--age-column",
                            "years"});
  EXPECT_EQ(missing.code, kDataError);
  EXPECT_NE(missing.err.find("years"), std::string::npos);
}

TEST(Cli, CheckAgrees) {
  const auto r = run({"check", "--seed", "5", "--cases", "40", "--max-items", "8"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("40 cases agree"), std::string::npos);
  EXPECT_EQ(run({"check", "--max-items", "21"}).code, kUsageError);
}

TEST(Cli, CheckReportsInjectedBug) {
  CheckOptions options;
  options.cases = 200;
  const oracle::Miner apriori = [](const TransactionDb& db, Count s) { return apriori_mine(db, s); };
  const oracle::Miner broken = [](const TransactionDb& db, Count s) {
    auto freq = fpgrowth_mine(db, s);
    std::erase_if(freq.support, [](const auto& kv) { return kv.first.size() == 2; });
    return freq;
  };
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(run_check(options, apriori, broken, out, err), kCheckMismatch);
  EXPECT_NE(err.str().find("minimized counterexample"), std::string::npos) << err.str();
}

TEST(Cli, BenchCsvAndJson) {
  const auto csv = run({"bench", "--transactions", "200", "--items", "15", "--mean-len", "3",
                        "--axis", "min_support", "--values", "4,8", "--reps", "1"});
  EXPECT_EQ(csv.code, kOk) << csv.err;
  EXPECT_EQ(lines(csv.out), 5u);
  EXPECT_EQ(csv.out.rfind("axis,axis_value,algorithm", 0), 0u);

  TempDir dir;
  const auto path = dir.file("report.json");
  const auto json = run({"bench", "--transactions", "200", "--items", "15", "--mean-len", "3",
                         "--axis", "n_items", "--values", "10,15", "--min-support-frac", "0.05",
                         "--reps", "1", "--format", "json", "--output", path});
  EXPECT_EQ(json.code, kOk) << json.err;
  EXPECT_TRUE(json.out.empty());
  const auto report = bench::parse_report_json(io::read_text_file(path));
  EXPECT_EQ(report.rows.size(), 4u);
  EXPECT_EQ(report.config.base.n_transactions, 200u);
}

TEST(Cli, BenchBadAxisValue) {
  const auto r = run({"bench", "--items", "10", "--axis", "mean_len", "--values", "3,40",
                      "--min-support", "5", "--reps", "1"});
  EXPECT_EQ(r.code, kDataError);
  EXPECT_NE(r.err.find("40"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace arminer::cli
