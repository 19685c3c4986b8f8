#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include "arminer/apriori.hpp"
#include "arminer/bench.hpp"
#include "arminer/dataset.hpp"
#include "arminer/error.hpp"
#include "arminer/fpgrowth.hpp"
#include "arminer/frequent.hpp"
#include "arminer/io.hpp"
#include "arminer/oracle.hpp"
#include "arminer/rules.hpp"

namespace arminer::cli {
namespace {

// Flag combinations CLI11 cannot express on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ThresholdFlags {
  std::optional<Count> absolute;
  std::optional<double> fraction;

  void add_to(CLI::App* app) {
    auto* abs = app->add_option("--min-support", absolute, "Minimum support as a transaction count")
                    ->check(CLI::PositiveNumber);
    app->add_option("--min-support-frac", fraction,
                    "Minimum support as a fraction of transactions, converted as ceil(f*n)")
        ->check(CLI::Range(0.0, 1.0))
        ->excludes(abs);
  }

  bool given() const { return absolute || fraction; }

  Count resolve(std::size_t n) const {
    if (!given()) throw UsageError("one of --min-support or --min-support-frac is required");
    if (absolute) return *absolute;
    return min_support_from_fraction(*fraction, n);
  }
};

struct Output {
  std::string path;
  std::ostream& out;

  void write(const std::string& text) const {
    if (path.empty()) {
      out << text;
    } else {
      io::write_text_file(path, text);
    }
  }
};

std::optional<AliasMap> load_aliases(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return AliasMap::parse(io::read_text_file(path));
}

FrequentItemsets mine_with(const std::string& algorithm, const TransactionDb& db, Count min_support) {
  if (algorithm == "apriori") return apriori_mine(db, min_support);
  if (algorithm == "fpgrowth") return fpgrowth_mine(db, min_support);
  return oracle::brute_force_frequent(db, min_support);
}

std::string dump_case(const oracle::EquivalenceCase& c) {
  std::ostringstream out;
  out << "min_support=" << c.min_support
      << " min_confidence=" << format_confidence(c.min_confidence.value()) << "\n"
      << "transactions (" << c.db.size() << "):\n"
      << write_transactions(c.db);
  return out.str();
}

}  // namespace

int run_check(const CheckOptions& options, const oracle::Miner& apriori,
              const oracle::Miner& fpgrowth, std::ostream& out, std::ostream& err) {
  Rng rng(options.seed);
  for (std::size_t i = 0; i < options.cases; ++i) {
    oracle::EquivalenceCase c = oracle::random_case(rng, options.db);
    auto mismatch = oracle::find_mismatch(c, apriori, fpgrowth);
    if (!mismatch) continue;

    const auto minimal = oracle::minimize(c, [&](const oracle::EquivalenceCase& trial) {
      return oracle::find_mismatch(trial, apriori, fpgrowth).has_value();
    });
    err << "check: mismatch in case " << i << " (seed " << options.seed << "): " << *mismatch << "\n"
        << "minimized counterexample: "
        << oracle::find_mismatch(minimal, apriori, fpgrowth).value_or("(no longer fails)") << "\n"
        << dump_case(minimal);
    return kCheckMismatch;
  }
  out << "check: " << options.cases << " cases agree (seed " << options.seed << ")\n";
  return kOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequent itemset and association rule mining", "arminer"};
  app.require_subcommand(1);

  // mine
  auto* mine = app.add_subcommand("mine", "Mine frequent itemsets from a transactions CSV");
  std::string mine_db;
  std::string mine_algorithm = "apriori";
  std::string mine_alias;
  std::string mine_output;
  ThresholdFlags mine_threshold;
  mine->add_option("db", mine_db, "Transactions CSV")->required();
  mine->add_option("--algorithm", mine_algorithm, "apriori, fpgrowth or bruteforce")
      ->check(CLI::IsMember({"apriori", "fpgrowth", "bruteforce"}));
  mine_threshold.add_to(mine);
  mine->add_option("--alias-file", mine_alias, "raw_label,canonical_label CSV");
  mine->add_option("--output", mine_output, "Write here instead of standard output");

  // rules
  auto* rules = app.add_subcommand("rules", "Generate association rules");
  std::string rules_db;
  std::string rules_itemsets;
  std::string rules_fixture;
  std::string rules_algorithm = "fpgrowth";
  std::string rules_alias;
  std::string rules_output;
  std::string rules_confidence;
  bool include_rejected = false;
  ThresholdFlags rules_threshold;
  rules->add_option("db", rules_db, "Transactions CSV to mine first");
  rules->add_option("--itemsets", rules_itemsets, "Frequent-itemset CSV (itemset,support)");
  rules->add_option("--support-fixture", rules_fixture,
                    "Support table in itemset,support form; may be partial");
  rules->add_option("--algorithm", rules_algorithm, "Miner used for a transactions CSV")
      ->check(CLI::IsMember({"apriori", "fpgrowth", "bruteforce"}));
  rules_threshold.add_to(rules);
  rules->add_option("--min-confidence", rules_confidence, "Fraction (0.40) or percentage (40%)")
      ->required();
  rules->add_flag("--include-rejected", include_rejected, "Also list rules below the threshold");
  rules->add_option("--alias-file", rules_alias, "raw_label,canonical_label CSV");
  rules->add_option("--output", rules_output, "Write here instead of standard output");

  // recode
  auto* recode = app.add_subcommand("recode", "Recode a survey CSV into transactions");
  std::string survey_path;
  SurveySchema schema;
  std::string recode_alias;
  std::string recode_output;
  recode->add_option("survey", survey_path, "Survey CSV with a header row")->required();
  recode->add_option("--age-column", schema.age_column, "Age column name")->capture_default_str();
  recode->add_option("--impact-column", schema.impact_column, "Multi-select impact column name")
      ->capture_default_str();
  recode->add_option("--delimiter", schema.multiselect_delimiter, "Multi-select delimiter")
      ->capture_default_str();
  recode->add_option("--missing-age-label", schema.missing_age_label,
                     "Label for respondents without an age")
      ->capture_default_str();
  recode->add_option("--alias-file", recode_alias, "raw_label,canonical_label CSV");
  recode->add_option("--output", recode_output, "Write here instead of standard output");

  // check
  auto* check = app.add_subcommand("check", "Cross-check apriori, fpgrowth and brute force");
  CheckOptions check_options;
  check->add_option("--seed", check_options.seed, "Random seed")->capture_default_str();
  check->add_option("--cases", check_options.cases, "Number of random databases")
      ->capture_default_str();
  check->add_option("--max-items", check_options.db.max_items, "Distinct items per database")
      ->check(CLI::Range(std::size_t{1}, oracle::kMaxUniverse))
      ->capture_default_str();
  check->add_option("--max-transactions", check_options.db.max_transactions,
                    "Transactions per database")
      ->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Apriori vs FP-Growth time and memory sweep");
  bench::SynthParams synth;
  std::string axis_name;
  std::vector<double> axis_values;
  std::size_t reps = 5;
  std::string format = "csv";
  std::string bench_output;
  ThresholdFlags bench_threshold;
  bench->add_option("--transactions", synth.n_transactions, "Transactions per dataset")
      ->capture_default_str();
  bench->add_option("--items", synth.n_items, "Distinct items")->capture_default_str();
  bench->add_option("--mean-len", synth.mean_len, "Mean transaction length")->capture_default_str();
  bench->add_option("--skew", synth.skew, "Zipf exponent of item popularity")->capture_default_str();
  bench->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  bench_threshold.add_to(bench);
  bench->add_option("--axis", axis_name, "min_support, n_transactions, mean_len or n_items")
      ->required()
      ->check(CLI::IsMember({"min_support", "n_transactions", "mean_len", "n_items"}));
  bench->add_option("--values", axis_values, "Comma-separated axis values")
      ->required()
      ->delimiter(',');
  bench->add_option("--reps", reps, "Repetitions per point; wall time is the median")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--output", bench_output, "Write here instead of standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kUsageError;
  }

  try {
    if (mine->parsed()) {
      const auto aliases = load_aliases(mine_alias);
      const TransactionDb db =
          parse_transactions(io::read_text_file(mine_db), aliases ? &*aliases : nullptr);
      const FrequentItemsets freq = mine_with(mine_algorithm, db, mine_threshold.resolve(db.size()));
      Output{mine_output, out}.write(format_itemsets_csv(freq, db.catalog()));
      return kOk;
    }

    if (rules->parsed()) {
      const int sources = !rules_db.empty() + !rules_itemsets.empty() + !rules_fixture.empty();
      if (sources != 1) {
        throw UsageError("give exactly one of a transactions file, --itemsets or --support-fixture");
      }
      RuleOptions options;
      options.min_confidence = MinConfidence::parse(rules_confidence);
      options.include_rejected = include_rejected;

      FrequentItemsets freq;
      ItemCatalog catalog;
      if (!rules_db.empty()) {
        const auto aliases = load_aliases(rules_alias);
        const TransactionDb db =
            parse_transactions(io::read_text_file(rules_db), aliases ? &*aliases : nullptr);
        freq = mine_with(rules_algorithm, db, rules_threshold.resolve(db.size()));
        catalog = db.catalog();
      } else {
        if (rules_threshold.given()) {
          throw UsageError("--min-support applies only when mining a transactions file");
        }
        const bool fixture = !rules_fixture.empty();
        SupportTable table =
            parse_support_csv(io::read_text_file(fixture ? rules_fixture : rules_itemsets));
        freq = table.to_frequent();
        catalog = std::move(table.catalog);
        if (fixture) options.closure = ClosurePolicy::kSkipUnknown;
      }

      std::size_t skipped = 0;
      const auto generated = generate_rules(freq, catalog, options, &skipped);
      if (skipped > 0) {
        err << "rules: skipped " << skipped
            << " candidate rules whose antecedent support is not in the table\n";
      }
      Output{rules_output, out}.write(format_rules_csv(generated, catalog));
      return kOk;
    }

    if (recode->parsed()) {
      const auto aliases = load_aliases(recode_alias);
      const TransactionDb db =
          parse_survey(io::read_text_file(survey_path), schema, aliases ? &*aliases : nullptr);
      Output{recode_output, out}.write(write_transactions(db));
      return kOk;
    }

    if (check->parsed()) {
      return run_check(
          check_options, [](const TransactionDb& db, Count s) { return apriori_mine(db, s); },
          [](const TransactionDb& db, Count s) { return fpgrowth_mine(db, s); }, out, err);
    }

    if (bench->parsed()) {
      bench::SweepConfig config;
      config.base = synth;
      config.axis = bench::parse_axis(axis_name);
      config.values = axis_values;
      config.repetitions = reps;
      if (config.axis != bench::SweepAxis::kMinSupport) {
        if (!bench_threshold.given()) {
          throw UsageError("one of --min-support or --min-support-frac is required");
        }
        config.threshold.relative = bench_threshold.fraction.has_value();
        config.threshold.absolute = bench_threshold.absolute.value_or(1);
        config.threshold.fraction = bench_threshold.fraction.value_or(0.0);
      }
      const auto report = bench::sweep(config);
      Output{bench_output, out}.write(bench::emit_report(
          report, format == "json" ? bench::ReportFormat::kJson : bench::ReportFormat::kCsv));
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}

}  // namespace arminer::cli
