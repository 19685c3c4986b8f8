// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arminer/apriori.hpp"
#include "arminer/bench.hpp"
#include "arminer/csv.hpp"
#include "arminer/error.hpp"
#include "arminer/fpgrowth.hpp"
#include "arminer/io.hpp"
#include "arminer/oracle.hpp"
#include "arminer/random.hpp"
#include "arminer/rules.hpp"
#include "cli.hpp"

namespace {

using namespace arminer;
using Clock = std::chrono::steady_clock;

std::string fixture(const std::string& name) {
  return io::read_text_file(std::string(ARMINER_FIXTURE_DIR) + "/" + name);
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!pass) return;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v, int precision = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(precision);
  s << v;
  return s.str();
}

void check_time(Outcome& o, double elapsed_ms, double limit_ms) {
  o.note(fmt(elapsed_ms) + " ms");
  if (elapsed_ms >= limit_ms) {
    o.fail("took " + fmt(elapsed_ms) + " ms, limit " + fmt(limit_ms, 0) + " ms");
  }
}

const AssociationRule* find_rule(const std::vector<AssociationRule>& rules,
                                 const ItemCatalog& catalog, const std::vector<std::string>& lhs,
                                 const std::vector<std::string>& rhs, Outcome& o) {
  auto to_set = [&](const std::vector<std::string>& labels) -> std::optional<Itemset> {
    std::vector<ItemId> ids;
    for (const auto& l : labels) {
      const auto id = catalog.find(l);
      if (!id) return std::nullopt;
      ids.push_back(*id);
    }
    return Itemset(std::move(ids));
  };
  const auto a = to_set(lhs);
  const auto b = to_set(rhs);
  if (a && b) {
    for (const auto& r : rules) {
      if (r.antecedent == *a && r.consequent == *b) return &r;
    }
  }
  o.fail("rule " + lhs.front() + " -> " + rhs.front() + " not generated");
  return nullptr;
}

struct PrintedRule {
  std::vector<std::string> antecedent;
  std::vector<std::string> consequent;
  double confidence;
  Count expected_num;
  Count expected_den;
};

void check_rule(Outcome& o, const std::vector<AssociationRule>& rules, const ItemCatalog& catalog,
                const PrintedRule& p) {
  const auto* r = find_rule(rules, catalog, p.antecedent, p.consequent, o);
  if (!r) return;
  if (std::fabs(r->confidence.value - p.confidence) > 1e-12) {
    o.fail(p.antecedent.front() + " -> " + p.consequent.front() + " confidence " +
           format_confidence(r->confidence.value) + ", printed " + format_confidence(p.confidence));
  }
  if (r->confidence.numerator != p.expected_num || r->confidence.denominator != p.expected_den) {
    o.fail(p.antecedent.front() + " -> " + p.consequent.front() + " counts " +
           std::to_string(r->confidence.numerator) + "/" + std::to_string(r->confidence.denominator));
  }
  if (r->status != RuleStatus::kAccepted) {
    o.fail(p.antecedent.front() + " -> " + p.consequent.front() + " not Accepted");
  }
}

// Survey attribute counts thresholded at 200 give exactly the 12 frequent
// singletons of the support table.
Outcome criterion1() {
  Outcome o;
  const std::string table = fixture("attribute_counts.csv");
  const auto start = Clock::now();
  const SupportTable counts = parse_support_csv(table);
  ItemCounts singles;
  for (const auto& [set, n] : counts.support) singles[set[0]] = n;
  const SupportMap frequent = threshold_singletons(singles, 200);
  const double elapsed = ms_since(start);

  const std::set<std::string> expected = {
      "Anxiety", "Intense fear", "Ongoing fears", "Depressions",
      "Sleep disturbances or Nightmares", "Disrupted work life",
      "Face difficulties with communication", "intimacy and enjoyment of social activities",
      "Degradation of performances in study or work", "Under 18", "18-24", "Don't remember"};
  std::set<std::string> got;
  for (const auto& [set, n] : frequent) got.insert(counts.catalog.label(set[0]));
  if (counts.support.size() != 17) o.fail("expected 17 input attributes");
  if (got != expected) o.fail("frequent set differs (" + std::to_string(got.size()) + " items)");
  o.note(std::to_string(got.size()) + " of " + std::to_string(counts.support.size()) + " kept");
  check_time(o, elapsed, 1.0);
  return o;
}

// Five rules reproduced from the printed 1/2/3-itemset support counts.
Outcome criterion2() {
  Outcome o;
  const std::string table = fixture("apriori_support.csv");
  const auto start = Clock::now();
  const SupportTable support = parse_support_csv(table);
  RuleOptions options;
  options.min_confidence = MinConfidence::parse("0.40");
  options.include_rejected = true;
  options.closure = ClosurePolicy::kSkipUnknown;
  std::size_t skipped = 0;
  const auto rules = generate_rules(support.to_frequent(), support.catalog, options, &skipped);
  const double elapsed = ms_since(start);

  const std::vector<PrintedRule> printed = {
      {{"Ongoing fears"}, {"Under 18"}, 0.6918604651162791, 595, 860},
      {{"Intense fear"}, {"Anxiety"}, 0.6763754045307443, 418, 618},
      {{"Anxiety"}, {"Under 18"}, 0.6028301886792453, 639, 1060},
      {{"Ongoing fears"}, {"Anxiety"}, 0.5883720930232558, 506, 860},
      {{"intimacy and enjoyment of social activities"},
       {"Face difficulties with communication"}, 1.0, 287, 287},
  };
  for (const auto& p : printed) check_rule(o, rules, support.catalog, p);
  o.note("5 rules within 1e-12, " + std::to_string(skipped) + " candidates without antecedent support");
  check_time(o, elapsed, 10.0);
  return o;
}

// Every confidence in the FP-Growth rule table, from the support map its
// counts imply.
Outcome criterion3() {
  Outcome o;
  const std::string table = fixture("fpgrowth_support.csv");

  const std::vector<PrintedRule> printed = {
      {{"Anxiety", "Depressions"}, {"Under 18"}, 0.6470588235294118, 231, 357},
      {{"Anxiety", "Under 18"}, {"Depressions"}, 0.5789473684210527, 231, 399},
      {{"Depressions", "Under 18"}, {"Anxiety"}, 0.6111111111111112, 231, 378},
      {{"Anxiety"}, {"Under 18"}, 0.5428571428571428, 399, 735},
      {{"Under 18"}, {"Anxiety"}, 0.40425531914893614, 399, 987},
      {{"Intense fear"}, {"Anxiety"}, 0.5263157894736842, 210, 399},
      {{"Intense fear"}, {"Under 18"}, 0.631578947368421, 252, 399},
      {{"Depressions"}, {"Under 18"}, 0.5806451612903226, 378, 651},
      {{"Anxiety"}, {"Depressions"}, 0.4857142857142857, 357, 735},
      {{"Depressions"}, {"Anxiety"}, 0.5483870967741935, 357, 651},
      {{"Face difficulties with communication"}, {"Intimacy and enjoyment of social activities"},
       0.7142857142857143, 210, 294},
      {{"Ongoing fears"}, {"Under 18"}, 0.5185185185185185, 294, 567},
      {{"Ongoing fears"}, {"Anxiety"}, 0.4074074074074074, 231, 567},
  };

  const auto start = Clock::now();
  const SupportTable support = parse_support_csv(table);
  RuleOptions options;
  options.min_confidence = MinConfidence::parse("0.40");
  const auto rules = generate_rules(support.to_frequent(), support.catalog, options);
  const double elapsed = ms_since(start);

  // The union counts in the fixture must be what the printed confidences
  // and antecedent supports imply.
  for (const auto& p : printed) {
    std::vector<ItemId> lhs;
    std::vector<ItemId> all;
    bool known = true;
    for (const auto& l : p.antecedent) {
      const auto id = support.catalog.find(l);
      if (!id) known = false; else lhs.push_back(*id);
    }
    all = lhs;
    for (const auto& l : p.consequent) {
      const auto id = support.catalog.find(l);
      if (!id) known = false; else all.push_back(*id);
    }
    if (!known) {
      o.fail("unknown label in " + p.antecedent.front());
      continue;
    }
    const auto ante = support.support.find(Itemset(lhs));
    const auto whole = support.support.find(Itemset(all));
    if (ante == support.support.end() || whole == support.support.end()) {
      o.fail("fixture lacks counts for " + p.antecedent.front());
      continue;
    }
    const double implied = p.confidence * static_cast<double>(ante->second);
    const double rounded = std::round(implied);
    if (std::fabs(implied - rounded) > 1e-6) {
      o.fail(p.antecedent.front() + " implied count " + fmt(implied, 6) + " is not integral");
    } else if (static_cast<Count>(rounded) != whole->second) {
      o.fail(p.antecedent.front() + " implied count " + fmt(rounded, 0) + " but fixture has " +
             std::to_string(whole->second));
    }
  }
  for (const auto& p : printed) check_rule(o, rules, support.catalog, p);
  o.note(std::to_string(printed.size()) + " confidences within 1e-12, counts integral");
  check_time(o, elapsed, 10.0);
  return o;
}

// Seeded random databases; all three miners and both rule generators agree.
Outcome criterion4() {
  Outcome o;
  constexpr std::size_t kCases = 1000;
  oracle::RandomDbParams params;
  params.max_items = 12;
  params.max_transactions = 200;
  Rng rng(20240601);
  const auto start = Clock::now();
  std::size_t checked = 0;
  for (; checked < kCases; ++checked) {
    const auto c = oracle::random_case(rng, params);
    if (const auto mismatch = oracle::find_mismatch(c)) {
      o.fail("case " + std::to_string(checked) + ": " + *mismatch);
      break;
    }
  }
  const double elapsed = ms_since(start);
  o.note(std::to_string(checked) + " cases agree");
  check_time(o, elapsed, 60'000.0);
  return o;
}

// Hand-traced db5 values.
Outcome criterion5() {
  Outcome o;
  const std::string content = fixture("db5.csv");
  const auto start = Clock::now();
  const TransactionDb db = parse_transactions(content);
  const auto a = apriori_mine(db, 3);
  const auto f = fpgrowth_mine(db, 3);
  const FPTree tree = build_fptree(db, 3);
  const auto& c = db.catalog();
  const ConditionalPatternBase base = conditional_pattern_base(tree, c.at("c"));
  const std::string dump = dump_tree(tree, c);
  const double elapsed = ms_since(start);

  const SupportMap expected = {
      {Itemset{c.at("a")}, 4},           {Itemset{c.at("b")}, 4},
      {Itemset{c.at("c")}, 4},           {Itemset{c.at("a"), c.at("b")}, 3},
      {Itemset{c.at("a"), c.at("c")}, 3}, {Itemset{c.at("b"), c.at("c")}, 3},
  };
  if (a.support != expected) o.fail("apriori itemsets differ");
  if (f.support != expected) o.fail("fpgrowth itemsets differ");
  if (tree.node_count() != 6) o.fail("tree has " + std::to_string(tree.node_count()) + " nodes");
  if (dump != "a:4\n  b:3\n    c:2\n  c:1\nb:1\n  c:1\n") o.fail("tree shape differs");
  const ConditionalPatternBase expected_base{{
      {{c.at("a"), c.at("b")}, 2},
      {{c.at("a")}, 1},
      {{c.at("b")}, 1},
  }};
  if (base != expected_base) o.fail("conditional pattern base of c differs");
  o.note("6 itemsets, 6 nodes, c-base [(a,b):2,(a):1,(b):1]");
  check_time(o, elapsed, 1.0);
  return o;
}

bench::SynthParams dense_point(double mean_len) {
  bench::SynthParams p;
  p.n_transactions = 20000;
  p.n_items = 30;
  p.mean_len = mean_len;
  p.skew = 0.5;
  p.seed = 42;
  return p;
}

std::uint64_t median_wall(const TransactionDb& db, Count s, bench::Algorithm algo, int reps,
                          bench::TrialMeasurement* last) {
  std::vector<std::uint64_t> walls;
  for (int i = 0; i < reps; ++i) {
    *last = bench::run_trial(db, s, algo);
    walls.push_back(last->wall_ns);
  }
  std::sort(walls.begin(), walls.end());
  return walls[walls.size() / 2];
}

// Dense synthetic operating point: FP-Growth is not slower, Apriori's work
// is superlinear in mean_len, the FP-tree stays within the item volume.
Outcome criterion6() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<double> lens = {6, 9, 12};
  std::vector<double> apriori_work;
  std::vector<double> fp_all_trees;
  std::vector<double> tree_nodes;
  std::vector<double> volumes;
  for (double len : lens) {
    const TransactionDb db = bench::generate_synthetic(dense_point(len));
    const Count s = bench::Threshold{true, 1, 0.01}.resolve(db.size());
    const FPTree tree = build_fptree(db, s);
    tree_nodes.push_back(static_cast<double>(tree.node_count()));
    volumes.push_back(static_cast<double>(db.item_volume()));

    const int reps = len == 12 ? 5 : 1;
    bench::TrialMeasurement a;
    bench::TrialMeasurement f;
    const auto a_med = median_wall(db, s, bench::Algorithm::kApriori, reps, &a);
    const auto f_med = median_wall(db, s, bench::Algorithm::kFPGrowth, reps, &f);
    if (a.n_frequent != f.n_frequent) o.fail("miners disagree at mean_len " + fmt(len, 0));
    apriori_work.push_back(static_cast<double>(a.work_counter));
    fp_all_trees.push_back(static_cast<double>(f.work_counter));
    std::cout << "  mean_len " << len << ": volume " << db.item_volume() << ", n_frequent "
              << a.n_frequent << ", apriori work " << a.work_counter << " (" << fmt(a_med / 1e6, 1)
              << " ms), fp tree nodes " << tree.node_count() << ", fp nodes over all trees "
              << f.work_counter << " (" << fmt(f_med / 1e6, 1) << " ms)\n";
    if (len == 12) {
      if (f_med > a_med) {
        o.fail("fpgrowth median " + fmt(f_med / 1e6, 1) + " ms > apriori " + fmt(a_med / 1e6, 1) +
               " ms");
      } else {
        o.note("median fpgrowth " + fmt(f_med / 1e6, 0) + " ms <= apriori " + fmt(a_med / 1e6, 0) +
               " ms");
      }
    }
  }

  // Superlinear: work per unit of mean_len rises at every step.
  for (std::size_t i = 1; i < lens.size(); ++i) {
    if (apriori_work[i] / lens[i] <= apriori_work[i - 1] / lens[i - 1]) {
      o.fail("apriori work not superlinear between mean_len " + fmt(lens[i - 1], 0) + " and " +
             fmt(lens[i], 0));
    }
  }
  // At most linear in volume: never more nodes than item occurrences, and
  // between consecutive points the node count grows by no more than the
  // volume does (slope <= 1).
  for (std::size_t i = 0; i < lens.size(); ++i) {
    if (tree_nodes[i] > volumes[i]) o.fail("fp tree exceeds item volume");
    if (i > 0 && tree_nodes[i] - tree_nodes[i - 1] > volumes[i] - volumes[i - 1]) {
      o.fail("fp tree grew faster than item volume at mean_len " + fmt(lens[i], 0));
    }
  }
  o.note("apriori work x" + fmt(apriori_work[1] / apriori_work[0], 1) + ", x" +
         fmt(apriori_work[2] / apriori_work[1], 1) + " for mean_len x1.5, x1.33");
  o.note("fp tree slope vs volume " +
         fmt((tree_nodes[1] - tree_nodes[0]) / (volumes[1] - volumes[0])) + ", " +
         fmt((tree_nodes[2] - tree_nodes[1]) / (volumes[2] - volumes[1])));
  check_time(o, ms_since(start), 300'000.0);
  return o;
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str() + err.str()};
}

// Drops the wall_ns and rss columns from a bench CSV.
std::string strip_timing(const std::string& report) {
  std::string result;
  for (const auto& record : csv::parse(report)) {
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < record.fields.size(); ++i) {
      if (i != 4 && i != 6) kept.push_back(record.fields[i]);
    }
    result += csv::format_row(kept);
  }
  return result;
}

// Two runs with the same inputs and seeds give byte-identical outputs.
Outcome criterion7() {
  Outcome o;
  const std::string dir = ARMINER_FIXTURE_DIR;
  const std::vector<std::vector<std::string>> commands = {
      {"mine", dir + "/db5.csv", "--min-support", "2", "--algorithm", "apriori"},
      {"mine", dir + "/db5.csv", "--min-support", "2", "--algorithm", "fpgrowth"},
      {"rules", dir + "/db5.csv", "--min-support", "2", "--min-confidence", "0.5",
       "--include-rejected"},
      {"rules", "--support-fixture", dir + "/apriori_support.csv", "--min-confidence", "0.40",
       "--include-rejected"},
      {"rules", "--support-fixture", dir + "/fpgrowth_support.csv", "--min-confidence", "0.40"},
      {"recode", dir + "/survey_sample.csv"},
      {"check", "--seed", "9", "--cases", "50"},
  };
  std::size_t compared = 0;
  for (const auto& args : commands) {
    const auto first = cli_run(args);
    const auto second = cli_run(args);
    if (first.code != 0) o.fail(args[0] + " exited " + std::to_string(first.code));
    if (first.out != second.out || first.code != second.code) o.fail(args[0] + " output differs");
    ++compared;
  }

  bench::SynthParams p;
  p.n_transactions = 3000;
  p.n_items = 25;
  p.mean_len = 6;
  p.seed = 7;
  const TransactionDb db1 = bench::generate_synthetic(p);
  const TransactionDb db2 = bench::generate_synthetic(p);
  const std::string text = write_transactions(db1);
  if (text != write_transactions(db2)) o.fail("synthetic db differs");
  ++compared;
  const Count s = 60;
  if (format_itemsets_csv(apriori_mine(db1, s), db1.catalog()) !=
      format_itemsets_csv(fpgrowth_mine(db2, s), db2.catalog())) {
    o.fail("synthetic itemset CSVs differ");
  }
  ++compared;

  const std::vector<std::string> bench_args = {
      "bench", "--transactions", "2000", "--items", "20", "--mean-len", "5", "--seed", "3",
      "--axis", "min_support", "--values", "20,40,80", "--reps", "2"};
  const auto r1 = cli_run(bench_args);
  const auto r2 = cli_run(bench_args);
  if (r1.code != 0) o.fail("bench exited " + std::to_string(r1.code));
  if (strip_timing(r1.out) != strip_timing(r2.out)) o.fail("bench non-timing columns differ");
  ++compared;

  o.note(std::to_string(compared) + " outputs byte-identical (wall_ns and rss excluded)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"attribute thresholding", criterion1},
      {"support-table rule reproduction", criterion2},
      {"fp-growth rule table reproduction", criterion3},
      {"cross-algorithm equivalence", criterion4},
      {"db5 golden trace", criterion5},
      {"dense-point performance ordering and growth", criterion6},
      {"determinism", criterion7},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "AC" << (i + 1) << " " << criteria[i].first
              << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
