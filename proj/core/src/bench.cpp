#include "arminer/bench.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <nlohmann/json.hpp>

#include "arminer/apriori.hpp"
#include "arminer/csv.hpp"
#include "arminer/error.hpp"
#include "arminer/fpgrowth.hpp"
#include "arminer/random.hpp"

namespace arminer::bench {
namespace {

using nlohmann::json;

constexpr std::string_view kCsvHeader =
    "axis,axis_value,algorithm,rep_count,wall_ns_median,mem_proxy_bytes,rss_peak_bytes_or_-1,"
    "n_frequent,work_counter\n";

std::int64_t peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return -1;
  return static_cast<std::int64_t>(usage.ru_maxrss) * 1024;  // Linux reports KiB
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

bool is_whole(double v) { return v >= 0.0 && std::floor(v) == v; }

SynthParams params_for(const SweepConfig& config, double value) {
  SynthParams p = config.base;
  const std::string shown = format_axis_value(value);
  switch (config.axis) {
    case SweepAxis::kMinSupport:
      if (!is_whole(value) || value < 1.0) {
        throw ValidationError("min_support value " + shown + " must be a whole count >= 1");
      }
      break;
    case SweepAxis::kNTransactions:
      if (!is_whole(value)) {
        throw ValidationError("n_transactions value " + shown + " must be a whole count");
      }
      p.n_transactions = static_cast<std::size_t>(value);
      break;
    case SweepAxis::kMeanLen:
      p.mean_len = value;
      break;
    case SweepAxis::kNItems:
      if (!is_whole(value)) {
        throw ValidationError("n_items value " + shown + " must be a whole count");
      }
      p.n_items = static_cast<std::size_t>(value);
      break;
  }
  try {
    p.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(to_string(config.axis)) + " value " + shown + ": " + e.what());
  }
  return p;
}

json threshold_json(const Threshold& t) {
  if (t.relative) return json{{"fraction", t.fraction}};
  return json{{"absolute", t.absolute}};
}

}  // namespace

void SynthParams::validate() const {
  if (n_items < 1) throw ValidationError("n_items must be at least 1");
  if (!(mean_len > 0.0)) throw ValidationError("mean_len must be positive");
  if (mean_len > static_cast<double>(n_items)) {
    throw ValidationError("mean_len must not exceed n_items");
  }
  if (!(skew >= 0.0)) throw ValidationError("skew must be non-negative");
}

TransactionDb generate_synthetic(const SynthParams& p) {
  p.validate();
  Rng rng(p.seed);

  const std::size_t width = std::to_string(p.n_items - 1).size();
  ItemCatalog catalog;
  for (std::size_t i = 0; i < p.n_items; ++i) {
    std::string digits = std::to_string(i);
    catalog.intern("i" + std::string(width - digits.size(), '0') + digits);
  }

  std::vector<double> weights(p.n_items);
  for (std::size_t i = 0; i < p.n_items; ++i) {
    weights[i] = std::pow(static_cast<double>(i + 1), -p.skew);
  }

  std::vector<Itemset> transactions;
  transactions.reserve(p.n_transactions);
  std::vector<double> remaining;
  for (std::size_t t = 0; t < p.n_transactions; ++t) {
    std::size_t len = 1 + static_cast<std::size_t>(rng.poisson(p.mean_len - 1.0));
    len = std::clamp<std::size_t>(len, 1, p.n_items);

    remaining = weights;
    double total = 0.0;
    for (double w : remaining) total += w;
    std::vector<ItemId> items;
    items.reserve(len);
    for (std::size_t k = 0; k < len; ++k) {
      const double target = rng.uniform01() * total;
      double acc = 0.0;
      std::size_t pick = p.n_items;
      std::size_t last_live = p.n_items;
      for (std::size_t i = 0; i < p.n_items; ++i) {
        if (remaining[i] == 0.0) continue;
        last_live = i;
        acc += remaining[i];
        if (target < acc) {
          pick = i;
          break;
        }
      }
      if (pick == p.n_items) pick = last_live;  // rounding at the top end
      total -= remaining[pick];
      remaining[pick] = 0.0;
      items.push_back(item_at(pick));
    }
    transactions.emplace_back(std::move(items));
  }
  return TransactionDb(std::move(catalog), std::move(transactions));
}

std::string_view to_string(Algorithm a) { return a == Algorithm::kApriori ? "apriori" : "fpgrowth"; }

Algorithm parse_algorithm(std::string_view text) {
  if (text == "apriori") return Algorithm::kApriori;
  if (text == "fpgrowth") return Algorithm::kFPGrowth;
  throw ValidationError("unknown algorithm '" + std::string(text) + "'");
}

TrialMeasurement run_trial(const TransactionDb& db, Count min_support, Algorithm algorithm) {
  TrialMeasurement m;
  m.algorithm = algorithm;
  const auto start = std::chrono::steady_clock::now();
  if (algorithm == Algorithm::kApriori) {
    AprioriStats stats;
    const auto freq = apriori_mine(db, min_support, &stats);
    m.n_frequent = freq.size();
    m.work_counter = stats.candidates_counted;
    m.mem_proxy_bytes = stats.peak_bytes;
  } else {
    FPGrowthStats stats;
    const auto freq = fpgrowth_mine(db, min_support, &stats);
    m.n_frequent = freq.size();
    m.work_counter = stats.nodes_created;
    m.mem_proxy_bytes = stats.peak_bytes;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  m.wall_ns = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(
             std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count()));
  m.rss_peak_bytes = peak_rss_bytes();
  return m;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kMinSupport: return "min_support";
    case SweepAxis::kNTransactions: return "n_transactions";
    case SweepAxis::kMeanLen: return "mean_len";
    case SweepAxis::kNItems: return "n_items";
  }
  return "?";
}

SweepAxis parse_axis(std::string_view text) {
  for (auto axis : {SweepAxis::kMinSupport, SweepAxis::kNTransactions, SweepAxis::kMeanLen,
                    SweepAxis::kNItems}) {
    if (text == to_string(axis)) return axis;
  }
  throw ValidationError("unknown axis '" + std::string(text) + "'");
}

Count Threshold::resolve(std::size_t n) const {
  return relative ? min_support_from_fraction(fraction, n) : absolute;
}

BenchReport sweep(const SweepConfig& config) {
  if (config.values.empty()) throw ValidationError("sweep needs at least one axis value");
  if (config.repetitions < 1) throw ValidationError("repetitions must be at least 1");

  std::vector<double> values = config.values;
  std::stable_sort(values.begin(), values.end());
  // Validate everything before spending time on trials.
  for (double v : values) params_for(config, v);

  BenchReport report;
  report.axis = config.axis;
  report.config = config;

  TransactionDb shared;
  if (config.axis == SweepAxis::kMinSupport) shared = generate_synthetic(config.base);

  for (double v : values) {
    const SynthParams p = params_for(config, v);
    TransactionDb local;
    if (config.axis != SweepAxis::kMinSupport) local = generate_synthetic(p);
    const TransactionDb& db = config.axis == SweepAxis::kMinSupport ? shared : local;
    const Count min_support = config.axis == SweepAxis::kMinSupport
                                  ? static_cast<Count>(v)
                                  : config.threshold.resolve(db.size());

    Count n_frequent = 0;
    for (Algorithm a : {Algorithm::kApriori, Algorithm::kFPGrowth}) {
      std::vector<std::uint64_t> times;
      TrialMeasurement last;
      for (std::size_t r = 0; r < config.repetitions; ++r) {
        last = run_trial(db, min_support, a);
        times.push_back(last.wall_ns);
      }
      std::sort(times.begin(), times.end());
      const std::size_t mid = times.size() / 2;
      last.wall_ns = times.size() % 2 ? times[mid] : (times[mid - 1] + times[mid]) / 2;
      if (a == Algorithm::kApriori) {
        n_frequent = last.n_frequent;
      } else if (last.n_frequent != n_frequent) {
        throw ContractViolation("apriori and fpgrowth disagree on the number of frequent itemsets");
      }
      report.rows.push_back(ReportRow{v, config.repetitions, last});
    }
  }
  return report;
}

std::string format_axis_value(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string emit_report(const BenchReport& report, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out(kCsvHeader);
    for (const auto& row : report.rows) {
      const auto& t = row.trial;
      out += csv::format_row({std::string(to_string(report.axis)), format_axis_value(row.axis_value),
                              std::string(to_string(t.algorithm)), std::to_string(row.rep_count),
                              std::to_string(t.wall_ns), std::to_string(t.mem_proxy_bytes),
                              std::to_string(t.rss_peak_bytes), std::to_string(t.n_frequent),
                              std::to_string(t.work_counter)});
    }
    return out;
  }

  const auto& c = report.config;
  json doc;
  doc["config"] = {
      {"axis", to_string(c.axis)},
      {"values", c.values},
      {"repetitions", c.repetitions},
      {"threshold", threshold_json(c.threshold)},
      {"base",
       {{"n_transactions", c.base.n_transactions},
        {"n_items", c.base.n_items},
        {"mean_len", c.base.mean_len},
        {"skew", c.base.skew},
        {"seed", c.base.seed}}},
  };
  doc["axis"] = to_string(report.axis);
  doc["rows"] = json::array();
  for (const auto& row : report.rows) {
    const auto& t = row.trial;
    doc["rows"].push_back({{"axis", to_string(report.axis)},
                           {"axis_value", row.axis_value},
                           {"algorithm", to_string(t.algorithm)},
                           {"rep_count", row.rep_count},
                           {"wall_ns_median", t.wall_ns},
                           {"mem_proxy_bytes", t.mem_proxy_bytes},
                           {"rss_peak_bytes_or_-1", t.rss_peak_bytes},
                           {"n_frequent", t.n_frequent},
                           {"work_counter", t.work_counter}});
  }
  return doc.dump(2) + "\n";
}

BenchReport parse_report_csv(std::string_view content) {
  const auto records = csv::parse(content);
  if (records.empty() || csv::format_row(records.front().fields) != kCsvHeader) {
    throw ParseError(1, "missing bench report header");
  }
  BenchReport report;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    const std::size_t line = records[r].line;
    if (f.size() != 9) throw ParseError(line, "expected 9 fields");
    const SweepAxis axis = parse_axis(f[0]);
    if (r == 1) report.axis = axis;
    if (axis != report.axis) throw ParseError(line, "mixed axes in one report");
    ReportRow row;
    row.axis_value = parse_number<double>(f[1], line, "axis_value");
    row.trial.algorithm = parse_algorithm(f[2]);
    row.rep_count = parse_number<std::size_t>(f[3], line, "rep_count");
    row.trial.wall_ns = parse_number<std::uint64_t>(f[4], line, "wall_ns_median");
    row.trial.mem_proxy_bytes = parse_number<std::uint64_t>(f[5], line, "mem_proxy_bytes");
    row.trial.rss_peak_bytes = parse_number<std::int64_t>(f[6], line, "rss_peak_bytes");
    row.trial.n_frequent = parse_number<Count>(f[7], line, "n_frequent");
    row.trial.work_counter = parse_number<Count>(f[8], line, "work_counter");
    report.rows.push_back(row);
  }
  report.config.axis = report.axis;
  return report;
}

BenchReport parse_report_json(std::string_view content) {
  BenchReport report;
  try {
    const json doc = json::parse(content);
    const json& c = doc.at("config");
    report.config.axis = parse_axis(c.at("axis").get<std::string>());
    report.config.values = c.at("values").get<std::vector<double>>();
    report.config.repetitions = c.at("repetitions").get<std::size_t>();
    const json& th = c.at("threshold");
    if (th.contains("fraction")) {
      report.config.threshold.relative = true;
      report.config.threshold.fraction = th.at("fraction").get<double>();
    } else {
      report.config.threshold.absolute = th.at("absolute").get<Count>();
    }
    const json& b = c.at("base");
    report.config.base.n_transactions = b.at("n_transactions").get<std::size_t>();
    report.config.base.n_items = b.at("n_items").get<std::size_t>();
    report.config.base.mean_len = b.at("mean_len").get<double>();
    report.config.base.skew = b.at("skew").get<double>();
    report.config.base.seed = b.at("seed").get<std::uint64_t>();
    report.axis = parse_axis(doc.at("axis").get<std::string>());
    for (const json& r : doc.at("rows")) {
      ReportRow row;
      row.axis_value = r.at("axis_value").get<double>();
      row.rep_count = r.at("rep_count").get<std::size_t>();
      row.trial.algorithm = parse_algorithm(r.at("algorithm").get<std::string>());
      row.trial.wall_ns = r.at("wall_ns_median").get<std::uint64_t>();
      row.trial.mem_proxy_bytes = r.at("mem_proxy_bytes").get<std::uint64_t>();
      row.trial.rss_peak_bytes = r.at("rss_peak_bytes_or_-1").get<std::int64_t>();
      row.trial.n_frequent = r.at("n_frequent").get<Count>();
      row.trial.work_counter = r.at("work_counter").get<Count>();
      report.rows.push_back(row);
    }
  } catch (const json::exception& e) {
    throw ParseError(1, std::string("bad bench report JSON: ") + e.what());
  }
  return report;
}

}  // namespace arminer::bench
