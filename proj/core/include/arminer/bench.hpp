#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "arminer/dataset.hpp"
#include "arminer/itemset.hpp"

namespace arminer::bench {

// Synthetic transaction generator parameters.
struct SynthParams {
  std::size_t n_transactions = 1000;
  std::size_t n_items = 50;
  double mean_len = 5.0;
  double skew = 1.0;  // Zipf exponent over item popularity ranks
  std::uint64_t seed = 42;

  // Throws ValidationError unless n_items >= 1, 0 < mean_len <= n_items and
  // skew >= 0.
  void validate() const;

  friend bool operator==(const SynthParams&, const SynthParams&) = default;
};

// Deterministic given the seed, on every platform. The engine is
// std::mt19937_64; per transaction the length is 1 + Poisson(mean_len - 1)
// clamped to [1, n_items], and items are drawn without replacement with
// weight 1 / (rank + 1)^skew. Item labels are "i" + zero-padded rank, so
// label order equals popularity rank.
TransactionDb generate_synthetic(const SynthParams& p);

enum class Algorithm { kApriori, kFPGrowth };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view text);

struct TrialMeasurement {
  Algorithm algorithm = Algorithm::kApriori;
  std::uint64_t wall_ns = 0;
  // Peak bytes of algorithm-owned structures, estimated from structure
  // counts: stored itemsets (Apriori) or live tree nodes (FP-Growth).
  std::uint64_t mem_proxy_bytes = 0;
  // Process peak RSS after the trial, or -1 where unavailable.
  std::int64_t rss_peak_bytes = -1;
  Count n_frequent = 0;
  // Candidates counted (Apriori) or non-root nodes created across the main
  // and every conditional tree (FP-Growth).
  Count work_counter = 0;

  friend bool operator==(const TrialMeasurement&, const TrialMeasurement&) = default;
};

// Runs one miner once; the mined itemsets are discarded after counting.
TrialMeasurement run_trial(const TransactionDb& db, Count min_support, Algorithm algorithm);

enum class SweepAxis { kMinSupport, kNTransactions, kMeanLen, kNItems };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view text);

// Absolute count, or a fraction of n resolved per dataset as ceil(f * n).
struct Threshold {
  bool relative = false;
  Count absolute = 1;
  double fraction = 0.0;

  Count resolve(std::size_t n) const;

  friend bool operator==(const Threshold&, const Threshold&) = default;
};

struct SweepConfig {
  SynthParams base;
  Threshold threshold;  // ignored on the min_support axis
  SweepAxis axis = SweepAxis::kMinSupport;
  std::vector<double> values;  // absolute counts on the min_support axis
  std::size_t repetitions = 5;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct ReportRow {
  double axis_value = 0.0;
  std::size_t rep_count = 0;
  TrialMeasurement trial;  // wall_ns holds the median over rep_count runs

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct BenchReport {
  SweepAxis axis = SweepAxis::kMinSupport;
  SweepConfig config;
  std::vector<ReportRow> rows;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

// For each axis value (ascending): build the dataset, run both miners
// `repetitions` times, record the median wall time. Throws ValidationError
// naming any axis value that yields invalid parameters, and ContractViolation
// if the two miners disagree on the number of frequent itemsets.
BenchReport sweep(const SweepConfig& config);

enum class ReportFormat { kCsv, kJson };

std::string emit_report(const BenchReport& report, ReportFormat format);

// CSV carries only rows and the axis; the JSON form also echoes the config.
BenchReport parse_report_csv(std::string_view content);
BenchReport parse_report_json(std::string_view content);

// Shortest round-trip decimal for axis values: 1000, 5.5.
std::string format_axis_value(double value);

}  // namespace arminer::bench
