#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arminer/apriori.hpp"
#include "arminer/dataset.hpp"
#include "arminer/frequent.hpp"
#include "arminer/random.hpp"
#include "arminer/rules.hpp"

namespace arminer::oracle {

// Exhaustive enumeration refuses item universes larger than this.
inline constexpr std::size_t kMaxUniverse = 20;

// Every nonempty subset of the catalog, counted by a full scan. Throws
// BoundExceeded for catalogs over kMaxUniverse items.
FrequentItemsets brute_force_frequent(const TransactionDb& db, Count min_support);

// Rules over brute_force_frequent with every support recounted from the raw
// transactions rather than read from the frequent map.
std::vector<AssociationRule> brute_force_rules(const TransactionDb& db, Count min_support,
                                               const MinConfidence& min_confidence,
                                               bool include_rejected);

using Miner = std::function<FrequentItemsets(const TransactionDb&, Count)>;

struct EquivalenceCase {
  TransactionDb db;
  Count min_support = 1;
  MinConfidence min_confidence;
};

// Compares apriori, fpgrowth, and rule generation against the oracle.
// Returns a description of the first disagreement, if any. The miners are
// injectable so the checker itself can be tested.
std::optional<std::string> find_mismatch(const EquivalenceCase& c, const Miner& apriori,
                                         const Miner& fpgrowth);
std::optional<std::string> find_mismatch(const EquivalenceCase& c);

// Greedily drops transactions, then single items, while `still_fails` keeps
// returning true. The catalog is compacted to the items still used.
EquivalenceCase minimize(EquivalenceCase c,
                         const std::function<bool(const EquivalenceCase&)>& still_fails);

struct RandomDbParams {
  std::size_t max_items = 12;
  std::size_t max_transactions = 200;
};

// Random small db plus random thresholds, deterministic in the Rng state.
EquivalenceCase random_case(Rng& rng, const RandomDbParams& params);

}  // namespace arminer::oracle
