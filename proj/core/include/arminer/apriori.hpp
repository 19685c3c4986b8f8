#pragma once

#include <set>
#include <vector>

#include "arminer/dataset.hpp"
#include "arminer/frequent.hpp"
#include "arminer/itemset.hpp"

namespace arminer {

// Minimum support (absolute count >= 1) and minimum confidence in [0, 1].
struct MiningParams {
  Count min_support = 1;
  double min_confidence = 0.0;

  // Throws ValidationError when out of range.
  void validate() const;
};

// Converts a relative support fraction in (0, 1] to ceil(fraction * n),
// floored at 1.
Count min_support_from_fraction(double fraction, std::size_t n);

// Candidate itemsets of one size, kept sorted and duplicate-free.
using CandidateSet = std::set<Itemset>;

// Bookkeeping for one levelwise run, used by the benchmark harness.
struct AprioriStats {
  Count candidates_counted = 0;   // itemsets whose support was counted against the db
  std::size_t levels = 0;         // number of non-empty frequent levels
  std::size_t peak_stored = 0;    // max over levels of (live candidates + stored frequent)
  std::size_t peak_bytes = 0;     // footprint estimate at that peak
};

// Level 1: the items whose count reaches `min_support`.
SupportMap threshold_singletons(const ItemCounts& counts, Count min_support);

// Prefix join: unions of two k-itemsets sharing their first k-1 items.
// Throws ContractViolation if the itemsets are not all of one size k >= 1.
CandidateSet join_candidates(const std::set<Itemset>& frequent_k);

// Keeps the candidates whose every k-subset is in `frequent_k`.
CandidateSet prune_candidates(const CandidateSet& candidates, const std::set<Itemset>& frequent_k);

// Support of each candidate by a scan over every transaction. Throws
// ContractViolation when a candidate references an item outside the catalog.
SupportMap count_support(const TransactionDb& db, const CandidateSet& candidates);

// Levelwise search: threshold singletons, then join, prune, count and
// threshold until a level comes back empty.
FrequentItemsets apriori_mine(const TransactionDb& db, Count min_support,
                              AprioriStats* stats = nullptr);

}  // namespace arminer
