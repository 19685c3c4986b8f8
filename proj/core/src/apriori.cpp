#include "arminer/apriori.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "arminer/error.hpp"

namespace arminer {
namespace {

std::size_t itemset_footprint(std::size_t k) { return sizeof(Itemset) + k * sizeof(ItemId); }

}  // namespace

void MiningParams::validate() const {
  if (min_support < 1) {
    throw ValidationError("min_support must be at least 1");
  }
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) {
    throw ValidationError("min_confidence must lie in [0, 1]");
  }
}

Count min_support_from_fraction(double fraction, std::size_t n) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ValidationError("relative min support must lie in (0, 1]");
  }
  // Guard against 0.1 * 30 = 3.0000000000000004 rounding up to 4.
  const double scaled = fraction * static_cast<double>(n);
  const double nearest = std::round(scaled);
  const double value = std::abs(scaled - nearest) < 1e-9 ? nearest : std::ceil(scaled);
  return std::max<Count>(1, static_cast<Count>(value));
}

SupportMap threshold_singletons(const ItemCounts& counts, Count min_support) {
  SupportMap level;
  for (const auto& [id, count] : counts) {
    if (count >= min_support) level.emplace(Itemset{id}, count);
  }
  return level;
}

CandidateSet join_candidates(const std::set<Itemset>& frequent_k) {
  CandidateSet out;
  if (frequent_k.empty()) return out;
  const std::size_t k = frequent_k.begin()->size();
  for (const auto& s : frequent_k) {
    if (s.size() != k || k == 0) {
      throw ContractViolation("join_candidates needs itemsets of one size k >= 1");
    }
  }
  // std::set orders lexicographically, so itemsets sharing a (k-1)-prefix are
  // contiguous and sorted by their last item.
  for (auto a = frequent_k.begin(); a != frequent_k.end(); ++a) {
    for (auto b = std::next(a); b != frequent_k.end(); ++b) {
      if (!std::equal(a->begin(), a->begin() + static_cast<std::ptrdiff_t>(k - 1), b->begin())) {
        break;
      }
      std::vector<ItemId> items(a->begin(), a->end());
      items.push_back(b->back());
      out.insert(Itemset::from_sorted(std::move(items)));
    }
  }
  return out;
}

CandidateSet prune_candidates(const CandidateSet& candidates, const std::set<Itemset>& frequent_k) {
  CandidateSet out;
  for (const auto& c : candidates) {
    bool keep = true;
    for (std::size_t drop = 0; drop < c.size() && keep; ++drop) {
      keep = frequent_k.contains(c.without(drop));
    }
    if (keep) out.insert(c);
  }
  return out;
}

namespace {

// Counts candidates that all have k >= 1 items, in the catalog's range.
void count_uniform(const TransactionDb& db, const std::vector<const Itemset*>& candidates,
                   std::size_t k, SupportMap& out) {
  const std::size_t universe = db.catalog().size();

  // Candidates laid out contiguously, k items each. The set is sorted, so the
  // candidates starting with a given item form one contiguous block.
  const std::size_t m = candidates.size();
  std::vector<std::uint32_t> flat;
  flat.reserve(m * k);
  std::vector<std::size_t> block_begin(universe + 1, m);
  std::size_t pos = 0;
  for (const Itemset* c : candidates) {
    const std::uint32_t first = index_of((*c)[0]);
    if (block_begin[first] == m) block_begin[first] = pos;
    for (ItemId id : *c) flat.push_back(index_of(id));
    ++pos;
  }
  for (std::size_t i = universe; i-- > 0;) {
    if (block_begin[i] == m) block_begin[i] = block_begin[i + 1];
  }
  std::vector<Count> tally(m, 0);

  // Per transaction, mark its items and test each candidate whose first item
  // is present.
  std::vector<char> present(universe, 0);
  for (const auto& t : db.transactions()) {
    if (t.size() < k) continue;
    for (ItemId id : t) present[index_of(id)] = 1;
    for (ItemId first : t) {
      const std::size_t b = block_begin[index_of(first)];
      const std::size_t e = block_begin[index_of(first) + 1];
      for (std::size_t c = b; c < e; ++c) {
        const std::uint32_t* items = flat.data() + c * k;
        std::size_t j = 1;
        while (j < k && present[items[j]]) ++j;
        if (j == k) ++tally[c];
      }
    }
    for (ItemId id : t) present[index_of(id)] = 0;
  }

  for (std::size_t c = 0; c < m; ++c) out.emplace(*candidates[c], tally[c]);
}

}  // namespace

SupportMap count_support(const TransactionDb& db, const CandidateSet& candidates) {
  const std::size_t universe = db.catalog().size();
  // Candidates grouped by size, each group kept in set order.
  std::map<std::size_t, std::vector<const Itemset*>> by_size;
  for (const auto& c : candidates) {
    if (c.size() == 0) throw ContractViolation("count_support needs nonempty candidates");
    if (index_of(c.back()) >= universe) {
      throw ContractViolation("candidate references item " + std::to_string(index_of(c.back())) +
                              " outside the catalog");
    }
    by_size[c.size()].push_back(&c);
  }
  SupportMap out;
  for (const auto& [k, group] : by_size) count_uniform(db, group, k, out);
  return out;
}

FrequentItemsets apriori_mine(const TransactionDb& db, Count min_support, AprioriStats* stats) {
  if (min_support < 1) {
    throw ValidationError("min_support must be at least 1");
  }
  FrequentItemsets result;
  result.n = db.size();
  AprioriStats local;

  const ItemCounts singles = item_frequencies(db);
  local.candidates_counted += singles.size();
  SupportMap level = threshold_singletons(singles, min_support);
  std::size_t stored_bytes = 0;
  auto note_peak = [&](std::size_t live_items, std::size_t live_bytes) {
    const std::size_t total = live_items + result.support.size();
    if (total > local.peak_stored) {
      local.peak_stored = total;
      local.peak_bytes = live_bytes + stored_bytes;
    }
  };
  note_peak(singles.size(), singles.size() * itemset_footprint(1));

  std::size_t k = 1;
  while (!level.empty()) {
    ++local.levels;
    std::set<Itemset> frequent_k;
    for (auto& [s, count] : level) {
      frequent_k.insert(s);
      result.support.emplace(s, count);
    }
    stored_bytes += level.size() * (itemset_footprint(k) + sizeof(Count));

    CandidateSet candidates = prune_candidates(join_candidates(frequent_k), frequent_k);
    ++k;
    local.candidates_counted += candidates.size();
    note_peak(candidates.size(), candidates.size() * itemset_footprint(k));

    SupportMap next;
    for (auto& [s, count] : count_support(db, candidates)) {
      if (count >= min_support) next.emplace_hint(next.end(), s, count);
    }
    level = std::move(next);
  }

  if (stats) *stats = local;
  return result;
}

}  // namespace arminer
