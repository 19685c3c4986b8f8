#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "arminer/dataset.hpp"
#include "arminer/itemset.hpp"

namespace arminer {

// Frequent itemsets with their absolute supports, and the transaction count
// of the database they were mined from.
struct FrequentItemsets {
  SupportMap support;
  Count n = 0;

  std::size_t size() const noexcept { return support.size(); }
  bool empty() const noexcept { return support.empty(); }

  std::optional<Count> find(const Itemset& s) const {
    if (auto it = support.find(s); it != support.end()) return it->second;
    return std::nullopt;
  }

  // Itemsets of exactly `k` items.
  std::vector<Itemset> level(std::size_t k) const;

  friend bool operator==(const FrequentItemsets&, const FrequentItemsets&) = default;
};

// (size, labels) ordering used by every itemset listing.
bool label_order_less(const ItemCatalog& catalog, const Itemset& a, const Itemset& b);

std::vector<std::pair<Itemset, Count>> sorted_by_labels(const SupportMap& support,
                                                        const ItemCatalog& catalog);

// Frequent-itemset CSV: header "itemset,support"; itemsets as '|'-joined
// display labels; rows in (size, labels) order.
std::string format_itemsets_csv(const FrequentItemsets& freq, const ItemCatalog& catalog);

// A parsed itemset,support file: the frequent-itemset CSV above, or a
// hand-built support fixture in the same format. A row whose itemset cell is
// empty records the support of the empty itemset, i.e. the transaction count.
struct SupportTable {
  ItemCatalog catalog;
  SupportMap support;
  std::optional<Count> n;

  // n when recorded, otherwise the largest stored support.
  FrequentItemsets to_frequent() const;
};

// Accepts an optional "itemset,support" (or "itemset,count") header. Repeated
// itemsets must agree on their count. Throws ParseError on malformed rows.
SupportTable parse_support_csv(std::string_view content);

}  // namespace arminer
