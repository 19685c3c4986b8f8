#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arminer/dataset.hpp"
#include "arminer/frequent.hpp"
#include "arminer/itemset.hpp"

namespace arminer {

using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();

// Nodes live in an arena owned by the tree; links are arena indices. The root
// is node 0 and is the only node without a parent.
struct FPNode {
  ItemId item{};
  Count count = 0;
  NodeIndex parent = kNoNode;
  NodeIndex next_same_item = kNoNode;
  std::vector<std::pair<ItemId, NodeIndex>> children;  // sorted by ItemId

  bool is_root() const noexcept { return parent == kNoNode; }
};

struct HeaderEntry {
  ItemId item{};
  Count total = 0;
  NodeIndex head = kNoNode;  // first node of the node-link chain
  NodeIndex tail = kNoNode;  // newest node; insertions append here
};

// Frequent items ordered by descending total support, ties by ascending
// display label, each with the head of its node-link chain.
class HeaderTable {
 public:
  HeaderTable() = default;

  // Keeps the items whose total reaches `min_support`.
  HeaderTable(const ItemCounts& totals, Count min_support, const ItemCatalog& catalog);

  std::span<const HeaderEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const HeaderEntry* find(ItemId item) const;

  // Position of `item` in the header order, or npos for items not kept.
  std::size_t rank(ItemId item) const;

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  friend class FPTree;

  std::vector<HeaderEntry> entries_;
  std::unordered_map<std::uint32_t, std::size_t> rank_;
};

class FPTree {
 public:
  // An empty tree: just the root, no header entries.
  FPTree();
  explicit FPTree(HeaderTable header);

  // Inserts one ordered path, sharing existing prefixes. Every item must be
  // in the header.
  void insert(std::span<const ItemId> ordered_items, Count count);

  const HeaderTable& header() const noexcept { return header_; }
  const FPNode& node(NodeIndex i) const { return nodes_.at(i); }
  const FPNode& root() const { return nodes_.front(); }
  static constexpr NodeIndex root_index() noexcept { return 0; }

  // Non-root nodes.
  std::size_t node_count() const noexcept { return nodes_.size() - 1; }

  // Nodes of `item` in node-link order (oldest first).
  std::vector<NodeIndex> chain(ItemId item) const;

 private:
  std::vector<FPNode> nodes_;
  HeaderTable header_;
};

// One prefix path (root -> leaf order, excluding the conditioning item) with
// the count of the node it leads to.
struct PrefixPath {
  std::vector<ItemId> items;
  Count count = 0;

  friend bool operator==(const PrefixPath&, const PrefixPath&) = default;
};

struct ConditionalPatternBase {
  std::vector<PrefixPath> paths;

  friend bool operator==(const ConditionalPatternBase&, const ConditionalPatternBase&) = default;
};

struct FPGrowthStats {
  Count nodes_created = 0;      // non-root nodes over the main and all conditional trees
  Count trees_built = 0;
  std::size_t peak_live_nodes = 0;  // max nodes alive at once across the recursion stack
  std::size_t peak_bytes = 0;
};

// Items of `t` reaching `min_support`, by descending count then ascending
// display label.
std::vector<ItemId> order_transaction(const Itemset& t, const ItemCounts& counts,
                                      Count min_support, const ItemCatalog& catalog);

FPTree build_fptree(const TransactionDb& db, Count min_support);

// Throws LookupError when `item` has no header entry.
ConditionalPatternBase conditional_pattern_base(const FPTree& tree, ItemId item);

FPTree build_conditional_tree(const ConditionalPatternBase& base, Count min_support,
                              const ItemCatalog& catalog);

FrequentItemsets fpgrowth_mine(const TransactionDb& db, Count min_support,
                               FPGrowthStats* stats = nullptr);

// Indented text, one node per line as label:count, children sorted by label.
std::string dump_tree(const FPTree& tree, const ItemCatalog& catalog);

}  // namespace arminer
