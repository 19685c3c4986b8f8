#include "arminer/fpgrowth.hpp"

#include <algorithm>
#include <functional>

#include "arminer/error.hpp"

namespace arminer {
namespace {

// Sorts `items` into header order; drops items the header does not keep.
std::vector<ItemId> order_by_header(std::span<const ItemId> items, const HeaderTable& header) {
  std::vector<std::pair<std::size_t, ItemId>> ranked;
  ranked.reserve(items.size());
  for (ItemId id : items) {
    const std::size_t r = header.rank(id);
    if (r != HeaderTable::npos) ranked.emplace_back(r, id);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<ItemId> out;
  out.reserve(ranked.size());
  for (const auto& [r, id] : ranked) out.push_back(id);
  return out;
}

class Miner {
 public:
  Miner(const ItemCatalog& catalog, Count min_support, FrequentItemsets& out, FPGrowthStats& stats)
      : catalog_(catalog), min_support_(min_support), out_(out), stats_(stats) {}

  void note_tree(const FPTree& tree) {
    stats_.nodes_created += tree.node_count();
    ++stats_.trees_built;
    live_nodes_ += tree.node_count() + 1;
    stats_.peak_live_nodes = std::max(stats_.peak_live_nodes, live_nodes_);
  }

  void release_tree(const FPTree& tree) { live_nodes_ -= tree.node_count() + 1; }

  // Header processed in ascending support, ties by descending label: the
  // reverse of header order.
  void mine(const FPTree& tree, const Itemset& suffix) {
    const auto entries = tree.header().entries();
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
      Itemset pattern = suffix.with(it->item);
      out_.support.emplace(pattern, it->total);

      FPTree conditional =
          build_conditional_tree(conditional_pattern_base(tree, it->item), min_support_, catalog_);
      note_tree(conditional);
      if (!conditional.header().empty()) {
        mine(conditional, pattern);
      }
      release_tree(conditional);
    }
  }

 private:
  const ItemCatalog& catalog_;
  Count min_support_;
  FrequentItemsets& out_;
  FPGrowthStats& stats_;
  std::size_t live_nodes_ = 0;
};

}  // namespace

HeaderTable::HeaderTable(const ItemCounts& totals, Count min_support, const ItemCatalog& catalog) {
  for (const auto& [id, total] : totals) {
    if (total >= min_support) entries_.push_back(HeaderEntry{id, total, kNoNode, kNoNode});
  }
  std::sort(entries_.begin(), entries_.end(), [&](const HeaderEntry& a, const HeaderEntry& b) {
    if (a.total != b.total) return a.total > b.total;
    return catalog.label_less(a.item, b.item);
  });
  for (std::size_t i = 0; i < entries_.size(); ++i) rank_.emplace(index_of(entries_[i].item), i);
}

const HeaderEntry* HeaderTable::find(ItemId item) const {
  const std::size_t r = rank(item);
  return r == npos ? nullptr : &entries_[r];
}

std::size_t HeaderTable::rank(ItemId item) const {
  if (auto it = rank_.find(index_of(item)); it != rank_.end()) return it->second;
  return npos;
}

FPTree::FPTree() : nodes_(1) {}

FPTree::FPTree(HeaderTable header) : nodes_(1), header_(std::move(header)) {}

void FPTree::insert(std::span<const ItemId> ordered_items, Count count) {
  NodeIndex current = root_index();
  for (ItemId id : ordered_items) {
    auto& kids = nodes_[current].children;
    auto it = std::lower_bound(kids.begin(), kids.end(), id,
                               [](const auto& child, ItemId key) { return child.first < key; });
    if (it != kids.end() && it->first == id) {
      current = it->second;
      nodes_[current].count += count;
      continue;
    }

    const std::size_t r = header_.rank(id);
    if (r == HeaderTable::npos) {
      throw ContractViolation("item " + std::to_string(index_of(id)) + " is not in the header");
    }
    const auto child = static_cast<NodeIndex>(nodes_.size());
    kids.insert(it, {id, child});  // invalidates `kids` once nodes_ grows below
    FPNode node;
    node.item = id;
    node.count = count;
    node.parent = current;
    nodes_.push_back(std::move(node));

    HeaderEntry& entry = header_.entries_[r];
    if (entry.tail == kNoNode) {
      entry.head = child;
    } else {
      nodes_[entry.tail].next_same_item = child;
    }
    entry.tail = child;
    current = child;
  }
}

std::vector<NodeIndex> FPTree::chain(ItemId item) const {
  std::vector<NodeIndex> out;
  const HeaderEntry* entry = header_.find(item);
  if (entry == nullptr) return out;
  for (NodeIndex i = entry->head; i != kNoNode; i = nodes_[i].next_same_item) out.push_back(i);
  return out;
}

std::vector<ItemId> order_transaction(const Itemset& t, const ItemCounts& counts,
                                      Count min_support, const ItemCatalog& catalog) {
  std::vector<std::pair<Count, ItemId>> kept;
  for (ItemId id : t) {
    auto it = counts.find(id);
    if (it != counts.end() && it->second >= min_support) kept.emplace_back(it->second, id);
  }
  std::sort(kept.begin(), kept.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return catalog.label_less(a.second, b.second);
  });
  std::vector<ItemId> out;
  out.reserve(kept.size());
  for (const auto& [count, id] : kept) out.push_back(id);
  return out;
}

FPTree build_fptree(const TransactionDb& db, Count min_support) {
  if (min_support < 1) {
    throw ValidationError("min_support must be at least 1");
  }
  FPTree tree(HeaderTable(item_frequencies(db), min_support, db.catalog()));
  for (const auto& t : db.transactions()) {
    const auto ordered = order_by_header(t.items(), tree.header());
    if (!ordered.empty()) tree.insert(ordered, 1);
  }
  return tree;
}

ConditionalPatternBase conditional_pattern_base(const FPTree& tree, ItemId item) {
  if (tree.header().find(item) == nullptr) {
    throw LookupError("item " + std::to_string(index_of(item)) + " is not in the header table");
  }
  ConditionalPatternBase base;
  for (NodeIndex i : tree.chain(item)) {
    const FPNode& node = tree.node(i);
    PrefixPath path;
    path.count = node.count;
    for (NodeIndex p = node.parent; !tree.node(p).is_root(); p = tree.node(p).parent) {
      path.items.push_back(tree.node(p).item);
    }
    std::reverse(path.items.begin(), path.items.end());
    base.paths.push_back(std::move(path));
  }
  return base;
}

FPTree build_conditional_tree(const ConditionalPatternBase& base, Count min_support,
                              const ItemCatalog& catalog) {
  ItemCounts totals;
  for (const auto& path : base.paths) {
    for (ItemId id : path.items) totals[id] += path.count;
  }
  FPTree tree(HeaderTable(totals, min_support, catalog));
  if (tree.header().empty()) return tree;
  for (const auto& path : base.paths) {
    const auto ordered = order_by_header(path.items, tree.header());
    if (!ordered.empty()) tree.insert(ordered, path.count);
  }
  return tree;
}

FrequentItemsets fpgrowth_mine(const TransactionDb& db, Count min_support, FPGrowthStats* stats) {
  FrequentItemsets result;
  result.n = db.size();
  FPGrowthStats local;

  const FPTree tree = build_fptree(db, min_support);
  Miner miner(db.catalog(), min_support, result, local);
  miner.note_tree(tree);
  miner.mine(tree, Itemset{});
  local.peak_bytes = local.peak_live_nodes * (sizeof(FPNode) + sizeof(std::pair<ItemId, NodeIndex>));

  if (stats) *stats = local;
  return result;
}

std::string dump_tree(const FPTree& tree, const ItemCatalog& catalog) {
  std::string out;
  std::function<void(NodeIndex, std::size_t)> visit = [&](NodeIndex i, std::size_t depth) {
    std::vector<NodeIndex> kids;
    for (const auto& [id, child] : tree.node(i).children) kids.push_back(child);
    std::sort(kids.begin(), kids.end(), [&](NodeIndex a, NodeIndex b) {
      return catalog.label_less(tree.node(a).item, tree.node(b).item);
    });
    for (NodeIndex k : kids) {
      const FPNode& node = tree.node(k);
      out.append(depth * 2, ' ');
      out += catalog.label(node.item) + ":" + std::to_string(node.count) + "\n";
      visit(k, depth + 1);
    }
  };
  visit(FPTree::root_index(), 0);
  return out;
}

}  // namespace arminer
