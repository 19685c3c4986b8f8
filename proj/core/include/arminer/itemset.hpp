#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace arminer {

// Dense handle into an ItemCatalog; handles start at 0 and are contiguous.
enum class ItemId : std::uint32_t {};

constexpr std::uint32_t index_of(ItemId id) noexcept { return static_cast<std::uint32_t>(id); }
constexpr ItemId item_at(std::size_t index) noexcept {
  return static_cast<ItemId>(static_cast<std::uint32_t>(index));
}

// Absolute transaction count.
using Count = std::uint64_t;

// A strictly increasing (sorted, duplicate-free) sequence of items.
class Itemset {
 public:
  using const_iterator = std::vector<ItemId>::const_iterator;

  Itemset() = default;
  Itemset(std::initializer_list<ItemId> items) : Itemset(std::vector<ItemId>(items)) {}
  explicit Itemset(std::vector<ItemId> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  // Caller guarantees `items` is already strictly increasing.
  static Itemset from_sorted(std::vector<ItemId> items) {
    Itemset s;
    s.items_ = std::move(items);
    return s;
  }

  std::span<const ItemId> items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }
  ItemId operator[](std::size_t i) const { return items_[i]; }
  ItemId back() const { return items_.back(); }

  bool contains(ItemId id) const { return std::binary_search(items_.begin(), items_.end(), id); }

  bool is_subset_of(const Itemset& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
  }

  // This itemset with the element at `pos` removed.
  Itemset without(std::size_t pos) const {
    std::vector<ItemId> out;
    out.reserve(items_.size() - 1);
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (i != pos) out.push_back(items_[i]);
    }
    return from_sorted(std::move(out));
  }

  Itemset with(ItemId id) const {
    std::vector<ItemId> out = items_;
    auto it = std::lower_bound(out.begin(), out.end(), id);
    if (it == out.end() || *it != id) out.insert(it, id);
    return from_sorted(std::move(out));
  }

  friend bool operator==(const Itemset&, const Itemset&) = default;
  friend auto operator<=>(const Itemset&, const Itemset&) = default;

 private:
  std::vector<ItemId> items_;
};

// Itemset -> absolute support count. Ordered map so iteration is
// deterministic.
using SupportMap = std::map<Itemset, Count>;

// ItemId -> number of transactions containing the item.
using ItemCounts = std::map<ItemId, Count>;

}  // namespace arminer
