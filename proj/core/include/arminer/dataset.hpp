#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "arminer/itemset.hpp"

namespace arminer {

// Trims surrounding whitespace.
std::string trim_label(std::string_view raw);

// Identity key for a label: trimmed, internal whitespace runs collapsed to a
// single space, ASCII case-folded. Non-ASCII bytes are kept verbatim.
std::string normalize_label(std::string_view raw);

// Interned item labels. A label keeps the first-seen trimmed spelling for
// display; later spellings that normalize to the same key resolve to the same
// handle.
class ItemCatalog {
 public:
  // Returns the existing handle or assigns the next one. Throws
  // ValidationError for an empty label or one containing '|', which is
  // reserved as the itemset separator in every output format.
  ItemId intern(std::string_view raw);

  std::optional<ItemId> find(std::string_view raw) const;

  // Throws LookupError when the label is unknown.
  ItemId at(std::string_view raw) const;

  const std::string& label(ItemId id) const { return labels_.at(index_of(id)); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

  // Display labels of `s` in ItemId order.
  std::vector<std::string> labels_of(const Itemset& s) const;

  // Display labels of `s` in ItemId order joined by '|'.
  std::string join(const Itemset& s) const;

  // Itemset from a '|'-joined label list, interning unseen labels.
  Itemset intern_joined(std::string_view joined);

  // Strict order on display labels (bytewise), falling back to ItemId.
  bool label_less(ItemId a, ItemId b) const {
    const auto& la = label(a);
    const auto& lb = label(b);
    if (la != lb) return la < lb;
    return a < b;
  }

  friend bool operator==(const ItemCatalog& a, const ItemCatalog& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, ItemId> lookup_;
};

// The transaction database D. Immutable after construction.
class TransactionDb {
 public:
  TransactionDb() = default;

  // Throws ContractViolation if any transaction references an ItemId
  // outside the catalog.
  TransactionDb(ItemCatalog catalog, std::vector<Itemset> transactions);

  const ItemCatalog& catalog() const noexcept { return catalog_; }
  std::span<const Itemset> transactions() const noexcept { return transactions_; }
  std::size_t size() const noexcept { return transactions_.size(); }
  bool empty() const noexcept { return transactions_.empty(); }

  // Sum of transaction lengths.
  std::size_t item_volume() const noexcept;

  friend bool operator==(const TransactionDb&, const TransactionDb&) = default;

 private:
  ItemCatalog catalog_;
  std::vector<Itemset> transactions_;
};

// raw_label -> canonical_label substitutions applied before interning.
class AliasMap {
 public:
  // Two-column CSV, no header.
  static AliasMap parse(std::string_view content);

  void add(std::string_view raw, std::string_view canonical);

  // Canonical spelling for `label`, or `label` itself when no alias applies.
  std::string resolve(std::string_view label) const;

  std::size_t size() const noexcept { return aliases_.size(); }

 private:
  std::unordered_map<std::string, std::string> aliases_;
};

inline constexpr std::string_view kDefaultMissingAgeLabel = "Don't remember";

struct SurveySchema {
  std::string age_column = "age";
  std::string impact_column = "impacts";
  char multiselect_delimiter = ';';
  std::string missing_age_label = std::string(kDefaultMissingAgeLabel);

  // Throws ValidationError when the delimiter is a comma or a line break.
  void validate() const;
};

// One transaction per CSV row. Fields are trimmed, aliased, interned and
// deduplicated; blank fields are skipped. Blank rows yield empty
// transactions.
TransactionDb parse_transactions(std::string_view content, const AliasMap* aliases = nullptr);

// "Under 18", "18-24", "25-34" or "Above 35"; `missing_label` when the age is
// unknown. Throws ValidationError for negative ages.
std::string bucket_age(std::optional<std::int64_t> age,
                       std::string_view missing_label = kDefaultMissingAgeLabel);

// Recodes a survey export (header row required) into one transaction per
// respondent: the respondent's age bucket plus every selected impact.
TransactionDb parse_survey(std::string_view content, const SurveySchema& schema,
                           const AliasMap* aliases = nullptr);

// Number of transactions containing each item; items that occur nowhere are
// absent.
ItemCounts item_frequencies(const TransactionDb& db);

// Transactions CSV: one row per transaction, labels in ItemId order.
std::string write_transactions(const TransactionDb& db);

}  // namespace arminer
