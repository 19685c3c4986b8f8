#include "arminer/dataset.hpp"

#include <charconv>

#include "arminer/csv.hpp"
#include "arminer/error.hpp"

namespace arminer {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::vector<std::string_view> split(std::string_view text, char delimiter) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(delimiter, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

// Interns the trimmed, aliased label and appends it to `items`; blank labels
// are skipped.
void add_label(std::string_view raw, const AliasMap* aliases, ItemCatalog& catalog,
               std::vector<ItemId>& items) {
  std::string label = trim_label(raw);
  if (label.empty()) return;
  if (aliases != nullptr) label = aliases->resolve(label);
  items.push_back(catalog.intern(label));
}

std::optional<std::int64_t> parse_age(std::string_view cell, const SurveySchema& schema,
                                      std::size_t line) {
  const std::string text = trim_label(cell);
  if (text.empty() || normalize_label(text) == normalize_label(schema.missing_age_label)) {
    return std::nullopt;
  }
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError("line " + std::to_string(line) + ": age '" + text +
                          "' is not an integer");
  }
  return value;
}

}  // namespace

std::string trim_label(std::string_view raw) {
  std::size_t b = 0;
  std::size_t e = raw.size();
  while (b < e && is_space(raw[b])) ++b;
  while (e > b && is_space(raw[e - 1])) --e;
  return std::string(raw.substr(b, e - b));
}

std::string normalize_label(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(ascii_lower(c));
  }
  return out;
}

ItemId ItemCatalog::intern(std::string_view raw) {
  std::string display = trim_label(raw);
  if (display.empty()) {
    throw ValidationError("empty item label");
  }
  if (display.find('|') != std::string::npos) {
    throw ValidationError("item label '" + display + "' contains the reserved character '|'");
  }
  std::string key = normalize_label(display);
  if (auto it = lookup_.find(key); it != lookup_.end()) {
    return it->second;
  }
  const ItemId id = item_at(labels_.size());
  labels_.push_back(std::move(display));
  lookup_.emplace(std::move(key), id);
  return id;
}

std::optional<ItemId> ItemCatalog::find(std::string_view raw) const {
  if (auto it = lookup_.find(normalize_label(raw)); it != lookup_.end()) {
    return it->second;
  }
  return std::nullopt;
}

ItemId ItemCatalog::at(std::string_view raw) const {
  if (auto id = find(raw)) return *id;
  throw LookupError("unknown item '" + std::string(raw) + "'");
}

std::vector<std::string> ItemCatalog::labels_of(const Itemset& s) const {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (ItemId id : s) out.push_back(label(id));
  return out;
}

std::string ItemCatalog::join(const Itemset& s) const {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out.push_back('|');
    out += label(s[i]);
  }
  return out;
}

Itemset ItemCatalog::intern_joined(std::string_view joined) {
  std::vector<ItemId> ids;
  if (trim_label(joined).empty()) return {};
  for (auto part : split(joined, '|')) {
    ids.push_back(intern(part));
  }
  return Itemset(std::move(ids));
}

TransactionDb::TransactionDb(ItemCatalog catalog, std::vector<Itemset> transactions)
    : catalog_(std::move(catalog)), transactions_(std::move(transactions)) {
  for (const auto& t : transactions_) {
    if (!t.empty() && index_of(t.back()) >= catalog_.size()) {
      throw ContractViolation("transaction references item " + std::to_string(index_of(t.back())) +
                              " outside a catalog of size " + std::to_string(catalog_.size()));
    }
  }
}

std::size_t TransactionDb::item_volume() const noexcept {
  std::size_t total = 0;
  for (const auto& t : transactions_) total += t.size();
  return total;
}

AliasMap AliasMap::parse(std::string_view content) {
  AliasMap map;
  for (const auto& rec : csv::parse(content)) {
    if (rec.fields.size() == 1 && trim_label(rec.fields[0]).empty()) continue;
    if (rec.fields.size() != 2) {
      throw ParseError(rec.line, "alias rows need exactly two fields: raw_label,canonical_label");
    }
    map.add(rec.fields[0], rec.fields[1]);
  }
  return map;
}

void AliasMap::add(std::string_view raw, std::string_view canonical) {
  std::string target = trim_label(canonical);
  if (trim_label(raw).empty() || target.empty()) {
    throw ValidationError("alias entries must have non-empty raw and canonical labels");
  }
  aliases_[normalize_label(raw)] = std::move(target);
}

std::string AliasMap::resolve(std::string_view label) const {
  if (auto it = aliases_.find(normalize_label(label)); it != aliases_.end()) {
    return it->second;
  }
  return std::string(label);
}

void SurveySchema::validate() const {
  if (multiselect_delimiter == ',' || multiselect_delimiter == '\n' ||
      multiselect_delimiter == '\r' || multiselect_delimiter == '"') {
    throw ValidationError("multi-select delimiter must not be a comma, quote or line break");
  }
  if (trim_label(missing_age_label).empty()) {
    throw ValidationError("missing-age label must not be empty");
  }
}

TransactionDb parse_transactions(std::string_view content, const AliasMap* aliases) {
  ItemCatalog catalog;
  std::vector<Itemset> transactions;
  for (const auto& rec : csv::parse(content)) {
    std::vector<ItemId> items;
    for (const auto& field : rec.fields) {
      add_label(field, aliases, catalog, items);
    }
    transactions.emplace_back(std::move(items));
  }
  return TransactionDb(std::move(catalog), std::move(transactions));
}

std::string bucket_age(std::optional<std::int64_t> age, std::string_view missing_label) {
  if (!age) return std::string(missing_label);
  if (*age < 0) {
    throw ValidationError("age must be non-negative, got " + std::to_string(*age));
  }
  if (*age < 18) return "Under 18";
  if (*age < 25) return "18-24";
  if (*age < 35) return "25-34";
  return "Above 35";
}

TransactionDb parse_survey(std::string_view content, const SurveySchema& schema,
                           const AliasMap* aliases) {
  schema.validate();
  const auto records = csv::parse(content);
  if (records.empty()) {
    throw SchemaError("survey file has no header row");
  }

  auto find_column = [&](const std::string& name) {
    const auto& header = records.front().fields;
    const std::string key = normalize_label(name);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (normalize_label(header[i]) == key) return i;
    }
    throw SchemaError("survey header has no column '" + name + "'");
  };
  const std::size_t age_col = find_column(schema.age_column);
  const std::size_t impact_col = find_column(schema.impact_column);

  ItemCatalog catalog;
  std::vector<Itemset> transactions;
  transactions.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    // Blank trailing lines are not respondents.
    if (rec.fields.size() == 1 && trim_label(rec.fields[0]).empty()) continue;
    auto cell = [&](std::size_t col) -> std::string_view {
      return col < rec.fields.size() ? std::string_view(rec.fields[col]) : std::string_view();
    };

    std::optional<std::int64_t> age = parse_age(cell(age_col), schema, rec.line);
    std::string bucket;
    try {
      bucket = bucket_age(age, schema.missing_age_label);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(rec.line) + ": " + e.what());
    }

    std::vector<ItemId> items;
    items.push_back(catalog.intern(bucket));
    for (auto part : split(cell(impact_col), schema.multiselect_delimiter)) {
      add_label(part, aliases, catalog, items);
    }
    transactions.emplace_back(std::move(items));
  }
  return TransactionDb(std::move(catalog), std::move(transactions));
}

ItemCounts item_frequencies(const TransactionDb& db) {
  ItemCounts counts;
  for (const auto& t : db.transactions()) {
    for (ItemId id : t) ++counts[id];
  }
  return counts;
}

std::string write_transactions(const TransactionDb& db) {
  std::string out;
  for (const auto& t : db.transactions()) {
    out += csv::format_row(db.catalog().labels_of(t));
  }
  return out;
}

}  // namespace arminer
