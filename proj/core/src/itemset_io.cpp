#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "arminer/csv.hpp"
#include "arminer/error.hpp"
#include "arminer/frequent.hpp"
#include "arminer/io.hpp"

namespace arminer {

std::vector<Itemset> FrequentItemsets::level(std::size_t k) const {
  std::vector<Itemset> out;
  for (const auto& [s, count] : support) {
    if (s.size() == k) out.push_back(s);
  }
  return out;
}

bool label_order_less(const ItemCatalog& catalog, const Itemset& a, const Itemset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& la = catalog.label(a[i]);
    const auto& lb = catalog.label(b[i]);
    if (la != lb) return la < lb;
  }
  return a < b;
}

std::vector<std::pair<Itemset, Count>> sorted_by_labels(const SupportMap& support,
                                                        const ItemCatalog& catalog) {
  std::vector<std::pair<Itemset, Count>> rows(support.begin(), support.end());
  std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
    return label_order_less(catalog, x.first, y.first);
  });
  return rows;
}

std::string format_itemsets_csv(const FrequentItemsets& freq, const ItemCatalog& catalog) {
  std::string out = "itemset,support\n";
  for (const auto& [s, count] : sorted_by_labels(freq.support, catalog)) {
    out += csv::format_row({catalog.join(s), std::to_string(count)});
  }
  return out;
}

FrequentItemsets SupportTable::to_frequent() const {
  FrequentItemsets freq;
  freq.support = support;
  if (n) {
    freq.n = *n;
  } else {
    for (const auto& [s, count] : support) freq.n = std::max(freq.n, count);
  }
  return freq;
}

SupportTable parse_support_csv(std::string_view content) {
  SupportTable table;
  const auto records = csv::parse(content);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() == 1 && trim_label(rec.fields[0]).empty()) continue;
    if (rec.fields.size() != 2) {
      throw ParseError(rec.line, "expected two fields: itemset,support");
    }
    if (r == 0 && normalize_label(rec.fields[0]) == "itemset") {
      const auto second = normalize_label(rec.fields[1]);
      if (second == "support" || second == "count") continue;
    }
    const std::string count_text = trim_label(rec.fields[1]);
    Count count = 0;
    const auto [ptr, ec] =
        std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (count_text.empty() || ec != std::errc() || ptr != count_text.data() + count_text.size()) {
      throw ParseError(rec.line, "support '" + count_text + "' is not a non-negative integer");
    }

    Itemset s;
    try {
      s = table.catalog.intern_joined(rec.fields[0]);
    } catch (const ValidationError& e) {
      throw ParseError(rec.line, e.what());
    }
    if (s.empty()) {
      if (table.n && *table.n != count) {
        throw ParseError(rec.line, "conflicting transaction counts");
      }
      table.n = count;
      continue;
    }
    auto [it, inserted] = table.support.emplace(s, count);
    if (!inserted && it->second != count) {
      throw ParseError(rec.line, "itemset '" + table.catalog.join(s) +
                                     "' listed with conflicting supports " +
                                     std::to_string(it->second) + " and " + std::to_string(count));
    }
  }
  return table;
}

namespace io {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot read file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw DataError("error while reading '" + path.string() + "'");
  }
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("cannot write file '" + path.string() + "'");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw DataError("error while writing '" + path.string() + "'");
  }
}

}  // namespace io
}  // namespace arminer
