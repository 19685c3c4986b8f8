#include "arminer/rules.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "arminer/csv.hpp"
#include "arminer/error.hpp"

namespace arminer {
namespace {

__extension__ typedef unsigned __int128 Wide;

// Enumerates the nonempty proper subsets of `l` by bitmask over its positions.
template <typename Fn>
void for_each_proper_subset(const Itemset& l, Fn&& fn) {
  const std::size_t k = l.size();
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    std::vector<ItemId> left;
    std::vector<ItemId> right;
    for (std::size_t i = 0; i < k; ++i) {
      ((mask >> i) & 1 ? left : right).push_back(l[i]);
    }
    fn(Itemset::from_sorted(std::move(left)), Itemset::from_sorted(std::move(right)));
  }
}

}  // namespace

MinConfidence::MinConfidence(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError("min_confidence must lie in [0, 1]");
  }
}

MinConfidence::MinConfidence(Count numerator, Count denominator)
    : exact_(true), numerator_(numerator), denominator_(denominator) {
  if (denominator == 0 || numerator > denominator) {
    throw ValidationError("min_confidence must lie in [0, 1]");
  }
  value_ = static_cast<double>(numerator) / static_cast<double>(denominator);
}

MinConfidence MinConfidence::parse(std::string_view text) {
  const std::string original(text);
  auto fail = [&] { return ValidationError("invalid confidence '" + original + "'"); };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

  bool percent = false;
  if (!text.empty() && text.back() == '%') {
    percent = true;
    text.remove_suffix(1);
  }
  if (text.empty()) throw fail();

  // digits [. digits] -> numerator / 10^fraction_digits
  Count numerator = 0;
  Count denominator = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw fail();
    seen_digit = true;
    if (numerator > 100'000'000'000'000ULL || (seen_dot && denominator > 100'000'000'000'000ULL)) {
      throw fail();
    }
    numerator = numerator * 10 + static_cast<Count>(c - '0');
    if (seen_dot) denominator *= 10;
  }
  if (!seen_digit) throw fail();
  if (percent) denominator *= 100;
  if (numerator > denominator) throw fail();
  return MinConfidence(numerator, denominator);
}

bool MinConfidence::accepts(const Confidence& c) const {
  if (exact_) {
    return Wide{c.numerator} * denominator_ >= Wide{numerator_} * c.denominator;
  }
  return c.value >= value_;
}

std::string_view to_string(RuleStatus status) {
  return status == RuleStatus::kAccepted ? "Accepted" : "Rejected";
}

Confidence rule_confidence(Count sup_union, Count sup_antecedent) {
  if (sup_union < 1 || sup_union > sup_antecedent) {
    throw ContractViolation("rule confidence needs 1 <= support(l) <= support(s); got " +
                            std::to_string(sup_union) + " / " + std::to_string(sup_antecedent));
  }
  // IEEE division of two exactly representable integers is correctly rounded.
  return Confidence{sup_union, sup_antecedent,
                    static_cast<double>(sup_union) / static_cast<double>(sup_antecedent)};
}

void sort_rules(std::vector<AssociationRule>& rules, const ItemCatalog& catalog) {
  struct Keyed {
    Itemset whole;
    AssociationRule rule;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(rules.size());
  for (auto& r : rules) {
    std::vector<ItemId> items(r.antecedent.begin(), r.antecedent.end());
    items.insert(items.end(), r.consequent.begin(), r.consequent.end());
    keyed.push_back(Keyed{Itemset(std::move(items)), std::move(r)});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [&](const Keyed& a, const Keyed& b) {
    if (a.whole != b.whole) return label_order_less(catalog, a.whole, b.whole);
    return label_order_less(catalog, a.rule.antecedent, b.rule.antecedent);
  });
  for (std::size_t i = 0; i < keyed.size(); ++i) rules[i] = std::move(keyed[i].rule);
}

std::vector<AssociationRule> generate_rules(const FrequentItemsets& freq,
                                            const ItemCatalog& catalog,
                                            const RuleOptions& options, std::size_t* skipped) {
  std::vector<AssociationRule> rules;
  std::size_t dropped = 0;
  for (const auto& [l, sup_l] : freq.support) {
    if (l.size() < 2) continue;
    if (l.size() > 63) {
      throw ContractViolation("itemset too large for rule enumeration");
    }
    for_each_proper_subset(l, [&](Itemset s, Itemset rest) {
      const auto sup_s = freq.find(s);
      if (!sup_s) {
        if (options.closure == ClosurePolicy::kSkipUnknown) {
          ++dropped;
          return;
        }
        throw ClosureViolation("support of '" + catalog.join(s) + "' (a subset of '" +
                               catalog.join(l) + "') is missing");
      }
      AssociationRule rule;
      rule.confidence = rule_confidence(sup_l, *sup_s);
      rule.status = options.min_confidence.accepts(rule.confidence) ? RuleStatus::kAccepted
                                                                    : RuleStatus::kRejected;
      if (rule.status == RuleStatus::kRejected && !options.include_rejected) return;
      rule.antecedent = std::move(s);
      rule.consequent = std::move(rest);
      rule.support = sup_l;
      rules.push_back(std::move(rule));
    });
  }
  sort_rules(rules, catalog);
  if (skipped) *skipped = dropped;
  return rules;
}

std::string format_confidence(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string out(buf, ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

std::string format_rules_csv(const std::vector<AssociationRule>& rules,
                             const ItemCatalog& catalog) {
  std::string out = "antecedent,consequent,support,confidence,status\n";
  for (const auto& r : rules) {
    out += csv::format_row({catalog.join(r.antecedent), catalog.join(r.consequent),
                            std::to_string(r.support), format_confidence(r.confidence.value),
                            std::string(to_string(r.status))});
  }
  return out;
}

}  // namespace arminer
