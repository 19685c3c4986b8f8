#include "arminer/oracle.hpp"

#include <numeric>
#include <sstream>

#include "arminer/error.hpp"
#include "arminer/fpgrowth.hpp"

namespace arminer::oracle {
namespace {

using Mask = std::uint32_t;

Itemset itemset_of(Mask mask) {
  std::vector<ItemId> items;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1) items.push_back(item_at(i));
  }
  return Itemset::from_sorted(std::move(items));
}

Count scan_support(const TransactionDb& db, const Itemset& s) {
  Count count = 0;
  for (const auto& t : db.transactions()) {
    if (s.is_subset_of(t)) ++count;
  }
  return count;
}

std::string describe_difference(const std::string& who, const FrequentItemsets& got,
                                 const FrequentItemsets& want, const ItemCatalog& catalog) {
  std::ostringstream msg;
  msg << who << " disagrees with brute force: ";
  for (const auto& [s, count] : want.support) {
    auto g = got.find(s);
    if (!g) {
      msg << "missing {" << catalog.join(s) << "}:" << count;
      return msg.str();
    }
    if (*g != count) {
      msg << "{" << catalog.join(s) << "} has support " << *g << ", expected " << count;
      return msg.str();
    }
  }
  for (const auto& [s, count] : got.support) {
    if (!want.find(s)) {
      msg << "extra {" << catalog.join(s) << "}:" << count;
      return msg.str();
    }
  }
  msg << "transaction count " << got.n << ", expected " << want.n;
  return msg.str();
}

std::string describe_rule(const AssociationRule& r, const ItemCatalog& catalog) {
  std::ostringstream out;
  out << "{" << catalog.join(r.antecedent) << "} => {" << catalog.join(r.consequent) << "} "
      << r.confidence.numerator << "/" << r.confidence.denominator << " " << to_string(r.status);
  return out.str();
}

TransactionDb rebuild(const TransactionDb& db, std::vector<Itemset> transactions) {
  return TransactionDb(db.catalog(), std::move(transactions));
}

// Drops catalog entries no transaction uses, keeping relative order.
TransactionDb compact(const TransactionDb& db) {
  std::vector<char> used(db.catalog().size(), 0);
  for (const auto& t : db.transactions()) {
    for (ItemId id : t) used[index_of(id)] = 1;
  }
  ItemCatalog catalog;
  std::vector<ItemId> remap(db.catalog().size());
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i]) remap[i] = catalog.intern(db.catalog().label(item_at(i)));
  }
  std::vector<Itemset> transactions;
  for (const auto& t : db.transactions()) {
    std::vector<ItemId> items;
    for (ItemId id : t) items.push_back(remap[index_of(id)]);
    transactions.emplace_back(std::move(items));
  }
  return TransactionDb(std::move(catalog), std::move(transactions));
}

}  // namespace

FrequentItemsets brute_force_frequent(const TransactionDb& db, Count min_support) {
  const std::size_t universe = db.catalog().size();
  if (universe > kMaxUniverse) {
    throw BoundExceeded("brute force refuses " + std::to_string(universe) +
                        " distinct items (limit " + std::to_string(kMaxUniverse) + ")");
  }
  std::vector<Mask> masks;
  masks.reserve(db.size());
  for (const auto& t : db.transactions()) {
    Mask m = 0;
    for (ItemId id : t) m |= Mask{1} << index_of(id);
    masks.push_back(m);
  }

  FrequentItemsets result;
  result.n = db.size();
  const Mask end = universe == 0 ? 1 : (Mask{1} << universe);
  for (Mask candidate = 1; candidate < end; ++candidate) {
    Count count = 0;
    for (Mask t : masks) {
      if ((t & candidate) == candidate) ++count;
    }
    if (count >= 1 && count >= min_support) {
      result.support.emplace(itemset_of(candidate), count);
    }
  }
  return result;
}

std::vector<AssociationRule> brute_force_rules(const TransactionDb& db, Count min_support,
                                               const MinConfidence& min_confidence,
                                               bool include_rejected) {
  const FrequentItemsets freq = brute_force_frequent(db, min_support);
  std::vector<AssociationRule> rules;
  for (const auto& [l, ignored] : freq.support) {
    if (l.size() < 2) continue;
    const Count sup_l = scan_support(db, l);
    const Mask full = (Mask{1} << l.size()) - 1;
    for (Mask pick = 1; pick < full; ++pick) {
      std::vector<ItemId> left;
      std::vector<ItemId> right;
      for (std::size_t i = 0; i < l.size(); ++i) {
        ((pick >> i) & 1 ? left : right).push_back(l[i]);
      }
      AssociationRule rule;
      rule.antecedent = Itemset(std::move(left));
      rule.consequent = Itemset(std::move(right));
      rule.support = sup_l;
      rule.confidence = rule_confidence(sup_l, scan_support(db, rule.antecedent));
      rule.status =
          min_confidence.accepts(rule.confidence) ? RuleStatus::kAccepted : RuleStatus::kRejected;
      if (rule.status == RuleStatus::kAccepted || include_rejected) rules.push_back(std::move(rule));
    }
  }
  sort_rules(rules, db.catalog());
  return rules;
}

std::optional<std::string> find_mismatch(const EquivalenceCase& c, const Miner& apriori,
                                         const Miner& fpgrowth) {
  const ItemCatalog& catalog = c.db.catalog();
  const FrequentItemsets truth = brute_force_frequent(c.db, c.min_support);

  const FrequentItemsets a = apriori(c.db, c.min_support);
  if (a != truth) return describe_difference("apriori", a, truth, catalog);
  const FrequentItemsets f = fpgrowth(c.db, c.min_support);
  if (f != truth) return describe_difference("fpgrowth", f, truth, catalog);

  RuleOptions options;
  options.min_confidence = c.min_confidence;
  options.include_rejected = true;
  const auto rules = generate_rules(a, catalog, options);
  const auto expected = brute_force_rules(c.db, c.min_support, c.min_confidence, true);
  if (rules.size() != expected.size()) {
    return "generate_rules produced " + std::to_string(rules.size()) + " rules, brute force " +
           std::to_string(expected.size());
  }
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!(rules[i] == expected[i])) {
      return "rule " + std::to_string(i) + " differs: got " + describe_rule(rules[i], catalog) +
             ", expected " + describe_rule(expected[i], catalog);
    }
  }
  return std::nullopt;
}

std::optional<std::string> find_mismatch(const EquivalenceCase& c) {
  return find_mismatch(
      c, [](const TransactionDb& db, Count s) { return apriori_mine(db, s); },
      [](const TransactionDb& db, Count s) { return fpgrowth_mine(db, s); });
}

EquivalenceCase minimize(EquivalenceCase c,
                         const std::function<bool(const EquivalenceCase&)>& still_fails) {
  auto attempt = [&](std::vector<Itemset> transactions) {
    EquivalenceCase trial{rebuild(c.db, std::move(transactions)), c.min_support, c.min_confidence};
    if (!still_fails(trial)) return false;
    c = std::move(trial);
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < c.db.size();) {
      std::vector<Itemset> fewer(c.db.transactions().begin(), c.db.transactions().end());
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      if (attempt(std::move(fewer))) {
        changed = true;
      } else {
        ++i;
      }
    }
    for (std::size_t i = 0; i < c.db.size(); ++i) {
      for (std::size_t pos = 0; pos < c.db.transactions()[i].size();) {
        std::vector<Itemset> smaller(c.db.transactions().begin(), c.db.transactions().end());
        smaller[i] = smaller[i].without(pos);
        if (attempt(std::move(smaller))) {
          changed = true;
        } else {
          ++pos;
        }
      }
    }
    if (c.min_support > 1) {
      EquivalenceCase lower{c.db, c.min_support - 1, c.min_confidence};
      if (still_fails(lower)) {
        c = std::move(lower);
        changed = true;
      }
    }
  }

  EquivalenceCase compacted{compact(c.db), c.min_support, c.min_confidence};
  if (still_fails(compacted)) return compacted;
  return c;
}

EquivalenceCase random_case(Rng& rng, const RandomDbParams& params) {
  if (params.max_items > kMaxUniverse) {
    throw ValidationError("random cases are limited to " + std::to_string(kMaxUniverse) + " items");
  }
  const std::size_t universe = 1 + rng.below(std::max<std::size_t>(1, params.max_items));
  const std::size_t n = rng.below(params.max_transactions + 1);
  const double density = 0.1 + 0.6 * rng.uniform01();

  // Labels are assigned in shuffled order so label order differs from ItemId
  // order, exercising the label tie-breaks.
  std::vector<std::size_t> order(universe);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = universe; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  ItemCatalog catalog;
  for (std::size_t i = 0; i < universe; ++i) {
    catalog.intern(std::string(1, static_cast<char>('a' + order[i])));
  }

  std::vector<Itemset> transactions;
  transactions.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<ItemId> items;
    for (std::size_t i = 0; i < universe; ++i) {
      if (rng.uniform01() < density) items.push_back(item_at(i));
    }
    transactions.push_back(Itemset::from_sorted(std::move(items)));
  }

  EquivalenceCase c;
  c.db = TransactionDb(std::move(catalog), std::move(transactions));
  c.min_support = 1 + rng.below(std::max<std::size_t>(1, n / 2 + 1));
  c.min_confidence = MinConfidence(rng.below(21), 20);
  return c;
}

}  // namespace arminer::oracle
