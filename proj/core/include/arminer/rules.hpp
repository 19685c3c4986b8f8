#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "arminer/dataset.hpp"
#include "arminer/frequent.hpp"
#include "arminer/itemset.hpp"

namespace arminer {

// support(X ∪ Y) / support(X), kept as the exact integer pair plus the
// correctly rounded double quotient.
struct Confidence {
  Count numerator = 0;
  Count denominator = 1;
  double value = 0.0;

  friend bool operator==(const Confidence&, const Confidence&) = default;
};

// Minimum confidence threshold. When built from decimal text ("0.40", "40%")
// it also holds the exact fraction, and comparisons are done by
// cross-multiplication instead of on doubles.
class MinConfidence {
 public:
  MinConfidence() = default;
  explicit MinConfidence(double value);
  MinConfidence(Count numerator, Count denominator);

  // Decimal fraction ("0.4", "1", ".75") or percentage ("40%"). Throws
  // ValidationError for malformed text or values outside [0, 1].
  static MinConfidence parse(std::string_view text);

  double value() const noexcept { return value_; }
  bool is_exact() const noexcept { return exact_; }

  bool accepts(const Confidence& c) const;

 private:
  double value_ = 0.0;
  bool exact_ = false;
  Count numerator_ = 0;
  Count denominator_ = 1;
};

enum class RuleStatus { kAccepted, kRejected };

std::string_view to_string(RuleStatus status);

struct AssociationRule {
  Itemset antecedent;
  Itemset consequent;
  Count support = 0;  // support of antecedent ∪ consequent
  Confidence confidence;
  RuleStatus status = RuleStatus::kRejected;

  friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

// Throws ContractViolation unless 1 <= sup_union <= sup_antecedent.
Confidence rule_confidence(Count sup_union, Count sup_antecedent);

// What to do when an antecedent's support is absent from the map.
enum class ClosurePolicy {
  kStrict,       // throw ClosureViolation
  kSkipUnknown,  // drop the rule; for partial support tables such as printed fixtures
};

struct RuleOptions {
  MinConfidence min_confidence;
  bool include_rejected = false;
  ClosurePolicy closure = ClosurePolicy::kStrict;
};

// Every rule s => l - s for stored itemsets l with |l| >= 2 and nonempty
// proper subsets s. Sorted by (|l|, labels of l, labels of s).
std::vector<AssociationRule> generate_rules(const FrequentItemsets& freq,
                                            const ItemCatalog& catalog,
                                            const RuleOptions& options,
                                            std::size_t* skipped = nullptr);

// Rule ordering shared by generate_rules and the oracle.
void sort_rules(std::vector<AssociationRule>& rules, const ItemCatalog& catalog);

// Shortest decimal text that round-trips to `value`, with a trailing ".0"
// for integral values (0.75, 1.0, 0.40425531914893614).
std::string format_confidence(double value);

// Rules CSV: antecedent,consequent,support,confidence,status.
std::string format_rules_csv(const std::vector<AssociationRule>& rules,
                             const ItemCatalog& catalog);

}  // namespace arminer
