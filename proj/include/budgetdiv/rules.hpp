#pragma once

#include "budgetdiv/classic.hpp"
#include "budgetdiv/model.hpp"
#include "budgetdiv/seqpay.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace budgetdiv {

// Parsed rule identifier. Accepted spellings:
//   map | ues | cut | fut | nash | mps:<gamma> | add13 | custom:<path>
// <gamma> is a rational in [0,1]; <path> points at a payment-schedule JSON file.
struct RuleSpec {
    enum class Kind { map, ues, cut, fut, nash, mps, add13, custom };
    Kind kind = Kind::map;
    Rat gamma;                // mps only
    std::string custom_path;  // custom only
    std::string text;         // canonical spelling, e.g. "mps:1/3"
};

RuleSpec parse_rule_spec(const std::string& s);

// A rule as checkers and the CLI consume it: a name plus evaluation closures.
// Combinatorial rules run on the exact backend (eval_float derives from it);
// nash only provides the float view.
struct Rule {
    RuleSpec spec;
    std::string name;
    bool exact = true;
    std::function<ExactDist(const ApprovalProfile&)> eval_exact;  // null iff !exact
    std::function<FloatDist(const ApprovalProfile&)> eval_float;
    // Sequential rules keep their payment schedule around for trace/decomposition work.
    std::optional<PaymentWillingness> willingness;
};

Rule make_rule(const RuleSpec& spec, const NashSolverConfig& nash_cfg = {});
Rule make_rule(const std::string& spec_text, const NashSolverConfig& nash_cfg = {});

// Axioms the rule is documented to satisfy; fuzz uses this to decide whether a
// found violation is a defect (claimed) or expected behavior (unclaimed).
std::vector<std::string> default_claims(const RuleSpec& spec);

}  // namespace budgetdiv
