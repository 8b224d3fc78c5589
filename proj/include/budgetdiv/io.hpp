#pragma once

#include "budgetdiv/model.hpp"
#include "budgetdiv/seqpay.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <variant>

namespace budgetdiv {

using ordered_json = nlohmann::ordered_json;

// Reads a whole file into memory. Throws IoError on failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Text profile format:
//   candidates: a b c d
//   4: a b
//   2: c
// '#' starts a comment; blank lines are ignored. One group per line.
ApprovalProfile parse_profile_text(const std::string& text);

// JSON mirror: { "candidates": [...], "groups": [{"count": k, "ballot": [names]}] }
ApprovalProfile parse_profile_json(const std::string& text);

// Dispatches on the first non-whitespace byte: '{' selects JSON, anything else text.
ApprovalProfile parse_profile(const std::string& text);
ApprovalProfile load_profile(const std::string& path);

std::string profile_to_text(const ApprovalProfile& profile);
ordered_json profile_to_json(const ApprovalProfile& profile);

// Distribution files are JSON objects mapping candidate name -> share.
// String values ("num/den") yield an exact distribution, numeric values a float
// one; mixing the two in one file is rejected. Candidates may be omitted (share 0).
std::variant<ExactDist, FloatDist> parse_dist_json(const std::string& text,
                                                   const ApprovalProfile& profile);

ordered_json dist_to_json(const ApprovalProfile& profile, const ExactDist& dist);
ordered_json dist_to_json(const ApprovalProfile& profile, const FloatDist& dist);

// Custom payment schedule file:
//   { "name": "label", "rows": { "1": ["1"], "2": ["2/3", "1/3"], ... } }
// Row t must list exactly t rationals. Ballot sizes without a row are rejected
// at run time by the willingness itself.
PaymentWillingness parse_willingness_json(const std::string& text);
PaymentWillingness load_willingness(const std::string& path);

// Fixed-precision float rendering used everywhere a float share is printed,
// so identical invocations produce byte-identical output.
std::string float_str(double v);

// FNV-1a over the canonical text rendering; stable content fingerprint for reports.
std::string profile_digest(const ApprovalProfile& profile);

}  // namespace budgetdiv
