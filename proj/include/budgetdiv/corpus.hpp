#pragma once

#include "budgetdiv/model.hpp"
#include "budgetdiv/seqpay.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace budgetdiv {

// A named profile (or profile pair) together with independently derived
// expected results.  Tests re-run the named rules and compare; the expected
// values here come from closed forms, not from the implementations under test.

struct RuleExpectation {
    std::string rule;  // rule spec text, e.g. "map", "cut", "mps:1/3"
    ExactDist dist;
};

struct FloatExpectation {
    std::string rule;
    FloatDist dist;
    double tol;
};

struct MonoWitness {
    ApprovalProfile profile;
    int group_index;
    int x;
};

struct DeviationWitness {
    std::vector<long> coalition_counts;  // per group of `profile`
    ExactDist q;                         // the deviation the coalition moves to
    Rat min_ratio;                       // exact value of deviation_ratio(...)
};

struct NamedInstance {
    NamedInstance(std::string id_, std::string note_, ApprovalProfile profile_)
        : id(std::move(id_)), note(std::move(note_)), profile(std::move(profile_)) {}

    std::string id;
    std::string note;
    ApprovalProfile profile;
    // Partner profile: the other half of a population pair, or the manipulated
    // report in the strategyproofness instance.
    std::optional<ApprovalProfile> second;

    std::vector<RuleExpectation> expected;           // on profile
    std::vector<RuleExpectation> expected_second;    // on *second
    std::vector<RuleExpectation> expected_combined;  // on combine(profile, *second)
    std::vector<FloatExpectation> expected_float;
    std::vector<FloatExpectation> expected_float_second;
    std::vector<FloatExpectation> expected_float_combined;

    // Fairness facts about factor_rule's output on `profile`.
    std::string factor_rule;
    std::optional<Rat> afs_exact;  // group-fairness factor equals this
    std::optional<Rat> afs_lower;  // ... is at least this
    std::optional<DeviationWitness> deviation;

    // A single voter-step on mono_step->profile after which mono_rule's share
    // of candidate x strictly drops.
    std::string mono_rule;
    std::optional<MonoWitness> mono_step;

    // Voter-disjoint decompositions of `profile` (profile == a + b for each pair).
    std::vector<std::pair<ApprovalProfile, ApprovalProfile>> split_pairs;

    // Expected first selections (candidate indices, in order) of selection_rule's
    // round trace on `profile`.
    std::string selection_rule;
    std::vector<int> selection_prefix;
};

// The four-voter profile admitting two voter-disjoint decompositions such that
// no unanimous rule can keep every candidate's combined share between its
// part-profile shares on both of them.
NamedInstance gen_spc_impossibility();

// Profile pairs with identical per-part outcomes whose combination shifts a
// share, for the conditional-utilitarian and fair-utilitarian rules.
NamedInstance gen_cut_wpc();
NamedInstance gen_fut_wpc();

// Profile pairs with agreeing outcome rankings on which the Nash rule moves a
// candidate's combined share outside the per-part range.
NamedInstance gen_nash_rpc();
NamedInstance gen_nash_rpc_large();

// Fairness lower-bound families: the group-fairness factor grows linearly in n.
NamedInstance gen_cut_lb(long n);  // n even, >= 6
NamedInstance gen_fut_lb(long n);  // n divisible by 3, >= 6
NamedInstance gen_ues_lb(long n);  // n >= 2

// Family where the max-payment rule's group-fairness factor is exactly
// max(1, 2l/(l+3)), approaching 2 from below.
NamedInstance gen_map_afs_tight(long l);  // l >= 1

// Family where a full-population deviation improves every voter's utility by
// at least k/2 under the max-payment rule.
NamedInstance gen_map_core_family(long k);  // k >= 2

// Constructs a profile on which the sequential rule with schedule pi picks a
// smaller share for a candidate after one more voter approves it.  Returns
// nullopt for schedules that are monotone by construction (first payment
// always 1, or constant within each row).
std::optional<NamedInstance> gen_nonmonotone(const PaymentWillingness& pi);

// Seven-voter profile where one voter gains by reporting a strict subset of
// their approval set under the max-payment rule.
NamedInstance gen_map_strategyproofness();

// l voters with ballots of size t, pairwise disjoint except for one common
// candidate; that candidate is selected first at share pi(t,1).
NamedInstance gen_prop_lb_w0(const PaymentWillingness& pi, long t, long l);  // t>=1, l>=2

// The booster construction: z*l singleton-voter blocks force the rule to
// process the first z candidates of every ballot before the common candidate.
// Booster counts are realized on a 1/denom grid and the profile scaled to
// integers; denom must exceed z*l.
NamedInstance gen_prop_lb_wz(const PaymentWillingness& pi, long t, long z, long l,
                             long denom);  // t>=2, z in [t-1], l>=2

// ---- registry (CLI surface) ----------------------------------------------

struct CorpusEntry {
    std::string name;
    std::string params_help;  // e.g. "n (even, default 8)"
};

std::vector<CorpusEntry> corpus_catalog();

// Builds an instance by name with string parameters (e.g. {{"n","8"}}).
// nullopt = construction does not apply (nonmonotone on a monotone schedule).
std::optional<NamedInstance> corpus_make(const std::string& name,
                                         const std::map<std::string, std::string>& params);

}  // namespace budgetdiv
