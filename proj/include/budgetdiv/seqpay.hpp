// Sequential payment rules.
//
// A payment willingness pi(t, j) says how much of their unit budget a voter
// with t approved candidates is willing to pay for the j-th of them that gets
// selected.  Valid willingness: sum_{j<=t} pi(t,j) = 1 and pi(t,j) >= pi(t,j+1)
// for every t.  The engine runs m rounds; each round selects the candidate
// maximizing the total willingness of its approvers (ties broken by candidate
// declaration order), assigns it share total/n computed at selection time, and
// marks it selected so approvers move on to their next payment level.
#pragma once

#include "budgetdiv/model.hpp"

#include <functional>
#include <map>

namespace budgetdiv {

struct PaymentWillingness {
    std::string name;
    // pay(t, j) for 1 <= j <= t.  Built-ins are total closed forms; custom
    // tables throw ValidationError beyond their declared coverage.
    std::function<Rat(long t, long j)> pay;

    // Checks both willingness conditions for every ballot size in `sizes`.
    void validate_for_sizes(const std::vector<long>& sizes) const;
};

PaymentWillingness willingness_map();   // pi(t,1)=1, rest 0
PaymentWillingness willingness_ues();   // pi(t,j)=1/t
// Geometric payment scheme: pi(t,j) proportional to gamma^j (gamma=0 degrades
// to the max-approval rule, gamma=1 to the uniform one).  Requires 0<=gamma<=1.
PaymentWillingness willingness_mps(const Rat& gamma);
// pi(1,1)=1; pi(t,1)=2/3, pi(t,2)=1/3, rest 0 for t>=2.
PaymentWillingness willingness_additive_third();
// Explicit table: sizes -> (pi(t,1),...,pi(t,t)).  Validated on construction;
// evaluation outside the declared sizes throws.
PaymentWillingness willingness_custom(std::string name,
                                      std::map<long, std::vector<Rat>> table);

// Per-round record: every approver group of the selected candidate appears,
// zero payments included, with the per-voter amount pi(t, levels_paid+1).
struct RoundPayment {
    int group = -1;
    Rat per_voter;
};
struct RuleRound {
    int candidate = -1;
    Rat total;  // sum over approvers of the per-voter willingness, = n * share
    std::vector<RoundPayment> payments;
};
struct RuleTrace {
    std::vector<RuleRound> rounds;
};

struct SeqResult {
    ExactDist dist;
    RuleTrace trace;
};

SeqResult run_sequential(const ApprovalProfile& profile, const PaymentWillingness& pi);

// Per-voter distributions with p = (1/n) * sum_i p^i.  Voters of one group are
// interchangeable, so one entry per group is stored.
struct Decomposition {
    std::vector<ExactDist> per_group;

    // Voter i (0-based over the expanded profile, groups in declared order).
    const ExactDist& for_voter(const ApprovalProfile& profile, long i) const;
    // Recomputes (1/n) * sum_i p^i; used by tests to check reconstruction.
    ExactDist reconstruct(const ApprovalProfile& profile) const;
};

Decomposition decomposition_from_trace(const ApprovalProfile& profile,
                                       const RuleTrace& trace);

}  // namespace budgetdiv
