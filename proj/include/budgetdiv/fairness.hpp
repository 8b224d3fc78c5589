// Fairness and proportionality audits of a distribution against a profile.
//
// Fast routes (afs_factor, core_lower_single) exploit that the best witness
// coalition for a candidate consists of its lowest-utility approvers, so a
// sort + prefix walk per candidate suffices.  The exhaustive routes in
// oracle.hpp recompute the same quantities from the defining formulas;
// brute_afs and core_exact are thin wrappers over those.
//
// decompose answers whether the distribution can be written as an average of
// per-voter distributions, each supported on the voter's own ballot, via an
// exact rational max-flow; infeasibility comes with a violated candidate set
// X (share mass of X exceeds the voter mass touching X).  Float inputs are
// snapped to the 1e-9 rational grid first and checked with a slack.
#pragma once

#include "budgetdiv/fairness_types.hpp"
#include "budgetdiv/seqpay.hpp"

namespace budgetdiv {

template <typename N>
AfsAudit<N> afs_factor(const ApprovalProfile& profile, const Distribution<N>& p);

template <typename N>
AfsAudit<N> brute_afs(const ApprovalProfile& profile, const Distribution<N>& p,
                      long limit_n = 20);

template <typename N>
PfAudit<N> pf_score(const ApprovalProfile& profile, const Distribution<N>& p);

template <typename N>
CoreLowerAudit<N> core_lower_single(const ApprovalProfile& profile, const Distribution<N>& p);

template <typename N>
CoreAudit<N> core_exact(const ApprovalProfile& profile, const Distribution<N>& p,
                        long limit_n = 14);

// min over coalition members of (|S|/n) * u_i(q) / u_i(p): the factor this
// concrete deviation certifies.  The coalition is given as per-group counts.
// Throws when a member has zero utility under p (the ratio is unbounded).
template <typename N>
N deviation_ratio(const ApprovalProfile& profile, const Distribution<N>& p,
                  const std::vector<long>& coalition_counts, const Distribution<N>& q);

struct DecomposeCut {
    std::vector<int> candidates;  // the violated set X
    Rat share_mass;               // p(X)
    Rat voter_mass;               // |{i : A_i ∩ X nonempty}| / n
};

struct DecomposeResult {
    bool feasible = false;
    Decomposition decomp;            // per-group split when feasible
    std::optional<DecomposeCut> cut; // violation certificate otherwise
};

DecomposeResult decompose(const ApprovalProfile& profile, const ExactDist& p,
                          const Rat& slack = Rat(0));
DecomposeResult decompose(const ApprovalProfile& profile, const FloatDist& p,
                          double slack = 1e-6);

}  // namespace budgetdiv
