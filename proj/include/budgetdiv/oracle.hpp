// Exhaustive reference computations: a dense maximin LP solver plus brute
// subset enumerations for the blocking-coalition and coalition-fairness
// factors.  These are deliberately independent of the fast audit routes in
// fairness.hpp so the two can cross-check each other.
//
// The LP solves max_q min_rows (R q) over the probability simplex via the
// classic game transform: maximize sum y subject to R^T y <= 1, y >= 0 (slack
// basis start, Bland's rule, so no cycling).  Exact rational pivoting for Rat,
// 1e-9 pivot tolerance for double.  Besides the optimal q it returns the dual
// certificate: a convex combination of rows dominated by value * 1, which is
// re-checked before returning.
#pragma once

#include "budgetdiv/fairness_types.hpp"

namespace budgetdiv::oracle {

template <typename N>
struct MaximinLp {
    std::vector<std::vector<N>> rows;  // non-negative payoff rows, equal length
};

template <typename N>
struct MaximinSolution {
    N value{};
    std::vector<N> q;            // maximin mixed column strategy, sums to 1
    std::vector<N> certificate;  // row mixture y with y^T R <= value * 1
};

template <typename N>
MaximinSolution<N> lp_maximin(const MaximinLp<N>& lp);

// Exact blocking factor by enumerating coalitions.  The LP value for a
// coalition scales linearly in its size, so only distinct-ballot subsets are
// enumerated, each taken at full multiplicity.  Refuses profiles with more
// than limit_n voters.
template <typename N>
CoreAudit<N> enumerate_core(const ApprovalProfile& profile, const Distribution<N>& p,
                            long limit_n = 14);

// Defining-formula enumeration of coalition fairness: every sub-multiset of
// voters with a commonly approved candidate.  Refuses profiles with more than
// limit_n voters (or more than 64 candidates).
template <typename N>
AfsAudit<N> enumerate_afs(const ApprovalProfile& profile, const Distribution<N>& p,
                          long limit_n = 20);

}  // namespace budgetdiv::oracle
