// The three classic division rules the sequential family is measured against.
//
// CUT: every voter splits 1/n uniformly over their approved candidates of
// maximum approval score.
//
// FUT: voter weights grow from 1 at a common rate; the first candidate(s)
// whose total approver weight reaches the initial maximum t "fire", their
// unspent approvers split 1/n uniformly over the fired candidates they
// approve and their weights freeze at the firing level.  Repeats until every
// voter has spent.  Frozen approvers keep contributing their frozen weight to
// not-yet-fired candidates, so the firing level of candidate x with unspent
// approver count u_x and frozen approver mass s_x is (t - s_x) / u_x.
//
// NASH: maximizes the product of voter utilities, computed by proportional
// response: each voter splits their 1/n proportionally to the current shares
// of their approved candidates, p_{k+1}(x) = (1/n) sum_{i in N_x} p_k(x)/u_i(p_k).
// Float backend; convergence = max-norm change < tolerance AND the KKT check
// (verify_nash) passing at 10x tolerance.
#pragma once

#include "budgetdiv/seqpay.hpp"

namespace budgetdiv {

struct CutResult {
    ExactDist dist;
    Decomposition decomp;
};
CutResult run_cut(const ApprovalProfile& profile);

struct FutEvent {
    Rat lambda;                // firing level; 1 for the first event, non-decreasing
    std::vector<int> fired;    // all candidates reaching the threshold together
};
struct FutResult {
    ExactDist dist;
    Decomposition decomp;
    std::vector<FutEvent> events;
};
FutResult run_fut(const ApprovalProfile& profile);

struct NashSolverConfig {
    double tolerance = 1e-7;
    long max_iterations = 2000000;
    // Starting point; defaults to the UES distribution, which gives every
    // voter positive utility and every approved candidate positive share.
    std::optional<FloatDist> init;
};

struct NashResult {
    FloatDist dist;
    long iterations = 0;
    double residual = 0;  // last max-norm iterate change
    bool converged = false;
};
// Returns the last iterate either way; callers treat !converged as an error.
NashResult run_nash(const ApprovalProfile& profile, const NashSolverConfig& config = {});

// First-order optimality check for the utility-product maximizer: with
// score(x) = sum_{i in N_x} 1/u_i(p), p is optimal iff score(x) <= n for all x
// with equality on the support.  Checked within tol; shares <= tol count as
// zero support.  A zero-utility voter fails immediately.
struct NashCheck {
    bool ok = false;
    std::vector<double> scores;  // per candidate; NaN-free, n is the reference
    int worst_candidate = -1;
    double worst_gap = 0;        // max constraint violation found
    std::string detail;          // human-readable failure reason, empty when ok
};
NashCheck verify_nash(const ApprovalProfile& profile, const FloatDist& p, double tol);

}  // namespace budgetdiv
