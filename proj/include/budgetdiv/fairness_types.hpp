// Result records shared by the fairness audits and their exhaustive oracles.
// Witness coalitions are stored as per-group member counts (same order as the
// profile's groups); an empty vector means no witness applies.
#pragma once

#include "budgetdiv/model.hpp"

namespace budgetdiv {

// Smallest a such that every group with a commonly approved candidate gets
// average utility >= |S| / (a * n).  factor is the max of (|S|^2/n) / sum u_i.
template <typename N>
struct AfsAudit {
    bool unbounded = false;          // a coalition with zero total utility exists
    N factor{};
    int witness_candidate = -1;      // commonly approved candidate of the witness
    long witness_size = 0;
    std::vector<long> witness_counts;
};

// max over candidates of (1/n) * sum_{i in N_x} 1 / u_i(p).
template <typename N>
struct PfAudit {
    bool unbounded = false;
    N score{};
    int witness_candidate = -1;
    int zero_utility_group = -1;     // set when unbounded
};

// Best blocking factor achievable with point-mass deviations only.
template <typename N>
struct CoreLowerAudit {
    bool unbounded = false;
    N factor{};
    int witness_candidate = -1;
    long witness_size = 0;
    int zero_utility_group = -1;
};

// Exact blocking factor: max over coalitions S of the LP value
//   t*(S) = max_q min_{i in S} (|S|/n) * u_i(q) / u_i(p).
template <typename N>
struct CoreAudit {
    bool unbounded = false;
    N factor{};
    std::vector<long> witness_counts;
    Distribution<N> witness_deviation;
    int zero_utility_group = -1;
};

}  // namespace budgetdiv
