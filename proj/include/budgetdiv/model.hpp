// Core model: candidates, approval ballots, profiles and distributions.
//
// A profile holds an ordered candidate list plus ballot groups (ballot, count).
// Candidate declaration order is significant: sequential rules break argmax
// ties lexicographically by it.  Voters inside a group are interchangeable, so
// n can be large while the representation stays small.
//
// Distribution is templated on the numeric backend: Rat for the combinatorial
// rules (exact, no rounding), double for the Nash solver.  Audits accept both;
// float comparisons go through the approx_* helpers with an explicit tolerance
// which the Rat overloads ignore.
#pragma once

#include "budgetdiv/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace budgetdiv {

struct ApprovalBallot {
    std::vector<int> approved;  // sorted, unique candidate indices

    bool approves(int x) const {
        return std::binary_search(approved.begin(), approved.end(), x);
    }
    size_t size() const { return approved.size(); }
};

// Builds a ballot from arbitrary-order indices; rejects duplicates.
ApprovalBallot make_ballot(std::vector<int> approved);

struct BallotGroup {
    ApprovalBallot ballot;
    long count = 1;
};

class ApprovalProfile {
  public:
    ApprovalProfile(std::vector<std::string> candidate_names,
                    std::vector<BallotGroup> groups);

    int num_candidates() const { return static_cast<int>(names_.size()); }
    long num_voters() const { return n_; }
    const std::vector<std::string>& candidate_names() const { return names_; }
    const std::string& candidate_name(int x) const;
    const std::vector<BallotGroup>& groups() const { return groups_; }

    // -1 when the name is not declared.
    int candidate_index(const std::string& name) const;

    // Number of voters approving x.
    long approval_score(int x) const;

    // Largest ballot size in the profile.
    int max_ballot_size() const;

    bool same_candidates(const ApprovalProfile& other) const {
        return names_ == other.names_;
    }

  private:
    std::vector<std::string> names_;
    std::vector<BallotGroup> groups_;
    long n_ = 0;
};

// Disjoint-voter union: identical candidate universes required; counts of
// identical ballots are added, group order follows a then b's new ballots.
ApprovalProfile combine(const ApprovalProfile& a, const ApprovalProfile& b);

template <typename N>
struct Distribution {
    std::vector<N> shares;

    N total() const {
        N s{};
        for (const N& v : shares) s += v;
        return s;
    }
    bool operator==(const Distribution&) const = default;
};

using ExactDist = Distribution<Rat>;
using FloatDist = Distribution<double>;

inline FloatDist to_float(const ExactDist& d) {
    FloatDist f;
    f.shares.reserve(d.shares.size());
    for (const Rat& r : d.shares) f.shares.push_back(to_double(r));
    return f;
}

// Rounds every share to the nearest multiple of `grid` (default 1e-9), the
// snapping step before exact flow computations on float inputs.
ExactDist snap_to_rational(const FloatDist& d, long grid_denominator = 1000000000L);

// Sum of shares over the ballot's approved candidates.
template <typename N>
N utility(const ApprovalBallot& ballot, const Distribution<N>& dist) {
    N u{};
    for (int x : ballot.approved) {
        if (x < 0 || x >= static_cast<int>(dist.shares.size()))
            throw ModelError("utility: candidate index out of range");
        u += dist.shares[x];
    }
    return u;
}

// ---- backend-aware comparisons -------------------------------------------
// Rat overloads are exact and ignore the tolerance.

inline bool approx_eq(const Rat& a, const Rat& b, double) { return a == b; }
inline bool approx_eq(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
inline bool approx_ge(const Rat& a, const Rat& b, double) { return a >= b; }
inline bool approx_ge(double a, double b, double tol) { return a >= b - tol; }
inline bool approx_le(const Rat& a, const Rat& b, double) { return a <= b; }
inline bool approx_le(double a, double b, double tol) { return a <= b + tol; }

template <typename N>
bool approx_dist_eq(const Distribution<N>& a, const Distribution<N>& b, double tol) {
    if (a.shares.size() != b.shares.size()) return false;
    for (size_t i = 0; i < a.shares.size(); ++i)
        if (!approx_eq(a.shares[i], b.shares[i], tol)) return false;
    return true;
}

// Checks shares in [0,1] and total 1 (exactly, or within tol for floats).
template <typename N>
bool is_distribution(const Distribution<N>& d, double tol = 1e-7) {
    for (const N& s : d.shares)
        if (!approx_ge(s, N{}, tol) || !approx_le(s, N{1}, tol)) return false;
    return approx_eq(d.total(), N{1}, tol);
}

// ---- distribution rankings -----------------------------------------------

enum class Trilean { yes, no, unknown };

// Weak-order comparison of two shares.  For floats, differences within tol
// count as ties and differences inside (tol, boundary_factor*tol) are
// inconclusive; callers skip and log those rather than guessing.
template <typename N>
struct ShareCompare;

template <>
struct ShareCompare<Rat> {
    double tol = 0;
    Trilean ge(const Rat& a, const Rat& b) const { return a >= b ? Trilean::yes : Trilean::no; }
};

template <>
struct ShareCompare<double> {
    double tol = 1e-7;
    static constexpr double boundary_factor = 10.0;
    Trilean ge(double a, double b) const {
        if (a >= b - tol) return Trilean::yes;
        if (b - a >= boundary_factor * tol) return Trilean::no;
        return Trilean::unknown;
    }
};

// True when p and q agree on which candidates do at least as well as x and on
// the pairwise weak order within that prefix.  unknown = a comparison fell in
// the inconclusive float band.
template <typename N>
Trilean ranking_prefix_equal(const Distribution<N>& p, const Distribution<N>& q,
                             int x, double tol) {
    const int m = static_cast<int>(p.shares.size());
    if (m != static_cast<int>(q.shares.size()) || x < 0 || x >= m)
        throw ModelError("ranking_prefix_equal: bad arguments");
    ShareCompare<N> cmp{tol};
    std::vector<int> prefix;
    for (int y = 0; y < m; ++y) {
        Trilean in_p = cmp.ge(p.shares[y], p.shares[x]);
        Trilean in_q = cmp.ge(q.shares[y], q.shares[x]);
        if (in_p == Trilean::unknown || in_q == Trilean::unknown) return Trilean::unknown;
        if (in_p != in_q) return Trilean::no;
        if (in_p == Trilean::yes) prefix.push_back(y);
    }
    for (size_t i = 0; i < prefix.size(); ++i) {
        for (size_t j = i + 1; j < prefix.size(); ++j) {
            int y = prefix[i], z = prefix[j];
            Trilean pyz = cmp.ge(p.shares[y], p.shares[z]);
            Trilean qyz = cmp.ge(q.shares[y], q.shares[z]);
            Trilean pzy = cmp.ge(p.shares[z], p.shares[y]);
            Trilean qzy = cmp.ge(q.shares[z], q.shares[y]);
            if (pyz == Trilean::unknown || qyz == Trilean::unknown ||
                pzy == Trilean::unknown || qzy == Trilean::unknown)
                return Trilean::unknown;
            if (pyz != qyz || pzy != qzy) return Trilean::no;
        }
    }
    return Trilean::yes;
}

}  // namespace budgetdiv
