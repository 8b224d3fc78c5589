#include "budgetdiv/model.hpp"

#include <map>
#include <set>

namespace budgetdiv {

ApprovalBallot make_ballot(std::vector<int> approved) {
    std::sort(approved.begin(), approved.end());
    if (std::adjacent_find(approved.begin(), approved.end()) != approved.end())
        throw ModelError("ballot lists a candidate twice");
    return ApprovalBallot{std::move(approved)};
}

ApprovalProfile::ApprovalProfile(std::vector<std::string> candidate_names,
                                 std::vector<BallotGroup> groups)
    : names_(std::move(candidate_names)), groups_(std::move(groups)) {
    if (names_.empty()) throw ModelError("profile needs at least one candidate");
    std::set<std::string> seen;
    for (const std::string& name : names_) {
        if (name.empty()) throw ModelError("empty candidate name");
        if (!seen.insert(name).second)
            throw ModelError("duplicate candidate name '" + name + "'");
    }
    if (groups_.empty()) throw ModelError("profile needs at least one voter");
    for (const BallotGroup& g : groups_) {
        if (g.count < 1) throw ModelError("ballot group with count < 1");
        if (g.ballot.approved.empty()) throw ModelError("empty ballot");
        for (int x : g.ballot.approved)
            if (x < 0 || x >= num_candidates())
                throw ModelError("ballot references undeclared candidate");
        if (!std::is_sorted(g.ballot.approved.begin(), g.ballot.approved.end()))
            throw ModelError("ballot indices not sorted (use make_ballot)");
        n_ += g.count;
    }
}

const std::string& ApprovalProfile::candidate_name(int x) const {
    if (x < 0 || x >= num_candidates()) throw ModelError("candidate index out of range");
    return names_[x];
}

int ApprovalProfile::candidate_index(const std::string& name) const {
    for (int i = 0; i < num_candidates(); ++i)
        if (names_[i] == name) return i;
    return -1;
}

long ApprovalProfile::approval_score(int x) const {
    if (x < 0 || x >= num_candidates()) throw ModelError("candidate index out of range");
    long score = 0;
    for (const BallotGroup& g : groups_)
        if (g.ballot.approves(x)) score += g.count;
    return score;
}

int ApprovalProfile::max_ballot_size() const {
    size_t t = 0;
    for (const BallotGroup& g : groups_) t = std::max(t, g.ballot.size());
    return static_cast<int>(t);
}

ApprovalProfile combine(const ApprovalProfile& a, const ApprovalProfile& b) {
    if (!a.same_candidates(b))
        throw ModelError("combine: candidate universes differ");
    std::vector<BallotGroup> merged = a.groups();
    for (const BallotGroup& g : b.groups()) {
        auto hit = std::find_if(merged.begin(), merged.end(), [&](const BallotGroup& h) {
            return h.ballot.approved == g.ballot.approved;
        });
        if (hit != merged.end())
            hit->count += g.count;
        else
            merged.push_back(g);
    }
    return ApprovalProfile(a.candidate_names(), std::move(merged));
}

ExactDist snap_to_rational(const FloatDist& d, long grid_denominator) {
    if (grid_denominator < 1) throw ValidationError("snap grid must be positive");
    ExactDist out;
    out.shares.reserve(d.shares.size());
    for (double s : d.shares) {
        double scaled = s * static_cast<double>(grid_denominator);
        Int num(static_cast<long>(std::llround(scaled)));
        Rat r(num, Int(grid_denominator));
        r.canonicalize();
        out.shares.push_back(r);
    }
    return out;
}

}  // namespace budgetdiv
