#include "budgetdiv/classic.hpp"

#include <limits>

namespace budgetdiv {

CutResult run_cut(const ApprovalProfile& profile) {
    const int m = profile.num_candidates();
    const auto& groups = profile.groups();
    std::vector<long> score(m, 0);
    for (int x = 0; x < m; ++x) score[x] = profile.approval_score(x);

    CutResult res;
    res.dist.shares.assign(m, Rat(0));
    res.decomp.per_group.assign(groups.size(),
                                ExactDist{std::vector<Rat>(m, Rat(0))});
    for (size_t g = 0; g < groups.size(); ++g) {
        long best = 0;
        for (int x : groups[g].ballot.approved) best = std::max(best, score[x]);
        std::vector<int> cut;
        for (int x : groups[g].ballot.approved)
            if (score[x] == best) cut.push_back(x);
        Rat share = rat(1, static_cast<long>(cut.size()));
        for (int x : cut) {
            res.decomp.per_group[g].shares[x] = share;
            res.dist.shares[x] += Rat(groups[g].count) * share;
        }
    }
    for (auto& s : res.dist.shares) s /= profile.num_voters();
    return res;
}

FutResult run_fut(const ApprovalProfile& profile) {
    const int m = profile.num_candidates();
    const auto& groups = profile.groups();
    const size_t gn = groups.size();

    std::vector<char> fired(m, 0);
    std::vector<char> spent(gn, 0);
    std::vector<Rat> frozen(gn, Rat(0));  // frozen weight, valid when spent

    FutResult res;
    res.dist.shares.assign(m, Rat(0));
    res.decomp.per_group.assign(gn, ExactDist{std::vector<Rat>(m, Rat(0))});

    // Initial threshold: maximum total approver weight at lambda = 1.
    Rat t = 0;
    for (int x = 0; x < m; ++x) {
        Rat score(profile.approval_score(x));
        if (score > t) t = score;
    }

    auto settle = [&](const std::vector<int>& batch, const Rat& lambda) {
        res.events.push_back({lambda, batch});
        for (int x : batch) fired[x] = 1;
        for (size_t g = 0; g < gn; ++g) {
            if (spent[g]) continue;
            std::vector<int> hits;
            for (int x : groups[g].ballot.approved)
                if (fired[x]) hits.push_back(x);
            if (hits.empty()) continue;
            Rat share = rat(1, static_cast<long>(hits.size()));
            for (int x : hits) {
                res.decomp.per_group[g].shares[x] = share;
                res.dist.shares[x] += Rat(groups[g].count) * share;
            }
            spent[g] = 1;
            frozen[g] = lambda;
        }
    };

    // First event: all candidates at the initial maximum fire at lambda = 1.
    {
        std::vector<int> batch;
        for (int x = 0; x < m; ++x)
            if (Rat(profile.approval_score(x)) == t) batch.push_back(x);
        settle(batch, Rat(1));
    }

    // Subsequent events: fire the minimal level (t - s_x) / u_x where u_x
    // counts unspent approvers and s_x is the frozen mass on x.
    for (;;) {
        bool anyone_unspent = false;
        for (size_t g = 0; g < gn; ++g)
            if (!spent[g]) anyone_unspent = true;
        if (!anyone_unspent) break;

        bool have = false;
        Rat best_lambda;
        std::vector<int> batch;
        for (int x = 0; x < m; ++x) {
            if (fired[x]) continue;
            Rat u = 0, s = 0;
            for (size_t g = 0; g < gn; ++g) {
                if (!groups[g].ballot.approves(x)) continue;
                if (spent[g])
                    s += Rat(groups[g].count) * frozen[g];
                else
                    u += Rat(groups[g].count);
            }
            if (u == 0) continue;  // nobody left to push x over the threshold
            Rat lambda = (t - s) / u;
            if (!have || lambda < best_lambda) {
                have = true;
                best_lambda = lambda;
                batch.assign(1, x);
            } else if (lambda == best_lambda) {
                batch.push_back(x);
            }
        }
        if (!have) break;  // remaining voters approve no viable candidate (unreachable)
        settle(batch, best_lambda);
    }
    for (auto& s : res.dist.shares) s /= profile.num_voters();
    return res;
}

static FloatDist ues_float(const ApprovalProfile& profile) {
    FloatDist p;
    p.shares.assign(profile.num_candidates(), 0.0);
    const double n = static_cast<double>(profile.num_voters());
    for (const BallotGroup& g : profile.groups())
        for (int x : g.ballot.approved)
            p.shares[x] += static_cast<double>(g.count) / (n * static_cast<double>(g.ballot.size()));
    return p;
}

NashResult run_nash(const ApprovalProfile& profile, const NashSolverConfig& config) {
    if (config.tolerance <= 0) throw ValidationError("nash tolerance must be positive");
    if (config.max_iterations < 1) throw ValidationError("nash max_iterations must be >= 1");
    const int m = profile.num_candidates();
    const auto& groups = profile.groups();
    const double n = static_cast<double>(profile.num_voters());

    FloatDist p = config.init ? *config.init : ues_float(profile);
    if (static_cast<int>(p.shares.size()) != m)
        throw ValidationError("nash init has wrong number of shares");
    for (const BallotGroup& g : groups) {
        double u = 0;
        for (int x : g.ballot.approved) u += p.shares[x];
        if (u <= 0) throw ValidationError("nash init gives a voter zero utility");
    }

    NashResult res;
    std::vector<double> next(m, 0.0);
    const double verify_tol = 10 * config.tolerance;
    for (long it = 1; it <= config.max_iterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (const BallotGroup& g : groups) {
            double u = 0;
            for (int x : g.ballot.approved) u += p.shares[x];
            double w = static_cast<double>(g.count) / (n * u);
            for (int x : g.ballot.approved) next[x] += w * p.shares[x];
        }
        double change = 0;
        for (int x = 0; x < m; ++x)
            change = std::max(change, std::fabs(next[x] - p.shares[x]));
        p.shares.swap(next);
        res.iterations = it;
        res.residual = change;
        // KKT verification costs about one iteration, so only check every 64
        // iterations once the iterate-change criterion already holds.
        if (change < config.tolerance && (it % 64 == 0 || change == 0)) {
            if (verify_nash(profile, p, verify_tol).ok) {
                res.converged = true;
                break;
            }
        }
    }
    if (!res.converged && verify_nash(profile, p, verify_tol).ok &&
        res.residual < config.tolerance)
        res.converged = true;  // landed exactly on the last iteration
    res.dist = std::move(p);
    return res;
}

NashCheck verify_nash(const ApprovalProfile& profile, const FloatDist& p, double tol) {
    const int m = profile.num_candidates();
    const auto& groups = profile.groups();
    const double n = static_cast<double>(profile.num_voters());
    NashCheck check;
    check.scores.assign(m, 0.0);

    std::vector<double> util(groups.size(), 0.0);
    for (size_t g = 0; g < groups.size(); ++g) {
        for (int x : groups[g].ballot.approved) util[g] += p.shares[x];
        if (util[g] <= 0) {
            check.detail = "voter group " + std::to_string(g) + " has zero utility";
            return check;
        }
    }
    for (size_t g = 0; g < groups.size(); ++g)
        for (int x : groups[g].ballot.approved)
            check.scores[x] += static_cast<double>(groups[g].count) / util[g];

    check.ok = true;
    for (int x = 0; x < m; ++x) {
        double gap = check.scores[x] - n;               // must be <= 0 (within tol)
        if (p.shares[x] > tol) gap = std::fabs(gap);    // support: equality required
        if (gap > check.worst_gap) {
            check.worst_gap = gap;
            check.worst_candidate = x;
        }
        if (gap > tol) {
            check.ok = false;
            check.detail = "optimality gap " + std::to_string(gap) + " at candidate '" +
                           profile.candidate_name(x) + "'";
        }
    }
    return check;
}

}  // namespace budgetdiv
