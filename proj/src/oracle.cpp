#include "budgetdiv/oracle.hpp"

#include <bit>
#include <cstdint>

namespace budgetdiv::oracle {

namespace {

// Backend policy: exact comparisons for Rat, pivot tolerance for double.
template <typename N>
struct LpPolicy;

template <>
struct LpPolicy<Rat> {
    static bool pos(const Rat& v) { return v > 0; }
    static bool nonneg_check(const Rat& v) { return v >= 0; }
    static bool le_check(const Rat& a, const Rat& b) { return a <= b; }
    static bool ge_check(const Rat& a, const Rat& b) { return a >= b; }
};

template <>
struct LpPolicy<double> {
    static constexpr double eps = 1e-9;
    static bool pos(double v) { return v > eps; }
    static bool nonneg_check(double v) { return v >= -1e-6; }
    static bool le_check(double a, double b) { return a <= b + 1e-6; }
    static bool ge_check(double a, double b) { return a >= b - 1e-6; }
};

}  // namespace

template <typename N>
MaximinSolution<N> lp_maximin(const MaximinLp<N>& lp) {
    using P = LpPolicy<N>;
    const size_t nr = lp.rows.size();
    if (nr == 0) throw ValidationError("maximin LP needs at least one row");
    const size_t nc = lp.rows[0].size();
    if (nc == 0) throw ValidationError("maximin LP needs at least one column");
    for (const auto& row : lp.rows) {
        if (row.size() != nc) throw ValidationError("maximin LP rows have unequal length");
        for (const N& v : row)
            if (v < N{}) throw ValidationError("maximin LP entries must be non-negative");
    }

    // An all-zero row pins the game value at 0; that row is its own certificate.
    for (size_t i = 0; i < nr; ++i) {
        bool zero = true;
        for (const N& v : lp.rows[i])
            if (P::pos(v)) zero = false;
        if (zero) {
            MaximinSolution<N> sol;
            sol.value = N{};
            sol.q.assign(nc, N{1} / N(static_cast<long>(nc)));
            sol.certificate.assign(nr, N{});
            sol.certificate[i] = N{1};
            return sol;
        }
    }

    // Tableau for: maximize sum(y) s.t. R^T y <= 1, y >= 0.
    // Constraint rows correspond to LP columns (candidates); variables are
    // y_0..y_{nr-1} then one slack per constraint.  RHS is the last column.
    const size_t vars = nr + nc;
    std::vector<std::vector<N>> tab(nc, std::vector<N>(vars + 1, N{}));
    for (size_t c = 0; c < nc; ++c) {
        for (size_t i = 0; i < nr; ++i) tab[c][i] = lp.rows[i][c];
        tab[c][nr + c] = N{1};
        tab[c][vars] = N{1};
    }
    std::vector<N> cost(vars, N{});  // reduced costs; maximize while any > 0
    for (size_t i = 0; i < nr; ++i) cost[i] = N{1};
    N obj{};
    std::vector<size_t> basis(nc);
    for (size_t c = 0; c < nc; ++c) basis[c] = nr + c;

    const long pivot_cap = 2000 * static_cast<long>(vars + 1);
    for (long step = 0;; ++step) {
        if (step > pivot_cap) throw Error("maximin LP exceeded pivot cap");
        size_t enter = vars;
        for (size_t j = 0; j < vars; ++j)
            if (P::pos(cost[j])) {  // Bland: smallest eligible index enters
                enter = j;
                break;
            }
        if (enter == vars) break;

        size_t leave = nc;
        N best_ratio{};
        for (size_t r = 0; r < nc; ++r) {
            if (!P::pos(tab[r][enter])) continue;
            N ratio = tab[r][vars] / tab[r][enter];
            if (leave == nc || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == nc) throw Error("maximin LP unbounded");  // cannot happen: y is boxed

        N piv = tab[leave][enter];
        for (size_t j = 0; j <= vars; ++j) tab[leave][j] /= piv;
        for (size_t r = 0; r < nc; ++r) {
            if (r == leave) continue;
            N f = tab[r][enter];
            if (f == N{}) continue;
            for (size_t j = 0; j <= vars; ++j) tab[r][j] -= f * tab[leave][j];
        }
        N cf = cost[enter];
        obj += cf * tab[leave][vars];
        for (size_t j = 0; j < vars; ++j) cost[j] -= cf * tab[leave][j];
        basis[leave] = enter;
    }

    if (!P::pos(obj)) throw Error("maximin LP value unexpectedly zero");

    std::vector<N> y(nr, N{});
    for (size_t r = 0; r < nc; ++r)
        if (basis[r] < nr) y[basis[r]] = tab[r][vars];
    std::vector<N> dual(nc, N{});
    for (size_t c = 0; c < nc; ++c) dual[c] = -cost[nr + c];

    MaximinSolution<N> sol;
    sol.value = N{1} / obj;
    sol.q.resize(nc);
    for (size_t c = 0; c < nc; ++c) sol.q[c] = dual[c] / obj;
    sol.certificate.resize(nr);
    for (size_t i = 0; i < nr; ++i) sol.certificate[i] = y[i] / obj;

    // Certificate audit: q on the simplex achieving >= value on every row,
    // certificate a row mixture dominated by value on every column.
    {
        N qsum{}, csum{};
        for (const N& v : sol.q) {
            if (!P::nonneg_check(v)) throw Error("maximin LP produced negative q");
            qsum += v;
        }
        for (const N& v : sol.certificate) {
            if (!P::nonneg_check(v)) throw Error("maximin LP produced negative certificate");
            csum += v;
        }
        if (!P::le_check(qsum, N{1}) || !P::ge_check(qsum, N{1}) ||
            !P::le_check(csum, N{1}) || !P::ge_check(csum, N{1}))
            throw Error("maximin LP solution does not lie on the simplex");
        for (size_t i = 0; i < nr; ++i) {
            N v{};
            for (size_t c = 0; c < nc; ++c) v += lp.rows[i][c] * sol.q[c];
            if (!P::ge_check(v, sol.value)) throw Error("maximin LP primal check failed");
        }
        for (size_t c = 0; c < nc; ++c) {
            N v{};
            for (size_t i = 0; i < nr; ++i) v += sol.certificate[i] * lp.rows[i][c];
            if (!P::le_check(v, sol.value)) throw Error("maximin LP certificate check failed");
        }
    }
    return sol;
}

template <typename N>
CoreAudit<N> enumerate_core(const ApprovalProfile& profile, const Distribution<N>& p,
                            long limit_n) {
    if (profile.num_voters() > limit_n)
        throw ValidationError("enumerate_core limited to " + std::to_string(limit_n) +
                              " voters, profile has " + std::to_string(profile.num_voters()));
    const auto& groups = profile.groups();
    const size_t gn = groups.size();
    const int m = profile.num_candidates();
    const N n(static_cast<long>(profile.num_voters()));

    CoreAudit<N> audit;
    std::vector<N> util(gn);
    for (size_t g = 0; g < gn; ++g) {
        util[g] = utility(groups[g].ballot, p);
        if (!(util[g] > N{})) {
            // Any deviation putting mass on this voter's ballot blocks at
            // every factor: the coalition {voter} is an unbounded witness.
            audit.unbounded = true;
            audit.zero_utility_group = static_cast<int>(g);
            audit.witness_counts.assign(gn, 0);
            audit.witness_counts[g] = 1;
            audit.witness_deviation.shares.assign(m, N{});
            audit.witness_deviation.shares[groups[g].ballot.approved[0]] = N{1};
            return audit;
        }
    }

    // t*(S) scales linearly in |S| for a fixed set of distinct ballots, so
    // each subset of groups is only evaluated at full multiplicity.
    bool have = false;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << gn); ++mask) {
        long cnt = 0;
        N umax{};
        for (size_t g = 0; g < gn; ++g)
            if (mask >> g & 1) {
                cnt += groups[g].count;
                if (util[g] > umax) umax = util[g];
            }
        N scale = N(cnt) / n;
        // Every member's deviation ratio is capped by (|S|/n.) / u_i, so the
        // subset cannot beat the incumbent unless this bound does.
        if (have && !(scale / umax > audit.factor)) continue;

        MaximinLp<N> lp;
        for (size_t g = 0; g < gn; ++g) {
            if (!(mask >> g & 1)) continue;
            std::vector<N> row(m, N{});
            for (int x : groups[g].ballot.approved) row[x] = scale / util[g];
            lp.rows.push_back(std::move(row));
        }
        MaximinSolution<N> sol = lp_maximin(lp);
        if (!have || sol.value > audit.factor) {
            have = true;
            audit.factor = sol.value;
            audit.witness_counts.assign(gn, 0);
            for (size_t g = 0; g < gn; ++g)
                if (mask >> g & 1) audit.witness_counts[g] = groups[g].count;
            audit.witness_deviation.shares = std::move(sol.q);
        }
    }
    return audit;
}

template <typename N>
AfsAudit<N> enumerate_afs(const ApprovalProfile& profile, const Distribution<N>& p,
                          long limit_n) {
    if (profile.num_voters() > limit_n)
        throw ValidationError("enumerate_afs limited to " + std::to_string(limit_n) +
                              " voters, profile has " + std::to_string(profile.num_voters()));
    if (profile.num_candidates() > 64)
        throw ValidationError("enumerate_afs limited to 64 candidates");
    const auto& groups = profile.groups();
    const size_t gn = groups.size();
    const N n(static_cast<long>(profile.num_voters()));

    std::vector<N> util(gn);
    std::vector<std::uint64_t> ballot_mask(gn, 0);
    for (size_t g = 0; g < gn; ++g) {
        util[g] = utility(groups[g].ballot, p);
        for (int x : groups[g].ballot.approved) ballot_mask[g] |= std::uint64_t{1} << x;
    }

    AfsAudit<N> audit;
    std::vector<long> chosen(gn, 0);
    bool have = false;

    // Walk every per-group count vector, tracking the running ballot
    // intersection; empty intersection prunes the whole subtree.  The first
    // zero-utility coalition settles the audit, so stop expanding then.
    auto rec = [&](auto&& self, size_t g, long k, N usum, std::uint64_t inter) -> void {
        if (audit.unbounded) return;
        if (g == gn) {
            if (k == 0) return;
            int witness_x = std::countr_zero(inter);
            if (!(usum > N{})) {
                if (!audit.unbounded) {
                    audit.unbounded = true;
                    audit.witness_candidate = witness_x;
                    audit.witness_size = k;
                    audit.witness_counts = chosen;
                }
                return;
            }
            N factor = N(k) * N(k) / (n * usum);
            if (!have || factor > audit.factor) {
                have = true;
                audit.factor = factor;
                audit.witness_candidate = witness_x;
                audit.witness_size = k;
                audit.witness_counts = chosen;
            }
            return;
        }
        for (long c = 0; c <= groups[g].count; ++c) {
            std::uint64_t next_inter = c == 0 ? inter : (inter & ballot_mask[g]);
            if (next_inter == 0) break;  // higher c only shrinks it further
            chosen[g] = c;
            self(self, g + 1, k + c, usum + N(c) * util[g], next_inter);
        }
        chosen[g] = 0;
    };
    rec(rec, 0, 0, N{}, ~std::uint64_t{0});
    return audit;
}

template MaximinSolution<Rat> lp_maximin(const MaximinLp<Rat>&);
template MaximinSolution<double> lp_maximin(const MaximinLp<double>&);
template CoreAudit<Rat> enumerate_core(const ApprovalProfile&, const Distribution<Rat>&, long);
template CoreAudit<double> enumerate_core(const ApprovalProfile&, const Distribution<double>&, long);
template AfsAudit<Rat> enumerate_afs(const ApprovalProfile&, const Distribution<Rat>&, long);
template AfsAudit<double> enumerate_afs(const ApprovalProfile&, const Distribution<double>&, long);

}  // namespace budgetdiv::oracle
