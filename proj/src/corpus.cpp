#include "budgetdiv/corpus.hpp"

#include "budgetdiv/consistency.hpp"
#include "budgetdiv/rules.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace budgetdiv {
namespace {

using Rows = std::vector<std::pair<long, std::vector<std::string>>>;

ApprovalProfile build_profile(const std::vector<std::string>& names, const Rows& rows) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
    std::vector<BallotGroup> groups;
    groups.reserve(rows.size());
    for (const auto& [count, ballot_names] : rows) {
        std::vector<int> b;
        b.reserve(ballot_names.size());
        for (const auto& nm : ballot_names) b.push_back(index.at(nm));
        groups.push_back(BallotGroup{make_ballot(std::move(b)), count});
    }
    return ApprovalProfile(names, std::move(groups));
}

ExactDist dist_of(const ApprovalProfile& profile,
                  const std::vector<std::pair<std::string, Rat>>& entries) {
    ExactDist d;
    d.shares.assign(profile.num_candidates(), Rat(0));
    for (const auto& [nm, v] : entries) {
        int x = profile.candidate_index(nm);
        if (x < 0) throw ModelError("dist_of: unknown candidate " + nm);
        d.shares[x] = v;
    }
    return d;
}

FloatDist fdist_of(const ApprovalProfile& profile,
                   const std::vector<std::pair<std::string, double>>& entries) {
    FloatDist d;
    d.shares.assign(profile.num_candidates(), 0.0);
    for (const auto& [nm, v] : entries) {
        int x = profile.candidate_index(nm);
        if (x < 0) throw ModelError("fdist_of: unknown candidate " + nm);
        d.shares[x] = v;
    }
    return d;
}

std::string sanitize(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == ':' || c == '/') c = '_';
    return out;
}

// Smallest integer q with q * a > b (a > 0), i.e. floor(b/a) + 1.
long least_over(const Rat& b, const Rat& a) {
    return to_long(floor_rat(b / a)) + 1;
}

}  // namespace

NamedInstance gen_spc_impossibility() {
    std::vector<std::string> names{"a1", "a2", "b1", "b2"};
    NamedInstance ni{"spc_impossibility",
                     "Four voters on a 2x2 grid of ballots.  The column split and the row "
                     "split each have unanimous halves, but no rule honoring unanimity can "
                     "keep every combined share between its per-half shares on both splits.",
                     build_profile(names, {{1, {"a1", "b1"}},
                                           {1, {"a1", "b2"}},
                                           {1, {"a2", "b1"}},
                                           {1, {"a2", "b2"}}})};
    ni.expected.push_back({"map", dist_of(ni.profile, {{"a1", rat(1, 2)}, {"a2", rat(1, 2)}})});
    ni.split_pairs.push_back({build_profile(names, {{1, {"a1", "b1"}}, {1, {"a1", "b2"}}}),
                              build_profile(names, {{1, {"a2", "b1"}}, {1, {"a2", "b2"}}})});
    ni.split_pairs.push_back({build_profile(names, {{1, {"a1", "b1"}}, {1, {"a2", "b1"}}}),
                              build_profile(names, {{1, {"a1", "b2"}}, {1, {"a2", "b2"}}})});
    return ni;
}

NamedInstance gen_cut_wpc() {
    std::vector<std::string> names{"a", "b", "c"};
    NamedInstance ni{"cut_wpc",
                     "Two profiles the conditional-utilitarian rule maps to the same "
                     "distribution; merging them moves c's share from 1/10 to 3/20.",
                     build_profile(names, {{2, {"a"}}, {4, {"a", "c"}}, {1, {"c"}}, {3, {"b"}}})};
    ni.second = build_profile(
        names, {{6, {"a"}}, {2, {"b"}}, {1, {"b", "c"}}, {1, {"c"}}});
    ExactDist same = dist_of(ni.profile,
                             {{"a", rat(6, 10)}, {"b", rat(3, 10)}, {"c", rat(1, 10)}});
    ni.expected.push_back({"cut", same});
    ni.expected_second.push_back({"cut", same});
    ni.expected_combined.push_back(
        {"cut", dist_of(ni.profile, {{"a", rat(12, 20)}, {"b", rat(5, 20)}, {"c", rat(3, 20)}})});
    return ni;
}

NamedInstance gen_fut_wpc() {
    std::vector<std::string> names{"a", "b", "c"};
    NamedInstance ni{"fut_wpc",
                     "Two profiles the fair-utilitarian rule maps to the same distribution; "
                     "merging them moves b's share from 4/14 to 9/28 (second firing at 14/9).",
                     build_profile(names, {{3, {"a"}},
                                           {5, {"a", "c"}},
                                           {1, {"c"}},
                                           {1, {"b", "c"}},
                                           {4, {"b"}}})};
    ni.second = build_profile(names, {{6, {"a"}}, {2, {"a", "b"}}, {4, {"b"}}, {2, {"c"}}});
    ExactDist same = dist_of(ni.profile,
                             {{"a", rat(8, 14)}, {"b", rat(4, 14)}, {"c", rat(2, 14)}});
    ni.expected.push_back({"fut", same});
    ni.expected_second.push_back({"fut", same});
    ni.expected_combined.push_back(
        {"fut", dist_of(ni.profile, {{"a", rat(16, 28)}, {"b", rat(9, 28)}, {"c", rat(3, 28)}})});
    return ni;
}

NamedInstance gen_nash_rpc() {
    std::vector<std::string> names{"a", "b", "c"};
    NamedInstance ni{"nash_rpc",
                     "Nash-welfare pair whose parts rank candidates identically; combining "
                     "drops a's share below both parts' shares.",
                     build_profile(names, {{3, {"a"}},
                                           {2, {"b", "c"}},
                                           {2, {"c"}},
                                           {3, {"a", "b"}}})};
    ni.second = build_profile(
        names, {{1, {"a"}}, {1, {"b"}}, {1, {"c"}}, {2, {"a", "b"}}, {4, {"a", "c"}}});
    ni.expected_float.push_back(
        {"nash", fdist_of(ni.profile, {{"a", 0.6}, {"b", 0.0}, {"c", 0.4}}), 1e-4});
    ni.expected_float_second.push_back(
        {"nash", fdist_of(ni.profile, {{"a", 0.608}, {"b", 0.157}, {"c", 0.235}}), 2e-3});
    ni.expected_float_combined.push_back(
        {"nash", fdist_of(ni.profile, {{"a", 0.558}, {"b", 0.137}, {"c", 0.305}}), 2e-3});
    return ni;
}

NamedInstance gen_nash_rpc_large() {
    std::vector<std::string> names{"a", "b", "c"};
    NamedInstance ni{"nash_rpc_large",
                     "400-voter Nash-welfare pair with agreeing rankings; the combined "
                     "optimum is exactly (153/300, 97/300, 50/300), lifting b's share "
                     "although both parts give b zero.",
                     build_profile(names, {{50, {"a"}},
                                           {49, {"b", "c"}},
                                           {49, {"c"}},
                                           {50, {"a", "b"}}})};
    ni.second = build_profile(names, {{1, {"a"}}, {1, {"c"}}, {200, {"a", "b"}}});
    ni.expected_float.push_back(
        {"nash",
         fdist_of(ni.profile, {{"a", 50.0 / 99.0}, {"b", 0.0}, {"c", 49.0 / 99.0}}), 1e-4});
    ni.expected_float_second.push_back(
        {"nash",
         fdist_of(ni.profile, {{"a", 201.0 / 202.0}, {"b", 0.0}, {"c", 1.0 / 202.0}}), 1e-4});
    ni.expected_float_combined.push_back(
        {"nash",
         fdist_of(ni.profile,
                  {{"a", 153.0 / 300.0}, {"b", 97.0 / 300.0}, {"c", 50.0 / 300.0}}),
         1e-4});
    return ni;
}

NamedInstance gen_cut_lb(long n) {
    if (n < 6 || n % 2 != 0)
        throw ValidationError("cut_lb: n must be even and at least 6");
    const long h = n / 2;  // h-1 paired voters, candidates x1..xh plus xstar
    std::vector<std::string> names;
    names.push_back("xstar");
    for (long i = 1; i <= h; ++i) names.push_back("x" + std::to_string(i));
    Rows rows;
    for (long i = 1; i <= h - 1; ++i)
        rows.push_back({1, {"x" + std::to_string(i), "x" + std::to_string(h)}});
    std::vector<std::string> big{"xstar"};
    for (long i = 1; i <= h - 1; ++i) big.push_back("x" + std::to_string(i));
    rows.push_back({h - 1, big});
    rows.push_back({2, {"xstar"}});

    NamedInstance ni{"cut_lb_n" + std::to_string(n),
                     "Conditional-utilitarian family: the paired voters' common candidate "
                     "ends with share 0, so their group-fairness factor grows like n/2.",
                     build_profile(names, rows)};
    std::vector<std::pair<std::string, Rat>> entries{{"xstar", rat(h + 1, n)}};
    for (long i = 1; i <= h - 1; ++i) entries.push_back({"x" + std::to_string(i), rat(1, n)});
    ni.expected.push_back({"cut", dist_of(ni.profile, entries)});
    ni.factor_rule = "cut";
    ni.afs_exact = rat(h - 1);
    ni.afs_lower = rat(h - 1);
    std::vector<long> coalition(ni.profile.groups().size(), 0);
    for (long i = 0; i < h - 1; ++i) coalition[i] = 1;
    ni.deviation = DeviationWitness{
        coalition, dist_of(ni.profile, {{"x" + std::to_string(h), rat(1)}}), rat(h - 1)};
    return ni;
}

NamedInstance gen_fut_lb(long n) {
    if (n < 6 || n % 3 != 0)
        throw ValidationError("fut_lb: n must be a multiple of 3 and at least 6");
    const long k = n / 3 - 1;  // paired voters
    std::vector<std::string> names;
    names.push_back("xstar");
    for (long i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
    names.push_back("y");
    Rows rows;
    for (long i = 1; i <= k; ++i) rows.push_back({1, {"xstar", "x" + std::to_string(i)}});
    rows.push_back({2, {"y"}});
    std::vector<std::string> big;
    for (long i = 1; i <= k; ++i) big.push_back("x" + std::to_string(i));
    big.push_back("y");
    rows.push_back({2 * n / 3 - 1, big});

    NamedInstance ni{"fut_lb_n" + std::to_string(n),
                     "Fair-utilitarian family: y fires first at level 1, the x_i fire "
                     "together at level 2, and the paired voters' common candidate gets "
                     "nothing, for a group-fairness factor of n/3 - 1.",
                     build_profile(names, rows)};
    std::vector<std::pair<std::string, Rat>> entries{{"y", rat(2, 3) + rat(1, n)}};
    for (long i = 1; i <= k; ++i) entries.push_back({"x" + std::to_string(i), rat(1, n)});
    ni.expected.push_back({"fut", dist_of(ni.profile, entries)});
    ni.factor_rule = "fut";
    ni.afs_exact = rat(k);
    ni.afs_lower = rat(k);
    std::vector<long> coalition(ni.profile.groups().size(), 0);
    for (long i = 0; i < k; ++i) coalition[i] = 1;
    ni.deviation = DeviationWitness{coalition, dist_of(ni.profile, {{"xstar", rat(1)}}), rat(k)};
    return ni;
}

NamedInstance gen_ues_lb(long n) {
    if (n < 2) throw ValidationError("ues_lb: n must be at least 2");
    std::vector<std::string> names{"xstar"};
    Rows rows;
    for (long i = 1; i <= n; ++i) {
        std::vector<std::string> ballot{"xstar"};
        for (long j = 1; j <= n - 1; ++j) {
            std::string nm = "x" + std::to_string(i) + "_" + std::to_string(j);
            names.push_back(nm);
            ballot.push_back(nm);
        }
        rows.push_back({1, ballot});
    }
    NamedInstance ni{"ues_lb_n" + std::to_string(n),
                     "Uniform-split family: ballots pairwise disjoint except for one common "
                     "candidate, whose group-fairness factor is exactly n^2/(2n-1).",
                     build_profile(names, rows)};
    std::vector<std::pair<std::string, Rat>> entries{{"xstar", rat(1, n)}};
    for (long i = 1; i <= n; ++i)
        for (long j = 1; j <= n - 1; ++j)
            entries.push_back({"x" + std::to_string(i) + "_" + std::to_string(j), rat(1, n * n)});
    ni.expected.push_back({"ues", dist_of(ni.profile, entries)});
    ni.factor_rule = "ues";
    ni.afs_exact = rat(n * n, 2 * n - 1);
    ni.afs_lower = ni.afs_exact;
    std::vector<long> coalition(ni.profile.groups().size(), 1);
    ni.deviation = DeviationWitness{coalition, dist_of(ni.profile, {{"xstar", rat(1)}}),
                                    rat(n * n, 2 * n - 1)};
    return ni;
}

NamedInstance gen_map_afs_tight(long l) {
    if (l < 1) throw ValidationError("map_afs_tight: l must be at least 1");
    const long n = l * (l + 3) / 2;
    std::vector<std::string> names;
    for (long i = 1; i <= l; ++i) names.push_back("x" + std::to_string(i));
    names.push_back("xstar");
    Rows rows;
    for (long i = 1; i <= l; ++i) {
        rows.push_back({1, {"x" + std::to_string(i), "xstar"}});
        rows.push_back({l + 1 - i, {"x" + std::to_string(i)}});
    }
    NamedInstance ni{"map_afs_tight_l" + std::to_string(l),
                     "Max-payment family: the l paired voters share xstar, which gets 0 "
                     "while their total utility is exactly 1, so the group-fairness factor "
                     "is max(1, 2l/(l+3)) and approaches 2 from below.",
                     build_profile(names, rows)};
    std::vector<std::pair<std::string, Rat>> entries;
    for (long i = 1; i <= l; ++i) entries.push_back({"x" + std::to_string(i), rat(l + 2 - i, n)});
    ni.expected.push_back({"map", dist_of(ni.profile, entries)});
    ni.factor_rule = "map";
    ni.afs_exact = std::max(rat(1), rat(2 * l, l + 3));
    ni.afs_lower = ni.afs_exact;
    return ni;
}

NamedInstance gen_map_core_family(long k) {
    if (k < 2 || k > 20) throw ValidationError("map_core_family: k must be in [2, 20]");
    const long half = 1L << (k - 1);  // voters per level, number of x candidates
    std::vector<std::string> names;
    for (long i = 1; i <= k; ++i)
        for (long idx = 1; idx <= (1L << (i - 1)); ++idx)
            names.push_back("y" + std::to_string(i) + "_" + std::to_string(idx));
    for (long j = 1; j <= half; ++j) names.push_back("x" + std::to_string(j));

    Rows rows;
    for (long i = 1; i < k; ++i) {
        const long block = half / (1L << i);  // voters per group at level i
        for (long g = 1; g <= (1L << i); ++g) {
            std::vector<std::string> ballot{"y" + std::to_string(i) + "_" +
                                            std::to_string((g + 1) / 2)};
            for (long j = (g - 1) * block + 1; j <= g * block; ++j)
                ballot.push_back("x" + std::to_string(j));
            rows.push_back({block, ballot});
        }
    }
    for (long j = 1; j <= half; ++j)
        rows.push_back({1, {"y" + std::to_string(k) + "_" + std::to_string(j),
                            "x" + std::to_string(j)}});

    NamedInstance ni{"map_core_family_k" + std::to_string(k),
                     "Max-payment family where every voter can gain a factor of at least "
                     "k/2 by deviating to the uniform distribution over the x candidates.",
                     build_profile(names, rows)};
    std::vector<std::pair<std::string, Rat>> entries;
    for (long i = 1; i <= k; ++i)
        for (long idx = 1; idx <= (1L << (i - 1)); ++idx)
            entries.push_back({"y" + std::to_string(i) + "_" + std::to_string(idx),
                               rat(1, k * (1L << (i - 1)))});
    ni.expected.push_back({"map", dist_of(ni.profile, entries)});
    ni.factor_rule = "map";
    std::vector<std::pair<std::string, Rat>> q;
    for (long j = 1; j <= half; ++j) q.push_back({"x" + std::to_string(j), rat(1, half)});
    std::vector<long> coalition;
    for (const auto& g : ni.profile.groups()) coalition.push_back(g.count);
    ni.deviation = DeviationWitness{coalition, dist_of(ni.profile, q), rat(k, 2)};
    return ni;
}

NamedInstance gen_map_strategyproofness() {
    std::vector<std::string> truthful_names{"a", "b", "c", "d"};
    NamedInstance ni{"map_strategyproofness",
                     "Seven voters under the max-payment rule.  Reporting {b,c} instead of "
                     "{a,b,c} (which also changes the tie-break order) raises the "
                     "manipulator's true utility from 5/7 to 1.",
                     build_profile(truthful_names, {{1, {"a", "b", "c"}},
                                                    {2, {"a", "b"}},
                                                    {2, {"a", "c"}},
                                                    {1, {"b", "d"}},
                                                    {1, {"c", "d"}}})};
    std::vector<std::string> manip_names{"b", "a", "c", "d"};
    ni.second = build_profile(manip_names, {{1, {"b", "c"}},
                                            {2, {"a", "b"}},
                                            {2, {"a", "c"}},
                                            {1, {"b", "d"}},
                                            {1, {"c", "d"}}});
    ni.expected.push_back({"map", dist_of(ni.profile, {{"a", rat(5, 7)}, {"d", rat(2, 7)}})});
    ni.expected_second.push_back(
        {"map", dist_of(*ni.second, {{"b", rat(4, 7)}, {"c", rat(3, 7)}})});
    return ni;
}

std::optional<NamedInstance> gen_nonmonotone(const PaymentWillingness& pi) {
    const long row_cap = 64;

    // First witness: a row whose first payment drops below 1.
    long l1 = 0;
    Rat pi_plus;
    // Second witness: the first strict in-row decrease pi(l2,k) > pi(l2,k+1).
    long l2 = 0, k = 0;
    Rat pi_val, delta2;
    try {
        for (long t = 1; t <= row_cap && (l1 == 0 || l2 == 0); ++t) {
            if (l1 == 0 && pi.pay(t, 1) < 1) {
                l1 = t - 1;
                pi_plus = pi.pay(t, 1);
            }
            if (l2 == 0) {
                for (long j = 1; j < t; ++j) {
                    if (pi.pay(t, j) > pi.pay(t, j + 1)) {
                        l2 = t;
                        k = j;
                        pi_val = pi.pay(t, j);
                        delta2 = pi_val - pi.pay(t, j + 1);
                        break;
                    }
                }
            }
        }
    } catch (const Error&) {
        // custom table ran out of rows; keep whatever witnesses were found
    }
    if (l1 == 0 || l2 == 0) return std::nullopt;  // monotone by construction

    const Rat delta1 = Rat(1) - pi_plus;
    const long t1 = least_over(Rat(1), delta1);
    const long t2 = least_over(Rat(t1) * pi_plus, delta2);
    const long t3 = least_over(Rat(t1) * pi_plus + 1, delta2);
    const long l = std::max(l1, l2);

    std::vector<std::string> names;
    for (long j = 1; j <= l - 1; ++j) names.push_back("b" + std::to_string(j));
    names.push_back("x");
    names.push_back("y");
    names.push_back("z");
    for (long j = 1; j <= l - 1; ++j) names.push_back("d" + std::to_string(j));
    auto b_prefix = [&](long s) {
        std::vector<std::string> v;
        for (long j = 1; j <= s; ++j) v.push_back("b" + std::to_string(j));
        return v;
    };
    auto d_prefix = [&](long s) {
        std::vector<std::string> v;
        for (long j = 1; j <= s; ++j) v.push_back("d" + std::to_string(j));
        return v;
    };

    const long filler_min = t1 + t2 + t3;
    for (long nz = filler_min; nz <= filler_min + 300; ++nz) {
        // Filler counts pinning the selection order after the b-block:
        //   total(z) < total(y) <= total(z) + 1   in the original profile and
        //   total(x) + t1*pi_plus < total(z) <= total(x) + t1*pi_plus + 1
        // so that y then x win there, while z displaces x once the t1 group
        // additionally approves x.
        const long ny = to_long(floor_rat(Rat(t2) * pi_val + nz - t1)) + 1;
        const long nx = to_long(ceil_rat(Rat(t3) * pi_val + nz - Rat(t1) * pi_plus)) - 1;
        if (nx < filler_min || ny < filler_min) continue;

        const long before = t1 + t2 + t3 + nx + ny + nz;
        Rows rows;
        {
            std::vector<std::string> ballot = d_prefix(l1 - 1);
            ballot.push_back("y");
            rows.push_back({t1, ballot});
        }
        {
            std::vector<std::string> ballot = b_prefix(k - 1);
            auto d = d_prefix(l2 - k - 1);
            ballot.insert(ballot.end(), d.begin(), d.end());
            ballot.push_back("x");
            ballot.push_back("z");
            rows.push_back({t2, ballot});
        }
        {
            std::vector<std::string> ballot = b_prefix(k - 1);
            auto d = d_prefix(l2 - k - 1);
            ballot.insert(ballot.end(), d.begin(), d.end());
            ballot.push_back("y");
            ballot.push_back("z");
            rows.push_back({t3, ballot});
        }
        rows.push_back({nx, {"x"}});
        rows.push_back({ny, {"y"}});
        rows.push_back({nz, {"z"}});
        for (long j = 1; j <= l - 1; ++j)
            rows.push_back({2 * before, {"b" + std::to_string(j)}});

        ApprovalProfile profile = build_profile(names, rows);
        Rows rows2 = rows;
        rows2[0].second.push_back("x");  // the t1 group now approves x as well
        ApprovalProfile flipped = build_profile(names, rows2);

        const int x_idx = profile.candidate_index("x");
        const int y_idx = profile.candidate_index("y");
        const int z_idx = profile.candidate_index("z");
        auto selects_b_first = [&](const RuleTrace& trace) {
            std::vector<int> got;
            for (long r = 0; r < l - 1; ++r) got.push_back(trace.rounds[r].candidate);
            std::sort(got.begin(), got.end());
            for (long j = 0; j < l - 1; ++j)
                if (got[j] != static_cast<int>(j)) return false;
            return true;
        };

        SeqResult base = run_sequential(profile, pi);
        SeqResult flip = run_sequential(flipped, pi);
        if (!selects_b_first(base.trace) || !selects_b_first(flip.trace)) continue;
        if (l >= 2 && base.trace.rounds[l - 1].candidate != y_idx) continue;
        if (base.trace.rounds[l].candidate != x_idx) continue;
        if (flip.trace.rounds[l - 1].candidate != z_idx) continue;
        if (!(flip.dist.shares[x_idx] < base.dist.shares[x_idx])) continue;

        NamedInstance ni{"nonmonotone_" + sanitize(pi.name),
                         "Profile family where one extra approval for x lets z overtake "
                         "the selection order and x's share strictly drops under the '" +
                             pi.name + "' payment schedule.",
                         profile};
        ni.second = flipped;
        ni.mono_rule = pi.name;

        // The flip adds t1 approvals at once; walk them in one at a time and
        // keep the first single step where x's share strictly drops.
        ApprovalProfile current = profile;
        Rat share = base.dist.shares[x_idx];
        for (long step = 0; step < t1; ++step) {
            ApprovalProfile next = monotonicity_step(current, 0, x_idx);
            Rat next_share = run_sequential(next, pi).dist.shares[x_idx];
            if (next_share < share) {
                ni.mono_step = MonoWitness{current, 0, x_idx};
                break;
            }
            current = next;
            share = next_share;
        }
        if (!ni.mono_step)
            throw ModelError("nonmonotone: no single decreasing step found");
        return ni;
    }
    throw ModelError("nonmonotone: filler search failed for schedule " + pi.name);
}

NamedInstance gen_prop_lb_w0(const PaymentWillingness& pi, long t, long l) {
    if (t < 1) throw ValidationError("prop_lb_w0: t must be at least 1");
    if (l < 2) throw ValidationError("prop_lb_w0: l must be at least 2");
    pi.validate_for_sizes({t});
    std::vector<std::string> names{"xstar"};
    Rows rows;
    for (long i = 1; i <= l; ++i) {
        std::vector<std::string> ballot{"xstar"};
        for (long j = 1; j <= t - 1; ++j) {
            std::string nm = "y" + std::to_string(j) + "_" + std::to_string(i);
            names.push_back(nm);
            ballot.push_back(nm);
        }
        rows.push_back({1, ballot});
    }
    NamedInstance ni{"prop_lb_w0_" + sanitize(pi.name) + "_t" + std::to_string(t) + "_l" +
                         std::to_string(l),
                     "Ballots of size t, pairwise disjoint except for xstar: the common "
                     "candidate is selected first and gets exactly the schedule's first "
                     "payment as its share.",
                     build_profile(names, rows)};
    std::vector<std::pair<std::string, Rat>> entries{{"xstar", pi.pay(t, 1)}};
    for (long i = 1; i <= l; ++i)
        for (long j = 1; j <= t - 1; ++j)
            entries.push_back({"y" + std::to_string(j) + "_" + std::to_string(i),
                               pi.pay(t, j + 1) / l});
    ni.expected.push_back({pi.name, dist_of(ni.profile, entries)});
    ni.selection_rule = pi.name;
    ni.selection_prefix = {ni.profile.candidate_index("xstar")};
    return ni;
}

NamedInstance gen_prop_lb_wz(const PaymentWillingness& pi, long t, long z, long l,
                             long denom) {
    if (t < 2) throw ValidationError("prop_lb_wz: t must be at least 2");
    if (z < 1 || z > t - 1) throw ValidationError("prop_lb_wz: z must be in [1, t-1]");
    if (l < 2) throw ValidationError("prop_lb_wz: l must be at least 2");
    pi.validate_for_sizes({t});
    const long boosted = z * l;
    if (denom <= boosted)
        throw ValidationError("prop_lb_wz: denom too coarse, need denom > z*l");

    auto pay = [&](long j) { return j <= t ? pi.pay(t, j) : Rat(0); };
    // Approver weight the common candidate has while the v-th candidate at
    // level u is still unselected: (l-v) ballots about to pay level u plus v
    // ballots already advanced to level u+1.
    auto weight = [&](long u, long v) -> Rat { return (l - v) * pay(u) + v * pay(u + 1); };

    // Booster sizes: strictly decreasing along the processing order, each one
    // a grid multiple just above the common candidate's concurrent weight.
    // Walking backwards guarantees strictness while staying within z*l grid
    // steps of the weight itself.
    std::vector<long> booster_num(boosted);  // numerators over denom
    long prev = 0;
    for (long idx = boosted - 1; idx >= 0; --idx) {
        const long u = idx / l + 1;
        const long v = idx % l;  // weight argument; candidate v+1 at level u
        const long base = to_long(floor_rat(weight(u, v) * denom)) + 1;
        booster_num[idx] = std::max(base, prev + 1);
        prev = booster_num[idx];
    }
    for (long idx = 0; idx < boosted; ++idx) {
        const long u = idx / l + 1;
        const long v = idx % l;
        if (Rat(booster_num[idx], denom) > weight(u, v) + Rat(boosted, denom))
            throw ModelError("prop_lb_wz: booster overshoot, grid argument is wrong");
    }

    std::vector<std::string> names;
    for (long u = 1; u <= z; ++u)
        for (long v = 1; v <= l; ++v)
            names.push_back("y" + std::to_string(u) + "_" + std::to_string(v));
    names.push_back("xstar");
    for (long u = z + 1; u <= t - 1; ++u)
        for (long v = 1; v <= l; ++v)
            names.push_back("y" + std::to_string(u) + "_" + std::to_string(v));

    Rows rows;
    for (long v = 1; v <= l; ++v) {
        std::vector<std::string> ballot{"xstar"};
        for (long u = 1; u <= t - 1; ++u)
            ballot.push_back("y" + std::to_string(u) + "_" + std::to_string(v));
        rows.push_back({denom, ballot});
    }
    for (long u = 1; u <= z; ++u)
        for (long v = 1; v <= l; ++v)
            rows.push_back({booster_num[(u - 1) * l + (v - 1)],
                            {"y" + std::to_string(u) + "_" + std::to_string(v)}});

    NamedInstance ni{"prop_lb_wz_" + sanitize(pi.name) + "_t" + std::to_string(t) + "_z" +
                         std::to_string(z) + "_l" + std::to_string(l) + "_d" +
                         std::to_string(denom),
                     "Booster blocks force the schedule to pay the first z levels of every "
                     "ballot before the common candidate, whose share shrinks to l times "
                     "the level-(z+1) payment over the population.",
                     build_profile(names, rows)};

    long total = l * denom;
    for (long num : booster_num) total += num;
    std::vector<std::pair<std::string, Rat>> entries;
    for (long u = 1; u <= z; ++u)
        for (long v = 1; v <= l; ++v)
            entries.push_back(
                {"y" + std::to_string(u) + "_" + std::to_string(v),
                 Rat(booster_num[(u - 1) * l + (v - 1)] + pay(u) * denom) / total});
    entries.push_back({"xstar", Rat(l) * pay(z + 1) * denom / total});
    for (long u = z + 1; u <= t - 1; ++u)
        for (long v = 1; v <= l; ++v)
            entries.push_back({"y" + std::to_string(u) + "_" + std::to_string(v),
                               pay(u + 1) * denom / total});
    ni.expected.push_back({pi.name, dist_of(ni.profile, entries)});

    ni.selection_rule = pi.name;
    for (long idx = 0; idx < boosted; ++idx) ni.selection_prefix.push_back(static_cast<int>(idx));
    ni.selection_prefix.push_back(static_cast<int>(boosted));  // xstar

    SeqResult run = run_sequential(ni.profile, pi);
    for (size_t r = 0; r < ni.selection_prefix.size(); ++r)
        if (run.trace.rounds[r].candidate != ni.selection_prefix[r])
            throw ModelError("prop_lb_wz: selection order does not match the construction");
    if (!(run.dist == ni.expected[0].dist))
        throw ModelError("prop_lb_wz: distribution does not match the closed form");
    return ni;
}

// ---- registry -------------------------------------------------------------

std::vector<CorpusEntry> corpus_catalog() {
    return {
        {"spc_impossibility", ""},
        {"cut_wpc", ""},
        {"fut_wpc", ""},
        {"nash_rpc", ""},
        {"nash_rpc_large", ""},
        {"cut_lb", "n: even, >= 6 (default 8)"},
        {"fut_lb", "n: multiple of 3, >= 6 (default 6)"},
        {"ues_lb", "n: >= 2 (default 3)"},
        {"map_afs_tight", "l: >= 1 (default 9)"},
        {"map_core_family", "k: 2..20 (default 2)"},
        {"nonmonotone", "rule: sequential rule spec (default mps:1/2)"},
        {"map_strategyproofness", ""},
        {"prop_lb_w0", "rule (default mps:1/3), t: >= 1 (default 2), l: >= 2 (default 3)"},
        {"prop_lb_wz",
         "rule (default mps:1/3), t: >= 2 (default 3), z: 1..t-1 (default 1), l: >= 2 "
         "(default 2), denom: > z*l (default 100)"},
    };
}

namespace {

long param_long(const std::map<std::string, std::string>& params, const std::string& key,
                long fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        size_t pos = 0;
        long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("corpus: parameter " + key + " is not an integer: " + it->second);
    }
}

PaymentWillingness param_willingness(const std::map<std::string, std::string>& params,
                                     const std::string& fallback) {
    auto it = params.find("rule");
    const std::string text = it == params.end() ? fallback : it->second;
    Rule rule = make_rule(text);
    if (!rule.willingness)
        throw ValidationError("corpus: rule " + text + " is not a sequential payment rule");
    return *rule.willingness;
}

void reject_unknown(const std::map<std::string, std::string>& params,
                    const std::vector<std::string>& known) {
    for (const auto& [key, value] : params) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ValidationError("corpus: unknown parameter " + key);
    }
}

}  // namespace

std::optional<NamedInstance> corpus_make(const std::string& name,
                                         const std::map<std::string, std::string>& params) {
    if (name == "spc_impossibility") {
        reject_unknown(params, {});
        return gen_spc_impossibility();
    }
    if (name == "cut_wpc") {
        reject_unknown(params, {});
        return gen_cut_wpc();
    }
    if (name == "fut_wpc") {
        reject_unknown(params, {});
        return gen_fut_wpc();
    }
    if (name == "nash_rpc") {
        reject_unknown(params, {});
        return gen_nash_rpc();
    }
    if (name == "nash_rpc_large") {
        reject_unknown(params, {});
        return gen_nash_rpc_large();
    }
    if (name == "cut_lb") {
        reject_unknown(params, {"n"});
        return gen_cut_lb(param_long(params, "n", 8));
    }
    if (name == "fut_lb") {
        reject_unknown(params, {"n"});
        return gen_fut_lb(param_long(params, "n", 6));
    }
    if (name == "ues_lb") {
        reject_unknown(params, {"n"});
        return gen_ues_lb(param_long(params, "n", 3));
    }
    if (name == "map_afs_tight") {
        reject_unknown(params, {"l"});
        return gen_map_afs_tight(param_long(params, "l", 9));
    }
    if (name == "map_core_family") {
        reject_unknown(params, {"k"});
        return gen_map_core_family(param_long(params, "k", 2));
    }
    if (name == "nonmonotone") {
        reject_unknown(params, {"rule"});
        return gen_nonmonotone(param_willingness(params, "mps:1/2"));
    }
    if (name == "map_strategyproofness") {
        reject_unknown(params, {});
        return gen_map_strategyproofness();
    }
    if (name == "prop_lb_w0") {
        reject_unknown(params, {"rule", "t", "l"});
        return gen_prop_lb_w0(param_willingness(params, "mps:1/3"),
                              param_long(params, "t", 2), param_long(params, "l", 3));
    }
    if (name == "prop_lb_wz") {
        reject_unknown(params, {"rule", "t", "z", "l", "denom"});
        return gen_prop_lb_wz(param_willingness(params, "mps:1/3"),
                              param_long(params, "t", 3), param_long(params, "z", 1),
                              param_long(params, "l", 2), param_long(params, "denom", 100));
    }
    throw ValidationError("corpus: unknown instance " + name);
}

}  // namespace budgetdiv
