#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "budgetdiv/classic.hpp"
#include "budgetdiv/consistency.hpp"
#include "budgetdiv/fairness.hpp"

#include <cmath>

using namespace budgetdiv;

namespace {

ApprovalProfile running_example() {
    return ApprovalProfile({"a", "b", "c", "d"},
                           {{make_ballot({0, 1}), 4},
                            {make_ballot({0}), 4},
                            {make_ballot({1, 2}), 2},
                            {make_ballot({2, 3}), 1},
                            {make_ballot({3}), 1}});
}

ApprovalProfile star_profile() {
    return ApprovalProfile({"a", "b1", "b2", "b3"},
                           {{make_ballot({0, 1}), 1},
                            {make_ballot({0, 2}), 1},
                            {make_ballot({0, 3}), 1},
                            {make_ballot({1}), 1},
                            {make_ballot({2}), 1},
                            {make_ballot({3}), 1}});
}

}  // namespace

TEST_CASE("audits of the running example") {
    ApprovalProfile p = running_example();
    ExactDist mp{{rat(2, 3), rat(0), rat(1, 4), rat(1, 12)}};

    AfsAudit<Rat> afs = afs_factor(p, mp);
    CHECK(!afs.unbounded);
    CHECK(afs.factor == 1);
    CHECK(afs.witness_candidate == 0);
    CHECK(afs.witness_size == 8);

    CoreAudit<Rat> core = core_exact(p, mp);
    CHECK(!core.unbounded);
    CHECK(core.factor == 1);

    // (1/12)(1/u_{cd} + 1/u_d) = (1/12)(3 + 12) at candidate d
    PfAudit<Rat> pf_mp = pf_score(p, mp);
    CHECK(!pf_mp.unbounded);
    CHECK(pf_mp.score == rat(5, 4));
    CHECK(pf_mp.witness_candidate == 3);

    // (1/12)(4/(3/4) + 4/(1/2)) at candidate a
    ExactDist up{{rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 8)}};
    PfAudit<Rat> pf_up = pf_score(p, up);
    CHECK(!pf_up.unbounded);
    CHECK(pf_up.score == rat(10, 9));
    CHECK(pf_up.witness_candidate == 0);
}

TEST_CASE("skewed star distribution audits to factor 3/2") {
    ApprovalProfile p = star_profile();
    ExactDist skewed{{rat(0), rat(1, 3), rat(1, 3), rat(1, 3)}};

    AfsAudit<Rat> afs = afs_factor(p, skewed);
    CHECK(afs.factor == rat(3, 2));
    CHECK(afs.witness_candidate == 0);
    CHECK(afs.witness_size == 3);
    CHECK((afs.witness_counts == std::vector<long>{1, 1, 1, 0, 0, 0}));

    CoreAudit<Rat> core = core_exact(p, skewed);
    CHECK(core.factor == rat(3, 2));

    CoreLowerAudit<Rat> lower = core_lower_single(p, skewed);
    CHECK(lower.factor == rat(3, 2));
    CHECK(lower.witness_candidate == 0);

    PfAudit<Rat> pf = pf_score(p, skewed);
    CHECK(pf.score == rat(3, 2));
    CHECK(pf.witness_candidate == 0);
}

TEST_CASE("deviation ratio certifies a concrete move") {
    ApprovalProfile p = star_profile();
    ExactDist skewed{{rat(0), rat(1, 3), rat(1, 3), rat(1, 3)}};
    ExactDist point_a{{rat(1), rat(0), rat(0), rat(0)}};
    std::vector<long> coalition{1, 1, 1, 0, 0, 0};
    CHECK(deviation_ratio(p, skewed, coalition, point_a) == rat(3, 2));

    // adding a satellite voter dilutes nothing for them but shrinks the min
    std::vector<long> wider{1, 1, 1, 1, 0, 0};
    Rat r = deviation_ratio(p, skewed, wider, point_a);
    CHECK(r == 0);  // the b1 voter gets nothing from the pure-a deviation

    CHECK_THROWS_AS(deviation_ratio(p, skewed, {1, 1}, point_a), ModelError);
    CHECK_THROWS_AS(deviation_ratio(p, skewed, {0, 0, 0, 0, 0, 0}, point_a), ModelError);
    CHECK_THROWS_AS(deviation_ratio(p, skewed, {2, 0, 0, 0, 0, 0}, point_a), ModelError);

    // coalition member with zero current utility has no finite ratio
    ExactDist zeroed{{rat(1), rat(0), rat(0), rat(0)}};
    CHECK_THROWS_AS(deviation_ratio(p, zeroed, {0, 0, 0, 1, 0, 0}, point_a), ValidationError);
}

TEST_CASE("unbounded audits flag starved voters consistently") {
    ApprovalProfile p({"a", "b"}, {{make_ballot({0}), 1}, {make_ballot({1}), 1}});
    ExactDist point{{rat(1), rat(0)}};

    AfsAudit<Rat> afs = afs_factor(p, point);
    CHECK(afs.unbounded);
    CHECK(afs.witness_candidate == 1);

    PfAudit<Rat> pf = pf_score(p, point);
    CHECK(pf.unbounded);
    CHECK(pf.zero_utility_group == 1);

    CoreLowerAudit<Rat> lower = core_lower_single(p, point);
    CHECK(lower.unbounded);
    CHECK(lower.zero_utility_group == 1);

    CoreAudit<Rat> core = core_exact(p, point);
    CHECK(core.unbounded);
    CHECK(core.zero_utility_group == 1);
}

TEST_CASE("fast group-fairness walk matches the enumeration oracle") {
    GenConfig cfg;
    cfg.max_n = 10;
    for (std::uint64_t seed = 300; seed < 360; ++seed) {
        SplitMix64 rng(seed);
        ApprovalProfile p = random_profile(rng, cfg);
        for (const char* spec : {"map", "ues", "mps:1/3"}) {
            ExactDist d = make_rule(spec).eval_exact(p);
            AfsAudit<Rat> fast = afs_factor(p, d);
            AfsAudit<Rat> brute = brute_afs(p, d);
            REQUIRE(fast.unbounded == brute.unbounded);
            if (!fast.unbounded) CHECK(fast.factor == brute.factor);
        }
    }
}

TEST_CASE("factor chain on random rule outputs") {
    GenConfig cfg;
    cfg.max_n = 10;
    for (std::uint64_t seed = 400; seed < 440; ++seed) {
        SplitMix64 rng(seed);
        ApprovalProfile p = random_profile(rng, cfg);
        for (const char* spec : {"map", "ues"}) {
            ExactDist d = make_rule(spec).eval_exact(p);
            AfsAudit<Rat> afs = afs_factor(p, d);
            CoreLowerAudit<Rat> lower = core_lower_single(p, d);
            CoreAudit<Rat> core = core_exact(p, d);
            PfAudit<Rat> pf = pf_score(p, d);
            REQUIRE(!afs.unbounded);
            REQUIRE(!core.unbounded);
            CHECK(lower.factor <= core.factor);
            CHECK(core.factor <= pf.score);
            CHECK(afs.factor <= 2 * core.factor);
            double ln_bound = to_double(afs.factor) *
                              (1.0 + std::log(static_cast<double>(p.num_voters())));
            CHECK(to_double(core.factor) <= ln_bound + 1e-9);
        }
    }
}

TEST_CASE("flow decomposition accepts rule outputs and rejects overloads") {
    ApprovalProfile p = running_example();
    ExactDist mp{{rat(2, 3), rat(0), rat(1, 4), rat(1, 12)}};
    DecomposeResult ok = decompose(p, mp);
    REQUIRE(ok.feasible);
    CHECK(ok.decomp.reconstruct(p) == mp);
    for (size_t g = 0; g < p.groups().size(); ++g)
        for (int x = 0; x < p.num_candidates(); ++x)
            if (!p.groups()[g].ballot.approves(x)) CHECK(ok.decomp.per_group[g].shares[x] == 0);

    // uniform shares overload d: only 2 of 12 voters can fund a quarter
    ExactDist uniform{{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)}};
    DecomposeResult bad = decompose(p, uniform);
    REQUIRE(!bad.feasible);
    REQUIRE(bad.cut.has_value());
    CHECK(bad.cut->share_mass > bad.cut->voter_mass);
    bool has_d = false;
    for (int x : bad.cut->candidates) has_d |= (x == 3);
    CHECK(has_d);
}

TEST_CASE("flow decomposition float path snaps and tolerates solver noise") {
    ApprovalProfile p({"a", "b", "c"},
                      {{make_ballot({0}), 3},
                       {make_ballot({1, 2}), 2},
                       {make_ballot({2}), 2},
                       {make_ballot({0, 1}), 3}});
    FloatDist nash{{0.6 + 3e-8, 0.0, 0.4 - 3e-8}};
    DecomposeResult ok = decompose(p, nash);
    CHECK(ok.feasible);

    FloatDist lopsided{{1.0, 0.0, 0.0}};
    DecomposeResult bad = decompose(p, lopsided);
    CHECK(!bad.feasible);  // only 6 of 10 voters touch a
    REQUIRE(bad.cut.has_value());
    CHECK(bad.cut->voter_mass == rat(3, 5));
}

TEST_CASE("decomposition feasibility is monotone under mixing") {
    // averaging two feasible distributions stays feasible
    ApprovalProfile p = running_example();
    ExactDist mp{{rat(2, 3), rat(0), rat(1, 4), rat(1, 12)}};
    ExactDist up{{rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 8)}};
    ExactDist mix;
    for (size_t i = 0; i < mp.shares.size(); ++i)
        mix.shares.push_back(Rat((mp.shares[i] + up.shares[i]) / 2));
    DecomposeResult r = decompose(p, mix);
    CHECK(r.feasible);
    CHECK(r.decomp.reconstruct(p) == mix);
}
