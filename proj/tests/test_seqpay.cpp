#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "budgetdiv/consistency.hpp"
#include "budgetdiv/seqpay.hpp"

#include <map>
#include <vector>

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

// One central contender plus three satellites, each satellite also backed by a
// lone supporter.  Separates schedules by how much the first payment leaves over.
ApprovalProfile star_profile() {
    return ApprovalProfile({"a", "b1", "b2", "b3"},
                           {{make_ballot({0, 1}), 1},
                            {make_ballot({0, 2}), 1},
                            {make_ballot({0, 3}), 1},
                            {make_ballot({1}), 1},
                            {make_ballot({2}), 1},
                            {make_ballot({3}), 1}});
}

ApprovalProfile scaled(const ApprovalProfile& p, long factor) {
    std::vector<BallotGroup> groups = p.groups();
    for (auto& g : groups) g.count *= factor;
    return ApprovalProfile(p.candidate_names(), groups);
}

}  // namespace

TEST_CASE("built-in willingness tables") {
    PaymentWillingness map = willingness_map();
    PaymentWillingness ues = willingness_ues();
    PaymentWillingness mps13 = willingness_mps(rat(1, 3));
    PaymentWillingness add13 = willingness_additive_third();
    std::vector<long> sizes{1, 2, 3, 4, 5, 6};
    CHECK_NOTHROW(map.validate_for_sizes(sizes));
    CHECK_NOTHROW(ues.validate_for_sizes(sizes));
    CHECK_NOTHROW(mps13.validate_for_sizes(sizes));
    CHECK_NOTHROW(add13.validate_for_sizes(sizes));

    CHECK(map.pay(1, 1) == 1);
    CHECK(map.pay(4, 1) == 1);
    CHECK(map.pay(4, 2) == 0);

    CHECK(ues.pay(3, 1) == rat(1, 3));
    CHECK(ues.pay(3, 3) == rat(1, 3));

    CHECK(mps13.pay(2, 1) == rat(3, 4));
    CHECK(mps13.pay(2, 2) == rat(1, 4));
    CHECK(mps13.pay(3, 1) == rat(9, 13));
    CHECK(mps13.pay(3, 2) == rat(3, 13));
    CHECK(mps13.pay(3, 3) == rat(1, 13));

    CHECK(add13.pay(1, 1) == 1);
    CHECK(add13.pay(2, 1) == rat(2, 3));
    CHECK(add13.pay(2, 2) == rat(1, 3));
    CHECK(add13.pay(5, 1) == rat(2, 3));
    CHECK(add13.pay(5, 2) == rat(1, 3));
    CHECK(add13.pay(5, 3) == 0);

    // geometric family degenerates to the two extremes
    PaymentWillingness g0 = willingness_mps(rat(0));
    PaymentWillingness g1 = willingness_mps(rat(1));
    for (long t = 1; t <= 5; ++t) {
        for (long j = 1; j <= t; ++j) {
            CHECK(g0.pay(t, j) == map.pay(t, j));
            CHECK(g1.pay(t, j) == ues.pay(t, j));
        }
    }
    CHECK_THROWS_AS(willingness_mps(rat(-1, 2)), ValidationError);
    CHECK_THROWS_AS(willingness_mps(rat(3, 2)), ValidationError);
}

TEST_CASE("custom willingness validation and coverage") {
    std::map<long, std::vector<Rat>> table{{1, {rat(1)}}, {2, {rat(2, 3), rat(1, 3)}}};
    PaymentWillingness w = willingness_custom("pair", table);
    CHECK(w.pay(2, 1) == rat(2, 3));
    CHECK(w.pay(1, 1) == 1);
    CHECK_THROWS_AS(w.pay(3, 1), ValidationError);  // no declared row

    CHECK_THROWS_AS(willingness_custom("inc", {{2, {rat(1, 3), rat(2, 3)}}}), ValidationError);
    CHECK_THROWS_AS(willingness_custom("short", {{2, {rat(1)}}}), ValidationError);
    CHECK_THROWS_AS(willingness_custom("deficit", {{2, {rat(1, 2), rat(1, 3)}}}), ValidationError);

    // running on a profile with an uncovered ballot size surfaces the error
    ApprovalProfile p({"a", "b", "c"}, {{make_ballot({0, 1, 2}), 1}});
    CHECK_THROWS_AS(run_sequential(p, w), ValidationError);
}

TEST_CASE("max-payment rule on the running example") {
    ApprovalProfile p = running_example();
    SeqResult r = run_sequential(p, willingness_map());
    ExactDist want{{rat(2, 3), rat(0), rat(1, 4), rat(1, 12)}};
    CHECK(r.dist == want);

    REQUIRE(r.trace.rounds.size() == 4);
    CHECK(r.trace.rounds[0].candidate == 0);  // a: 8 first payments
    CHECK(r.trace.rounds[0].total == 8);
    CHECK(r.trace.rounds[1].candidate == 2);  // c beats b (3 vs 2) and d
    CHECK(r.trace.rounds[1].total == 3);
    CHECK(r.trace.rounds[2].candidate == 3);
    CHECK(r.trace.rounds[2].total == 1);
    CHECK(r.trace.rounds[3].candidate == 1);  // b last with nothing left
    CHECK(r.trace.rounds[3].total == 0);

    // approver groups appear in each round, zero payments included
    REQUIRE(r.trace.rounds[2].payments.size() == 2);
    CHECK(r.trace.rounds[2].payments[0].group == 3);  // {c,d} already paid for c
    CHECK(r.trace.rounds[2].payments[0].per_voter == 0);
    CHECK(r.trace.rounds[2].payments[1].group == 4);  // {d} pays in full
    CHECK(r.trace.rounds[2].payments[1].per_voter == 1);
}

TEST_CASE("uniform split rule on the running example") {
    SeqResult r = run_sequential(running_example(), willingness_ues());
    ExactDist want{{rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 8)}};
    CHECK(r.dist == want);
    // c and d tie in round 3; declaration order puts c first
    CHECK(r.trace.rounds[2].candidate == 2);
    CHECK(r.trace.rounds[3].candidate == 3);
}

TEST_CASE("geometric schedule on the star profile") {
    SeqResult r = run_sequential(star_profile(), willingness_mps(rat(1, 3)));
    ExactDist want{{rat(3, 8), rat(5, 24), rat(5, 24), rat(5, 24)}};
    CHECK(r.dist == want);
    CHECK(r.trace.rounds[0].candidate == 0);
    CHECK(r.trace.rounds[0].total == rat(9, 4));
}

TEST_CASE("round totals never increase") {
    std::vector<PaymentWillingness> schedules{willingness_map(), willingness_ues(),
                                              willingness_mps(rat(1, 3)),
                                              willingness_mps(rat(3, 4)),
                                              willingness_additive_third()};
    GenConfig cfg;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        SplitMix64 rng(seed * 1001);
        ApprovalProfile p = random_profile(rng, cfg);
        for (const auto& w : schedules) {
            SeqResult r = run_sequential(p, w);
            REQUIRE(r.trace.rounds.size() == static_cast<size_t>(p.num_candidates()));
            for (size_t i = 1; i < r.trace.rounds.size(); ++i)
                CHECK(r.trace.rounds[i - 1].total >= r.trace.rounds[i].total);
            CHECK(is_distribution(r.dist));
            // share is the round total divided by n
            for (const auto& round : r.trace.rounds)
                CHECK(r.dist.shares[round.candidate] == Rat(round.total / p.num_voters()));
        }
    }
}

TEST_CASE("group counts scale out of the outcome") {
    ApprovalProfile p = running_example();
    ApprovalProfile p7 = scaled(p, 7);
    for (const auto& w : {willingness_map(), willingness_ues(), willingness_mps(rat(1, 2))}) {
        CHECK(run_sequential(p, w).dist == run_sequential(p7, w).dist);
    }
}

TEST_CASE("trace decomposition reconstructs the distribution") {
    std::vector<PaymentWillingness> schedules{willingness_map(), willingness_ues(),
                                              willingness_mps(rat(1, 3)),
                                              willingness_additive_third()};
    GenConfig cfg;
    for (std::uint64_t seed = 50; seed < 70; ++seed) {
        SplitMix64 rng(seed);
        ApprovalProfile p = random_profile(rng, cfg);
        for (const auto& w : schedules) {
            SeqResult r = run_sequential(p, w);
            Decomposition d = decomposition_from_trace(p, r.trace);
            CHECK(d.reconstruct(p) == r.dist);
            REQUIRE(d.per_group.size() == p.groups().size());
            for (size_t g = 0; g < d.per_group.size(); ++g) {
                const ExactDist& share = d.per_group[g];
                // each voter spends exactly their unit budget, only on own ballot
                CHECK(share.total() == 1);
                for (int x = 0; x < p.num_candidates(); ++x) {
                    if (!p.groups()[g].ballot.approves(x)) CHECK(share.shares[x] == 0);
                    CHECK(share.shares[x] >= 0);
                }
            }
        }
    }
}

TEST_CASE("per-voter lookup walks groups in declared order") {
    ApprovalProfile p({"a", "b"}, {{make_ballot({0}), 2}, {make_ballot({1}), 3}});
    SeqResult r = run_sequential(p, willingness_map());
    Decomposition d = decomposition_from_trace(p, r.trace);
    CHECK(d.for_voter(p, 0) == d.per_group[0]);
    CHECK(d.for_voter(p, 1) == d.per_group[0]);
    CHECK(d.for_voter(p, 2) == d.per_group[1]);
    CHECK(d.for_voter(p, 4) == d.per_group[1]);
    CHECK_THROWS_AS(d.for_voter(p, 5), ModelError);
    CHECK_THROWS_AS(d.for_voter(p, -1), ModelError);
}
