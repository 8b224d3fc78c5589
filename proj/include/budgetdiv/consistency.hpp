#pragma once

#include "budgetdiv/model.hpp"
#include "budgetdiv/rules.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace budgetdiv {

// Verdict of one axiom check.  `fails` always carries enough of the inputs to
// reproduce the violation from scratch (see recheck).  `vacuous` means the
// axiom's precondition did not trigger (e.g. population consistency when the
// two part-profiles disagree); `inconclusive` appears only for float-backed
// rules when a comparison lands in the tolerance boundary band.
enum class Outcome { holds, fails, vacuous, inconclusive };

std::string outcome_str(Outcome o);

struct AxiomVerdict {
    std::string axiom;
    Outcome outcome = Outcome::holds;
    std::string detail;                     // human-readable explanation / log
    std::vector<ApprovalProfile> profiles;  // inputs involved (set when outcome==fails)
    std::optional<int> group_index;         // monotonicity: which group was split
    std::optional<int> candidate;           // witness candidate index
    std::vector<std::string> values;        // rendered shares/factors involved
};

// Accepted axiom spellings:
//   monotonicity | wpc | spc | rpc | unanimity | afs_bound:<alpha> | core_bound:<alpha>
struct AxiomSpec {
    enum class Kind { monotonicity, wpc, spc, rpc, unanimity, afs_bound, core_bound };
    Kind kind = Kind::monotonicity;
    Rat alpha;  // bounds only
    std::string text;
};

AxiomSpec parse_axiom_spec(const std::string& s);

// The profile obtained by splitting one voter off group g and giving that
// voter the group's ballot plus candidate x.  Precondition: x not already in
// the ballot.  The modified voter merges into an existing group with the same
// ballot when one exists, otherwise a new group is appended.
ApprovalProfile monotonicity_step(const ApprovalProfile& profile, int group_index, int x);

// holds iff the share of x does not drop when one voter additionally approves x.
AxiomVerdict check_monotonicity_step(const Rule& rule, const ApprovalProfile& profile,
                                     int group_index, int x, double tol = 1e-6);

// Weak population consistency: vacuous unless f(a) = f(b); then requires
// f(a+b) = f(a).
AxiomVerdict check_wpc_pair(const Rule& rule, const ApprovalProfile& a,
                            const ApprovalProfile& b, double tol = 1e-6);

// Strong population consistency: for every candidate x,
// min(f(a,x), f(b,x)) <= f(a+b,x) <= max(f(a,x), f(b,x)).
AxiomVerdict check_spc_pair(const Rule& rule, const ApprovalProfile& a,
                            const ApprovalProfile& b, double tol = 1e-6);

// Relative population consistency: the sandwich above, but only at candidates
// whose ranking prefix agrees between f(a) and f(b).  Candidates with an
// inconclusive prefix comparison are skipped and listed in the detail.
AxiomVerdict check_rpc_pair(const Rule& rule, const ApprovalProfile& a,
                            const ApprovalProfile& b, double tol = 1e-6);

// Vacuous unless exactly one candidate is approved by every voter; then that
// candidate must receive share 1.
AxiomVerdict check_unanimity(const Rule& rule, const ApprovalProfile& profile,
                             double tol = 1e-6);

// Group-fairness factor of the rule's output stays within alpha.
AxiomVerdict check_afs_bound(const Rule& rule, const ApprovalProfile& profile, const Rat& alpha,
                             double tol = 1e-6);

// Exact core approximation factor stays within alpha; inconclusive when the
// profile exceeds the exact-core enumeration limit.
AxiomVerdict check_core_bound(const Rule& rule, const ApprovalProfile& profile, const Rat& alpha,
                              double tol = 1e-6, int limit_n = 14);

// Re-runs the checker on the witness carried by a verdict; used to confirm
// that recorded failures reproduce from scratch.
AxiomVerdict recheck(const Rule& rule, const AxiomVerdict& verdict, double tol = 1e-6);

// ---- seeded fuzzing -------------------------------------------------------

// Deterministic 64-bit generator (splitmix64).  Used instead of <random>
// distributions so that identical seeds give identical profiles on every
// platform and standard library.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound); bound >= 1
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

// Independent stream per (seed, trial) so trials can run in any order.
SplitMix64 trial_rng(std::uint64_t seed, long trial);

struct GenConfig {
    int max_n = 12;
    int max_m = 6;
    int max_ballot = 4;
};

ApprovalProfile random_profile(SplitMix64& rng, const GenConfig& cfg);
// Second profile over the same candidate universe as `like`.
ApprovalProfile random_profile_like(SplitMix64& rng, const GenConfig& cfg,
                                    const ApprovalProfile& like);

struct FuzzFailure {
    long trial = 0;
    AxiomVerdict verdict;
};

struct FuzzReport {
    std::string rule;
    std::string axiom;
    std::uint64_t seed = 0;
    long trials = 0;
    long holds = 0;
    long fails = 0;
    long vacuous = 0;
    long inconclusive = 0;
    std::vector<FuzzFailure> failures;        // capped at max_recorded
    std::vector<FuzzFailure> inconclusives;   // capped at max_recorded
};

FuzzReport fuzz(const Rule& rule, const AxiomSpec& axiom, const GenConfig& cfg,
                std::uint64_t seed, long trials, double tol = 1e-6,
                std::size_t max_recorded = 16);

}  // namespace budgetdiv
