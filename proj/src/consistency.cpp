#include "budgetdiv/consistency.hpp"

#include "budgetdiv/fairness.hpp"
#include "budgetdiv/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace budgetdiv {

std::string outcome_str(Outcome o) {
    switch (o) {
        case Outcome::holds: return "holds";
        case Outcome::fails: return "fails";
        case Outcome::vacuous: return "vacuous";
        case Outcome::inconclusive: return "inconclusive";
    }
    return "?";
}

AxiomSpec parse_axiom_spec(const std::string& s) {
    AxiomSpec spec;
    spec.text = s;
    if (s == "monotonicity") {
        spec.kind = AxiomSpec::Kind::monotonicity;
    } else if (s == "wpc") {
        spec.kind = AxiomSpec::Kind::wpc;
    } else if (s == "spc") {
        spec.kind = AxiomSpec::Kind::spc;
    } else if (s == "rpc") {
        spec.kind = AxiomSpec::Kind::rpc;
    } else if (s == "unanimity") {
        spec.kind = AxiomSpec::Kind::unanimity;
    } else if (s.rfind("afs_bound:", 0) == 0) {
        spec.kind = AxiomSpec::Kind::afs_bound;
        spec.alpha = parse_rational(s.substr(10));
        spec.text = "afs_bound:" + rat_str(spec.alpha);
    } else if (s.rfind("core_bound:", 0) == 0) {
        spec.kind = AxiomSpec::Kind::core_bound;
        spec.alpha = parse_rational(s.substr(11));
        spec.text = "core_bound:" + rat_str(spec.alpha);
    } else {
        throw ValidationError("unknown axiom '" + s +
                              "' (expected monotonicity, wpc, spc, rpc, unanimity, "
                              "afs_bound:<alpha>, or core_bound:<alpha>)");
    }
    if ((spec.kind == AxiomSpec::Kind::afs_bound || spec.kind == AxiomSpec::Kind::core_bound) &&
        spec.alpha <= 0)
        throw ValidationError("bound parameter must be positive");
    return spec;
}

namespace {

template <typename N>
Distribution<N> eval_rule(const Rule& rule, const ApprovalProfile& p);

template <>
Distribution<Rat> eval_rule<Rat>(const Rule& rule, const ApprovalProfile& p) {
    if (!rule.eval_exact) throw ModelError("rule '" + rule.name + "' has no exact backend");
    return rule.eval_exact(p);
}

template <>
Distribution<double> eval_rule<double>(const Rule& rule, const ApprovalProfile& p) {
    return rule.eval_float(p);
}

std::string render(const Rat& v) { return rat_str(v); }
std::string render(double v) { return float_str(v); }

template <typename N>
Trilean share_eq(const ShareCompare<N>& cmp, const N& a, const N& b) {
    Trilean ab = cmp.ge(a, b);
    Trilean ba = cmp.ge(b, a);
    if (ab == Trilean::yes && ba == Trilean::yes) return Trilean::yes;
    if (ab == Trilean::no || ba == Trilean::no) return Trilean::no;
    return Trilean::unknown;
}

template <typename N>
Trilean dist_eq(const ShareCompare<N>& cmp, const Distribution<N>& a,
                const Distribution<N>& b) {
    bool band = false;
    for (size_t i = 0; i < a.shares.size(); ++i) {
        Trilean t = share_eq(cmp, a.shares[i], b.shares[i]);
        if (t == Trilean::no) return Trilean::no;
        if (t == Trilean::unknown) band = true;
    }
    return band ? Trilean::unknown : Trilean::yes;
}

// ---- monotonicity ---------------------------------------------------------

template <typename N>
AxiomVerdict mono_impl(const Rule& rule, const ApprovalProfile& profile, int g, int x,
                       double tol) {
    AxiomVerdict v;
    v.axiom = "monotonicity";
    ApprovalProfile after = monotonicity_step(profile, g, x);
    Distribution<N> before_d = eval_rule<N>(rule, profile);
    Distribution<N> after_d = eval_rule<N>(rule, after);
    ShareCompare<N> cmp{tol};
    Trilean ge = cmp.ge(after_d.shares[x], before_d.shares[x]);
    if (ge == Trilean::yes) {
        v.outcome = Outcome::holds;
        return v;
    }
    v.profiles = {profile};
    v.group_index = g;
    v.candidate = x;
    v.values = {"before=" + render(before_d.shares[x]), "after=" + render(after_d.shares[x])};
    std::ostringstream ss;
    ss << "share of '" << profile.candidate_name(x) << "' moves " << render(before_d.shares[x])
       << " -> " << render(after_d.shares[x]) << " when one voter of group " << g
       << " additionally approves it";
    v.detail = ss.str();
    v.outcome = ge == Trilean::no ? Outcome::fails : Outcome::inconclusive;
    return v;
}

// ---- population consistency ----------------------------------------------

template <typename N>
AxiomVerdict wpc_impl(const Rule& rule, const ApprovalProfile& a, const ApprovalProfile& b,
                      double tol) {
    AxiomVerdict v;
    v.axiom = "wpc";
    ShareCompare<N> cmp{tol};
    Distribution<N> pa = eval_rule<N>(rule, a);
    Distribution<N> pb = eval_rule<N>(rule, b);
    Trilean pre = dist_eq(cmp, pa, pb);
    if (pre == Trilean::no) {
        v.outcome = Outcome::vacuous;
        v.detail = "part profiles receive different outcomes";
        return v;
    }
    if (pre == Trilean::unknown) {
        v.outcome = Outcome::inconclusive;
        v.detail = "precondition f(a)=f(b) is inside the tolerance band";
        return v;
    }
    Distribution<N> pc = eval_rule<N>(rule, combine(a, b));
    bool band = false;
    for (int x = 0; x < a.num_candidates(); ++x) {
        Trilean t = share_eq(cmp, pc.shares[x], pa.shares[x]);
        if (t == Trilean::no) {
            v.outcome = Outcome::fails;
            v.profiles = {a, b};
            v.candidate = x;
            v.values = {"f(a)=" + render(pa.shares[x]), "f(b)=" + render(pb.shares[x]),
                        "f(a+b)=" + render(pc.shares[x])};
            v.detail = "combined share of '" + a.candidate_name(x) + "' is " +
                       render(pc.shares[x]) + " but both parts give " + render(pa.shares[x]);
            return v;
        }
        if (t == Trilean::unknown) band = true;
    }
    if (band) {
        v.outcome = Outcome::inconclusive;
        v.detail = "combined outcome equality is inside the tolerance band";
    }
    return v;
}

template <typename N>
struct SandwichResult {
    Trilean ok;  // yes = inside, no = definite violation, unknown = band
};

template <typename N>
SandwichResult<N> sandwich_at(const ShareCompare<N>& cmp, const N& fa, const N& fb,
                              const N& fc) {
    const N& lo = std::min(fa, fb);
    const N& hi = std::max(fa, fb);
    Trilean above = cmp.ge(fc, lo);
    Trilean below = cmp.ge(hi, fc);
    if (above == Trilean::no || below == Trilean::no) return {Trilean::no};
    if (above == Trilean::unknown || below == Trilean::unknown) return {Trilean::unknown};
    return {Trilean::yes};
}

template <typename N>
void fill_sandwich_witness(AxiomVerdict& v, const ApprovalProfile& a, const ApprovalProfile& b,
                           int x, const Distribution<N>& pa, const Distribution<N>& pb,
                           const Distribution<N>& pc) {
    v.profiles = {a, b};
    v.candidate = x;
    v.values = {"f(a)=" + render(pa.shares[x]), "f(b)=" + render(pb.shares[x]),
                "f(a+b)=" + render(pc.shares[x])};
    v.detail = "share of '" + a.candidate_name(x) + "' in the combined profile (" +
               render(pc.shares[x]) + ") leaves [min,max] of the parts (" +
               render(pa.shares[x]) + ", " + render(pb.shares[x]) + ")";
}

template <typename N>
AxiomVerdict spc_impl(const Rule& rule, const ApprovalProfile& a, const ApprovalProfile& b,
                      double tol) {
    AxiomVerdict v;
    v.axiom = "spc";
    ShareCompare<N> cmp{tol};
    Distribution<N> pa = eval_rule<N>(rule, a);
    Distribution<N> pb = eval_rule<N>(rule, b);
    Distribution<N> pc = eval_rule<N>(rule, combine(a, b));
    bool band = false;
    for (int x = 0; x < a.num_candidates(); ++x) {
        auto res = sandwich_at(cmp, pa.shares[x], pb.shares[x], pc.shares[x]);
        if (res.ok == Trilean::no) {
            v.outcome = Outcome::fails;
            fill_sandwich_witness(v, a, b, x, pa, pb, pc);
            return v;
        }
        if (res.ok == Trilean::unknown) band = true;
    }
    if (band) {
        v.outcome = Outcome::inconclusive;
        v.detail = "a sandwich comparison is inside the tolerance band";
    }
    return v;
}

template <typename N>
AxiomVerdict rpc_impl(const Rule& rule, const ApprovalProfile& a, const ApprovalProfile& b,
                      double tol) {
    AxiomVerdict v;
    v.axiom = "rpc";
    ShareCompare<N> cmp{tol};
    Distribution<N> pa = eval_rule<N>(rule, a);
    Distribution<N> pb = eval_rule<N>(rule, b);
    Distribution<N> pc = eval_rule<N>(rule, combine(a, b));
    bool band = false;
    std::vector<std::string> skipped;
    for (int x = 0; x < a.num_candidates(); ++x) {
        Trilean pe = ranking_prefix_equal(pa, pb, x, tol);
        if (pe == Trilean::no) continue;  // axiom does not constrain this candidate
        if (pe == Trilean::unknown) {
            skipped.push_back(a.candidate_name(x));
            continue;
        }
        auto res = sandwich_at(cmp, pa.shares[x], pb.shares[x], pc.shares[x]);
        if (res.ok == Trilean::no) {
            v.outcome = Outcome::fails;
            fill_sandwich_witness(v, a, b, x, pa, pb, pc);
            if (!skipped.empty()) v.detail += "; skipped (prefix inconclusive):";
            for (const auto& s : skipped) v.detail += " " + s;
            return v;
        }
        if (res.ok == Trilean::unknown) band = true;
    }
    if (band) {
        v.outcome = Outcome::inconclusive;
        v.detail = "a sandwich comparison is inside the tolerance band";
    }
    if (!skipped.empty()) {
        v.detail += v.detail.empty() ? "skipped (prefix inconclusive):" : "; skipped (prefix inconclusive):";
        for (const auto& s : skipped) v.detail += " " + s;
    }
    return v;
}

// ---- unanimity ------------------------------------------------------------

template <typename N>
AxiomVerdict unanimity_impl(const Rule& rule, const ApprovalProfile& profile, double tol) {
    AxiomVerdict v;
    v.axiom = "unanimity";
    std::vector<int> unanimous;
    for (int x = 0; x < profile.num_candidates(); ++x)
        if (profile.approval_score(x) == profile.num_voters()) unanimous.push_back(x);
    if (unanimous.size() != 1) {
        v.outcome = Outcome::vacuous;
        v.detail = unanimous.empty() ? "no unanimously approved candidate"
                                     : "several unanimously approved candidates";
        return v;
    }
    int x = unanimous[0];
    Distribution<N> p = eval_rule<N>(rule, profile);
    ShareCompare<N> cmp{tol};
    Trilean t = share_eq(cmp, p.shares[x], N{1});
    if (t == Trilean::yes) {
        v.outcome = Outcome::holds;
        return v;
    }
    v.profiles = {profile};
    v.candidate = x;
    v.values = {"share=" + render(p.shares[x])};
    v.detail = "'" + profile.candidate_name(x) + "' is the unique unanimously approved candidate "
               "but receives " + render(p.shares[x]);
    v.outcome = t == Trilean::no ? Outcome::fails : Outcome::inconclusive;
    return v;
}

// ---- fairness bounds ------------------------------------------------------

template <typename N>
AxiomVerdict afs_bound_impl(const Rule& rule, const ApprovalProfile& profile, const Rat& alpha,
                            double tol) {
    AxiomVerdict v;
    v.axiom = "afs_bound:" + rat_str(alpha);
    Distribution<N> p = eval_rule<N>(rule, profile);
    AfsAudit<N> audit = afs_factor(profile, p);
    if (audit.unbounded) {
        v.outcome = Outcome::fails;
        v.profiles = {profile};
        v.candidate = audit.witness_candidate;
        v.values = {"factor=unbounded", "alpha=" + rat_str(alpha)};
        v.detail = "a group of approvers has zero total utility; the fairness factor is unbounded";
        return v;
    }
    ShareCompare<N> cmp{tol};
    N bound;
    if constexpr (std::is_same_v<N, Rat>) bound = alpha; else bound = to_double(alpha);
    Trilean within = cmp.ge(bound, audit.factor);
    if (within == Trilean::yes) {
        v.outcome = Outcome::holds;
        return v;
    }
    v.profiles = {profile};
    v.candidate = audit.witness_candidate;
    v.values = {"factor=" + render(audit.factor), "alpha=" + rat_str(alpha)};
    v.detail = "fairness factor " + render(audit.factor) + " exceeds " + rat_str(alpha) +
               (audit.witness_candidate >= 0
                    ? " (witness candidate '" + profile.candidate_name(audit.witness_candidate) + "')"
                    : "");
    v.outcome = within == Trilean::no ? Outcome::fails : Outcome::inconclusive;
    return v;
}

template <typename N>
AxiomVerdict core_bound_impl(const Rule& rule, const ApprovalProfile& profile, const Rat& alpha,
                             double tol, int limit_n) {
    AxiomVerdict v;
    v.axiom = "core_bound:" + rat_str(alpha);
    if (profile.num_voters() > limit_n) {
        v.outcome = Outcome::inconclusive;
        v.detail = "profile has " + std::to_string(profile.num_voters()) +
                   " voters, beyond the exact-core enumeration limit of " + std::to_string(limit_n);
        return v;
    }
    Distribution<N> p = eval_rule<N>(rule, profile);
    CoreAudit<N> audit = core_exact(profile, p, limit_n);
    if (audit.unbounded) {
        v.outcome = Outcome::fails;
        v.profiles = {profile};
        v.values = {"factor=unbounded", "alpha=" + rat_str(alpha)};
        v.detail = "a coalition with zero utility can deviate; the core factor is unbounded";
        return v;
    }
    ShareCompare<N> cmp{tol};
    N bound;
    if constexpr (std::is_same_v<N, Rat>) bound = alpha; else bound = to_double(alpha);
    Trilean within = cmp.ge(bound, audit.factor);
    if (within == Trilean::yes) {
        v.outcome = Outcome::holds;
        return v;
    }
    v.profiles = {profile};
    v.values = {"factor=" + render(audit.factor), "alpha=" + rat_str(alpha)};
    v.detail = "core approximation factor " + render(audit.factor) + " exceeds " + rat_str(alpha);
    v.outcome = within == Trilean::no ? Outcome::fails : Outcome::inconclusive;
    return v;
}

template <typename F>
AxiomVerdict dispatch(const Rule& rule, F&& f) {
    return rule.exact ? f(Rat{}) : f(0.0);
}

}  // namespace

ApprovalProfile monotonicity_step(const ApprovalProfile& profile, int group_index, int x) {
    if (group_index < 0 || group_index >= static_cast<int>(profile.groups().size()))
        throw ModelError("monotonicity_step: group index out of range");
    if (x < 0 || x >= profile.num_candidates())
        throw ModelError("monotonicity_step: candidate index out of range");
    const BallotGroup& g = profile.groups()[group_index];
    if (g.ballot.approves(x))
        throw ModelError("monotonicity_step: candidate already approved by the chosen group");
    std::vector<int> extended = g.ballot.approved;
    extended.push_back(x);
    ApprovalBallot new_ballot = make_ballot(extended);
    std::vector<BallotGroup> groups;
    bool merged = false;
    for (int i = 0; i < static_cast<int>(profile.groups().size()); ++i) {
        BallotGroup copy = profile.groups()[i];
        if (i == group_index) {
            if (copy.count == 1) continue;  // the lone voter leaves, the group disappears
            copy.count -= 1;
        }
        if (copy.ballot.approved == new_ballot.approved) {
            copy.count += 1;
            merged = true;
        }
        groups.push_back(copy);
    }
    if (!merged) groups.push_back({new_ballot, 1});
    return ApprovalProfile(profile.candidate_names(), groups);
}

AxiomVerdict check_monotonicity_step(const Rule& rule, const ApprovalProfile& profile,
                                     int group_index, int x, double tol) {
    return dispatch(rule, [&](auto n) {
        return mono_impl<decltype(n)>(rule, profile, group_index, x, tol);
    });
}

AxiomVerdict check_wpc_pair(const Rule& rule, const ApprovalProfile& a,
                            const ApprovalProfile& b, double tol) {
    if (!a.same_candidates(b)) throw ModelError("wpc: profiles use different candidate lists");
    return dispatch(rule, [&](auto n) { return wpc_impl<decltype(n)>(rule, a, b, tol); });
}

AxiomVerdict check_spc_pair(const Rule& rule, const ApprovalProfile& a,
                            const ApprovalProfile& b, double tol) {
    if (!a.same_candidates(b)) throw ModelError("spc: profiles use different candidate lists");
    return dispatch(rule, [&](auto n) { return spc_impl<decltype(n)>(rule, a, b, tol); });
}

AxiomVerdict check_rpc_pair(const Rule& rule, const ApprovalProfile& a,
                            const ApprovalProfile& b, double tol) {
    if (!a.same_candidates(b)) throw ModelError("rpc: profiles use different candidate lists");
    return dispatch(rule, [&](auto n) { return rpc_impl<decltype(n)>(rule, a, b, tol); });
}

AxiomVerdict check_unanimity(const Rule& rule, const ApprovalProfile& profile, double tol) {
    return dispatch(rule, [&](auto n) { return unanimity_impl<decltype(n)>(rule, profile, tol); });
}

AxiomVerdict check_afs_bound(const Rule& rule, const ApprovalProfile& profile, const Rat& alpha,
                             double tol) {
    return dispatch(rule,
                    [&](auto n) { return afs_bound_impl<decltype(n)>(rule, profile, alpha, tol); });
}

AxiomVerdict check_core_bound(const Rule& rule, const ApprovalProfile& profile, const Rat& alpha,
                              double tol, int limit_n) {
    return dispatch(rule, [&](auto n) {
        return core_bound_impl<decltype(n)>(rule, profile, alpha, tol, limit_n);
    });
}

AxiomVerdict recheck(const Rule& rule, const AxiomVerdict& verdict, double tol) {
    AxiomSpec spec = parse_axiom_spec(verdict.axiom);
    auto need = [&](size_t k) {
        if (verdict.profiles.size() < k)
            throw ValidationError("verdict carries no reproducible witness");
    };
    switch (spec.kind) {
        case AxiomSpec::Kind::monotonicity:
            need(1);
            if (!verdict.group_index || !verdict.candidate)
                throw ValidationError("monotonicity witness lacks the step description");
            return check_monotonicity_step(rule, verdict.profiles[0], *verdict.group_index,
                                           *verdict.candidate, tol);
        case AxiomSpec::Kind::wpc:
            need(2);
            return check_wpc_pair(rule, verdict.profiles[0], verdict.profiles[1], tol);
        case AxiomSpec::Kind::spc:
            need(2);
            return check_spc_pair(rule, verdict.profiles[0], verdict.profiles[1], tol);
        case AxiomSpec::Kind::rpc:
            need(2);
            return check_rpc_pair(rule, verdict.profiles[0], verdict.profiles[1], tol);
        case AxiomSpec::Kind::unanimity:
            need(1);
            return check_unanimity(rule, verdict.profiles[0], tol);
        case AxiomSpec::Kind::afs_bound:
            need(1);
            return check_afs_bound(rule, verdict.profiles[0], spec.alpha, tol);
        case AxiomSpec::Kind::core_bound:
            need(1);
            return check_core_bound(rule, verdict.profiles[0], spec.alpha, tol);
    }
    throw ValidationError("unhandled axiom kind");
}

// ---- fuzzing --------------------------------------------------------------

SplitMix64 trial_rng(std::uint64_t seed, long trial) {
    SplitMix64 seeder(seed);
    std::uint64_t base = seeder.next();
    SplitMix64 rng(base ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(trial + 1)));
    rng.next();  // decorrelate neighboring trials
    return rng;
}

ApprovalProfile random_profile(SplitMix64& rng, const GenConfig& cfg) {
    int m = 1 + static_cast<int>(rng.below(cfg.max_m));
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back("c" + std::to_string(i + 1));
    ApprovalProfile like(names, {{make_ballot({0}), 1}});
    return random_profile_like(rng, cfg, like);
}

ApprovalProfile random_profile_like(SplitMix64& rng, const GenConfig& cfg,
                                    const ApprovalProfile& like) {
    int m = like.num_candidates();
    int n = 1 + static_cast<int>(rng.below(cfg.max_n));
    int cap = std::min(cfg.max_ballot, m);
    std::map<std::vector<int>, long> counts;
    for (int v = 0; v < n; ++v) {
        int s = 1 + static_cast<int>(rng.below(cap));
        std::uint64_t chosen = 0;
        std::vector<int> ballot;
        while (static_cast<int>(ballot.size()) < s) {
            int c = static_cast<int>(rng.below(m));
            if (chosen & (1ull << c)) continue;
            chosen |= 1ull << c;
            ballot.push_back(c);
        }
        std::sort(ballot.begin(), ballot.end());
        counts[ballot] += 1;
    }
    std::vector<BallotGroup> groups;
    for (const auto& [ballot, count] : counts)
        groups.push_back({make_ballot(ballot), count});
    return ApprovalProfile(like.candidate_names(), groups);
}

FuzzReport fuzz(const Rule& rule, const AxiomSpec& axiom, const GenConfig& cfg,
                std::uint64_t seed, long trials, double tol, std::size_t max_recorded) {
    FuzzReport report;
    report.rule = rule.name;
    report.axiom = axiom.text;
    report.seed = seed;
    report.trials = trials;
    for (long t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(seed, t);
        AxiomVerdict v;
        try {
            switch (axiom.kind) {
                case AxiomSpec::Kind::monotonicity: {
                    ApprovalProfile p = random_profile(rng, cfg);
                    // uniform over all valid (group, added candidate) steps
                    long total = 0;
                    for (const auto& g : p.groups())
                        total += p.num_candidates() - static_cast<long>(g.ballot.size());
                    if (total == 0) {
                        v.axiom = axiom.text;
                        v.outcome = Outcome::vacuous;
                        v.detail = "every ballot already approves every candidate";
                        break;
                    }
                    long pick = static_cast<long>(rng.below(total));
                    int gi = 0, x = -1;
                    for (int g = 0; g < static_cast<int>(p.groups().size()); ++g) {
                        long free_here =
                            p.num_candidates() - static_cast<long>(p.groups()[g].ballot.size());
                        if (pick < free_here) {
                            gi = g;
                            for (int c = 0; c < p.num_candidates(); ++c) {
                                if (p.groups()[g].ballot.approves(c)) continue;
                                if (pick-- == 0) {
                                    x = c;
                                    break;
                                }
                            }
                            break;
                        }
                        pick -= free_here;
                    }
                    v = check_monotonicity_step(rule, p, gi, x, tol);
                    break;
                }
                case AxiomSpec::Kind::wpc:
                case AxiomSpec::Kind::spc:
                case AxiomSpec::Kind::rpc: {
                    ApprovalProfile a = random_profile(rng, cfg);
                    ApprovalProfile b = random_profile_like(rng, cfg, a);
                    if (axiom.kind == AxiomSpec::Kind::wpc)
                        v = check_wpc_pair(rule, a, b, tol);
                    else if (axiom.kind == AxiomSpec::Kind::spc)
                        v = check_spc_pair(rule, a, b, tol);
                    else
                        v = check_rpc_pair(rule, a, b, tol);
                    break;
                }
                case AxiomSpec::Kind::unanimity:
                    v = check_unanimity(rule, random_profile(rng, cfg), tol);
                    break;
                case AxiomSpec::Kind::afs_bound:
                    v = check_afs_bound(rule, random_profile(rng, cfg), axiom.alpha, tol);
                    break;
                case AxiomSpec::Kind::core_bound:
                    v = check_core_bound(rule, random_profile(rng, cfg), axiom.alpha, tol);
                    break;
            }
        } catch (const Error& e) {
            v.axiom = axiom.text;
            v.outcome = Outcome::inconclusive;
            v.detail = std::string("checker error: ") + e.what();
        }
        switch (v.outcome) {
            case Outcome::holds: ++report.holds; break;
            case Outcome::fails:
                ++report.fails;
                if (report.failures.size() < max_recorded) report.failures.push_back({t, v});
                break;
            case Outcome::vacuous: ++report.vacuous; break;
            case Outcome::inconclusive:
                ++report.inconclusive;
                if (report.inconclusives.size() < max_recorded)
                    report.inconclusives.push_back({t, v});
                break;
        }
    }
    return report;
}

}  // namespace budgetdiv
