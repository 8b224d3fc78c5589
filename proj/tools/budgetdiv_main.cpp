// Command-line surface: run rules, audit distributions, check/fuzz axioms and
// emit the named instance corpus.  Every command is a thin adapter over the
// library; output is byte-identical for identical invocations.
#include "budgetdiv/classic.hpp"
#include "budgetdiv/consistency.hpp"
#include "budgetdiv/corpus.hpp"
#include "budgetdiv/fairness.hpp"
#include "budgetdiv/io.hpp"
#include "budgetdiv/rules.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <variant>
#include <vector>

using namespace budgetdiv;

namespace {

std::string decimal_str(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return std::string(buf);
}

std::string profile_line(const ApprovalProfile& p) {
    return "profile n=" + std::to_string(p.num_voters()) + " m=" +
           std::to_string(p.num_candidates()) + " digest=" + profile_digest(p);
}

ordered_json profile_info(const ApprovalProfile& p, const std::string& path) {
    ordered_json j;
    if (!path.empty()) j["path"] = path;
    j["n"] = p.num_voters();
    j["m"] = p.num_candidates();
    j["digest"] = profile_digest(p);
    return j;
}

// ---- run ------------------------------------------------------------------

struct RunOpts {
    std::string rule;
    std::string profile_path;
    bool trace = false;
    bool json = false;
    int decimal = 0;
};

int cmd_run(const RunOpts& opt) {
    ApprovalProfile profile = load_profile(opt.profile_path);
    Rule rule = make_rule(opt.rule);
    if (opt.trace && (rule.spec.kind == RuleSpec::Kind::nash))
        throw ValidationError("run: the nash rule has no round trace");

    ordered_json j;
    j["rule"] = rule.name;
    j["profile"] = profile_info(profile, opt.profile_path);
    j["exact"] = rule.exact;

    std::string text;
    text += "rule " + rule.name + "\n" + profile_line(profile) + "\n";

    if (rule.exact) {
        ExactDist dist = rule.eval_exact(profile);
        ordered_json shares_j = ordered_json::object();
        for (int x = 0; x < profile.num_candidates(); ++x) {
            const std::string& nm = profile.candidate_name(x);
            std::string val = rat_str(dist.shares[x]);
            text += "share " + nm + " " + val;
            if (opt.decimal > 0) text += " " + decimal_str(to_double(dist.shares[x]), opt.decimal);
            text += "\n";
            shares_j[nm] = val;
        }
        j["distribution"] = shares_j;
        if (opt.trace) {
            ordered_json rounds = ordered_json::array();
            if (rule.willingness) {
                SeqResult res = run_sequential(profile, *rule.willingness);
                for (size_t r = 0; r < res.trace.rounds.size(); ++r) {
                    const RuleRound& round = res.trace.rounds[r];
                    text += "round " + std::to_string(r + 1) + " select " +
                            profile.candidate_name(round.candidate) + " total " +
                            rat_str(round.total) + "\n";
                    ordered_json jr;
                    jr["select"] = profile.candidate_name(round.candidate);
                    jr["total"] = rat_str(round.total);
                    ordered_json pays = ordered_json::array();
                    for (const RoundPayment& pay : round.payments) {
                        text += "  pay group " + std::to_string(pay.group) + " per-voter " +
                                rat_str(pay.per_voter) + "\n";
                        ordered_json jp;
                        jp["group"] = pay.group;
                        jp["per_voter"] = rat_str(pay.per_voter);
                        pays.push_back(jp);
                    }
                    jr["payments"] = pays;
                    rounds.push_back(jr);
                }
            } else if (rule.spec.kind == RuleSpec::Kind::fut) {
                FutResult res = run_fut(profile);
                for (size_t e = 0; e < res.events.size(); ++e) {
                    text += "event " + std::to_string(e + 1) + " lambda " +
                            rat_str(res.events[e].lambda) + " fired";
                    ordered_json je;
                    je["lambda"] = rat_str(res.events[e].lambda);
                    ordered_json fired = ordered_json::array();
                    for (int x : res.events[e].fired) {
                        text += " " + profile.candidate_name(x);
                        fired.push_back(profile.candidate_name(x));
                    }
                    text += "\n";
                    je["fired"] = fired;
                    rounds.push_back(je);
                }
            } else {  // cut: per-group split of the 1/n budget
                CutResult res = run_cut(profile);
                for (size_t g = 0; g < res.decomp.per_group.size(); ++g) {
                    text += "group " + std::to_string(g) + " splits";
                    ordered_json jg = ordered_json::object();
                    for (int x = 0; x < profile.num_candidates(); ++x) {
                        const Rat& s = res.decomp.per_group[g].shares[x];
                        if (s == 0) continue;
                        text += " " + profile.candidate_name(x) + ":" + rat_str(s);
                        jg[profile.candidate_name(x)] = rat_str(s);
                    }
                    text += "\n";
                    rounds.push_back(jg);
                }
            }
            j["trace"] = rounds;
        }
    } else {
        NashSolverConfig cfg;
        NashResult res = run_nash(profile, cfg);
        if (!res.converged)
            throw ModelError("nash failed to converge after " + std::to_string(res.iterations) +
                             " iterations (residual " + float_str(res.residual) + ")");
        NashCheck check = verify_nash(profile, res.dist, 10 * cfg.tolerance);
        ordered_json shares_j = ordered_json::object();
        for (int x = 0; x < profile.num_candidates(); ++x) {
            const std::string& nm = profile.candidate_name(x);
            text += "share " + nm + " " + float_str(res.dist.shares[x]);
            if (opt.decimal > 0) text += " " + decimal_str(res.dist.shares[x], opt.decimal);
            text += "\n";
            shares_j[nm] = res.dist.shares[x];
        }
        text += "iterations " + std::to_string(res.iterations) + "\n";
        text += "residual " + float_str(res.residual) + "\n";
        text += std::string("verified ") + (check.ok ? "true" : "false") + "\n";
        j["distribution"] = shares_j;
        j["iterations"] = res.iterations;
        j["residual"] = res.residual;
        j["verified"] = check.ok;
    }

    if (opt.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
    return 0;
}

// ---- audit ----------------------------------------------------------------

struct AuditOpts {
    std::string profile_path;
    std::string source;
    bool exact_core = false;
    bool json = false;
    int decimal = 0;
    long core_limit = 14;
};

// Renders one factor value for both backends.
std::string value_str(const Rat& r) { return rat_str(r); }
std::string value_str(double v) { return float_str(v); }
ordered_json value_json(const Rat& r) { return rat_str(r); }
ordered_json value_json(double v) { return v; }
double as_d(const Rat& r) { return to_double(r); }
double as_d(double v) { return v; }

template <typename N>
int audit_with(const AuditOpts& opt, const ApprovalProfile& profile,
               const Distribution<N>& dist, const std::string& source_desc) {
    std::string text = profile_line(profile) + "\nsource " + source_desc + "\n";
    ordered_json j;
    j["profile"] = profile_info(profile, opt.profile_path);
    j["source"] = source_desc;

    AfsAudit<N> afs = afs_factor(profile, dist);
    if (afs.unbounded) {
        text += "afs unbounded witness " + profile.candidate_name(afs.witness_candidate) +
                " size " + std::to_string(afs.witness_size) + "\n";
        j["afs"] = {{"unbounded", true},
                    {"witness", profile.candidate_name(afs.witness_candidate)},
                    {"size", afs.witness_size}};
    } else {
        text += "afs " + value_str(afs.factor);
        if (opt.decimal > 0) text += " " + decimal_str(as_d(afs.factor), opt.decimal);
        text += " witness " + profile.candidate_name(afs.witness_candidate) + " size " +
                std::to_string(afs.witness_size) + "\n";
        j["afs"] = {{"unbounded", false},
                    {"factor", value_json(afs.factor)},
                    {"witness", profile.candidate_name(afs.witness_candidate)},
                    {"size", afs.witness_size}};
    }

    PfAudit<N> pf = pf_score(profile, dist);
    if (pf.unbounded) {
        text += "pf unbounded group " + std::to_string(pf.zero_utility_group) + "\n";
        j["pf"] = {{"unbounded", true}, {"group", pf.zero_utility_group}};
    } else {
        text += "pf " + value_str(pf.score);
        if (opt.decimal > 0) text += " " + decimal_str(as_d(pf.score), opt.decimal);
        text += " witness " + profile.candidate_name(pf.witness_candidate) + "\n";
        j["pf"] = {{"unbounded", false},
                   {"score", value_json(pf.score)},
                   {"witness", profile.candidate_name(pf.witness_candidate)}};
    }

    CoreLowerAudit<N> cl = core_lower_single(profile, dist);
    if (cl.unbounded) {
        text += "core_lower unbounded group " + std::to_string(cl.zero_utility_group) + "\n";
        j["core_lower"] = {{"unbounded", true}, {"group", cl.zero_utility_group}};
    } else {
        text += "core_lower " + value_str(cl.factor);
        if (opt.decimal > 0) text += " " + decimal_str(as_d(cl.factor), opt.decimal);
        text += " witness " + profile.candidate_name(cl.witness_candidate) + " size " +
                std::to_string(cl.witness_size) + "\n";
        j["core_lower"] = {{"unbounded", false},
                           {"factor", value_json(cl.factor)},
                           {"witness", profile.candidate_name(cl.witness_candidate)},
                           {"size", cl.witness_size}};
    }

    DecomposeResult dec;
    if constexpr (std::is_same_v<N, Rat>)
        dec = decompose(profile, dist);
    else
        dec = decompose(profile, dist, 1e-6);
    if (dec.feasible) {
        text += "decomposable true\n";
        j["decompose"] = {{"feasible", true}};
    } else {
        text += "decomposable false cut";
        ordered_json cut = ordered_json::array();
        for (int x : dec.cut->candidates) {
            text += " " + profile.candidate_name(x);
            cut.push_back(profile.candidate_name(x));
        }
        text += " share_mass " + rat_str(dec.cut->share_mass) + " voter_mass " +
                rat_str(dec.cut->voter_mass) + "\n";
        j["decompose"] = {{"feasible", false},
                          {"cut", cut},
                          {"share_mass", rat_str(dec.cut->share_mass)},
                          {"voter_mass", rat_str(dec.cut->voter_mass)}};
    }

    if (opt.exact_core) {
        if (profile.num_voters() <= opt.core_limit) {
            CoreAudit<N> core = core_exact(profile, dist, opt.core_limit);
            if (core.unbounded) {
                text += "core_exact unbounded group " + std::to_string(core.zero_utility_group) +
                        "\n";
                j["core_exact"] = {{"unbounded", true}, {"group", core.zero_utility_group}};
            } else {
                long members = 0;
                for (long c : core.witness_counts) members += c;
                text += "core_exact " + value_str(core.factor);
                if (opt.decimal > 0)
                    text += " " + decimal_str(as_d(core.factor), opt.decimal);
                text += " coalition " + std::to_string(members) + "\n";
                j["core_exact"] = {{"unbounded", false},
                                   {"factor", value_json(core.factor)},
                                   {"coalition", members}};
            }
        } else {
            text += "core_exact skipped n>" + std::to_string(opt.core_limit) + "\n";
            j["core_exact"] = {{"skipped", true}, {"limit", opt.core_limit}};
        }
    }

    if (opt.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
    return 0;
}

int cmd_audit(const AuditOpts& opt) {
    ApprovalProfile profile = load_profile(opt.profile_path);

    // The source is tried as a rule spec first, then as a distribution file.
    bool is_rule = true;
    RuleSpec spec;
    try {
        spec = parse_rule_spec(opt.source);
    } catch (const ValidationError&) {
        is_rule = false;
    }
    if (is_rule) {
        Rule rule = make_rule(spec);
        if (rule.exact)
            return audit_with<Rat>(opt, profile, rule.eval_exact(profile), rule.name);
        return audit_with<double>(opt, profile, rule.eval_float(profile), rule.name);
    }
    auto dist = parse_dist_json(read_file(opt.source), profile);
    const std::string desc = "file:" + opt.source;
    if (std::holds_alternative<ExactDist>(dist))
        return audit_with<Rat>(opt, profile, std::get<ExactDist>(dist), desc);
    return audit_with<double>(opt, profile, std::get<FloatDist>(dist), desc);
}

// ---- check ----------------------------------------------------------------

struct CheckOpts {
    std::string axiom;
    std::string rule;
    std::vector<std::string> profiles;
    int group = -1;
    std::string add_candidate;
    double tol = 1e-6;
    bool json = false;
};

int render_verdict(const Rule& rule, const AxiomVerdict& v, bool json,
                   const ApprovalProfile* for_names) {
    if (json) {
        ordered_json j;
        j["axiom"] = v.axiom;
        j["rule"] = rule.name;
        j["outcome"] = outcome_str(v.outcome);
        if (v.candidate && for_names)
            j["candidate"] = for_names->candidate_name(*v.candidate);
        if (v.group_index) j["group"] = *v.group_index;
        j["values"] = v.values;
        if (!v.detail.empty()) j["detail"] = v.detail;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "axiom " << v.axiom << "\n";
        std::cout << "rule " << rule.name << "\n";
        std::cout << "outcome " << outcome_str(v.outcome) << "\n";
        if (v.candidate && for_names)
            std::cout << "candidate " << for_names->candidate_name(*v.candidate) << "\n";
        if (v.group_index) std::cout << "group " << *v.group_index << "\n";
        for (const std::string& s : v.values) std::cout << "value " << s << "\n";
        if (!v.detail.empty()) std::cout << "detail " << v.detail << "\n";
    }
    return v.outcome == Outcome::fails ? 1 : 0;
}

int cmd_check(const CheckOpts& opt) {
    AxiomSpec axiom = parse_axiom_spec(opt.axiom);
    Rule rule = make_rule(opt.rule);

    auto need = [&](size_t k) {
        if (opt.profiles.size() != k)
            throw ValidationError("check " + axiom.text + ": expected " + std::to_string(k) +
                                  " profile argument(s), got " +
                                  std::to_string(opt.profiles.size()));
    };

    switch (axiom.kind) {
        case AxiomSpec::Kind::monotonicity: {
            need(1);
            ApprovalProfile profile = load_profile(opt.profiles[0]);
            if (opt.group < 0 || opt.add_candidate.empty())
                throw ValidationError("check monotonicity: requires --group and --add");
            int x = profile.candidate_index(opt.add_candidate);
            if (x < 0)
                throw ValidationError("check monotonicity: unknown candidate " +
                                      opt.add_candidate);
            AxiomVerdict v =
                check_monotonicity_step(rule, profile, opt.group, x, opt.tol);
            return render_verdict(rule, v, opt.json, &profile);
        }
        case AxiomSpec::Kind::wpc:
        case AxiomSpec::Kind::spc:
        case AxiomSpec::Kind::rpc: {
            need(2);
            ApprovalProfile a = load_profile(opt.profiles[0]);
            ApprovalProfile b = load_profile(opt.profiles[1]);
            AxiomVerdict v = axiom.kind == AxiomSpec::Kind::wpc
                                 ? check_wpc_pair(rule, a, b, opt.tol)
                                 : axiom.kind == AxiomSpec::Kind::spc
                                       ? check_spc_pair(rule, a, b, opt.tol)
                                       : check_rpc_pair(rule, a, b, opt.tol);
            return render_verdict(rule, v, opt.json, &a);
        }
        case AxiomSpec::Kind::unanimity: {
            need(1);
            ApprovalProfile profile = load_profile(opt.profiles[0]);
            AxiomVerdict v = check_unanimity(rule, profile, opt.tol);
            return render_verdict(rule, v, opt.json, &profile);
        }
        case AxiomSpec::Kind::afs_bound: {
            need(1);
            ApprovalProfile profile = load_profile(opt.profiles[0]);
            AxiomVerdict v = check_afs_bound(rule, profile, axiom.alpha, opt.tol);
            return render_verdict(rule, v, opt.json, &profile);
        }
        case AxiomSpec::Kind::core_bound: {
            need(1);
            ApprovalProfile profile = load_profile(opt.profiles[0]);
            AxiomVerdict v = check_core_bound(rule, profile, axiom.alpha, opt.tol);
            return render_verdict(rule, v, opt.json, &profile);
        }
    }
    throw ValidationError("check: unhandled axiom");
}

// ---- fuzz -----------------------------------------------------------------

struct FuzzOpts {
    std::string axiom;
    std::string rule;
    std::uint64_t seed = 1;
    long trials = 1000;
    int max_n = 12;
    int max_m = 6;
    int max_ballot = 4;
    double tol = 1e-6;
    bool json = false;
};

// A violation only signals a defect when the rule actually claims the axiom;
// for afs bounds any claimed bound at most the tested one counts.
bool axiom_claimed(const Rule& rule, const AxiomSpec& axiom) {
    const auto claims = default_claims(rule.spec);
    for (const std::string& c : claims) {
        if (c == axiom.text) return true;
        if (axiom.kind == AxiomSpec::Kind::afs_bound && c.rfind("afs_bound:", 0) == 0) {
            AxiomSpec claimed = parse_axiom_spec(c);
            if (claimed.alpha <= axiom.alpha) return true;
        }
    }
    return false;
}

int cmd_fuzz(const FuzzOpts& opt) {
    AxiomSpec axiom = parse_axiom_spec(opt.axiom);
    Rule rule = make_rule(opt.rule);
    GenConfig cfg;
    cfg.max_n = opt.max_n;
    cfg.max_m = opt.max_m;
    cfg.max_ballot = opt.max_ballot;
    FuzzReport report = fuzz(rule, axiom, cfg, opt.seed, opt.trials, opt.tol);
    const bool claimed = axiom_claimed(rule, axiom);

    if (opt.json) {
        ordered_json j;
        j["axiom"] = report.axiom;
        j["rule"] = report.rule;
        j["seed"] = report.seed;
        j["trials"] = report.trials;
        j["holds"] = report.holds;
        j["fails"] = report.fails;
        j["vacuous"] = report.vacuous;
        j["inconclusive"] = report.inconclusive;
        j["claimed"] = claimed;
        ordered_json fails = ordered_json::array();
        for (const FuzzFailure& f : report.failures) {
            ordered_json jf;
            jf["trial"] = f.trial;
            if (!f.verdict.detail.empty()) jf["detail"] = f.verdict.detail;
            fails.push_back(jf);
        }
        j["failures"] = fails;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "axiom " << report.axiom << "\n";
        std::cout << "rule " << report.rule << "\n";
        std::cout << "seed " << report.seed << "\n";
        std::cout << "trials " << report.trials << "\n";
        std::cout << "holds " << report.holds << "\n";
        std::cout << "fails " << report.fails << "\n";
        std::cout << "vacuous " << report.vacuous << "\n";
        std::cout << "inconclusive " << report.inconclusive << "\n";
        std::cout << "claimed " << (claimed ? "true" : "false") << "\n";
        for (const FuzzFailure& f : report.failures)
            std::cout << "failure trial " << f.trial << " " << f.verdict.detail << "\n";
    }
    return (claimed && report.fails > 0) ? 1 : 0;
}

// ---- corpus ---------------------------------------------------------------

ordered_json expectations_json(const ApprovalProfile& profile,
                               const std::vector<RuleExpectation>& exact,
                               const std::vector<FloatExpectation>& fl) {
    ordered_json out = ordered_json::array();
    for (const RuleExpectation& e : exact) {
        ordered_json j;
        j["rule"] = e.rule;
        j["distribution"] = dist_to_json(profile, e.dist);
        out.push_back(j);
    }
    for (const FloatExpectation& e : fl) {
        ordered_json j;
        j["rule"] = e.rule;
        j["distribution"] = dist_to_json(profile, e.dist);
        j["tol"] = e.tol;
        out.push_back(j);
    }
    return out;
}

ordered_json instance_json(const NamedInstance& ni) {
    ordered_json j;
    j["id"] = ni.id;
    j["note"] = ni.note;
    j["profile"] = profile_to_json(ni.profile);
    if (ni.second) j["second"] = profile_to_json(*ni.second);
    if (!ni.expected.empty() || !ni.expected_float.empty())
        j["expected"] = expectations_json(ni.profile, ni.expected, ni.expected_float);
    if (ni.second && (!ni.expected_second.empty() || !ni.expected_float_second.empty()))
        j["expected_second"] =
            expectations_json(*ni.second, ni.expected_second, ni.expected_float_second);
    if (ni.second && (!ni.expected_combined.empty() || !ni.expected_float_combined.empty()))
        j["expected_combined"] =
            expectations_json(ni.profile, ni.expected_combined, ni.expected_float_combined);
    if (!ni.factor_rule.empty()) j["factor_rule"] = ni.factor_rule;
    if (ni.afs_exact) j["afs_exact"] = rat_str(*ni.afs_exact);
    if (ni.afs_lower) j["afs_lower"] = rat_str(*ni.afs_lower);
    if (ni.deviation) {
        ordered_json d;
        d["coalition_counts"] = ni.deviation->coalition_counts;
        d["deviation"] = dist_to_json(ni.profile, ni.deviation->q);
        d["min_ratio"] = rat_str(ni.deviation->min_ratio);
        j["deviation"] = d;
    }
    if (ni.mono_step) {
        ordered_json w;
        w["rule"] = ni.mono_rule;
        w["profile"] = profile_to_json(ni.mono_step->profile);
        w["group"] = ni.mono_step->group_index;
        w["add_candidate"] = ni.mono_step->profile.candidate_name(ni.mono_step->x);
        j["monotonicity_witness"] = w;
    }
    if (!ni.split_pairs.empty()) {
        ordered_json pairs = ordered_json::array();
        for (const auto& [a, b] : ni.split_pairs) {
            ordered_json p;
            p["a"] = profile_to_json(a);
            p["b"] = profile_to_json(b);
            pairs.push_back(p);
        }
        j["split_pairs"] = pairs;
    }
    if (!ni.selection_prefix.empty()) {
        ordered_json sel;
        sel["rule"] = ni.selection_rule;
        ordered_json order = ordered_json::array();
        for (int x : ni.selection_prefix) order.push_back(ni.profile.candidate_name(x));
        sel["order"] = order;
        j["selection_prefix"] = sel;
    }
    return j;
}

struct CorpusOpts {
    std::string name;
    std::vector<std::string> params;
    std::string out_dir = ".";
    bool json = false;
};

int cmd_corpus_list(bool json) {
    auto catalog = corpus_catalog();
    if (json) {
        ordered_json j = ordered_json::array();
        for (const CorpusEntry& e : catalog) {
            ordered_json je;
            je["name"] = e.name;
            je["params"] = e.params_help;
            j.push_back(je);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const CorpusEntry& e : catalog) {
            std::cout << e.name;
            if (!e.params_help.empty()) std::cout << "  [" << e.params_help << "]";
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_corpus_emit(const CorpusOpts& opt) {
    std::map<std::string, std::string> params;
    for (const std::string& kv : opt.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ValidationError("corpus emit: parameters take the form key=value, got " + kv);
        params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    std::optional<NamedInstance> ni = corpus_make(opt.name, params);
    if (!ni) {
        std::cout << "not applicable: " << opt.name
                  << " has no instance for these parameters\n";
        return 0;
    }

    std::filesystem::create_directories(opt.out_dir);
    const std::string base = opt.out_dir + "/" + ni->id;
    std::vector<std::string> written;
    write_file(base + ".profile", profile_to_text(ni->profile));
    written.push_back(base + ".profile");
    if (ni->second) {
        write_file(base + "_second.profile", profile_to_text(*ni->second));
        written.push_back(base + "_second.profile");
    }
    for (size_t i = 0; i < ni->split_pairs.size(); ++i) {
        const std::string pa = base + "_split" + std::to_string(i + 1) + "a.profile";
        const std::string pb = base + "_split" + std::to_string(i + 1) + "b.profile";
        write_file(pa, profile_to_text(ni->split_pairs[i].first));
        write_file(pb, profile_to_text(ni->split_pairs[i].second));
        written.push_back(pa);
        written.push_back(pb);
    }
    ordered_json j = instance_json(*ni);
    write_file(base + ".expected.json", j.dump(2) + "\n");
    written.push_back(base + ".expected.json");

    if (opt.json) {
        ordered_json out;
        out["files"] = written;
        out["instance"] = j;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const std::string& f : written) std::cout << f << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approval-based budget division: rules, fairness audits, axiom checks"};
    app.require_subcommand(1);
    std::function<int()> action;

    RunOpts run_opts;
    CLI::App* run = app.add_subcommand("run", "Evaluate a rule on a profile");
    run->add_option("rule", run_opts.rule,
                    "map | ues | cut | fut | nash | mps:<gamma> | add13 | custom:<file>")
        ->required();
    run->add_option("profile", run_opts.profile_path, "Profile file (text or JSON)")->required();
    run->add_flag("--trace", run_opts.trace, "Print round/event detail");
    run->add_flag("--json", run_opts.json, "Machine-readable output");
    run->add_option("--decimal", run_opts.decimal, "Also print k-digit decimals")
        ->check(CLI::Range(1, 17));
    run->callback([&] { action = [&] { return cmd_run(run_opts); }; });

    AuditOpts audit_opts;
    CLI::App* audit = app.add_subcommand("audit", "Fairness audit of a distribution");
    audit->add_option("profile", audit_opts.profile_path, "Profile file")->required();
    audit
        ->add_option("source", audit_opts.source,
                     "Rule spec or distribution JSON file (rule specs win ties)")
        ->required();
    audit->add_flag("--exact-core", audit_opts.exact_core,
                    "Also run the exhaustive core audit (small n only)");
    audit->add_option("--core-limit", audit_opts.core_limit,
                      "Max n for the exhaustive core audit");
    audit->add_flag("--json", audit_opts.json, "Machine-readable output");
    audit->add_option("--decimal", audit_opts.decimal, "Also print k-digit decimals")
        ->check(CLI::Range(1, 17));
    audit->callback([&] { action = [&] { return cmd_audit(audit_opts); }; });

    CheckOpts check_opts;
    CLI::App* check = app.add_subcommand("check", "Check one axiom on given inputs");
    check
        ->add_option("axiom", check_opts.axiom,
                     "monotonicity | wpc | spc | rpc | unanimity | afs_bound:<a> | "
                     "core_bound:<a>")
        ->required();
    check->add_option("rule", check_opts.rule, "Rule spec")->required();
    check->add_option("profiles", check_opts.profiles, "One or two profile files")
        ->expected(1, 2);
    check->add_option("--group", check_opts.group, "Monotonicity: group to split");
    check->add_option("--add", check_opts.add_candidate,
                      "Monotonicity: candidate gaining an approval");
    check->add_option("--tol", check_opts.tol, "Float comparison tolerance");
    check->add_flag("--json", check_opts.json, "Machine-readable output");
    check->callback([&] { action = [&] { return cmd_check(check_opts); }; });

    FuzzOpts fuzz_opts;
    CLI::App* fz = app.add_subcommand("fuzz", "Random-profile axiom fuzzing");
    fz->add_option("axiom", fuzz_opts.axiom, "Axiom spec (see check)")->required();
    fz->add_option("rule", fuzz_opts.rule, "Rule spec")->required();
    fz->add_option("--seed", fuzz_opts.seed, "Random seed");
    fz->add_option("--trials", fuzz_opts.trials, "Number of profiles")->check(CLI::PositiveNumber);
    fz->add_option("--max-n", fuzz_opts.max_n, "Max voters")->check(CLI::PositiveNumber);
    fz->add_option("--max-m", fuzz_opts.max_m, "Max candidates")->check(CLI::PositiveNumber);
    fz->add_option("--max-ballot", fuzz_opts.max_ballot, "Max ballot size")
        ->check(CLI::PositiveNumber);
    fz->add_option("--tol", fuzz_opts.tol, "Float comparison tolerance");
    fz->add_flag("--json", fuzz_opts.json, "Machine-readable output");
    fz->callback([&] { action = [&] { return cmd_fuzz(fuzz_opts); }; });

    CorpusOpts corpus_opts;
    bool corpus_list_json = false;
    CLI::App* corpus = app.add_subcommand("corpus", "Named instance families");
    corpus->require_subcommand(1);
    CLI::App* list = corpus->add_subcommand("list", "List instance families");
    list->add_flag("--json", corpus_list_json, "Machine-readable output");
    list->callback([&] { action = [&] { return cmd_corpus_list(corpus_list_json); }; });
    CLI::App* emit = corpus->add_subcommand("emit", "Write an instance and its expected results");
    emit->add_option("name", corpus_opts.name, "Family name (see corpus list)")->required();
    emit->add_option("params", corpus_opts.params, "key=value parameters");
    emit->add_option("--out-dir", corpus_opts.out_dir, "Output directory (default .)");
    emit->add_flag("--json", corpus_opts.json, "Machine-readable output");
    emit->callback([&] { action = [&] { return cmd_corpus_emit(corpus_opts); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return action();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
