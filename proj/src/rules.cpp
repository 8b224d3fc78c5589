#include "budgetdiv/rules.hpp"

#include "budgetdiv/io.hpp"

namespace budgetdiv {

RuleSpec parse_rule_spec(const std::string& s) {
    RuleSpec spec;
    spec.text = s;
    if (s == "map") {
        spec.kind = RuleSpec::Kind::map;
    } else if (s == "ues") {
        spec.kind = RuleSpec::Kind::ues;
    } else if (s == "cut") {
        spec.kind = RuleSpec::Kind::cut;
    } else if (s == "fut") {
        spec.kind = RuleSpec::Kind::fut;
    } else if (s == "nash") {
        spec.kind = RuleSpec::Kind::nash;
    } else if (s == "add13") {
        spec.kind = RuleSpec::Kind::add13;
    } else if (s.rfind("mps:", 0) == 0) {
        spec.kind = RuleSpec::Kind::mps;
        spec.gamma = parse_rational(s.substr(4));
        if (spec.gamma < 0 || spec.gamma > 1)
            throw ValidationError("mps parameter must lie in [0,1], got " + rat_str(spec.gamma));
        spec.text = "mps:" + rat_str(spec.gamma);
    } else if (s.rfind("custom:", 0) == 0) {
        spec.kind = RuleSpec::Kind::custom;
        spec.custom_path = s.substr(7);
        if (spec.custom_path.empty()) throw ValidationError("custom: requires a file path");
    } else {
        throw ValidationError(
            "unknown rule '" + s +
            "' (expected map, ues, cut, fut, nash, mps:<gamma>, add13, or custom:<file>)");
    }
    return spec;
}

namespace {

Rule sequential_rule(const RuleSpec& spec, PaymentWillingness pi) {
    Rule r;
    r.spec = spec;
    r.name = spec.text;
    r.exact = true;
    r.willingness = pi;
    r.eval_exact = [pi](const ApprovalProfile& profile) {
        return run_sequential(profile, pi).dist;
    };
    r.eval_float = [pi](const ApprovalProfile& profile) {
        return to_float(run_sequential(profile, pi).dist);
    };
    return r;
}

}  // namespace

Rule make_rule(const RuleSpec& spec, const NashSolverConfig& nash_cfg) {
    switch (spec.kind) {
        case RuleSpec::Kind::map:
            return sequential_rule(spec, willingness_map());
        case RuleSpec::Kind::ues:
            return sequential_rule(spec, willingness_ues());
        case RuleSpec::Kind::mps:
            return sequential_rule(spec, willingness_mps(spec.gamma));
        case RuleSpec::Kind::add13:
            return sequential_rule(spec, willingness_additive_third());
        case RuleSpec::Kind::custom:
            return sequential_rule(spec, load_willingness(spec.custom_path));
        case RuleSpec::Kind::cut: {
            Rule r;
            r.spec = spec;
            r.name = spec.text;
            r.exact = true;
            r.eval_exact = [](const ApprovalProfile& p) { return run_cut(p).dist; };
            r.eval_float = [](const ApprovalProfile& p) { return to_float(run_cut(p).dist); };
            return r;
        }
        case RuleSpec::Kind::fut: {
            Rule r;
            r.spec = spec;
            r.name = spec.text;
            r.exact = true;
            r.eval_exact = [](const ApprovalProfile& p) { return run_fut(p).dist; };
            r.eval_float = [](const ApprovalProfile& p) { return to_float(run_fut(p).dist); };
            return r;
        }
        case RuleSpec::Kind::nash: {
            Rule r;
            r.spec = spec;
            r.name = spec.text;
            r.exact = false;
            r.eval_float = [nash_cfg](const ApprovalProfile& p) {
                NashResult res = run_nash(p, nash_cfg);
                if (!res.converged)
                    throw ModelError("nash solver did not converge after " +
                                     std::to_string(res.iterations) +
                                     " iterations (residual " + float_str(res.residual) + ")");
                return res.dist;
            };
            return r;
        }
    }
    throw ValidationError("unhandled rule kind");
}

Rule make_rule(const std::string& spec_text, const NashSolverConfig& nash_cfg) {
    return make_rule(parse_rule_spec(spec_text), nash_cfg);
}

std::vector<std::string> default_claims(const RuleSpec& spec) {
    switch (spec.kind) {
        case RuleSpec::Kind::map:
            return {"monotonicity", "unanimity", "wpc", "rpc", "afs_bound:2"};
        case RuleSpec::Kind::ues:
            return {"monotonicity", "wpc", "spc", "rpc"};
        case RuleSpec::Kind::mps: {
            if (spec.gamma == 0) return default_claims(parse_rule_spec("map"));
            if (spec.gamma == 1) return default_claims(parse_rule_spec("ues"));
            // AFS guarantee: 2/(1+g) below the crossover at g=1/3, 1/(1-g) above.
            Rat bound = spec.gamma <= Rat(1, 3) ? Rat(Rat(2) / (1 + spec.gamma))
                                                : Rat(Rat(1) / (1 - spec.gamma));
            return {"wpc", "rpc", "afs_bound:" + rat_str(bound)};
        }
        case RuleSpec::Kind::add13:
        case RuleSpec::Kind::custom:
            return {"wpc", "rpc"};
        case RuleSpec::Kind::cut:
        case RuleSpec::Kind::fut:
        case RuleSpec::Kind::nash:
            return {"unanimity"};
    }
    return {};
}

}  // namespace budgetdiv
