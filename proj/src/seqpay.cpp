#include "budgetdiv/seqpay.hpp"

#include <memory>
#include <set>

namespace budgetdiv {

void PaymentWillingness::validate_for_sizes(const std::vector<long>& sizes) const {
    for (long t : sizes) {
        if (t < 1) throw ValidationError("ballot size must be >= 1");
        Rat sum = 0, prev;
        for (long j = 1; j <= t; ++j) {
            Rat v = pay(t, j);
            if (v < 0 || v > 1)
                throw ValidationError("willingness '" + name + "': pi(" + std::to_string(t) +
                                      "," + std::to_string(j) + ") outside [0,1]");
            if (j > 1 && v > prev)
                throw ValidationError("willingness '" + name + "': pi(" + std::to_string(t) +
                                      ",*) increases at j=" + std::to_string(j));
            sum += v;
            prev = v;
        }
        if (sum != 1)
            throw ValidationError("willingness '" + name + "': pi(" + std::to_string(t) +
                                  ",*) sums to " + rat_str(sum) + ", expected 1");
    }
}

PaymentWillingness willingness_map() {
    return {"map", [](long, long j) { return j == 1 ? Rat(1) : Rat(0); }};
}

PaymentWillingness willingness_ues() {
    return {"ues", [](long t, long) { return rat(1, t); }};
}

PaymentWillingness willingness_mps(const Rat& gamma) {
    if (gamma < 0 || gamma > 1)
        throw ValidationError("mps parameter must be in [0,1], got " + rat_str(gamma));
    if (gamma == 0) {
        auto pi = willingness_map();
        pi.name = "mps:0";
        return pi;
    }
    std::string name = "mps:" + rat_str(gamma);
    return {name, [gamma](long t, long j) {
                // gamma^j / sum_{i=1..t} gamma^i
                Rat num = 1, den = 0, pw = 1;
                for (long i = 1; i <= t; ++i) {
                    pw *= gamma;
                    den += pw;
                    if (i == j) num = pw;
                }
                return Rat(num / den);
            }};
}

PaymentWillingness willingness_additive_third() {
    return {"add13", [](long t, long j) {
                if (t == 1) return j == 1 ? Rat(1) : Rat(0);
                if (j == 1) return rat(2, 3);
                if (j == 2) return rat(1, 3);
                return Rat(0);
            }};
}

PaymentWillingness willingness_custom(std::string name,
                                      std::map<long, std::vector<Rat>> table) {
    for (const auto& [t, row] : table) {
        if (t < 1 || row.size() != static_cast<size_t>(t))
            throw ValidationError("willingness '" + name + "': table row for t=" +
                                  std::to_string(t) + " has wrong length");
    }
    auto shared = std::make_shared<std::map<long, std::vector<Rat>>>(std::move(table));
    PaymentWillingness pi{std::move(name), [shared](long t, long j) -> Rat {
                              auto it = shared->find(t);
                              if (it == shared->end())
                                  throw ValidationError("custom willingness has no row for ballot size " +
                                                        std::to_string(t));
                              return it->second[static_cast<size_t>(j - 1)];
                          }};
    std::vector<long> sizes;
    for (const auto& [t, row] : *shared) sizes.push_back(t);
    pi.validate_for_sizes(sizes);  // reject bad tables eagerly, naming the t
    return pi;
}

SeqResult run_sequential(const ApprovalProfile& profile, const PaymentWillingness& pi) {
    const int m = profile.num_candidates();
    const auto& groups = profile.groups();

    {
        std::set<long> sizes;
        for (const BallotGroup& g : groups) sizes.insert(static_cast<long>(g.ballot.size()));
        pi.validate_for_sizes({sizes.begin(), sizes.end()});
    }

    std::vector<int> levels_paid(groups.size(), 0);  // |A_i ∩ X| per group
    std::vector<char> selected(m, 0);
    SeqResult res;
    res.dist.shares.assign(m, Rat(0));

    for (int round = 0; round < m; ++round) {
        // Total willingness per unselected candidate; first maximum wins, so
        // ties go to the earliest-declared candidate.
        int best = -1;
        Rat best_total;
        for (int x = 0; x < m; ++x) {
            if (selected[x]) continue;
            Rat total = 0;
            for (size_t g = 0; g < groups.size(); ++g) {
                if (!groups[g].ballot.approves(x)) continue;
                total += Rat(groups[g].count) *
                         pi.pay(static_cast<long>(groups[g].ballot.size()), levels_paid[g] + 1);
            }
            if (best < 0 || total > best_total) {
                best = x;
                best_total = total;
            }
        }

        RuleRound rec;
        rec.candidate = best;
        rec.total = best_total;
        for (size_t g = 0; g < groups.size(); ++g) {
            if (!groups[g].ballot.approves(best)) continue;
            rec.payments.push_back(
                {static_cast<int>(g),
                 pi.pay(static_cast<long>(groups[g].ballot.size()), levels_paid[g] + 1)});
            levels_paid[g] += 1;
        }
        res.dist.shares[best] = best_total / profile.num_voters();
        res.trace.rounds.push_back(std::move(rec));
        selected[best] = 1;
    }
    return res;
}

const ExactDist& Decomposition::for_voter(const ApprovalProfile& profile, long i) const {
    if (i < 0 || i >= profile.num_voters()) throw ModelError("voter index out of range");
    long seen = 0;
    for (size_t g = 0; g < profile.groups().size(); ++g) {
        seen += profile.groups()[g].count;
        if (i < seen) return per_group[g];
    }
    throw ModelError("voter index out of range");
}

ExactDist Decomposition::reconstruct(const ApprovalProfile& profile) const {
    if (per_group.size() != profile.groups().size())
        throw ModelError("decomposition does not match profile");
    ExactDist out;
    out.shares.assign(profile.num_candidates(), Rat(0));
    for (size_t g = 0; g < per_group.size(); ++g)
        for (int x = 0; x < profile.num_candidates(); ++x)
            out.shares[x] += Rat(profile.groups()[g].count) * per_group[g].shares[x];
    for (auto& s : out.shares) s /= profile.num_voters();
    return out;
}

Decomposition decomposition_from_trace(const ApprovalProfile& profile,
                                       const RuleTrace& trace) {
    Decomposition dec;
    dec.per_group.assign(profile.groups().size(),
                         ExactDist{std::vector<Rat>(profile.num_candidates(), Rat(0))});
    for (const RuleRound& round : trace.rounds)
        for (const RoundPayment& pay : round.payments)
            dec.per_group[pay.group].shares[round.candidate] += pay.per_voter;
    return dec;
}

}  // namespace budgetdiv
