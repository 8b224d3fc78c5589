#include "budgetdiv/fairness.hpp"

#include "budgetdiv/oracle.hpp"

#include <algorithm>
#include <queue>

namespace budgetdiv {

namespace {

template <typename N>
struct Segment {
    N util;
    int group;
    long count;
};

// Approvers of x sorted by utility ascending; deterministic tie-break on
// group order.
template <typename N>
std::vector<Segment<N>> sorted_approvers(const ApprovalProfile& profile,
                                         const std::vector<N>& util, int x) {
    std::vector<Segment<N>> segs;
    const auto& groups = profile.groups();
    for (size_t g = 0; g < groups.size(); ++g)
        if (groups[g].ballot.approves(x))
            segs.push_back({util[g], static_cast<int>(g), groups[g].count});
    std::stable_sort(segs.begin(), segs.end(),
                     [](const Segment<N>& a, const Segment<N>& b) { return a.util < b.util; });
    return segs;
}

template <typename N>
std::vector<N> group_utilities(const ApprovalProfile& profile, const Distribution<N>& p) {
    if (static_cast<int>(p.shares.size()) != profile.num_candidates())
        throw ModelError("distribution size does not match profile");
    std::vector<N> util;
    util.reserve(profile.groups().size());
    for (const BallotGroup& g : profile.groups()) util.push_back(utility(g.ballot, p));
    return util;
}

// Per-group counts for "the k lowest-utility approvers of x".
template <typename N>
std::vector<long> prefix_counts(const std::vector<Segment<N>>& segs, size_t gn, long k) {
    std::vector<long> counts(gn, 0);
    for (const Segment<N>& s : segs) {
        long take = std::min(k, s.count);
        counts[s.group] = take;
        k -= take;
        if (k == 0) break;
    }
    return counts;
}

}  // namespace

template <typename N>
AfsAudit<N> afs_factor(const ApprovalProfile& profile, const Distribution<N>& p) {
    const N n(profile.num_voters());
    std::vector<N> util = group_utilities(profile, p);
    AfsAudit<N> audit;
    bool have = false;

    for (int x = 0; x < profile.num_candidates(); ++x) {
        auto segs = sorted_approvers(profile, util, x);
        N usum{};
        long k = 0;
        for (const Segment<N>& seg : segs) {
            if (!(seg.util > N{})) {
                // Coalition with zero total utility: its demand cannot be met
                // at any finite factor.
                audit.unbounded = true;
                audit.witness_candidate = x;
                audit.witness_size = k + seg.count;
                audit.witness_counts = prefix_counts(segs, profile.groups().size(), k + seg.count);
                return audit;
            }
            // The factor as a function of coalition size is unimodal inside a
            // block of equal utilities, so both endpoints are candidates.
            for (long kk : {k + 1, k + seg.count}) {
                N total = usum + N(kk - k) * seg.util;
                N factor = N(kk) * N(kk) / (n * total);
                if (!have || factor > audit.factor) {
                    have = true;
                    audit.factor = factor;
                    audit.witness_candidate = x;
                    audit.witness_size = kk;
                    audit.witness_counts = prefix_counts(segs, profile.groups().size(), kk);
                }
            }
            usum += N(seg.count) * seg.util;
            k += seg.count;
        }
    }
    return audit;
}

template <typename N>
AfsAudit<N> brute_afs(const ApprovalProfile& profile, const Distribution<N>& p, long limit_n) {
    return oracle::enumerate_afs(profile, p, limit_n);
}

template <typename N>
PfAudit<N> pf_score(const ApprovalProfile& profile, const Distribution<N>& p) {
    const N n(profile.num_voters());
    std::vector<N> util = group_utilities(profile, p);
    PfAudit<N> audit;
    for (size_t g = 0; g < util.size(); ++g) {
        if (!(util[g] > N{})) {
            audit.unbounded = true;
            audit.zero_utility_group = static_cast<int>(g);
            audit.witness_candidate = profile.groups()[g].ballot.approved[0];
            return audit;
        }
    }
    bool have = false;
    for (int x = 0; x < profile.num_candidates(); ++x) {
        N score{};
        for (size_t g = 0; g < util.size(); ++g)
            if (profile.groups()[g].ballot.approves(x))
                score += N(profile.groups()[g].count) / util[g];
        score /= n;
        if (!have || score > audit.score) {
            have = true;
            audit.score = score;
            audit.witness_candidate = x;
        }
    }
    return audit;
}

template <typename N>
CoreLowerAudit<N> core_lower_single(const ApprovalProfile& profile, const Distribution<N>& p) {
    const N n(profile.num_voters());
    std::vector<N> util = group_utilities(profile, p);
    CoreLowerAudit<N> audit;
    bool have = false;

    for (int x = 0; x < profile.num_candidates(); ++x) {
        auto segs = sorted_approvers(profile, util, x);
        long k = 0;
        for (const Segment<N>& seg : segs) {
            if (!(seg.util > N{})) {
                audit.unbounded = true;
                audit.witness_candidate = x;
                audit.witness_size = k + 1;
                audit.zero_utility_group = seg.group;
                return audit;
            }
            k += seg.count;
            // (k/n) / u_(k) grows with k while u_(k) stays flat, so only the
            // end of each equal-utility block matters.
            N factor = N(k) / (n * seg.util);
            if (!have || factor > audit.factor) {
                have = true;
                audit.factor = factor;
                audit.witness_candidate = x;
                audit.witness_size = k;
            }
        }
    }
    return audit;
}

template <typename N>
CoreAudit<N> core_exact(const ApprovalProfile& profile, const Distribution<N>& p, long limit_n) {
    return oracle::enumerate_core(profile, p, limit_n);
}

template <typename N>
N deviation_ratio(const ApprovalProfile& profile, const Distribution<N>& p,
                  const std::vector<long>& coalition_counts, const Distribution<N>& q) {
    const auto& groups = profile.groups();
    if (coalition_counts.size() != groups.size())
        throw ModelError("coalition counts do not match profile groups");
    long size = 0;
    for (size_t g = 0; g < groups.size(); ++g) {
        if (coalition_counts[g] < 0 || coalition_counts[g] > groups[g].count)
            throw ModelError("coalition count out of range");
        size += coalition_counts[g];
    }
    if (size == 0) throw ModelError("empty coalition");
    N scale = N(size) / N(profile.num_voters());
    bool have = false;
    N worst{};
    for (size_t g = 0; g < groups.size(); ++g) {
        if (coalition_counts[g] == 0) continue;
        N up = utility(groups[g].ballot, p);
        if (!(up > N{}))
            throw ValidationError("deviation ratio unbounded: coalition member has zero utility");
        N ratio = scale * utility(groups[g].ballot, q) / up;
        if (!have || ratio < worst) {
            have = true;
            worst = ratio;
        }
    }
    return worst;
}

// ---- decomposability ------------------------------------------------------

namespace {

struct FlowEdge {
    int to;
    Rat cap;
    int rev;
};

class FlowNet {
  public:
    explicit FlowNet(int nodes) : graph_(nodes) {}

    void add_edge(int u, int v, const Rat& cap) {
        graph_[u].push_back({v, cap, static_cast<int>(graph_[v].size())});
        graph_[v].push_back({u, Rat(0), static_cast<int>(graph_[u].size()) - 1});
    }

    Rat max_flow(int s, int t) {
        Rat total(0);
        for (;;) {
            // BFS for a shortest augmenting path.
            std::vector<int> prev_node(graph_.size(), -1), prev_edge(graph_.size(), -1);
            std::queue<int> bfs;
            bfs.push(s);
            prev_node[s] = s;
            while (!bfs.empty() && prev_node[t] < 0) {
                int u = bfs.front();
                bfs.pop();
                for (size_t e = 0; e < graph_[u].size(); ++e) {
                    const FlowEdge& edge = graph_[u][e];
                    if (edge.cap > 0 && prev_node[edge.to] < 0) {
                        prev_node[edge.to] = u;
                        prev_edge[edge.to] = static_cast<int>(e);
                        bfs.push(edge.to);
                    }
                }
            }
            if (prev_node[t] < 0) return total;
            Rat bottleneck;
            bool first = true;
            for (int v = t; v != s; v = prev_node[v]) {
                const Rat& c = graph_[prev_node[v]][prev_edge[v]].cap;
                if (first || c < bottleneck) bottleneck = c;
                first = false;
            }
            for (int v = t; v != s; v = prev_node[v]) {
                FlowEdge& edge = graph_[prev_node[v]][prev_edge[v]];
                edge.cap -= bottleneck;
                graph_[edge.to][edge.rev].cap += bottleneck;
            }
            total += bottleneck;
        }
    }

    std::vector<char> residual_reachable(int s) const {
        std::vector<char> seen(graph_.size(), 0);
        std::queue<int> bfs;
        bfs.push(s);
        seen[s] = 1;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (const FlowEdge& edge : graph_[u])
                if (edge.cap > 0 && !seen[edge.to]) {
                    seen[edge.to] = 1;
                    bfs.push(edge.to);
                }
        }
        return seen;
    }

    const Rat& forward_flow(int u, int edge_index) const {
        // Residual of the reverse edge equals the flow pushed forward.
        const FlowEdge& edge = graph_[u][edge_index];
        return graph_[edge.to][edge.rev].cap;
    }

    const std::vector<FlowEdge>& edges(int u) const { return graph_[u]; }

  private:
    std::vector<std::vector<FlowEdge>> graph_;
};

}  // namespace

DecomposeResult decompose(const ApprovalProfile& profile, const ExactDist& p,
                          const Rat& slack) {
    if (static_cast<int>(p.shares.size()) != profile.num_candidates())
        throw ModelError("distribution size does not match profile");
    for (const Rat& s : p.shares)
        if (s < 0) throw ModelError("decompose: negative share");
    const auto& groups = profile.groups();
    const int gn = static_cast<int>(groups.size());
    const int m = profile.num_candidates();
    const Rat n(profile.num_voters());

    // Scaled units: every voter ships one unit of budget.
    // Nodes: 0 = source, 1..gn = groups, gn+1..gn+m = candidates, last = sink.
    const int source = 0, sink = gn + m + 1;
    FlowNet net(gn + m + 2);
    for (int g = 0; g < gn; ++g) {
        net.add_edge(source, 1 + g, Rat(groups[g].count));
        for (int x : groups[g].ballot.approved)
            net.add_edge(1 + g, 1 + gn + x, n);  // effectively unbounded
    }
    for (int x = 0; x < m; ++x) net.add_edge(1 + gn + x, sink, n * p.shares[x]);

    Rat flow = net.max_flow(source, sink);
    DecomposeResult res;
    if (flow >= n * (Rat(1) - slack)) {
        res.feasible = true;
        res.decomp.per_group.assign(gn, ExactDist{std::vector<Rat>(m, Rat(0))});
        for (int g = 0; g < gn; ++g) {
            const auto& out = net.edges(1 + g);
            for (size_t e = 0; e < out.size(); ++e) {
                int to = out[e].to;
                if (to <= gn || to > gn + m) continue;
                res.decomp.per_group[g].shares[to - gn - 1] =
                    net.forward_flow(1 + g, static_cast<int>(e)) / Rat(groups[g].count);
            }
        }
        return res;
    }

    // Min cut: groups reachable from the source ship only to reachable
    // candidates, so the unreachable candidate set X absorbs more share mass
    // than the voter mass able to touch it.
    std::vector<char> reach = net.residual_reachable(source);
    DecomposeCut cut;
    Rat share_mass(0);
    for (int x = 0; x < m; ++x)
        if (!reach[1 + gn + x]) {
            cut.candidates.push_back(x);
            share_mass += p.shares[x];
        }
    long touching = 0;
    for (int g = 0; g < gn; ++g) {
        bool touches = false;
        for (int x : groups[g].ballot.approved)
            if (!reach[1 + gn + x]) touches = true;
        if (touches) touching += groups[g].count;
    }
    cut.share_mass = share_mass;
    cut.voter_mass = Rat(touching) / n;
    res.cut = std::move(cut);
    return res;
}

DecomposeResult decompose(const ApprovalProfile& profile, const FloatDist& p, double slack) {
    FloatDist clamped = p;
    for (double& s : clamped.shares) s = std::max(0.0, s);
    Rat rational_slack(static_cast<long>(std::llround(slack * 1e9)), 1000000000L);
    rational_slack.canonicalize();
    return decompose(profile, snap_to_rational(clamped), rational_slack);
}

template AfsAudit<Rat> afs_factor(const ApprovalProfile&, const Distribution<Rat>&);
template AfsAudit<double> afs_factor(const ApprovalProfile&, const Distribution<double>&);
template AfsAudit<Rat> brute_afs(const ApprovalProfile&, const Distribution<Rat>&, long);
template AfsAudit<double> brute_afs(const ApprovalProfile&, const Distribution<double>&, long);
template PfAudit<Rat> pf_score(const ApprovalProfile&, const Distribution<Rat>&);
template PfAudit<double> pf_score(const ApprovalProfile&, const Distribution<double>&);
template CoreLowerAudit<Rat> core_lower_single(const ApprovalProfile&, const Distribution<Rat>&);
template CoreLowerAudit<double> core_lower_single(const ApprovalProfile&, const Distribution<double>&);
template CoreAudit<Rat> core_exact(const ApprovalProfile&, const Distribution<Rat>&, long);
template CoreAudit<double> core_exact(const ApprovalProfile&, const Distribution<double>&, long);
template Rat deviation_ratio(const ApprovalProfile&, const Distribution<Rat>&,
                             const std::vector<long>&, const Distribution<Rat>&);
template double deviation_ratio(const ApprovalProfile&, const Distribution<double>&,
                                const std::vector<long>&, const Distribution<double>&);

}  // namespace budgetdiv
