#include "vidsched/universal.hpp"

#include <algorithm>
#include <cassert>

#include "vidsched/dyadic.hpp"

namespace vidsched {

namespace {

void preorder(const MbfsTree& tree, FrameId node, std::vector<FrameId>& out) {
    out.push_back(node);
    for (FrameId c : tree.children[static_cast<std::size_t>(node)]) preorder(tree, c, out);
}

std::vector<FrameId> sio_order(const MbfsForest& forest) {
    std::vector<FrameId> order;
    for (const MbfsTree& tree : forest) preorder(tree, tree.root, order);
    return order;
}

void compute_next_iframe(UniversalSequence& u, const DependencyDag& dag) {
    const int n = u.n();
    u.next_iframe.assign(static_cast<std::size_t>(n) + 2, n + 1);
    int next = n + 1;
    for (int r = n; r >= 1; --r) {
        u.next_iframe[static_cast<std::size_t>(r)] = next;
        if (dag.frame(u.at(r)).kind == FrameKind::I) next = r;
    }
}

}  // namespace

UniversalSequence sio_universal(const DependencyDag& dag, const MbfsForest& forest,
                                const GopPartition& partition) {
    (void)partition;
    UniversalSequence u;
    u.quasi = false;
    u.order = sio_order(forest);
    const int n = u.n();
    if (n == 0) throw ValidationError("empty universal sequence");
    u.rank_of.assign(static_cast<std::size_t>(n), 0);
    for (int r = 1; r <= n; ++r) u.rank_of[static_cast<std::size_t>(u.at(r))] = r;

    const auto info = subtree_info(dag, forest);
    u.next_irrelevant.assign(static_cast<std::size_t>(n) + 1, n + 1);
    for (int r = 1; r <= n; ++r) {
        const FrameId f = u.at(r);
        u.next_irrelevant[static_cast<std::size_t>(r)] =
            std::min(n + 1, r + info[static_cast<std::size_t>(f)].size);
    }
    compute_next_iframe(u, dag);
    return u;
}

UniversalSequence quasi_sio_universal(const DependencyDag& dag, const MbfsForest& forest,
                                      const GopPartition& partition,
                                      const CriticalNodes& critical) {
    UniversalSequence u;
    u.quasi = true;
    u.order = sio_order(forest);
    const int n = u.n();
    const int gops = partition.num_gops();

    // Move each succeeding I-frame backward, immediately before the earliest
    // transmitted member of D_i (which the construction makes zeta_i).
    for (int i = 0; i + 1 < gops; ++i) {
        if (partition.dual[static_cast<std::size_t>(i)].empty()) continue;
        const FrameId zeta = *critical.zeta[static_cast<std::size_t>(i)];
        const FrameId next_i = partition.gop_starts[static_cast<std::size_t>(i) + 1];
        auto it_i = std::find(u.order.begin(), u.order.end(), next_i);
        u.order.erase(it_i);
        // zeta is the earliest D_i frame in the pre-order.
        auto it_first_d = u.order.end();
        for (auto it = u.order.begin(); it != u.order.end(); ++it) {
            if (partition.gop_of[static_cast<std::size_t>(*it)] == i &&
                partition.in_dual[static_cast<std::size_t>(*it)]) {
                it_first_d = it;
                break;
            }
        }
        if (it_first_d == u.order.end() || *it_first_d != zeta)
            throw ValidationError("universal construction: earliest D frame is not zeta");
        u.order.insert(it_first_d, next_i);
    }

    u.rank_of.assign(static_cast<std::size_t>(n), 0);
    for (int r = 1; r <= n; ++r) u.rank_of[static_cast<std::size_t>(u.at(r))] = r;

    // next_irrelevant: subtree-block sizes for regular frames, the moved
    // I-frame's rank for tree-ancestors of zeta (the insertion lands inside
    // their block), and a bounded forward scan for I-frames.
    const DependencyDag stripped = strip_backward_edges(dag);
    const auto info = subtree_info(stripped, forest);

    std::vector<char> chain(dag.size(), 0);
    std::vector<int> chain_gop(dag.size(), -1);
    for (int i = 0; i + 1 < gops; ++i) {
        if (!critical.zeta[static_cast<std::size_t>(i)]) continue;
        const MbfsTree& tree = forest[static_cast<std::size_t>(i)];
        FrameId z = *critical.zeta[static_cast<std::size_t>(i)];
        for (FrameId x = tree.tree_parent[static_cast<std::size_t>(z)];
             x >= 0 && x != tree.root; x = tree.tree_parent[static_cast<std::size_t>(x)]) {
            chain[static_cast<std::size_t>(x)] = 1;
            chain_gop[static_cast<std::size_t>(x)] = i;
        }
    }

    u.next_irrelevant.assign(static_cast<std::size_t>(n) + 1, n + 1);
    for (int r = 1; r <= n; ++r) {
        const FrameId f = u.at(r);
        const Frame& fr = dag.frame(f);
        if (fr.kind == FrameKind::I) {
            const int gi = partition.gop_of[static_cast<std::size_t>(f)];
            int k = r + 1;
            for (; k <= n; ++k) {
                const FrameId y = u.at(k);
                const int gy = partition.gop_of[static_cast<std::size_t>(y)];
                const bool descendant =
                    (gy == gi - 1 && partition.in_dual[static_cast<std::size_t>(y)]) ||
                    (gy == gi && dag.frame(y).kind != FrameKind::I);
                if (!descendant) break;
            }
            u.next_irrelevant[static_cast<std::size_t>(r)] = k;
        } else if (chain[static_cast<std::size_t>(f)]) {
            const int gi = chain_gop[static_cast<std::size_t>(f)];
            const FrameId next_i = partition.gop_starts[static_cast<std::size_t>(gi) + 1];
            u.next_irrelevant[static_cast<std::size_t>(r)] =
                u.rank_of[static_cast<std::size_t>(next_i)];
        } else {
            u.next_irrelevant[static_cast<std::size_t>(r)] =
                std::min(n + 1, r + info[static_cast<std::size_t>(f)].size);
        }
    }
    compute_next_iframe(u, dag);
    return u;
}

TransmissionSequence canonical_form(const DependencyDag& dag, const UniversalSequence& universal,
                                    const std::set<FrameId>& selected) {
    std::vector<char> keep(dag.size(), 0);
    for (FrameId f : selected)
        if (f >= 0 && f < static_cast<FrameId>(dag.size())) keep[static_cast<std::size_t>(f)] = 1;

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t f = 0; f < dag.size(); ++f) {
            if (!keep[f]) continue;
            for (FrameId p : dag.parents(static_cast<FrameId>(f))) {
                if (!keep[static_cast<std::size_t>(p)]) {
                    keep[f] = 0;
                    changed = true;
                    break;
                }
            }
        }
    }

    TransmissionSequence seq;
    for (FrameId f : universal.order)
        if (keep[static_cast<std::size_t>(f)]) seq.order.push_back(f);
    return seq;
}

CanonicalCheck check_canonical(const TransmissionSequence& seq, const DependencyDag& dag) {
    AncestorTable anc(dag);
    const auto& s = seq.order;
    const std::size_t n = s.size();

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (anc.is_ancestor(s[j], s[i])) {
                return CanonicalCheck{false,
                                      CanonicalViolation{1, s[j], s[i],
                                                         "ancestor " + std::to_string(s[j]) +
                                                             " scheduled after descendant " +
                                                             std::to_string(s[i])}};
            }
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const FrameId x = s[a], y = s[b];
            if (!anc.irrelevant(x, y)) continue;
            if (dag.frame(y).deadline >= dag.frame(x).deadline) continue;
            bool all_irrelevant = true;
            for (std::size_t c = a + 1; c < b && all_irrelevant; ++c)
                if (!anc.irrelevant(s[c], x)) all_irrelevant = false;
            if (all_irrelevant) {
                return CanonicalCheck{
                    false, CanonicalViolation{
                               2, x, y,
                               "irrelevant frame " + std::to_string(y) +
                                   " with earlier deadline follows " + std::to_string(x) +
                                   " across only frames irrelevant to the latter"}};
            }
        }
    }
    return CanonicalCheck{};
}

std::vector<int> next_irrelevant_direct(const DependencyDag& dag,
                                        const std::vector<FrameId>& order) {
    AncestorTable anc(dag);
    const int n = static_cast<int>(order.size());
    std::vector<int> out(static_cast<std::size_t>(n) + 1, n + 1);
    for (int r = 1; r <= n; ++r) {
        for (int k = r + 1; k <= n; ++k) {
            if (anc.irrelevant(order[static_cast<std::size_t>(r) - 1],
                               order[static_cast<std::size_t>(k) - 1])) {
                out[static_cast<std::size_t>(r)] = k;
                break;
            }
        }
    }
    return out;
}

bool is_subsequence(const std::vector<FrameId>& sub, const std::vector<FrameId>& full) {
    std::size_t i = 0;
    for (FrameId f : full) {
        if (i < sub.size() && sub[i] == f) ++i;
    }
    return i == sub.size();
}

}  // namespace vidsched
