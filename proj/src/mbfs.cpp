#include "vidsched/mbfs.hpp"

#include <algorithm>
#include <deque>

#include "vidsched/dyadic.hpp"

namespace vidsched {

std::string to_string(StructureClass c) {
    switch (c) {
        case StructureClass::Sio: return "SIO";
        case StructureClass::QuasiSio: return "quasi-SIO";
        case StructureClass::Neither: return "neither";
    }
    return "?";
}

MbfsTree mbfs(const DependencyDag& dag, FrameId root) {
    if (dag.frame(root).kind != FrameKind::I)
        throw ValidationError("MBFS root must be an I-frame");

    const std::size_t n = dag.size();
    MbfsTree tree;
    tree.root = root;
    tree.children.assign(n, {});
    tree.tree_parent.assign(n, -1);

    std::vector<char> visited(n, 0);
    std::deque<FrameId> queue;
    visited[static_cast<std::size_t>(root)] = 1;
    queue.push_back(root);
    tree.nodes.push_back(root);

    std::vector<FrameId> frontier;
    while (!queue.empty()) {
        const FrameId u = queue.front();
        queue.pop_front();

        // Snapshot pass: decodability of u's children is judged before any of
        // them is colored, so a child never unlocks a later sibling in the
        // same scan.
        frontier.clear();
        for (FrameId v : dag.children(u)) {
            if (visited[static_cast<std::size_t>(v)]) continue;
            bool decodable = true;
            for (FrameId p : dag.parents(v)) {
                if (!visited[static_cast<std::size_t>(p)]) {
                    decodable = false;
                    break;
                }
            }
            if (decodable) frontier.push_back(v);
        }
        std::sort(frontier.begin(), frontier.end(), [&](FrameId a, FrameId b) {
            return dag.frame(a).deadline < dag.frame(b).deadline;
        });
        for (FrameId v : frontier) {
            visited[static_cast<std::size_t>(v)] = 1;
            tree.tree_parent[static_cast<std::size_t>(v)] = u;
            tree.children[static_cast<std::size_t>(u)].push_back(v);
            tree.nodes.push_back(v);
            queue.push_back(v);
        }
    }
    return tree;
}

MbfsForest build_forest(const DependencyDag& dag) {
    const DependencyDag stripped = strip_backward_edges(dag);
    MbfsForest forest;
    std::vector<char> covered(dag.size(), 0);
    for (FrameId root : stripped.iframe_ids()) {
        MbfsTree tree = mbfs(stripped, root);
        for (FrameId f : tree.nodes) covered[static_cast<std::size_t>(f)] = 1;
        forest.push_back(std::move(tree));
    }
    for (std::size_t i = 0; i < covered.size(); ++i)
        if (!covered[i])
            throw ValidationError("MBFS forest does not cover frame " + std::to_string(i));
    return forest;
}

std::vector<SubtreeInfo> subtree_info(const DependencyDag& dag, const MbfsForest& forest) {
    std::vector<SubtreeInfo> info(dag.size());
    for (const MbfsTree& tree : forest) {
        // nodes is in BFS order, so children always follow their parent.
        for (auto it = tree.nodes.rbegin(); it != tree.nodes.rend(); ++it) {
            const FrameId f = *it;
            SubtreeInfo s{dag.frame(f).deadline, dag.frame(f).deadline, 1};
            for (FrameId c : tree.children[static_cast<std::size_t>(f)]) {
                const SubtreeInfo& cs = info[static_cast<std::size_t>(c)];
                s.min_dln = std::min(s.min_dln, cs.min_dln);
                s.max_dln = std::max(s.max_dln, cs.max_dln);
                s.size += cs.size;
            }
            info[static_cast<std::size_t>(f)] = s;
        }
    }
    return info;
}

namespace {

/// First node (ascending id) violating sequentiality or isomorphic order on
/// the stripped DAG's forest, if any.
std::optional<Classification> find_violation(const DependencyDag& stripped,
                                             const MbfsForest& forest,
                                             const std::vector<SubtreeInfo>& info) {
    const std::size_t n = stripped.size();
    std::vector<const MbfsTree*> tree_of(n, nullptr);
    for (const MbfsTree& t : forest)
        for (FrameId f : t.nodes) tree_of[static_cast<std::size_t>(f)] = &t;

    AncestorTable anc(stripped);
    std::vector<char> on_path(n, 0);
    for (FrameId f = 0; f < static_cast<FrameId>(n); ++f) {
        const MbfsTree& tree = *tree_of[static_cast<std::size_t>(f)];
        for (FrameId x = f; x >= 0; x = tree.tree_parent[static_cast<std::size_t>(x)])
            on_path[static_cast<std::size_t>(x)] = 1;
        std::optional<Classification> bad;
        for (FrameId a = 0; a < static_cast<FrameId>(n) && !bad; ++a) {
            if (anc.is_ancestor(a, f) && !on_path[static_cast<std::size_t>(a)])
                bad = Classification{StructureClass::Neither, f,
                                     "ancestor " + std::to_string(a) +
                                         " is not on the MBFS root path"};
        }
        for (FrameId x = f; x >= 0; x = tree.tree_parent[static_cast<std::size_t>(x)])
            on_path[static_cast<std::size_t>(x)] = 0;
        if (bad) return bad;

        const auto& kids = tree.children[static_cast<std::size_t>(f)];
        for (std::size_t k = 0; k + 1 < kids.size(); ++k) {
            const SubtreeInfo& a = info[static_cast<std::size_t>(kids[k])];
            const SubtreeInfo& b = info[static_cast<std::size_t>(kids[k + 1])];
            if (!(a.max_dln < b.min_dln))
                return Classification{StructureClass::Neither, f,
                                      "children " + std::to_string(kids[k]) + " and " +
                                          std::to_string(kids[k + 1]) +
                                          " have overlapping subtree deadline ranges"};
        }
    }
    return std::nullopt;
}

}  // namespace

Classification classify(const DependencyDag& dag) {
    if (dag.frame(0).kind != FrameKind::I)
        return Classification{StructureClass::Neither, 0, "sequence does not start with an I-frame"};

    MbfsForest forest;
    try {
        forest = build_forest(dag);
    } catch (const ValidationError& e) {
        return Classification{StructureClass::Neither, -1, e.what()};
    }
    const DependencyDag stripped = strip_backward_edges(dag);
    const auto info = subtree_info(stripped, forest);
    if (auto bad = find_violation(stripped, forest, info)) return *bad;

    // The stripped structure is SIO. Any removed backward edge adds an
    // off-path ancestor, so the original is SIO exactly when nothing was
    // removed.
    if (has_backward_edges(dag)) return Classification{StructureClass::QuasiSio, -1, ""};
    return Classification{StructureClass::Sio, -1, ""};
}

CriticalNodes critical_nodes(const DependencyDag& dag, const MbfsForest& forest,
                             const GopPartition& partition) {
    (void)dag;
    CriticalNodes out;
    const int g = partition.num_gops();
    out.gamma.assign(static_cast<std::size_t>(g), {});
    out.zeta.assign(static_cast<std::size_t>(g), std::nullopt);

    for (int i = 0; i < g; ++i) {
        const MbfsTree& tree = forest[static_cast<std::size_t>(i)];
        for (FrameId f : partition.dual[static_cast<std::size_t>(i)]) {
            bool critical = true;
            for (FrameId x = tree.tree_parent[static_cast<std::size_t>(f)]; x >= 0;
                 x = tree.tree_parent[static_cast<std::size_t>(x)]) {
                if (partition.in_dual[static_cast<std::size_t>(x)]) {
                    critical = false;
                    break;
                }
            }
            if (critical) out.gamma[static_cast<std::size_t>(i)].push_back(f);
        }
        // D_i members are deadline-ordered by id; the first critical node is
        // the earliest-deadline one.
        if (!out.gamma[static_cast<std::size_t>(i)].empty())
            out.zeta[static_cast<std::size_t>(i)] = out.gamma[static_cast<std::size_t>(i)].front();
    }
    return out;
}

}  // namespace vidsched
