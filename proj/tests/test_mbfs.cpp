#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "test_helpers.hpp"
#include "vidsched/mbfs.hpp"

using namespace vidsched;
using test::fan_fixture;
using test::make_dag;

namespace {

/// Independent replay of the modified BFS: explicit WHITE/GRAY colors, a
/// FIFO queue, children sorted by deadline, and the decodability test taken
/// against the colors at the moment the parent is dequeued.
std::map<FrameId, std::vector<FrameId>> mbfs_reference(const DependencyDag& dag, FrameId root) {
    enum { WHITE, GRAY };
    std::vector<int> color(dag.size(), WHITE);
    color[static_cast<std::size_t>(root)] = GRAY;
    std::queue<FrameId> q;
    q.push(root);
    std::map<FrameId, std::vector<FrameId>> children;
    while (!q.empty()) {
        const FrameId u = q.front();
        q.pop();
        std::vector<FrameId> adj(dag.children(u).begin(), dag.children(u).end());
        std::sort(adj.begin(), adj.end(), [&](FrameId a, FrameId b) {
            return dag.frame(a).deadline < dag.frame(b).deadline;
        });
        const std::vector<int> snapshot = color;
        for (FrameId v : adj) {
            if (snapshot[static_cast<std::size_t>(v)] != WHITE) continue;
            bool decodable = true;
            for (FrameId p : dag.parents(v))
                if (snapshot[static_cast<std::size_t>(p)] != GRAY) {
                    decodable = false;
                    break;
                }
            if (decodable) {
                color[static_cast<std::size_t>(v)] = GRAY;
                children[u].push_back(v);
                q.push(v);
            }
        }
    }
    return children;
}

std::map<FrameId, std::vector<FrameId>> children_map(const MbfsTree& tree) {
    std::map<FrameId, std::vector<FrameId>> out;
    for (FrameId u : tree.nodes)
        if (!tree.children[static_cast<std::size_t>(u)].empty())
            out[u] = tree.children[static_cast<std::size_t>(u)];
    return out;
}

}  // namespace

TEST_CASE("MBFS reproduces the G16B3 reference tree") {
    // Single-GOP build: identical to the two-GOP dag with the next I removed.
    DependencyDag dag = build_dyadic(16, 3, 1);
    MbfsTree tree = mbfs(dag, 0);

    std::map<FrameId, std::vector<FrameId>> expected{
        {0, {4}},  {4, {2, 8}},   {2, {1, 3}},   {8, {6, 12}},
        {6, {5, 7}}, {12, {10, 14}}, {10, {9, 11}}, {14, {13, 15}},
    };
    CHECK(children_map(tree) == expected);
    CHECK(tree.nodes.size() == 16);
}

TEST_CASE("MBFS on an I-frame-only dag is a single-node tree") {
    DependencyDag dag = make_dag("I", {});
    MbfsTree tree = mbfs(dag, 0);
    CHECK(tree.nodes == std::vector<FrameId>{0});
}

TEST_CASE("MBFS rejects non-I roots") {
    DependencyDag dag = make_dag("IP", {{0, 1}});
    CHECK_THROWS_AS(mbfs(dag, 1), ValidationError);
}

TEST_CASE("MBFS agrees with the step-by-step reference replay") {
    SUBCASE("G8B3 single GOP") {
        DependencyDag dag = build_dyadic(8, 3, 1);
        MbfsTree tree = mbfs(dag, 0);
        CHECK(children_map(tree) == mbfs_reference(dag, 0));
        CHECK(tree.children[0] == std::vector<FrameId>{4});
        CHECK(tree.children[4] == std::vector<FrameId>{2, 6});
    }
    SUBCASE("generated grid") {
        for (auto [n, m] : std::vector<std::pair<int, int>>{{4, 1}, {8, 1}, {8, 3}, {16, 3}, {16, 15}}) {
            for (int gops = 1; gops <= 3; ++gops) {
                DependencyDag stripped = strip_backward_edges(build_dyadic(n, m, gops));
                for (FrameId root : stripped.iframe_ids())
                    CHECK(children_map(mbfs(stripped, root)) == mbfs_reference(stripped, root));
            }
        }
    }
}

TEST_CASE("build_forest covers each GOP with one tree") {
    DependencyDag dag = build_dyadic(16, 3, 2);
    MbfsForest forest = build_forest(dag);
    REQUIRE(forest.size() == 2);
    CHECK(forest[0].nodes.size() == 16);
    CHECK(forest[1].nodes.size() == 16);
    CHECK(forest[1].root == 16);
    std::set<FrameId> second(forest[1].nodes.begin(), forest[1].nodes.end());
    for (FrameId f = 16; f < 32; ++f) CHECK(second.count(f) == 1);

    CHECK(build_forest(build_dyadic(16, 3, 1)).size() == 1);

    MbfsForest three = build_forest(build_dyadic(4, 1, 3));
    REQUIRE(three.size() == 3);
    for (const MbfsTree& t : three) CHECK(t.nodes.size() == 4);
}

TEST_CASE("forest children are a subset of dag children") {
    DependencyDag dag = build_dyadic(16, 3, 2);
    DependencyDag stripped = strip_backward_edges(dag);
    for (const MbfsTree& tree : build_forest(dag)) {
        for (FrameId u : tree.nodes) {
            auto dag_children = stripped.children(u);
            std::set<FrameId> allowed(dag_children.begin(), dag_children.end());
            for (FrameId c : tree.children[static_cast<std::size_t>(u)])
                CHECK(allowed.count(c) == 1);
        }
    }
}

TEST_CASE("classification of the flagship structures") {
    DependencyDag g16b3 = build_dyadic(16, 3, 2);
    CHECK(classify(g16b3).label == StructureClass::QuasiSio);
    CHECK(classify(strip_backward_edges(g16b3)).label == StructureClass::Sio);

    // I/P-only chain
    DependencyDag chain = make_dag("IPPP", {{0, 1}, {1, 2}, {2, 3}});
    CHECK(classify(chain).label == StructureClass::Sio);
}

TEST_CASE("classification witnesses") {
    SUBCASE("non-isomorphic order") {
        // 0 -> {1, 2} in the tree, but T(1) = {1, 3} spans past frame 2.
        DependencyDag dag = make_dag("IPPP", {{0, 1}, {0, 2}, {1, 3}});
        Classification c = classify(dag);
        CHECK(c.label == StructureClass::Neither);
        CHECK(c.witness_node == 0);
    }
    SUBCASE("non-sequential") {
        // 3 hangs under 4 in the forest while also depending on 2.
        DependencyDag dag =
            make_dag("IPPBP", {{0, 1}, {1, 2}, {2, 3}, {4, 3}, {0, 4}});
        Classification c = classify(dag);
        CHECK(c.label == StructureClass::Neither);
        CHECK(c.witness_node == 3);
    }
}

TEST_CASE("stripped dyadic structures classify SIO across the grid") {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{4, 1}, {8, 1}, {8, 3}, {16, 3}, {16, 15}}) {
        for (int gops = 1; gops <= 3; ++gops) {
            DependencyDag dag = build_dyadic(n, m, gops);
            CHECK(classify(strip_backward_edges(dag)).label == StructureClass::Sio);
        }
    }
}

TEST_CASE("dyadic MBFS trees are binary search trees keyed by deadline") {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{4, 1}, {8, 1}, {8, 3}, {16, 3}, {16, 15}}) {
        for (int gops = 1; gops <= 3; ++gops) {
            DependencyDag dag = build_dyadic(n, m, gops);
            MbfsForest forest = build_forest(dag);
            const auto info = subtree_info(dag, forest);
            for (const MbfsTree& tree : forest) {
                for (FrameId u : tree.nodes) {
                    const auto& kids = tree.children[static_cast<std::size_t>(u)];
                    REQUIRE(kids.size() <= 2);
                    const Slot d = dag.frame(u).deadline;
                    if (kids.size() >= 1) {
                        // left subtree strictly earlier or, for a single
                        // child, on one side of the node
                        const auto& first = info[static_cast<std::size_t>(kids.front())];
                        CHECK((first.max_dln < d || first.min_dln > d));
                    }
                    if (kids.size() == 2) {
                        CHECK(info[static_cast<std::size_t>(kids[0])].max_dln < d);
                        CHECK(info[static_cast<std::size_t>(kids[1])].min_dln > d);
                    }
                }
            }
        }
    }
}

TEST_CASE("Lemma 1: irrelevant nodes order whole subtrees by deadline") {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{8, 3}, {16, 3}, {16, 15}}) {
        DependencyDag dag = strip_backward_edges(build_dyadic(n, m, 2));
        MbfsForest forest = build_forest(dag);
        const auto info = subtree_info(dag, forest);
        AncestorTable anc(dag);
        for (const MbfsTree& tree : forest) {
            for (FrameId x : tree.nodes) {
                for (FrameId y : tree.nodes) {
                    if (!anc.irrelevant(x, y)) continue;
                    if (dag.frame(x).deadline >= dag.frame(y).deadline) continue;
                    CHECK(info[static_cast<std::size_t>(x)].max_dln <
                          info[static_cast<std::size_t>(y)].min_dln);
                }
            }
        }
    }
}

TEST_CASE("critical nodes") {
    SUBCASE("G16B3, two GOPs") {
        DependencyDag dag = build_dyadic(16, 3, 2);
        GopPartition part = partition_gops(dag);
        MbfsForest forest = build_forest(dag);
        CriticalNodes crit = critical_nodes(dag, forest, part);
        CHECK(crit.gamma[0] == std::vector<FrameId>{14});
        REQUIRE(crit.zeta[0].has_value());
        CHECK(*crit.zeta[0] == 14);
        CHECK(crit.gamma[1].empty());
        CHECK(!crit.zeta[1].has_value());
    }
    SUBCASE("three disjoint critical subtrees") {
        DependencyDag dag = fan_fixture();
        REQUIRE(classify(dag).label == StructureClass::QuasiSio);
        GopPartition part = partition_gops(dag);
        MbfsForest forest = build_forest(dag);
        CriticalNodes crit = critical_nodes(dag, forest, part);
        CHECK(part.dual[0] == std::vector<FrameId>{3, 5, 7});
        CHECK(crit.gamma[0] == std::vector<FrameId>{3, 5, 7});
        CHECK(*crit.zeta[0] == 3);

        // pairwise irrelevant, and their subtrees union to D_i
        AncestorTable anc(strip_backward_edges(dag));
        for (FrameId a : crit.gamma[0])
            for (FrameId b : crit.gamma[0])
                if (a != b) CHECK(anc.irrelevant(a, b));
    }
    SUBCASE("critical subtrees union to D_i on the dyadic grid") {
        for (auto [n, m] : std::vector<std::pair<int, int>>{{4, 1}, {8, 3}, {16, 3}, {16, 15}}) {
            DependencyDag dag = build_dyadic(n, m, 3);
            GopPartition part = partition_gops(dag);
            MbfsForest forest = build_forest(dag);
            CriticalNodes crit = critical_nodes(dag, forest, part);
            for (int i = 0; i < part.num_gops(); ++i) {
                std::set<FrameId> covered;
                for (FrameId g : crit.gamma[static_cast<std::size_t>(i)]) {
                    // collect the subtree rooted at g
                    std::vector<FrameId> stack{g};
                    while (!stack.empty()) {
                        FrameId u = stack.back();
                        stack.pop_back();
                        covered.insert(u);
                        const auto& kids =
                            forest[static_cast<std::size_t>(i)].children[static_cast<std::size_t>(u)];
                        stack.insert(stack.end(), kids.begin(), kids.end());
                    }
                }
                std::set<FrameId> dual(part.dual[static_cast<std::size_t>(i)].begin(),
                                       part.dual[static_cast<std::size_t>(i)].end());
                CHECK(covered == dual);
            }
        }
    }
}
