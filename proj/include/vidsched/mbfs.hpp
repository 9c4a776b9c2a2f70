#ifndef VIDSCHED_MBFS_HPP
#define VIDSCHED_MBFS_HPP

#include <optional>
#include <string>
#include <vector>

#include "vidsched/dag.hpp"
#include "vidsched/gop.hpp"

namespace vidsched {

/// Rooted decodability tree produced by the modified breadth-first search.
/// Children are stored in ascending deadline order; every tree edge is also
/// a DAG edge.
struct MbfsTree {
    FrameId root = 0;
    std::vector<FrameId> nodes;                   // visit order
    std::vector<std::vector<FrameId>> children;   // frame id -> ordered children
    std::vector<FrameId> tree_parent;             // frame id -> parent (-1 at root / absent)

    bool contains(FrameId f) const { return f == root || tree_parent[static_cast<std::size_t>(f)] >= 0; }
};

/// Breadth-first search from `root` where a child is enqueued only once all
/// of its DAG parents have been visited. Decodability is evaluated against
/// the frontier at the moment the parent is dequeued, so two children of the
/// same node never unlock each other within one scan.
MbfsTree mbfs(const DependencyDag& dag, FrameId root);

using MbfsForest = std::vector<MbfsTree>;

/// One MBFS tree per I-frame, in display order, built on the
/// backward-edge-stripped DAG. Throws if the trees do not cover every frame.
MbfsForest build_forest(const DependencyDag& dag);

struct SubtreeInfo {
    Slot min_dln = 0;
    Slot max_dln = 0;
    int size = 0;
};

/// Per-node subtree deadline ranges and sizes for a whole forest.
std::vector<SubtreeInfo> subtree_info(const DependencyDag& dag, const MbfsForest& forest);

enum class StructureClass { Sio, QuasiSio, Neither };

std::string to_string(StructureClass c);

struct Classification {
    StructureClass label = StructureClass::Neither;
    FrameId witness_node = -1;     // set when label == Neither
    std::string witness_reason;
};

/// SIO: every node's DAG ancestors lie on its root path in the MBFS forest
/// and every tree is isomorphically ordered (deadline-sorted children have
/// disjoint, increasing subtree deadline ranges). Quasi-SIO: not SIO, but the
/// backward-edge-stripped DAG is. Otherwise Neither, with the first violating
/// node in ascending-id order as witness.
Classification classify(const DependencyDag& dag);

/// Critical nodes per GOP: members of D_i whose tree path to the root
/// contains no other D_i member. zeta[i] is the one with the smallest
/// deadline (absent when D_i is empty).
struct CriticalNodes {
    std::vector<std::vector<FrameId>> gamma;
    std::vector<std::optional<FrameId>> zeta;
};

CriticalNodes critical_nodes(const DependencyDag& dag, const MbfsForest& forest,
                             const GopPartition& partition);

}  // namespace vidsched

#endif
