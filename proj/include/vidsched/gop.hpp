#ifndef VIDSCHED_GOP_HPP
#define VIDSCHED_GOP_HPP

#include <vector>

#include "vidsched/dag.hpp"

namespace vidsched {

/// GOP decomposition of a frame sequence. For GOP i (0-based):
///   non_i[i]   N_i, the non-I frames of the GOP,
///   dual[i]    D_i, frames descending from both bounding I-frames
///              (empty for the final GOP),
/// all sorted ascending by id.
struct GopPartition {
    std::vector<FrameId> gop_starts;            // I_i ids, display order
    std::vector<std::vector<FrameId>> non_i;    // N_i
    std::vector<std::vector<FrameId>> dual;     // D_i
    std::vector<int> gop_of;                    // frame id -> GOP index
    std::vector<char> in_dual;                  // frame id -> member of some D_i

    int num_gops() const { return static_cast<int>(gop_starts.size()); }

    /// M_i = N_i plus the succeeding I-frame (when it exists).
    std::vector<FrameId> m_set(int i) const;
};

/// Decomposes the sequence into GOPs and computes N_i / D_i via DAG
/// reachability. Rejects sequences that do not open with an I-frame.
GopPartition partition_gops(const DependencyDag& dag);

}  // namespace vidsched

#endif
