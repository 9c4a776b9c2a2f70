#ifndef VIDSCHED_DP_HPP
#define VIDSCHED_DP_HPP

#include <cstdint>
#include <vector>

#include "vidsched/link.hpp"
#include "vidsched/mbfs.hpp"
#include "vidsched/universal.hpp"

namespace vidsched {

struct ScheduledFrame {
    FrameId frame = -1;
    Slot start = 0;
    Slot end = 0;
    FrameStatus status = FrameStatus::Dropped;
};

struct DpStats {
    std::uint64_t state_evaluations = 0;
    std::uint64_t table_cells = 0;
};

struct DpSolution {
    Quality optimal_reward = 0;
    std::vector<ScheduledFrame> schedule;     // transmitted frames, ascending start
    std::vector<FrameStatus> status;          // per frame id
    DpStats stats;

    TransmissionSequence sequence() const;
};

/// Optimal schedule for an SIO structure: value iteration over h(j, t) with
/// actions wait / transmit (successful or past-deadline) / drop-to-next-
/// irrelevant, evaluated over the universal sequence on the integer slot grid.
DpSolution solve_sio(const DependencyDag& dag, const UniversalSequence& universal,
                     const LinkConfig& link);

/// Optimal schedule for a quasi-SIO structure: g(j, t, s) where the two bits
/// of s track whether the two nearest preceding I-frames of the universal
/// sequence were transmitted. Non-I frames gate their transmit actions on the
/// bit(s) covering the I-frames they depend on; I-frames shift their own
/// outcome into s. Tree-ancestors of zeta_i, whose descendant block is split
/// by the moved I-frame, drop via composite actions that also settle the
/// I-frame's fate, keeping the parent-availability invariant exact.
DpSolution solve_quasi_sio(const DependencyDag& dag, const UniversalSequence& universal,
                           const GopPartition& partition, const MbfsForest& forest,
                           const CriticalNodes& critical, const LinkConfig& link);

/// Classifies the structure and routes to the matching solver; throws
/// UnsupportedStructure with the classifier's witness otherwise.
DpSolution solve(const DependencyDag& dag, const LinkConfig& link);

/// Classification plus the artifacts needed to schedule repeatedly (e.g.
/// across a capacity grid) without re-deriving structure.
struct PreparedInstance {
    DependencyDag dag;
    Classification label;
    GopPartition partition;
    MbfsForest forest;
    CriticalNodes critical;
    UniversalSequence universal;

    explicit PreparedInstance(DependencyDag d);
    DpSolution solve(const LinkConfig& link) const;
};

/// Status transition of s at an I-frame: transmitted shifts a 1 bit in,
/// dropped a 0 bit.
inline int s_update(int s, bool transmitted) {
    return (2 * s + (transmitted ? 1 : 0)) % 4;
}

}  // namespace vidsched

#endif
