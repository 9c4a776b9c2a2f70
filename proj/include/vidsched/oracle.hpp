#ifndef VIDSCHED_ORACLE_HPP
#define VIDSCHED_ORACLE_HPP

#include <cstdint>

#include "vidsched/link.hpp"

namespace vidsched {

struct OracleLimits {
    int max_frames = 9;
    Slot max_horizon = 24;
    /// Restrict the search to orders where every transmitted frame follows
    /// all of its ancestors, which is reward-preserving. The unrestricted
    /// search evaluates every injective order through the simulator.
    bool prune_to_dependency_order = true;
};

struct OracleResult {
    Quality reward = 0;
    std::vector<FrameId> best_sequence;
    std::uint64_t explored = 0;
};

/// Exhaustive maximum of the simulated reward over all permutations of all
/// frame subsets, packed back-to-back from `start_time`. Ground truth for
/// the dynamic programs at desk scale; rejects instances over the limits.
OracleResult brute_force(const DependencyDag& dag, const LinkConfig& link,
                         const OracleLimits& limits = {}, Slot start_time = 0);

}  // namespace vidsched

#endif
