#ifndef VIDSCHED_LINK_HPP
#define VIDSCHED_LINK_HPP

#include <optional>
#include <vector>

#include "vidsched/dag.hpp"
#include "vidsched/universal.hpp"

namespace vidsched {

struct LinkConfig {
    Bits capacity_bits_per_slot = 1;  // C
    double slot_duration_s = 0.001;
    double initial_delay_s = 0.0;

    /// Timeslots needed to transmit `size_bits`, ceil(S / C), always >= 1.
    Slot slots_for(Bits size_bits) const {
        return (size_bits + capacity_bits_per_slot - 1) / capacity_bits_per_slot;
    }
};

enum class FrameStatus : std::uint8_t { Successful, TransmittedUnsuccessful, Dropped };

const char* to_string(FrameStatus s);

struct SimulationResult {
    Quality reward = 0;
    std::vector<FrameStatus> status;            // per frame id
    std::vector<std::optional<Slot>> finish;    // per frame id, transmitted only
    std::vector<std::optional<Slot>> start;     // per frame id, transmitted only
};

/// Replays a transmission sequence over the link. Frames pack back-to-back
/// from slot 0 unless `start_times` is given (gaps allowed, overlap is an
/// error). A frame is successful when its own transmission and those of all
/// its ancestors finish by its display deadline.
SimulationResult simulate(const TransmissionSequence& seq, const DependencyDag& dag,
                          const LinkConfig& link,
                          const std::optional<std::vector<Slot>>& start_times = std::nullopt);

/// Smallest capacity for which the optimal schedule is lossless
/// (z* equals the total quality). Found by binary search; throws when even
/// one-slot-per-frame transmission cannot be lossless.
Bits lossless_capacity(const DependencyDag& dag, const LinkConfig& proto);

Quality total_quality(const DependencyDag& dag);

}  // namespace vidsched

#endif
