#include "vidsched/link.hpp"

#include <algorithm>
#include <limits>

namespace vidsched {

const char* to_string(FrameStatus s) {
    switch (s) {
        case FrameStatus::Successful: return "successful";
        case FrameStatus::TransmittedUnsuccessful: return "transmitted-unsuccessful";
        case FrameStatus::Dropped: return "dropped";
    }
    return "?";
}

Quality total_quality(const DependencyDag& dag) {
    Quality q = 0;
    for (const Frame& f : dag.frames()) q += f.quality;
    return q;
}

SimulationResult simulate(const TransmissionSequence& seq, const DependencyDag& dag,
                          const LinkConfig& link,
                          const std::optional<std::vector<Slot>>& start_times) {
    const std::size_t n = dag.size();
    SimulationResult res;
    res.status.assign(n, FrameStatus::Dropped);
    res.finish.assign(n, std::nullopt);
    res.start.assign(n, std::nullopt);

    std::vector<char> seen(n, 0);
    for (FrameId f : seq.order) {
        if (f < 0 || f >= static_cast<FrameId>(n))
            throw ValidationError("sequence references unknown frame " + std::to_string(f));
        if (seen[static_cast<std::size_t>(f)])
            throw ValidationError("duplicate frame " + std::to_string(f) + " in sequence");
        seen[static_cast<std::size_t>(f)] = 1;
    }

    if (start_times && start_times->size() != seq.order.size())
        throw ValidationError("start_times length does not match the sequence");

    Slot t = 0;
    for (std::size_t k = 0; k < seq.order.size(); ++k) {
        const FrameId f = seq.order[k];
        const Slot dt = link.slots_for(dag.frame(f).size_bits);
        Slot s = t;
        if (start_times) {
            s = (*start_times)[k];
            if (s < t)
                throw ValidationError("transmissions overlap at frame " + std::to_string(f));
        }
        res.start[static_cast<std::size_t>(f)] = s;
        res.finish[static_cast<std::size_t>(f)] = s + dt;
        t = s + dt;
    }

    // availability(f) = latest finish among f and its ancestors, infinite when
    // any ancestor is untransmitted. Unsuccessful-but-received parents count.
    constexpr Slot kNever = std::numeric_limits<Slot>::max();
    std::vector<Slot> avail(n, -1);  // -1: not computed
    std::vector<FrameId> stack;
    auto availability = [&](FrameId f0) {
        if (avail[static_cast<std::size_t>(f0)] >= 0) return avail[static_cast<std::size_t>(f0)];
        stack.push_back(f0);
        while (!stack.empty()) {
            const FrameId f = stack.back();
            if (!res.finish[static_cast<std::size_t>(f)]) {
                avail[static_cast<std::size_t>(f)] = kNever;
                stack.pop_back();
                continue;
            }
            bool ready = true;
            Slot worst = *res.finish[static_cast<std::size_t>(f)];
            for (FrameId p : dag.parents(f)) {
                if (avail[static_cast<std::size_t>(p)] < 0) {
                    stack.push_back(p);
                    ready = false;
                } else {
                    worst = std::max(worst, avail[static_cast<std::size_t>(p)]);
                }
            }
            if (ready) {
                avail[static_cast<std::size_t>(f)] = worst;
                stack.pop_back();
            }
        }
        return avail[static_cast<std::size_t>(f0)];
    };

    for (FrameId f : seq.order) {
        const Slot a = availability(f);
        if (a != std::numeric_limits<Slot>::max() && a <= dag.frame(f).deadline) {
            res.status[static_cast<std::size_t>(f)] = FrameStatus::Successful;
            res.reward += dag.frame(f).quality;
        } else {
            res.status[static_cast<std::size_t>(f)] = FrameStatus::TransmittedUnsuccessful;
        }
    }
    return res;
}

}  // namespace vidsched
