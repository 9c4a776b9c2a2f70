#include "vidsched/oracle.hpp"

#include <algorithm>

namespace vidsched {

namespace {

struct Search {
    const DependencyDag& dag;
    const LinkConfig& link;
    Slot horizon;
    bool pruned;

    std::vector<Slot> dt;
    std::vector<char> used;
    std::vector<FrameId> current;
    OracleResult best;

    Search(const DependencyDag& d, const LinkConfig& l, bool pruned_)
        : dag(d), link(l), horizon(0), pruned(pruned_) {
        const std::size_t n = dag.size();
        dt.resize(n);
        used.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            dt[i] = link.slots_for(dag.frame(static_cast<FrameId>(i)).size_bits);
            horizon = std::max(horizon, dag.frame(static_cast<FrameId>(i)).deadline);
        }
    }

    void note(Quality reward) {
        ++best.explored;
        if (reward > best.reward) {
            best.reward = reward;
            best.best_sequence = current;
        }
    }

    /// Dependency-ordered search. With ancestors transmitted first and frames
    /// packed back-to-back, a frame is successful exactly when its own
    /// transmission meets its deadline, so the reward accumulates locally.
    void recurse_pruned(Slot t, Quality reward) {
        note(reward);
        const std::size_t n = dag.size();
        for (std::size_t f = 0; f < n; ++f) {
            if (used[f]) continue;
            bool ready = true;
            for (FrameId p : dag.parents(static_cast<FrameId>(f)))
                if (!used[static_cast<std::size_t>(p)]) {
                    ready = false;
                    break;
                }
            if (!ready) continue;
            const Slot end = t + dt[f];
            if (end > horizon) continue;  // can help neither itself nor any descendant
            const Quality gain =
                end <= dag.frame(static_cast<FrameId>(f)).deadline
                    ? dag.frame(static_cast<FrameId>(f)).quality
                    : 0;
            used[f] = 1;
            current.push_back(static_cast<FrameId>(f));
            recurse_pruned(end, reward + gain);
            current.pop_back();
            used[f] = 0;
        }
    }

    /// Unrestricted search: any injective order, rewarded by the simulator.
    void recurse_full(Slot start_time) {
        TransmissionSequence seq{current};
        std::vector<Slot> starts;
        Slot t = start_time;
        for (FrameId f : current) {
            starts.push_back(t);
            t += dt[static_cast<std::size_t>(f)];
        }
        note(simulate(seq, dag, link, starts).reward);
        const std::size_t n = dag.size();
        for (std::size_t f = 0; f < n; ++f) {
            if (used[f]) continue;
            used[f] = 1;
            current.push_back(static_cast<FrameId>(f));
            recurse_full(start_time);
            current.pop_back();
            used[f] = 0;
        }
    }
};

}  // namespace

namespace {

/// Drops transmissions that are neither successful nor the ancestor of a
/// successful frame; the maximum is unchanged and the argmax then satisfies
/// the premise of the canonical-form reordering.
void strip_useless(const DependencyDag& dag, const LinkConfig& link, Slot start_time,
                   OracleResult& result) {
    AncestorTable anc(dag);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Slot> starts;
        Slot t = start_time;
        for (FrameId f : result.best_sequence) {
            starts.push_back(t);
            t += link.slots_for(dag.frame(f).size_bits);
        }
        const SimulationResult sim =
            simulate(TransmissionSequence{result.best_sequence}, dag, link, starts);
        std::vector<FrameId> kept;
        for (FrameId f : result.best_sequence) {
            bool useful = sim.status[static_cast<std::size_t>(f)] == FrameStatus::Successful;
            for (FrameId g : result.best_sequence) {
                if (useful) break;
                useful = sim.status[static_cast<std::size_t>(g)] == FrameStatus::Successful &&
                         anc.is_ancestor(f, g);
            }
            if (useful)
                kept.push_back(f);
            else
                changed = true;
        }
        result.best_sequence = std::move(kept);
    }
}

}  // namespace

OracleResult brute_force(const DependencyDag& dag, const LinkConfig& link,
                         const OracleLimits& limits, Slot start_time) {
    if (static_cast<int>(dag.size()) > limits.max_frames)
        throw LimitError("instance exceeds the oracle frame cap");
    Slot horizon = 0;
    for (const Frame& f : dag.frames()) horizon = std::max(horizon, f.deadline);
    if (horizon > limits.max_horizon)
        throw LimitError("instance exceeds the oracle horizon cap");

    Search search(dag, link, limits.prune_to_dependency_order);
    if (limits.prune_to_dependency_order)
        search.recurse_pruned(start_time, 0);
    else
        search.recurse_full(start_time);
    strip_useless(dag, link, start_time, search.best);
    return search.best;
}

}  // namespace vidsched
