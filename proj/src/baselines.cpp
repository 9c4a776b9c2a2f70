#include "vidsched/baselines.hpp"

#include <algorithm>

namespace vidsched {

const char* to_string(BaselineKind k) {
    switch (k) {
        case BaselineKind::Edf: return "edf";
        case BaselineKind::Doedf: return "doedf";
        case BaselineKind::Pbedf: return "pbedf";
    }
    return "?";
}

namespace {

/// Greedy scan over `scan_order`: transmit back-to-back, skip a frame when
/// its transmission cannot finish by its deadline or a parent was decided
/// skipped. Parents not yet decided are assumed forthcoming.
TransmissionSequence greedy_scan(const DependencyDag& dag, const LinkConfig& link,
                                 const std::vector<FrameId>& scan_order) {
    std::vector<char> skipped(dag.size(), 0);
    TransmissionSequence seq;
    Slot t = 0;
    for (FrameId f : scan_order) {
        const Slot dt = link.slots_for(dag.frame(f).size_bits);
        bool skip = t + dt > dag.frame(f).deadline;
        for (FrameId p : dag.parents(f)) {
            if (skipped[static_cast<std::size_t>(p)]) {
                skip = true;
                break;
            }
        }
        if (skip) {
            skipped[static_cast<std::size_t>(f)] = 1;
        } else {
            seq.order.push_back(f);
            t += dt;
        }
    }
    return seq;
}

BaselineResult run(BaselineKind kind, const DependencyDag& dag, const LinkConfig& link,
                   const std::vector<FrameId>& scan_order) {
    BaselineResult res;
    res.name = kind;
    res.sequence = greedy_scan(dag, link, scan_order);
    res.reward = simulate(res.sequence, dag, link).reward;
    return res;
}

}  // namespace

BaselineResult edf(const DependencyDag& dag, const LinkConfig& link) {
    std::vector<FrameId> display(dag.size());
    for (std::size_t i = 0; i < dag.size(); ++i) display[i] = static_cast<FrameId>(i);
    return run(BaselineKind::Edf, dag, link, display);
}

BaselineResult doedf(const DependencyDag& dag, const LinkConfig& link,
                     const UniversalSequence& universal) {
    return run(BaselineKind::Doedf, dag, link, universal.order);
}

BaselineResult pbedf(const DependencyDag& dag, const LinkConfig& link, int block_size) {
    const int n = static_cast<int>(dag.size());
    if (block_size < 1) throw ValidationError("PBEDF block size must be at least 1");

    std::vector<FrameId> order;
    order.reserve(dag.size());
    for (int lo = 0; lo < n; lo += block_size) {
        const int hi = std::min(n, lo + block_size);
        for (int pass = 0; pass < 3; ++pass) {
            const FrameKind want =
                pass == 0 ? FrameKind::I : (pass == 1 ? FrameKind::P : FrameKind::B);
            for (int f = lo; f < hi; ++f)
                if (dag.frame(f).kind == want) order.push_back(f);
        }
    }
    BaselineResult res = run(BaselineKind::Pbedf, dag, link, order);
    res.pbedf_block_size = block_size;
    return res;
}

BaselineResult pbedf_best(const DependencyDag& dag, const LinkConfig& link) {
    BaselineResult best = pbedf(dag, link, 1);
    for (int m = 2; m <= static_cast<int>(dag.size()); ++m) {
        BaselineResult r = pbedf(dag, link, m);
        if (r.reward > best.reward) best = std::move(r);
    }
    return best;
}

}  // namespace vidsched
