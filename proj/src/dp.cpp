#include "vidsched/dp.hpp"

#include <algorithm>
#include <cassert>

#include "vidsched/dyadic.hpp"

namespace vidsched {

TransmissionSequence DpSolution::sequence() const {
    TransmissionSequence seq;
    for (const ScheduledFrame& s : schedule) seq.order.push_back(s.frame);
    return seq;
}

namespace {

enum Action : std::uint8_t {
    kWait = 0,
    kTransmit = 1,   // current frame, successful or past-deadline by the slot test
    kDrop = 2,       // jump to the next irrelevant rank
    kDropJoint = 3,  // chain node: drop block and the embedded I-frame with it
    kDropKeepI = 4,  // chain node: drop block but transmit the embedded I-frame now
};

struct RankData {
    FrameId frame = -1;
    Slot dt = 1;
    Slot deadline = 0;
    Quality q = 0;
    int next_irr = 0;
    bool iframe = false;
    std::uint8_t gate = 0xF;  // s values with the full action set (bitmask)
    bool chain = false;
    int block_end = 0;        // chain: first rank past the extended subtree block
    FrameId embedded_i = -1;  // chain: the I-frame inside the block
    Slot i_dt = 0, i_deadline = 0;
    Quality i_q = 0;
};

struct Table {
    int n = 0;
    Slot horizon = 0;
    int svals = 1;
    std::vector<Quality> value;
    std::vector<std::uint8_t> action;

    Table(int n_, Slot horizon_, int svals_) : n(n_), horizon(horizon_), svals(svals_) {
        const std::size_t cells = static_cast<std::size_t>(n + 2) *
                                  static_cast<std::size_t>(horizon + 2) *
                                  static_cast<std::size_t>(svals);
        value.assign(cells, 0);
        action.assign(cells, kWait);
    }

    std::size_t idx(int j, Slot t, int s) const {
        return (static_cast<std::size_t>(j) * static_cast<std::size_t>(horizon + 2) +
                static_cast<std::size_t>(t)) *
                   static_cast<std::size_t>(svals) +
               static_cast<std::size_t>(s);
    }

    Slot clamp(Slot t) const { return std::min<Slot>(t, horizon + 1); }

    Quality at(int j, Slot t, int s) const { return value[idx(j, clamp(t), s)]; }
};

Slot horizon_of(const DependencyDag& dag) {
    Slot h = 0;
    for (const Frame& f : dag.frames()) h = std::max(h, f.deadline);
    return h;
}

std::vector<RankData> base_ranks(const DependencyDag& dag, const UniversalSequence& u,
                                 const LinkConfig& link) {
    const int n = u.n();
    if (n == 0) throw ValidationError("cannot schedule an empty sequence");
    std::vector<RankData> rd(static_cast<std::size_t>(n) + 1);
    for (int r = 1; r <= n; ++r) {
        const Frame& f = dag.frame(u.at(r));
        rd[static_cast<std::size_t>(r)].frame = f.id;
        rd[static_cast<std::size_t>(r)].dt = link.slots_for(f.size_bits);
        rd[static_cast<std::size_t>(r)].deadline = f.deadline;
        rd[static_cast<std::size_t>(r)].q = f.quality;
        rd[static_cast<std::size_t>(r)].next_irr = u.next_irrelevant[static_cast<std::size_t>(r)];
        rd[static_cast<std::size_t>(r)].iframe = f.kind == FrameKind::I;
    }
    return rd;
}

struct Candidate {
    Quality value;
    Action action;
};

DpSolution run_dp(const DependencyDag& dag, const UniversalSequence& universal,
                  const std::vector<RankData>& rd, int svals) {
    const int n = universal.n();
    const Slot horizon = horizon_of(dag);
    Table tab(n, horizon, svals);

    DpStats stats;
    stats.table_cells = tab.value.size();

    Candidate cands[8];
    for (int j = n; j >= 1; --j) {
        const RankData& r = rd[static_cast<std::size_t>(j)];
        for (Slot t = horizon; t >= 0; --t) {
            for (int s = 0; s < svals; ++s) {
                ++stats.state_evaluations;
                int nc = 0;
                const bool succ = r.deadline - t >= r.dt;
                const bool gated_in = (r.gate >> s) & 1;

                if (r.iframe) {
                    const Quality tv = (succ ? r.q : 0) +
                                       tab.at(j + 1, t + r.dt, svals == 1 ? 0 : s_update(s, true));
                    const Quality dv =
                        tab.at(r.next_irr, t, svals == 1 ? 0 : s_update(s, false));
                    if (succ) {
                        cands[nc++] = {tv, kTransmit};
                        cands[nc++] = {dv, kDrop};
                    } else {
                        cands[nc++] = {dv, kDrop};
                        cands[nc++] = {tv, kTransmit};
                    }
                } else if (r.chain) {
                    const bool isucc = r.i_deadline - t >= r.i_dt;
                    const Quality joint = tab.at(r.block_end, t, s_update(s, false));
                    const Quality keepi = (isucc ? r.i_q : 0) +
                                          tab.at(r.block_end, t + r.i_dt, s_update(s, true));
                    const Quality tv = gated_in ? (succ ? r.q : 0) + tab.at(j + 1, t + r.dt, s) : 0;
                    if (gated_in && succ) cands[nc++] = {tv, kTransmit};
                    if (isucc) cands[nc++] = {keepi, kDropKeepI};
                    cands[nc++] = {joint, kDropJoint};
                    if (gated_in && !succ) cands[nc++] = {tv, kTransmit};
                    if (!isucc) cands[nc++] = {keepi, kDropKeepI};
                } else {
                    const Quality dv = tab.at(r.next_irr, t, s);
                    if (gated_in) {
                        const Quality tv = (succ ? r.q : 0) + tab.at(j + 1, t + r.dt, s);
                        if (succ) {
                            cands[nc++] = {tv, kTransmit};
                            cands[nc++] = {dv, kDrop};
                        } else {
                            cands[nc++] = {dv, kDrop};
                            cands[nc++] = {tv, kTransmit};
                        }
                    } else {
                        cands[nc++] = {dv, kDrop};
                    }
                }
                cands[nc++] = {tab.at(j, t + 1, s), kWait};

                Quality best = cands[0].value;
                Action act = cands[0].action;
                for (int k = 1; k < nc; ++k) {
                    if (cands[k].value > best) {
                        best = cands[k].value;
                        act = cands[k].action;
                    }
                }
                const std::size_t cell = tab.idx(j, t, s);
                tab.value[cell] = best;
                tab.action[cell] = act;
            }
        }
    }

    DpSolution sol;
    sol.optimal_reward = tab.at(1, 0, 0);
    sol.status.assign(dag.size(), FrameStatus::Dropped);
    sol.stats = stats;

    int j = 1;
    Slot t = 0;
    int s = 0;
    Quality recomputed = 0;
    while (j <= n && t <= horizon) {
        const RankData& r = rd[static_cast<std::size_t>(j)];
        switch (tab.action[tab.idx(j, t, s)]) {
            case kWait:
                ++t;
                break;
            case kTransmit: {
                const bool succ = r.deadline - t >= r.dt;
                sol.schedule.push_back({r.frame, t, t + r.dt,
                                        succ ? FrameStatus::Successful
                                             : FrameStatus::TransmittedUnsuccessful});
                sol.status[static_cast<std::size_t>(r.frame)] = sol.schedule.back().status;
                if (succ) recomputed += r.q;
                if (r.iframe && svals > 1) s = s_update(s, true);
                t += r.dt;
                ++j;
                break;
            }
            case kDrop:
                if (r.iframe && svals > 1) s = s_update(s, false);
                j = r.next_irr;
                break;
            case kDropJoint:
                s = s_update(s, false);
                j = r.block_end;
                break;
            case kDropKeepI: {
                const bool isucc = r.i_deadline - t >= r.i_dt;
                sol.schedule.push_back({r.embedded_i, t, t + r.i_dt,
                                        isucc ? FrameStatus::Successful
                                              : FrameStatus::TransmittedUnsuccessful});
                sol.status[static_cast<std::size_t>(r.embedded_i)] = sol.schedule.back().status;
                if (isucc) recomputed += r.i_q;
                s = s_update(s, true);
                t += r.i_dt;
                j = r.block_end;
                break;
            }
        }
    }
    if (recomputed != sol.optimal_reward)
        throw Error("internal: reconstructed schedule reward mismatch");
    return sol;
}

}  // namespace

DpSolution solve_sio(const DependencyDag& dag, const UniversalSequence& universal,
                     const LinkConfig& link) {
    if (universal.quasi)
        throw ValidationError("solve_sio requires an SIO universal sequence");
    std::vector<RankData> rd = base_ranks(dag, universal, link);
    return run_dp(dag, universal, rd, 1);
}

DpSolution solve_quasi_sio(const DependencyDag& dag, const UniversalSequence& universal,
                           const GopPartition& partition, const MbfsForest& forest,
                           const CriticalNodes& critical, const LinkConfig& link) {
    std::vector<RankData> rd = base_ranks(dag, universal, link);
    const int n = universal.n();
    const int gops = partition.num_gops();

    const DependencyDag stripped = strip_backward_edges(dag);
    const auto info = subtree_info(stripped, forest);

    // Gates: a non-I frame may transmit only when the I-frames it depends on
    // are marked transmitted in s. A-frames (before the moved I) need the
    // nearest preceding I-frame; D-frames need both; the rest of the B-block
    // needs the second-nearest.
    constexpr std::uint8_t kGateNearest = (1u << 1) | (1u << 3);
    constexpr std::uint8_t kGateBoth = (1u << 3);
    constexpr std::uint8_t kGateSecond = (1u << 2) | (1u << 3);

    for (int r = 1; r <= n; ++r) {
        RankData& d = rd[static_cast<std::size_t>(r)];
        if (d.iframe) continue;
        const int gi = partition.gop_of[static_cast<std::size_t>(d.frame)];
        if (gi + 1 >= gops) {
            d.gate = kGateNearest;
            continue;
        }
        const FrameId next_i = partition.gop_starts[static_cast<std::size_t>(gi) + 1];
        const int i_rank = universal.rank_of[static_cast<std::size_t>(next_i)];
        if (partition.in_dual[static_cast<std::size_t>(d.frame)])
            d.gate = kGateBoth;
        else if (r < i_rank)
            d.gate = kGateNearest;
        else
            d.gate = kGateSecond;
    }

    // Tree-ancestors of zeta_i: their subtree block contains the moved
    // I-frame, so a plain jump to the next irrelevant rank would land on it
    // and leave part of the dropped subtree downstream. The composite drops
    // skip the whole block and settle the I-frame in the same step.
    for (int i = 0; i + 1 < gops; ++i) {
        if (!critical.zeta[static_cast<std::size_t>(i)]) continue;
        const MbfsTree& tree = forest[static_cast<std::size_t>(i)];
        const FrameId zeta = *critical.zeta[static_cast<std::size_t>(i)];
        const FrameId next_i = partition.gop_starts[static_cast<std::size_t>(i) + 1];
        const int i_rank = universal.rank_of[static_cast<std::size_t>(next_i)];
        for (FrameId x = tree.tree_parent[static_cast<std::size_t>(zeta)];
             x >= 0 && x != tree.root; x = tree.tree_parent[static_cast<std::size_t>(x)]) {
            const int r = universal.rank_of[static_cast<std::size_t>(x)];
            RankData& d = rd[static_cast<std::size_t>(r)];
            d.chain = true;
            d.block_end = r + info[static_cast<std::size_t>(x)].size + 1;
            d.embedded_i = next_i;
            d.i_dt = link.slots_for(dag.frame(next_i).size_bits);
            d.i_deadline = dag.frame(next_i).deadline;
            d.i_q = dag.frame(next_i).quality;
            if (!(r < i_rank && i_rank < d.block_end))
                throw Error("internal: moved I-frame is outside the chain block");
        }
    }

    return run_dp(dag, universal, rd, 4);
}

PreparedInstance::PreparedInstance(DependencyDag d) : dag(std::move(d)) {
    label = classify(dag);
    if (label.label == StructureClass::Neither) return;
    partition = partition_gops(dag);
    forest = build_forest(dag);
    critical = critical_nodes(dag, forest, partition);
    universal = label.label == StructureClass::Sio
                    ? sio_universal(dag, forest, partition)
                    : quasi_sio_universal(dag, forest, partition, critical);
}

DpSolution PreparedInstance::solve(const LinkConfig& link) const {
    switch (label.label) {
        case StructureClass::Sio:
            return solve_sio(dag, universal, link);
        case StructureClass::QuasiSio:
            return solve_quasi_sio(dag, universal, partition, forest, critical, link);
        case StructureClass::Neither:
            break;
    }
    throw UnsupportedStructure(label.witness_node, label.witness_reason);
}

DpSolution solve(const DependencyDag& dag, const LinkConfig& link) {
    return PreparedInstance(dag).solve(link);
}

}  // namespace vidsched
