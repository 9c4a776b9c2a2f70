#ifndef VIDSCHED_DAG_HPP
#define VIDSCHED_DAG_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vidsched/core.hpp"

namespace vidsched {

enum class FrameKind : std::uint8_t { I, P, B };

char kind_to_char(FrameKind k);
FrameKind kind_from_char(char c);

struct Frame {
    FrameId id = 0;          // display index, 0-based
    FrameKind kind = FrameKind::I;
    Bits size_bits = 1;      // S_l
    Slot deadline = 0;       // d_l, in timeslots
    Quality quality = 0;     // q_l, milli-units
};

using Edge = std::pair<FrameId, FrameId>;  // (parent, child)

/// Prediction DAG over a display-ordered frame sequence.
///
/// Construction validates the structural rules: contiguous 0-based ids,
/// strictly increasing deadlines, positive sizes, acyclicity, per-kind
/// in-degrees (I: 0, P: 1 preceding non-B, B: 1..2 with a two-parent B
/// straddling its own display position), and GOP locality of edges.
class DependencyDag {
public:
    DependencyDag(std::vector<Frame> frames, const std::vector<Edge>& edges);

    std::size_t size() const { return frames_.size(); }
    const std::vector<Frame>& frames() const { return frames_; }
    const Frame& frame(FrameId id) const { return frames_.at(static_cast<std::size_t>(id)); }

    std::span<const FrameId> parents(FrameId id) const {
        return parents_.at(static_cast<std::size_t>(id));
    }
    std::span<const FrameId> children(FrameId id) const {
        return children_.at(static_cast<std::size_t>(id));
    }

    /// Canonical edge list, ascending (parent, child).
    std::vector<Edge> edges() const;

    const std::vector<FrameId>& iframe_ids() const { return iframes_; }

private:
    std::vector<Frame> frames_;
    std::vector<std::vector<FrameId>> parents_;
    std::vector<std::vector<FrameId>> children_;
    std::vector<FrameId> iframes_;
};

/// Per-frame ancestor sets as packed bitsets; backs reachability queries
/// in classification, canonical-form checks, and the test oracles.
class AncestorTable {
public:
    explicit AncestorTable(const DependencyDag& dag);

    bool is_ancestor(FrameId ancestor, FrameId node) const;
    bool irrelevant(FrameId a, FrameId b) const {
        return a != b && !is_ancestor(a, b) && !is_ancestor(b, a);
    }
    std::vector<FrameId> ancestors_of(FrameId node) const;

private:
    std::size_t words_;
    std::vector<std::uint64_t> bits_;  // row per frame: its ancestors
};

/// Copy of `dag` with deadlines recomputed as
/// floor((initial_delay_s + id / fps) / slot_duration_s).
DependencyDag with_deadlines(const DependencyDag& dag, double fps, double slot_duration_s,
                             double initial_delay_s);

}  // namespace vidsched

#endif
