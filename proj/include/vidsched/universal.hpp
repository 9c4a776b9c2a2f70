#ifndef VIDSCHED_UNIVERSAL_HPP
#define VIDSCHED_UNIVERSAL_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vidsched/mbfs.hpp"

namespace vidsched {

/// An ordered frame selection.
struct TransmissionSequence {
    std::vector<FrameId> order;

    std::set<FrameId> selected() const { return {order.begin(), order.end()}; }
};

/// Canonical all-frames transmission order plus the rank maps the dynamic
/// programs consume. Ranks are 1-based; N+1 is the terminal sentinel.
struct UniversalSequence {
    bool quasi = false;
    std::vector<FrameId> order;
    std::vector<int> rank_of;          // frame id -> rank
    std::vector<int> next_irrelevant;  // rank -> rank of min{k > j : k irrelevant to j}
    std::vector<int> next_iframe;      // rank -> rank of the next I-frame after it

    int n() const { return static_cast<int>(order.size()); }
    FrameId at(int rank) const { return order[static_cast<std::size_t>(rank) - 1]; }
};

/// Pre-order walk of each MBFS tree in display order, children in ascending
/// deadline order. Requires an SIO structure.
UniversalSequence sio_universal(const DependencyDag& dag, const MbfsForest& forest,
                                const GopPartition& partition);

/// SIO universal order of the stripped DAG with each succeeding I-frame moved
/// backward to sit immediately before the earliest-transmitted member of D_i.
/// Accepts SIO inputs as the degenerate case where nothing moves.
UniversalSequence quasi_sio_universal(const DependencyDag& dag, const MbfsForest& forest,
                                      const GopPartition& partition,
                                      const CriticalNodes& critical);

/// Universal order filtered to `selected` after pruning every frame whose
/// ancestor chain is not fully selected (dropping an I-frame therefore drops
/// the dependent blocks around it).
TransmissionSequence canonical_form(const DependencyDag& dag, const UniversalSequence& universal,
                                    const std::set<FrameId>& selected);

struct CanonicalViolation {
    int property = 0;  // 1 or 2
    FrameId first = -1;
    FrameId second = -1;
    std::string detail;
};

struct CanonicalCheck {
    bool ok = true;
    std::optional<CanonicalViolation> violation;
};

/// Verifies the two canonical-form ordering properties on an arbitrary
/// sequence: (1) ancestors precede descendants; (2) of two irrelevant frames
/// the earlier-deadline one comes first unless a frame between them is
/// related to the first-scheduled one. Reports the first violating pair.
CanonicalCheck check_canonical(const TransmissionSequence& seq, const DependencyDag& dag);

/// O(N^2) reference computation of next_irrelevant, used to validate the
/// linear construction.
std::vector<int> next_irrelevant_direct(const DependencyDag& dag,
                                        const std::vector<FrameId>& order);

bool is_subsequence(const std::vector<FrameId>& sub, const std::vector<FrameId>& full);

}  // namespace vidsched

#endif
