#ifndef VIDSCHED_DYADIC_HPP
#define VIDSCHED_DYADIC_HPP

#include <vector>

#include "vidsched/dag.hpp"

namespace vidsched {

/// Midpoint-recursion edge builder for the B-run spanned by frames i..j.
/// Degenerate spans (|i-j| <= 1 or a non-power-of-2 gap) add nothing.
/// Edges whose parent is `virtual_end` (a frame index that does not exist,
/// used for the tail run of the final GOP) are omitted.
void dyadic_build(FrameId i, FrameId j, std::vector<Edge>& edges, FrameId virtual_end = -1);

struct DyadicPattern {
    int gop_size = 16;     // n, a power of two
    int b_run_length = 3;  // m = 2^w - 1, with (m + 1) | n

    /// Frame kind the pattern dictates at a display index.
    FrameKind kind_at(FrameId index) const;
};

DyadicPattern parse_pattern(const std::string& text);  // "G16B3"
std::string pattern_to_string(const DyadicPattern& p);

/// Hierarchical dyadic structure over `frame_count` frames. The count must be
/// a multiple of the GOP size, optionally plus one trailing I-frame; the last
/// GOP's tail B-run omits the parent that would be the (nonexistent) next
/// I-frame. Sizes/qualities are left at defaults for the caller to fill.
DependencyDag build_dyadic_sequence(const DyadicPattern& pattern, FrameId frame_count);

/// Whole-GOP convenience form of build_dyadic_sequence.
DependencyDag build_dyadic(int gop_size, int b_run_length, int num_gops);

/// Removes every edge that runs from an I-frame to a frame of the preceding
/// GOP (the backward prediction edges); all other edges are preserved.
DependencyDag strip_backward_edges(const DependencyDag& dag);

bool has_backward_edges(const DependencyDag& dag);

}  // namespace vidsched

#endif
