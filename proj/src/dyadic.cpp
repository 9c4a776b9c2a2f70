#include "vidsched/dyadic.hpp"

#include <algorithm>
#include <cctype>

namespace vidsched {

namespace {

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

void dyadic_build(FrameId i, FrameId j, std::vector<Edge>& edges, FrameId virtual_end) {
    const long gap = static_cast<long>(j) - static_cast<long>(i);
    if (gap <= 1 || !is_power_of_two(gap)) return;
    const FrameId mid = static_cast<FrameId>((static_cast<long>(i) + j) / 2);
    edges.emplace_back(i, mid);
    if (j != virtual_end) edges.emplace_back(j, mid);
    dyadic_build(i, mid, edges, virtual_end);
    dyadic_build(mid, j, edges, virtual_end);
}

FrameKind DyadicPattern::kind_at(FrameId index) const {
    const int offset = static_cast<int>(index % gop_size);
    if (offset == 0) return FrameKind::I;
    if (offset % (b_run_length + 1) == 0) return FrameKind::P;
    return FrameKind::B;
}

DyadicPattern parse_pattern(const std::string& text) {
    if (text.size() < 4 || text[0] != 'G')
        throw ValidationError("pattern must look like G<n>B<m>: " + text);
    std::size_t bpos = text.find('B', 1);
    if (bpos == std::string::npos || bpos == 1 || bpos + 1 >= text.size())
        throw ValidationError("pattern must look like G<n>B<m>: " + text);
    for (std::size_t k = 1; k < text.size(); ++k) {
        if (k == bpos) continue;
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw ValidationError("pattern must look like G<n>B<m>: " + text);
    }
    DyadicPattern p;
    p.gop_size = std::stoi(text.substr(1, bpos - 1));
    p.b_run_length = std::stoi(text.substr(bpos + 1));
    if (!is_power_of_two(p.gop_size))
        throw ValidationError("GOP size must be a power of 2: " + text);
    if (!is_power_of_two(p.b_run_length + 1))
        throw ValidationError("B-run length must be 2^w - 1: " + text);
    if (p.gop_size % (p.b_run_length + 1) != 0)
        throw ValidationError("B-run length + 1 must divide the GOP size: " + text);
    return p;
}

std::string pattern_to_string(const DyadicPattern& p) {
    return "G" + std::to_string(p.gop_size) + "B" + std::to_string(p.b_run_length);
}

DependencyDag build_dyadic_sequence(const DyadicPattern& pattern, FrameId frame_count) {
    const int n = pattern.gop_size;
    const int m = pattern.b_run_length;
    if (!is_power_of_two(n)) throw ValidationError("GOP size must be a power of 2");
    if (!is_power_of_two(m + 1)) throw ValidationError("B-run length must be 2^w - 1");
    if (n % (m + 1) != 0) throw ValidationError("B-run length + 1 must divide the GOP size");
    if (frame_count < 1) throw ValidationError("need at least one frame");
    const FrameId rem = frame_count % n;
    if (rem != 0 && rem != 1)
        throw ValidationError("frame count must be a multiple of the GOP size, "
                              "optionally plus one trailing I-frame");

    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(frame_count));
    for (FrameId id = 0; id < frame_count; ++id)
        frames.push_back(Frame{id, pattern.kind_at(id), 1, id, 0});

    std::vector<Edge> edges;
    const int num_gops = static_cast<int>((frame_count + n - 1) / n);
    for (int g = 0; g < num_gops; ++g) {
        const FrameId base = static_cast<FrameId>(g) * n;
        if (base + 1 >= frame_count) break;  // trailing lone I-frame
        // P-frames chain off the previous non-B frame.
        for (FrameId anchor = base + m + 1; anchor < base + n && anchor < frame_count;
             anchor = anchor + m + 1)
            edges.emplace_back(anchor - (m + 1), anchor);
        // B-runs between consecutive non-B frames, the last run ending at the
        // next GOP's I-frame (virtual when it does not exist).
        const FrameId next_i = base + n;
        for (FrameId lo = base; lo < next_i; lo = lo + m + 1) {
            const FrameId hi = lo + m + 1;
            dyadic_build(lo, hi, edges, hi < frame_count ? FrameId{-1} : hi);
        }
    }
    return DependencyDag(std::move(frames), edges);
}

DependencyDag build_dyadic(int gop_size, int b_run_length, int num_gops) {
    if (num_gops < 1) throw ValidationError("need at least one GOP");
    DyadicPattern p{gop_size, b_run_length};
    return build_dyadic_sequence(p, static_cast<FrameId>(gop_size) * num_gops);
}

DependencyDag strip_backward_edges(const DependencyDag& dag) {
    std::vector<Edge> kept;
    for (const Edge& e : dag.edges()) {
        const bool backward =
            dag.frame(e.first).kind == FrameKind::I && e.second < e.first;
        if (!backward) kept.push_back(e);
    }
    return DependencyDag(dag.frames(), kept);
}

bool has_backward_edges(const DependencyDag& dag) {
    for (const Edge& e : dag.edges())
        if (dag.frame(e.first).kind == FrameKind::I && e.second < e.first) return true;
    return false;
}

}  // namespace vidsched
