#include "vidsched/dag.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace vidsched {

char kind_to_char(FrameKind k) {
    switch (k) {
        case FrameKind::I: return 'I';
        case FrameKind::P: return 'P';
        case FrameKind::B: return 'B';
    }
    return '?';
}

FrameKind kind_from_char(char c) {
    switch (c) {
        case 'I': return FrameKind::I;
        case 'P': return FrameKind::P;
        case 'B': return FrameKind::B;
        default: throw ValidationError(std::string("unknown frame kind '") + c + "'");
    }
}

namespace {

void check_acyclic(const std::vector<std::vector<FrameId>>& parents,
                   const std::vector<std::vector<FrameId>>& children) {
    const std::size_t n = parents.size();
    std::vector<int> remaining(n);
    std::queue<FrameId> ready;
    for (std::size_t i = 0; i < n; ++i) {
        remaining[i] = static_cast<int>(parents[i].size());
        if (remaining[i] == 0) ready.push(static_cast<FrameId>(i));
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
        FrameId u = ready.front();
        ready.pop();
        ++seen;
        for (FrameId c : children[static_cast<std::size_t>(u)])
            if (--remaining[static_cast<std::size_t>(c)] == 0) ready.push(c);
    }
    if (seen != n) throw ValidationError("dependency graph contains a cycle");
}

}  // namespace

DependencyDag::DependencyDag(std::vector<Frame> frames, const std::vector<Edge>& edges)
    : frames_(std::move(frames)) {
    const std::size_t n = frames_.size();
    if (n == 0) throw ValidationError("frame sequence is empty");
    for (std::size_t i = 0; i < n; ++i) {
        const Frame& f = frames_[i];
        if (f.id != static_cast<FrameId>(i))
            throw ValidationError("frame ids must be contiguous display indices from 0");
        if (f.size_bits <= 0)
            throw ValidationError("frame " + std::to_string(f.id) + " has non-positive size");
        if (f.quality < 0)
            throw ValidationError("frame " + std::to_string(f.id) + " has negative quality");
        if (i > 0 && frames_[i - 1].deadline >= f.deadline)
            throw ValidationError("deadlines must be strictly increasing in display order");
        if (f.deadline < 0)
            throw ValidationError("frame " + std::to_string(f.id) + " has negative deadline");
    }

    parents_.assign(n, {});
    children_.assign(n, {});
    for (const Edge& e : edges) {
        auto [p, c] = e;
        if (p < 0 || c < 0 || p >= static_cast<FrameId>(n) || c >= static_cast<FrameId>(n))
            throw ValidationError("edge references unknown frame");
        if (p == c) throw ValidationError("self-dependency on frame " + std::to_string(p));
        parents_[static_cast<std::size_t>(c)].push_back(p);
        children_[static_cast<std::size_t>(p)].push_back(c);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(parents_[i].begin(), parents_[i].end());
        std::sort(children_[i].begin(), children_[i].end());
        if (std::adjacent_find(parents_[i].begin(), parents_[i].end()) != parents_[i].end())
            throw ValidationError("duplicate edge into frame " + std::to_string(i));
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Frame& f = frames_[i];
        const auto& ps = parents_[i];
        switch (f.kind) {
            case FrameKind::I:
                if (!ps.empty())
                    throw ValidationError("I-frame " + std::to_string(f.id) + " has parents");
                iframes_.push_back(f.id);
                break;
            case FrameKind::P:
                if (ps.size() != 1 || ps[0] >= f.id ||
                    frames_[static_cast<std::size_t>(ps[0])].kind == FrameKind::B)
                    throw ValidationError("P-frame " + std::to_string(f.id) +
                                          " must have exactly one preceding non-B parent");
                break;
            case FrameKind::B:
                if (ps.empty() || ps.size() > 2)
                    throw ValidationError("B-frame " + std::to_string(f.id) +
                                          " must have one or two parents");
                if (ps.size() == 2 && !(ps[0] < f.id && ps[1] > f.id))
                    throw ValidationError("B-frame " + std::to_string(f.id) +
                                          " parents must straddle it in display order");
                if (ps.size() == 1 && ps[0] >= f.id)
                    throw ValidationError("single-parent B-frame " + std::to_string(f.id) +
                                          " must reference a preceding frame");
                break;
        }
    }

    check_acyclic(parents_, children_);

    // GOP locality: a frame's parents lie in its own GOP or are the next I-frame.
    // Only meaningful when the sequence opens with an I-frame; otherwise
    // partition_gops() rejects the input later.
    if (!iframes_.empty() && iframes_.front() == 0) {
        std::vector<int> gop_of(n, 0);
        int g = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (frames_[i].kind == FrameKind::I) ++g;
            gop_of[i] = g;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (FrameId p : parents_[i]) {
                const std::size_t pi = static_cast<std::size_t>(p);
                if (gop_of[pi] == gop_of[i]) continue;
                bool next_i = frames_[pi].kind == FrameKind::I && gop_of[pi] == gop_of[i] + 1;
                if (!next_i)
                    throw ValidationError("frame " + std::to_string(i) +
                                          " depends on a frame outside its GOP that is not "
                                          "the succeeding I-frame");
            }
        }
    }
}

std::vector<Edge> DependencyDag::edges() const {
    std::vector<Edge> out;
    for (std::size_t c = 0; c < frames_.size(); ++c)
        for (FrameId p : parents_[c]) out.emplace_back(p, static_cast<FrameId>(c));
    std::sort(out.begin(), out.end());
    return out;
}

AncestorTable::AncestorTable(const DependencyDag& dag) {
    const std::size_t n = dag.size();
    words_ = (n + 63) / 64;
    bits_.assign(n * words_, 0);
    // Parents precede... not necessarily: B-frames reference succeeding frames,
    // so propagate in topological order.
    std::vector<int> remaining(n);
    std::queue<FrameId> ready;
    for (std::size_t i = 0; i < n; ++i) {
        remaining[i] = static_cast<int>(dag.parents(static_cast<FrameId>(i)).size());
        if (remaining[i] == 0) ready.push(static_cast<FrameId>(i));
    }
    while (!ready.empty()) {
        FrameId u = ready.front();
        ready.pop();
        const std::size_t urow = static_cast<std::size_t>(u) * words_;
        for (FrameId c : dag.children(u)) {
            const std::size_t crow = static_cast<std::size_t>(c) * words_;
            for (std::size_t w = 0; w < words_; ++w) bits_[crow + w] |= bits_[urow + w];
            bits_[crow + static_cast<std::size_t>(u) / 64] |= 1ULL << (static_cast<std::size_t>(u) % 64);
            if (--remaining[static_cast<std::size_t>(c)] == 0) ready.push(c);
        }
    }
}

bool AncestorTable::is_ancestor(FrameId ancestor, FrameId node) const {
    const std::size_t row = static_cast<std::size_t>(node) * words_;
    return (bits_[row + static_cast<std::size_t>(ancestor) / 64] >>
            (static_cast<std::size_t>(ancestor) % 64)) &
           1ULL;
}

std::vector<FrameId> AncestorTable::ancestors_of(FrameId node) const {
    std::vector<FrameId> out;
    const std::size_t n = bits_.size() / words_;
    for (std::size_t i = 0; i < n; ++i)
        if (is_ancestor(static_cast<FrameId>(i), node)) out.push_back(static_cast<FrameId>(i));
    return out;
}

DependencyDag with_deadlines(const DependencyDag& dag, double fps, double slot_duration_s,
                             double initial_delay_s) {
    if (fps <= 0 || slot_duration_s <= 0 || initial_delay_s < 0)
        throw ValidationError("invalid timing parameters");
    std::vector<Frame> frames = dag.frames();
    for (Frame& f : frames) {
        double t = initial_delay_s + static_cast<double>(f.id) / fps;
        f.deadline = static_cast<Slot>(std::floor(t / slot_duration_s + 1e-9));
    }
    return DependencyDag(std::move(frames), dag.edges());
}

}  // namespace vidsched
