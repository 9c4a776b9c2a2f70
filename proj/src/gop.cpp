#include "vidsched/gop.hpp"

#include <algorithm>
#include <queue>

namespace vidsched {

namespace {

std::vector<char> descendants_of(const DependencyDag& dag, FrameId root) {
    std::vector<char> mark(dag.size(), 0);
    std::queue<FrameId> q;
    q.push(root);
    while (!q.empty()) {
        FrameId u = q.front();
        q.pop();
        for (FrameId c : dag.children(u)) {
            if (!mark[static_cast<std::size_t>(c)]) {
                mark[static_cast<std::size_t>(c)] = 1;
                q.push(c);
            }
        }
    }
    return mark;
}

}  // namespace

std::vector<FrameId> GopPartition::m_set(int i) const {
    std::vector<FrameId> out = non_i.at(static_cast<std::size_t>(i));
    if (i + 1 < num_gops()) {
        out.push_back(gop_starts[static_cast<std::size_t>(i) + 1]);
        std::sort(out.begin(), out.end());
    }
    return out;
}

GopPartition partition_gops(const DependencyDag& dag) {
    if (dag.frame(0).kind != FrameKind::I)
        throw ValidationError("frame sequence must start with an I-frame");

    GopPartition part;
    part.gop_starts = dag.iframe_ids();
    const int g = part.num_gops();
    part.non_i.assign(static_cast<std::size_t>(g), {});
    part.dual.assign(static_cast<std::size_t>(g), {});
    part.gop_of.assign(dag.size(), 0);
    part.in_dual.assign(dag.size(), 0);

    int cur = -1;
    for (const Frame& f : dag.frames()) {
        if (f.kind == FrameKind::I) ++cur;
        part.gop_of[static_cast<std::size_t>(f.id)] = cur;
        if (f.kind != FrameKind::I)
            part.non_i[static_cast<std::size_t>(cur)].push_back(f.id);
    }

    for (int i = 0; i + 1 < g; ++i) {
        const auto desc_cur = descendants_of(dag, part.gop_starts[static_cast<std::size_t>(i)]);
        const auto desc_next =
            descendants_of(dag, part.gop_starts[static_cast<std::size_t>(i) + 1]);
        for (FrameId f : part.non_i[static_cast<std::size_t>(i)]) {
            const std::size_t fi = static_cast<std::size_t>(f);
            if (desc_cur[fi] && desc_next[fi]) {
                part.dual[static_cast<std::size_t>(i)].push_back(f);
                part.in_dual[fi] = 1;
            }
        }
    }
    return part;
}

}  // namespace vidsched
