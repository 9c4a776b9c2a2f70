#include <algorithm>

#include "vidsched/dp.hpp"
#include "vidsched/link.hpp"

namespace vidsched {

Bits lossless_capacity(const DependencyDag& dag, const LinkConfig& proto) {
    const Quality want = total_quality(dag);
    PreparedInstance prepared(dag);

    auto reward_at = [&](Bits c) {
        LinkConfig link = proto;
        link.capacity_bits_per_slot = c;
        return prepared.solve(link).optimal_reward;
    };

    Bits hi = 1;
    for (const Frame& f : dag.frames()) hi = std::max(hi, f.size_bits);
    if (reward_at(hi) != want)
        throw LimitError("instance cannot be lossless at any capacity");

    Bits lo = 1;
    while (lo < hi) {
        const Bits mid = lo + (hi - lo) / 2;
        if (reward_at(mid) == want)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

}  // namespace vidsched
