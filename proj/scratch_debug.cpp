#include <cstdio>

#include "tests/test_helpers.hpp"
#include "vidsched/dp.hpp"
#include "vidsched/oracle.hpp"

using namespace vidsched;

int main() {
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        DependencyDag dag = test::random_small_instance(rng, test::fan_fixture());
        LinkConfig link{rng.uniform(1, 5)};
        DpSolution sol = solve(dag, link);
        OracleResult oracle = brute_force(dag, link);
        if (sol.optimal_reward != oracle.reward) {
            std::printf("trial %d C=%lld dp=%lld oracle=%lld\n", trial,
                        (long long)link.capacity_bits_per_slot, (long long)sol.optimal_reward,
                        (long long)oracle.reward);
            std::printf("frames (id kind size dln q):\n");
            for (const Frame& f : dag.frames())
                std::printf("  %d %c %lld %lld %lld\n", f.id, kind_to_char(f.kind),
                            (long long)f.size_bits, (long long)f.deadline,
                            (long long)f.quality);
            std::printf("oracle argmax:");
            for (FrameId f : oracle.best_sequence) std::printf(" %d", f);
            std::printf("\ndp schedule:");
            for (const ScheduledFrame& s : sol.schedule)
                std::printf(" %d@%lld%s", s.frame, (long long)s.start,
                            s.status == FrameStatus::Successful ? "" : "*");
            std::printf("\n");
            PreparedInstance prep(dag);
            std::printf("universal:");
            for (FrameId f : prep.universal.order) std::printf(" %d", f);
            std::printf("\nnext_irr:");
            for (int r = 1; r <= prep.universal.n(); ++r)
                std::printf(" %d", prep.universal.next_irrelevant[(std::size_t)r]);
            std::printf("\n");
            return 1;
        }
    }
    std::printf("all match\n");
    return 0;
}
