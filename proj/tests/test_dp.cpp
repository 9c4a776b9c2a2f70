#include <doctest.h>

#include <algorithm>

#include "test_helpers.hpp"
#include "vidsched/baselines.hpp"
#include "vidsched/dp.hpp"
#include "vidsched/oracle.hpp"

using namespace vidsched;
using test::fan_fixture;
using test::make_dag;
using test::reshape;

TEST_CASE("two-frame chain solved exactly") {
    DependencyDag dag = make_dag("IP", {{0, 1}}, {1, 2}, {1, 1}, {5000, 3000});
    LinkConfig link{1};
    DpSolution sol = solve(dag, link);
    CHECK(sol.optimal_reward == 8000);
    REQUIRE(sol.schedule.size() == 2);
    CHECK(sol.schedule[0].frame == 0);
    CHECK(sol.schedule[0].start == 0);
    CHECK(sol.schedule[1].frame == 1);
    CHECK(sol.schedule[1].start == 1);
    CHECK(sol.optimal_reward == brute_force(dag, link).reward);
}

TEST_CASE("past-deadline transmission of an ancestor pays off") {
    DependencyDag dag = make_dag("IP", {{0, 1}}, {0, 2}, {1, 1}, {5000, 3000});
    LinkConfig link{1};
    DpSolution sol = solve(dag, link);
    CHECK(sol.optimal_reward == 3000);
    REQUIRE(sol.schedule.size() == 2);
    CHECK(sol.status[0] == FrameStatus::TransmittedUnsuccessful);
    CHECK(sol.status[1] == FrameStatus::Successful);
    CHECK(sol.optimal_reward == brute_force(dag, link).reward);
}

TEST_CASE("lossless regime attains the total quality") {
    DependencyDag dag = build_dyadic(16, 3, 2);
    DependencyDag dressed = reshape(dag, std::vector<Bits>(32, 10),
                                    [] {
                                        std::vector<Slot> d;
                                        for (int i = 0; i < 32; ++i) d.push_back(40 + 10 * i);
                                        return d;
                                    }(),
                                    std::vector<Quality>(32, 2500));
    DpSolution sol = solve(dressed, LinkConfig{10});
    CHECK(sol.optimal_reward == total_quality(dressed));
    for (const Frame& f : dressed.frames())
        CHECK(sol.status[static_cast<std::size_t>(f.id)] == FrameStatus::Successful);
}

TEST_CASE("dropping an oversized next I-frame removes its dependents") {
    DependencyDag dag = build_dyadic(4, 1, 2);
    // I_2 (frame 4) far too large to ever transmit; GOP_2 and D_1 are lost.
    DependencyDag dressed = reshape(dag, {2, 1, 2, 1, 1000, 1, 2, 1},
                                    {4, 6, 8, 10, 12, 14, 16, 18},
                                    {9000, 1000, 5000, 1000, 9000, 1000, 5000, 1000});
    LinkConfig link{1};
    DpSolution sol = solve(dressed, link);
    OracleResult oracle = brute_force(dressed, link);
    CHECK(sol.optimal_reward == oracle.reward);
    GopPartition part = partition_gops(dressed);
    for (FrameId f : part.dual[0]) CHECK(sol.status[static_cast<std::size_t>(f)] == FrameStatus::Dropped);
    for (FrameId f : part.non_i[1]) CHECK(sol.status[static_cast<std::size_t>(f)] == FrameStatus::Dropped);
    CHECK(sol.status[4] == FrameStatus::Dropped);
}

TEST_CASE("all-I sequences take the SIO route and match the quasi solver") {
    std::vector<Frame> frames;
    for (FrameId i = 0; i < 4; ++i)
        frames.push_back({i, FrameKind::I, 2, 2 + 2 * i, 1000 * (i + 1)});
    DependencyDag dag(frames, {});
    LinkConfig link{1};
    PreparedInstance prep(dag);
    CHECK(prep.label.label == StructureClass::Sio);
    DpSolution sio = prep.solve(link);
    DpSolution quasi = solve_quasi_sio(dag, quasi_sio_universal(dag, prep.forest, prep.partition,
                                                                prep.critical),
                                       prep.partition, prep.forest, prep.critical, link);
    CHECK(sio.optimal_reward == quasi.optimal_reward);
    CHECK(sio.optimal_reward == brute_force(dag, link).reward);
}

TEST_CASE("s-update transitions") {
    CHECK(s_update(1, true) == 3);
    CHECK(s_update(3, false) == 2);
    CHECK(s_update(0, true) == 1);
    CHECK(s_update(3, true) == 3);
    CHECK(s_update(2, false) == 0);
}

TEST_CASE("solve dispatches on the classification") {
    DependencyDag quasi = build_dyadic(16, 3, 2);
    CHECK_NOTHROW(solve(quasi, LinkConfig{1000}));
    CHECK_NOTHROW(solve(strip_backward_edges(quasi), LinkConfig{1000}));

    DependencyDag neither = make_dag("IPPP", {{0, 1}, {0, 2}, {1, 3}});
    CHECK_THROWS_AS(solve(neither, LinkConfig{1}), UnsupportedStructure);
}

TEST_CASE("dropping a chain ancestor cannot smuggle its descendants through the moved I-frame") {
    // With frame 2 (the parent of zeta_1 = 3) prohibitively large, the best
    // schedule keeps I_2 for GOP_2 but loses {1, 3}. A drop action that jumps
    // only to the moved I-frame would claim q_3 without paying for frame 2.
    DependencyDag dag = build_dyadic(4, 1, 2);
    DependencyDag dressed = reshape(dag, {1, 1, 4, 1, 1, 1, 1, 1},
                                    {2, 3, 4, 5, 6, 7, 8, 9},
                                    {1000, 1000, 1000, 100000, 1000, 1000, 1000, 1000});
    LinkConfig link{1};
    DpSolution sol = solve(dressed, link);
    OracleResult oracle = brute_force(dressed, link);
    CHECK(sol.optimal_reward == oracle.reward);
    CHECK(sol.optimal_reward == 5000);  // frames 0, 4, 6, 5, 7
    CHECK(sol.status[3] == FrameStatus::Dropped);
    CHECK(sol.status[2] == FrameStatus::Dropped);
    CHECK(sol.status[4] == FrameStatus::Successful);
}

TEST_CASE("dropping an I-frame keeps irrelevant B-block frames alive") {
    // fan fixture: B-block frames 4 and 6 do not depend on I_2 (frame 8);
    // when I_2 is too large they must survive its drop.
    DependencyDag dag = fan_fixture();
    DependencyDag dressed = reshape(dag, {1, 1, 1, 1, 1, 1, 1, 1, 500},
                                    {2, 3, 4, 5, 6, 7, 8, 9, 10},
                                    {1000, 1000, 1000, 1000, 1000, 1000, 1000, 1000, 1000});
    LinkConfig link{1};
    DpSolution sol = solve(dressed, link);
    OracleResult oracle = brute_force(dressed, link);
    CHECK(sol.optimal_reward == oracle.reward);
    CHECK(sol.status[8] == FrameStatus::Dropped);
    CHECK(sol.status[4] == FrameStatus::Successful);
    CHECK(sol.status[6] == FrameStatus::Successful);
    for (FrameId f : {3, 5, 7})
        CHECK(sol.status[static_cast<std::size_t>(f)] == FrameStatus::Dropped);
}

TEST_CASE("oracle equivalence on seeded random instances") {
    Rng rng(2024);
    int oracle_runs = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const int shape = static_cast<int>(seed % 6);
        DependencyDag skeleton =
            shape == 0   ? build_dyadic(4, 1, 1)
            : shape == 1 ? build_dyadic(4, 1, 2)
            : shape == 2 ? build_dyadic_sequence({4, 1}, 9)
            : shape == 3 ? build_dyadic(8, 3, 1)
            : shape == 4 ? build_dyadic_sequence({8, 1}, 9)
                         : build_dyadic_sequence({2, 1}, 9);
        DependencyDag dag = test::random_small_instance(rng, skeleton);
        if (seed % 2 == 0) dag = strip_backward_edges(dag);
        LinkConfig link{rng.uniform(1, 6)};
        DpSolution sol = solve(dag, link);
        OracleResult oracle = brute_force(dag, link);
        REQUIRE_MESSAGE(sol.optimal_reward == oracle.reward, "seed ", seed);
        ++oracle_runs;

        // reconstructed schedule replays to the same reward
        std::vector<Slot> starts;
        TransmissionSequence seq = sol.sequence();
        for (const ScheduledFrame& s : sol.schedule) starts.push_back(s.start);
        CHECK(simulate(seq, dag, link, starts).reward == sol.optimal_reward);
    }
    CHECK(oracle_runs == 120);
}

TEST_CASE("fan-shaped quasi structures match the oracle") {
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        DependencyDag dag = test::random_small_instance(rng, fan_fixture());
        LinkConfig link{rng.uniform(1, 5)};
        DpSolution sol = solve(dag, link);
        CHECK(sol.optimal_reward == brute_force(dag, link).reward);
    }
}

TEST_CASE("reward is monotone in capacity") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        DependencyDag dag = test::random_small_instance(rng, build_dyadic(8, 1, 1));
        Quality prev = -1;
        for (Bits c = 1; c <= 8; ++c) {
            const Quality z = solve(dag, LinkConfig{c}).optimal_reward;
            CHECK(z >= prev);
            prev = z;
        }
    }
}

TEST_CASE("schedules replay exactly and unsuccessful frames have successful descendants") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        DependencyDag dag = test::random_small_instance(
            rng, trial % 2 ? build_dyadic(4, 1, 2) : fan_fixture());
        LinkConfig link{rng.uniform(1, 4)};
        DpSolution sol = solve(dag, link);

        std::vector<Slot> starts;
        for (const ScheduledFrame& s : sol.schedule) starts.push_back(s.start);
        SimulationResult sim = simulate(sol.sequence(), dag, link, starts);
        CHECK(sim.reward == sol.optimal_reward);

        AncestorTable anc(dag);
        for (const ScheduledFrame& s : sol.schedule) {
            CHECK(sim.status[static_cast<std::size_t>(s.frame)] == s.status);
            if (s.status != FrameStatus::TransmittedUnsuccessful) continue;
            bool has_successful_descendant = false;
            for (const ScheduledFrame& other : sol.schedule) {
                if (other.status == FrameStatus::Successful &&
                    anc.is_ancestor(s.frame, other.frame)) {
                    has_successful_descendant = true;
                    break;
                }
            }
            CHECK_MESSAGE(has_successful_descendant, "frame ", s.frame, " trial ", trial);
        }

        // optimality dominates the baselines
        PreparedInstance prep(dag);
        CHECK(sol.optimal_reward >= edf(dag, link).reward);
        CHECK(sol.optimal_reward >= doedf(dag, link, prep.universal).reward);
        CHECK(sol.optimal_reward >= pbedf_best(dag, link).reward);

        // every DP selection is a subsequence of the universal sequence
        CHECK(is_subsequence(sol.sequence().order, prep.universal.order));
    }
}

TEST_CASE("state evaluation count is linear in N * horizon") {
    DependencyDag sio = strip_backward_edges(build_dyadic(16, 3, 2));
    DpSolution s1 = solve(sio, LinkConfig{1});
    Slot horizon = 0;
    for (const Frame& f : sio.frames()) horizon = std::max(horizon, f.deadline);
    CHECK(s1.stats.state_evaluations <=
          2ull * sio.size() * static_cast<std::uint64_t>(horizon));

    DependencyDag quasi = build_dyadic(16, 3, 2);
    DpSolution s2 = solve(quasi, LinkConfig{1});
    CHECK(s2.stats.state_evaluations <=
          8ull * quasi.size() * static_cast<std::uint64_t>(horizon));
}
