#include <doctest.h>

#include "test_helpers.hpp"
#include "vidsched/dp.hpp"
#include "vidsched/oracle.hpp"

using namespace vidsched;
using test::make_dag;

TEST_CASE("single feasible frame") {
    DependencyDag dag = make_dag("I", {}, {3}, {2}, {7000});
    OracleResult r = brute_force(dag, LinkConfig{1});
    CHECK(r.reward == 7000);
    CHECK(r.best_sequence == std::vector<FrameId>{0});
}

TEST_CASE("two-frame chain cross-checked by hand") {
    DependencyDag dag = make_dag("IP", {{0, 1}}, {1, 2}, {1, 1}, {5000, 3000});
    OracleResult r = brute_force(dag, LinkConfig{1});
    CHECK(r.reward == 8000);
}

TEST_CASE("caps are enforced") {
    DependencyDag big = build_dyadic(16, 3, 1);
    CHECK_THROWS_AS(brute_force(big, LinkConfig{1}), LimitError);

    DependencyDag late = make_dag("I", {}, {100}, {1}, {1000});
    CHECK_THROWS_AS(brute_force(late, LinkConfig{1}), LimitError);
    CHECK_NOTHROW(brute_force(late, LinkConfig{1}, OracleLimits{9, 200, true}));
}

TEST_CASE("pruned search equals the unrestricted search") {
    Rng rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        DependencyDag skeleton =
            trial % 2 ? build_dyadic(4, 1, 1) : build_dyadic_sequence({4, 1}, 5);
        DependencyDag dag = test::random_small_instance(rng, skeleton);
        if (trial % 3 == 0) dag = strip_backward_edges(dag);
        LinkConfig link{rng.uniform(1, 5)};
        OracleLimits pruned{9, 24, true};
        OracleLimits full{9, 24, false};
        CHECK(brute_force(dag, link, pruned).reward == brute_force(dag, link, full).reward);
    }
}

TEST_CASE("idling before the start never helps") {
    Rng rng(555);
    for (int trial = 0; trial < 30; ++trial) {
        DependencyDag dag = test::random_small_instance(rng, build_dyadic(4, 1, 2));
        LinkConfig link{rng.uniform(1, 4)};
        const Quality base = brute_force(dag, link).reward;
        for (Slot idle = 1; idle <= 3; ++idle)
            CHECK(brute_force(dag, link, {}, idle).reward <= base);
    }
}

TEST_CASE("canonicalizing the argmax preserves its reward") {
    Rng rng(808);
    for (int trial = 0; trial < 40; ++trial) {
        DependencyDag dag = test::random_small_instance(
            rng, trial % 2 ? build_dyadic(4, 1, 2) : build_dyadic(8, 1, 1));
        LinkConfig link{rng.uniform(1, 5)};
        OracleResult r = brute_force(dag, link);
        PreparedInstance prep(dag);
        TransmissionSequence canon = canonical_form(
            dag, prep.universal,
            std::set<FrameId>(r.best_sequence.begin(), r.best_sequence.end()));
        CHECK(simulate(canon, dag, link).reward == r.reward);
        CHECK(is_subsequence(canon.order, prep.universal.order));
    }
}
