#include <doctest.h>

#include "ocgr/recognition.hpp"
#include "ocgr/search.hpp"
#include "support/fixtures.hpp"

#include <set>

using namespace ocgr;

TEST_CASE("noisy corridor example: eps 0 points at the wrong goal") {
    fixtures::CorridorFixture fx = fixtures::corridor_fixture();
    std::vector<PartialState> hyps = {fx.goal_a, fx.goal_b};
    ObservationSequence omega(fx.noisy_observations);

    for (HeuristicKind kind : {HeuristicKind::Base, HeuristicKind::Improved}) {
        for (SolveMode mode : {SolveMode::LP, SolveMode::IP}) {
            RecognitionResult result =
                recognize(fx.task, hyps, omega, NoiseSpec(), kind, mode);
            CHECK(result.per_goal[0].h_omega == doctest::Approx(13.0));
            CHECK(result.per_goal[1].h_omega == doctest::Approx(11.0));
            CHECK(result.per_goal[0].h == doctest::Approx(3.0));
            CHECK(result.per_goal[1].h == doctest::Approx(3.0));
            CHECK(result.delta_min == doctest::Approx(8.0));
            CHECK(result.solution == std::vector<int>{1});
        }
    }
}

TEST_CASE("noise filter flips the decision on the two-route example") {
    fixtures::TwoRouteFixture fx = fixtures::two_route_fixture();
    std::vector<PartialState> hyps = {fx.goal_a, fx.goal_b};

    // The detour observations plus one noisy label (8 observations).
    std::vector<std::string> labels = fx.detour_plan.steps;
    labels.insert(labels.begin() + 3, fx.noise_label);
    ObservationSequence omega(labels);

    for (HeuristicKind kind : {HeuristicKind::Base, HeuristicKind::Improved}) {
        for (SolveMode mode : {SolveMode::LP, SolveMode::IP}) {
            RecognitionResult result =
                recognize(fx.task, hyps, omega, NoiseSpec(1, 5), kind, mode);
            CHECK(result.per_goal[0].h_omega == doctest::Approx(7.0));
            CHECK(result.per_goal[1].h_omega == doctest::Approx(9.0));
            CHECK(result.delta_min == doctest::Approx(4.0));
            CHECK(result.solution == std::vector<int>{0});
        }
    }
}

TEST_CASE("empty observations keep all reachable hypotheses at delta 0") {
    fixtures::TwoRouteFixture fx = fixtures::two_route_fixture();
    std::vector<PartialState> hyps = {fx.goal_a, fx.goal_b};
    RecognitionResult result = recognize(fx.task, hyps, ObservationSequence{},
                                         NoiseSpec(), HeuristicKind::Base);
    CHECK(result.delta_min == doctest::Approx(0.0));
    CHECK(result.solution == std::vector<int>{0, 1});
}

TEST_CASE("recognize rejects empty hypothesis lists and all-infeasible") {
    fixtures::TwoRouteFixture fx = fixtures::two_route_fixture();
    CHECK_THROWS_AS(recognize(fx.task, {}, ObservationSequence{}, NoiseSpec(),
                              HeuristicKind::Base),
                    Error);

    Task task;
    task.name = "boxed";
    task.variables.push_back(fixtures::make_var("v", {"x0", "x1", "x2"}));
    task.operators.push_back(fixtures::make_op("go", {{0, 0}}, {{0, 1}}));
    task.initial_state = {0};
    task.validate();
    std::vector<PartialState> unreachable = {PartialState({{0, 2}})};
    CHECK_THROWS_AS(recognize(task, unreachable, ObservationSequence{},
                              NoiseSpec(), HeuristicKind::Base),
                    Error);
}

TEST_CASE("recognize is deterministic") {
    fixtures::CorridorFixture fx = fixtures::corridor_fixture();
    std::vector<PartialState> hyps = {fx.goal_a, fx.goal_b};
    ObservationSequence omega(fx.noisy_observations);
    RecognitionResult a =
        recognize(fx.task, hyps, omega, NoiseSpec(), HeuristicKind::Improved);
    RecognitionResult b =
        recognize(fx.task, hyps, omega, NoiseSpec(), HeuristicKind::Improved);
    CHECK(a.delta_min == b.delta_min);
    CHECK(a.solution == b.solution);
    for (std::size_t i = 0; i < hyps.size(); ++i) {
        CHECK(a.per_goal[i].h_omega == b.per_goal[i].h_omega);
        CHECK(a.per_goal[i].h == b.per_goal[i].h);
        CHECK(a.per_goal[i].rows == b.per_goal[i].rows);
    }
}

TEST_CASE("agreement ratio") {
    std::set<int> a = {1, 2};
    std::set<int> b = {1, 2};
    CHECK(agreement_ratio(a, b) == doctest::Approx(1.0));
    CHECK(agreement_ratio(a, std::set<int>{3}) == doctest::Approx(0.0));
    CHECK(agreement_ratio(std::set<int>{1}, std::set<int>{1, 2}) ==
          doctest::Approx(0.5));
    CHECK(agreement_ratio(std::set<int>{}, std::set<int>{}) ==
          doctest::Approx(1.0));
}

TEST_CASE("hypothesis lines parse and print") {
    fixtures::TwoRouteFixture fx = fixtures::two_route_fixture();
    PartialState parsed = parse_hypothesis(fx.task, "pos=a, key=yes");
    CHECK(parsed.atoms().size() == 2);
    CHECK(hypothesis_to_string(fx.task, parsed) == "pos=a,key=yes");
    CHECK(parse_hypothesis(fx.task, "true").empty());
    CHECK_THROWS_AS(parse_hypothesis(fx.task, "pos=nowhere"), Error);
    CHECK_THROWS_AS(parse_hypothesis(fx.task, "bogus"), Error);

    std::vector<std::string> lines;
    std::vector<PartialState> hyps = parse_hypotheses(
        fx.task, "; goals\npos=a\npos=b\n\n", &lines);
    REQUIRE(hyps.size() == 2);
    CHECK(lines[0] == "pos=a");
    CHECK(hyps[0] == fx.goal_a);
    CHECK(hyps[1] == fx.goal_b);
}

TEST_CASE("IP mode compares deltas exactly") {
    fixtures::TwoRouteFixture fx = fixtures::two_route_fixture();
    std::vector<PartialState> hyps = {fx.goal_a, fx.goal_b};
    ObservationSequence omega(fx.detour_plan.steps);
    RecognitionResult result = recognize(fx.task, hyps, omega, NoiseSpec(),
                                         HeuristicKind::Improved, SolveMode::IP);
    // goal_a: 7 - 3 = 4; goal_b: 9 - 2 = 7.
    CHECK(result.delta_min == doctest::Approx(4.0));
    CHECK(result.solution == std::vector<int>{0});
}
