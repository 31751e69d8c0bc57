#include <doctest.h>

#include "fairsplit/type1.hpp"

using namespace fairsplit;

namespace {

ConsensusInstance split_pair() {
    // mu1: density 2 on [0,1/2]; mu2: density 2 on [1/2,1]
    StepMeasure m1({rat(0), rat(1, 2), rat(1)}, {rat(2), rat(0)});
    StepMeasure m2({rat(0), rat(1, 2), rat(1)}, {rat(0), rat(2)});
    return make_instance({m1, m2});
}

}  // namespace

TEST_CASE("mark_phase on uniform and hand-traced instances") {
    ConsensusInstance uni = make_instance({StepMeasure::uniform()});
    MarkResult r = mark_phase(uni, 2);
    REQUIRE(r.intervals.size() == 2);
    CHECK(r.intervals[0].right == rat(1, 2));
    CHECK(r.intervals[1].right == rat(1));
    CHECK(r.intervals[0].label == 0);
    CHECK(r.intervals[1].label == 0);

    MarkResult r2 = mark_phase(split_pair(), 2);
    REQUIRE(r2.intervals.size() == 4);
    CHECK(r2.intervals[0].right == rat(1, 8));
    CHECK(r2.intervals[1].right == rat(1, 4));
    CHECK(r2.intervals[2].right == rat(5, 8));
    CHECK(r2.intervals[3].right == rat(3, 4));
    CHECK(r2.intervals[0].label == 0);
    CHECK(r2.intervals[1].label == 0);
    CHECK(r2.intervals[2].label == 1);
    CHECK(r2.intervals[3].label == 1);

    MarkResult r3 = mark_phase(uni, 1);
    REQUIRE(r3.intervals.size() == 1);
    CHECK(r3.intervals[0].right == rat(1));
    CHECK(r3.intervals[0].label == 0);
}

TEST_CASE("mark_phase label counts") {
    ConsensusInstance inst = split_pair();
    for (int k : {1, 2, 3, 5}) {
        MarkResult r = mark_phase(inst, k);
        CHECK(r.intervals.size() == static_cast<size_t>(2 * k));
        int c0 = 0, c1 = 0;
        for (auto& mi : r.intervals) (mi.label == 0 ? c0 : c1)++;
        CHECK(c0 == k);
        CHECK(c1 == k);
        CHECK(r.oracle_calls <= 2 * 2 * k * 2);
    }
}

TEST_CASE("split_uniform_necklace traces") {
    // labels (1,2,1,2): cuts before positions 3 and 4 (1-based)
    UniformSplit s = split_uniform_necklace({0, 1, 0, 1}, 2);
    CHECK(s.cut_positions == std::vector<size_t>{2, 3});
    CHECK(s.assignees == std::vector<int>{0, 1, 1});

    // labels (1,1,2,2): cuts before positions 2 and 4
    UniformSplit s2 = split_uniform_necklace({0, 0, 1, 1}, 2);
    CHECK(s2.cut_positions == std::vector<size_t>{1, 3});
    CHECK(s2.assignees == std::vector<int>{0, 1, 0});

    // k = 1: no cuts, agent 1 takes all
    UniformSplit s3 = split_uniform_necklace({0, 1, 2}, 1);
    CHECK(s3.cut_positions.empty());
    CHECK(s3.assignees == std::vector<int>{0});

    CHECK_THROWS_AS(split_uniform_necklace({0, 0, 1}, 2), std::invalid_argument);
}

TEST_CASE("split_uniform_necklace cut bound and one bead each") {
    // deterministic pseudo-random label sequences with exactly k of each color
    for (int n : {1, 3, 6}) {
        for (int k : {1, 2, 4}) {
            std::vector<size_t> labels;
            for (int c = 0; c < n; ++c)
                for (int j = 0; j < k; ++j) labels.push_back(c);
            // a fixed shuffle pattern
            for (size_t i = 0, j = labels.size() - 1; i < j; i += 2, j -= 1)
                std::swap(labels[i], labels[j]);
            UniformSplit s = split_uniform_necklace(labels, k);
            CHECK(s.cut_positions.size() <= static_cast<size_t>(n * (k - 1)));
            if (k >= 2) CHECK(s.cut_positions.size() == static_cast<size_t>(n * (k - 1)));
            // each agent one bead of each color
            std::vector<std::vector<int>> counts(k, std::vector<int>(n, 0));
            size_t start = 0;
            for (size_t piece = 0; piece < s.assignees.size(); ++piece) {
                size_t end = piece < s.cut_positions.size() ? s.cut_positions[piece]
                                                            : labels.size();
                for (size_t t = start; t < end; ++t) ++counts[s.assignees[piece]][labels[t]];
                start = end;
            }
            for (int a = 0; a < k; ++a)
                for (int c = 0; c < n; ++c) CHECK(counts[a][c] == 1);
        }
    }
}

TEST_CASE("type1_solve guarantees") {
    ConsensusInstance uni = make_instance({StepMeasure::uniform()});
    Type1Result r = type1_solve(uni, 2);
    CHECK(r.allocation.cuts.points == std::vector<Rat>{rat(1, 2)});
    CHECK(r.allocation.shares[0][0] == rat(1, 2));
    CHECK(r.allocation.shares[1][0] == rat(1, 2));

    Type1Result r2 = type1_solve(split_pair(), 2);
    CHECK(r2.allocation.cuts.points == std::vector<Rat>{rat(1, 8), rat(5, 8)});
    for (int a = 0; a < 2; ++a)
        for (size_t i = 0; i < 2; ++i) CHECK(r2.allocation.shares[a][i] >= rat(1, 4));

    Type1Result r3 = type1_solve(split_pair(), 1);
    CHECK(r3.allocation.cuts.size() == 0);
    CHECK(r3.allocation.shares[0][0] == 1);
    CHECK(r3.allocation.shares[0][1] == 1);
}
