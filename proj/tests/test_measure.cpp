#include <doctest.h>

#include "fairsplit/json_io.hpp"
#include "fairsplit/measure.hpp"
#include "fairsplit/necklace.hpp"
#include "fairsplit/stream.hpp"

using namespace fairsplit;

namespace {

StepMeasure front_loaded() {
    // density 2 on [0,1/2], 0 after
    return StepMeasure({rat(0), rat(1, 2), rat(1)}, {rat(2), rat(0)});
}

ConsensusInstance two_uniform() {
    return make_instance({StepMeasure::uniform(), StepMeasure::uniform()});
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(rat_parse("3/6") == rat(1, 2));
    CHECK(rat_parse("0.05") == rat(1, 20));
    CHECK(rat_parse("-1/4") == rat(-1, 4));
    CHECK(rat_parse("7") == rat(7));
    CHECK(rat_str(rat(1, 2)) == "1/2");
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("x"), std::invalid_argument);
}

TEST_CASE("log2 helpers") {
    CHECK(log2_lower(4) == rat(2));
    CHECK(log2_lower(64) == rat(6));
    CHECK(log_term(1) == rat(1));
    CHECK(log_term(2) == rat(1));
    // dyadic lower bound for non-powers of two
    Rat l3 = log2_lower(3);
    CHECK(rat_double(l3) < 1.5849625007211562);
    CHECK(rat_double(l3) > 1.5849);
    CHECK(ceil_log2(rat(1)) == 0);
    CHECK(ceil_log2(rat(3)) == 2);
    CHECK(ceil_log2(rat(64)) == 6);
    CHECK(ceil_log2(rat(3, 2)) == 1);
}

TEST_CASE("measure_of_interval") {
    StepMeasure u = StepMeasure::uniform();
    CHECK(measure_of_interval(u, rat(1, 5), rat(7, 10)) == rat(1, 2));
    CHECK(measure_of_interval(front_loaded(), rat(0), rat(1, 4)) == rat(1, 2));
    CHECK(measure_of_interval(u, rat(1, 3), rat(1, 3)) == rat(0));
    CHECK(measure_of_interval(u, rat(0), rat(1)) == rat(1));
    CHECK(measure_of_interval(front_loaded(), rat(0), rat(1)) == rat(1));
    CHECK_THROWS_AS(measure_of_interval(u, rat(-1, 2), rat(1, 2)), std::domain_error);
}

TEST_CASE("step measure invariants rejected") {
    CHECK_THROWS_AS(StepMeasure({rat(0), rat(1)}, {rat(2)}), std::invalid_argument);
    CHECK_THROWS_AS(StepMeasure({rat(0), rat(1, 2)}, {rat(2)}), std::invalid_argument);
    CHECK_THROWS_AS(StepMeasure({rat(0), rat(0), rat(1)}, {rat(1), rat(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(StepMeasure({rat(0), rat(1, 2), rat(1)}, {rat(4), rat(-2)}),
                    std::invalid_argument);
}

TEST_CASE("oracle_point") {
    ConsensusInstance inst = make_instance({StepMeasure::uniform(), front_loaded()});
    CHECK(oracle_point(inst, rat(0), 0, rat(1, 4)) == rat(1, 4));
    CHECK(oracle_point(inst, rat(9, 10), 0, rat(1, 5)) == rat(1));
    CHECK(oracle_point(inst, rat(0), 1, rat(1)) == rat(1, 2));
    CHECK(oracle_point(inst, rat(1, 4), 0, rat(0)) == rat(1, 4));
    CHECK_THROWS_AS(oracle_point(inst, rat(0), 5, rat(1, 4)), std::domain_error);

    // exactness: y < 1 implies the interval carries exactly delta
    Rat y = oracle_point(inst, rat(1, 8), 1, rat(1, 3));
    CHECK(measure_of_interval(inst.measures[1], rat(1, 8), y) == rat(1, 3));

    // monotone in delta
    Rat y1 = oracle_point(inst, rat(0), 1, rat(1, 4));
    Rat y2 = oracle_point(inst, rat(0), 1, rat(1, 2));
    CHECK(y1 <= y2);
}

TEST_CASE("oracle_sum_point") {
    ConsensusInstance inst = two_uniform();
    CHECK(oracle_sum_point(inst, rat(0), rat(1)) == rat(1, 2));
    CHECK(oracle_sum_point(inst, rat(0), rat(2)) == rat(1));
    CHECK(oracle_sum_point(inst, rat(1, 3), rat(0)) == rat(1, 3));
}

TEST_CASE("necklace_to_consensus") {
    NecklaceInstance neck = make_necklace({0, 1, 0}, 2);
    NecklaceEmbedding emb = necklace_to_consensus(neck);
    REQUIRE(emb.instance.n() == 2);
    auto& mu1 = emb.instance.measures[0];
    auto& mu2 = emb.instance.measures[1];
    CHECK(mu1.mass(rat(0), rat(1, 3)) == rat(1, 2));
    CHECK(mu1.mass(rat(1, 3), rat(2, 3)) == rat(0));
    CHECK(mu1.mass(rat(2, 3), rat(1)) == rat(1, 2));
    CHECK(mu2.mass(rat(1, 3), rat(2, 3)) == rat(1));
    CHECK(mu1.mass(rat(0), rat(1)) == rat(1));
    CHECK(mu2.mass(rat(0), rat(1)) == rat(1));
    CHECK(emb.boundary_index(rat(2, 3)) == 2);
    CHECK(emb.boundary_index(rat(1, 2)) == -1);
    CHECK(emb.bead_at(rat(1, 2)) == 1);

    NecklaceInstance single = make_necklace({0}, 1);
    auto emb1 = necklace_to_consensus(single);
    CHECK(emb1.instance.measures[0].mass(rat(0), rat(1)) == rat(1));

    NecklaceInstance pair = make_necklace({0, 0}, 1);
    auto emb2 = necklace_to_consensus(pair);
    CHECK(emb2.instance.measures[0].mass(rat(0), rat(1, 2)) == rat(1, 2));
    CHECK(emb2.instance.measures[0].mass(rat(1, 2), rat(1)) == rat(1, 2));
}

TEST_CASE("validate_stream_caps") {
    // n = 4, k = 2, eps = 1/2: cap = (1/4)/(100*2) = 1/800
    std::vector<StepMeasure> ms;
    for (int i = 0; i < 4; ++i) ms.push_back(StepMeasure::uniform());
    ConsensusInstance inst = make_instance(std::move(ms));
    OnlineStream s = make_gridded_stream(std::move(inst), 1024, rat(1, 2), 2);
    CapReport rep = validate_stream_caps(s, rat(1, 2));
    CHECK(rep.cap == rat(1, 800));
    CHECK(rep.pass);

    // a gap carrying a whole measure fails
    std::vector<Rat> cands{rat(0), rat(1, 2), rat(1)};
    std::vector<std::vector<Rat>> masses{{rat(1), rat(0)}};
    OnlineStream bad = make_explicit_stream(make_instance({StepMeasure::uniform()}), cands,
                                            masses, rat(1, 2), 2);
    CapReport rep2 = validate_stream_caps(bad, rat(1, 2));
    CHECK_FALSE(rep2.pass);
    CHECK(rep2.violations.front().kind == CapViolation::GapOverCap);
    CHECK(rep2.violations.front().gap == 0);

    // masses failing to sum to 1 are reported
    std::vector<std::vector<Rat>> short_mass{{rat(1, 800), rat(1, 800)}};
    OnlineStream bad2 = make_explicit_stream(make_instance({StepMeasure::uniform()}), cands,
                                             short_mass, rat(1, 2), 2);
    CapReport rep3 = validate_stream_caps(bad2, rat(1, 2));
    CHECK_FALSE(rep3.pass);
    bool sum_violation = false;
    for (const auto& v : rep3.violations)
        if (v.kind == CapViolation::MassSumNotOne) sum_violation = true;
    CHECK(sum_violation);
}

TEST_CASE("instance json round trip") {
    ConsensusInstance inst = make_instance({front_loaded(), StepMeasure::uniform()});
    Json j = to_json(inst);
    ConsensusInstance back = consensus_from_json(j);
    CHECK(back.n() == 2);
    CHECK(back.measures[0].mass(rat(0), rat(1, 4)) == rat(1, 2));

    NecklaceInstance neck = make_necklace({0, 1, 0, 1}, 2);
    Json nj = to_json(neck);
    CHECK(nj["beads"][0] == 1);
    NecklaceInstance nb = necklace_from_json(nj);
    CHECK(nb.beads == neck.beads);
    CHECK(instance_kind(nj) == InstanceKind::Necklace);
}
