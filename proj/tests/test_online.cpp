#include <doctest.h>

#include <cmath>

#include "fairsplit/online_balancer.hpp"

using namespace fairsplit;

namespace {

ConsensusInstance uniform_n(size_t n) {
    std::vector<StepMeasure> ms;
    for (size_t i = 0; i < n; ++i) ms.push_back(StepMeasure::uniform());
    return make_instance(std::move(ms));
}

}  // namespace

TEST_CASE("psi_total at the start state") {
    // k=2, n=16, eps=1/2: lambda=32, g=1/128, lambda^2 g/2 = 4, psi(0)=16 e^4
    BalancerState st(BalancerParams::halving(16, rat(1, 2)));
    CHECK(st.params.lambda == doctest::Approx(32.0));
    CHECK(st.params.g == rat(1, 512) * 4);  // eps^2/(8*4) = 1/128
    CHECK(psi_total(st) == doctest::Approx(16.0 * std::exp(4.0)));
    // n e^{lambda^2 g / 2} < e^{lambda eps} / 2
    CHECK(psi_total(st) < std::exp(32.0 * 0.5) / 2.0);

    // single measure fully allocated evenly: psi = 1
    BalancerState st1(BalancerParams::halving(1, rat(1, 2)));
    st1.apply({rat(1, 2)}, 0);
    st1.apply({rat(1, 2)}, 1);
    CHECK(psi_total(st1) == doctest::Approx(1.0));
}

TEST_CASE("decide_cut lazy rule") {
    BalancerState st(BalancerParams::halving(2, rat(1, 2)));
    Rat g = st.params.g;
    std::vector<Rat> zero{rat(0), rat(0)};
    CHECK_FALSE(decide_cut(st, zero, {g, g}));
    CHECK(decide_cut(st, zero, {g + rat(1, 1000000), rat(0)}));
    CHECK_FALSE(decide_cut(st, zero, zero));
}

TEST_CASE("choose_assignee prefers the trailing side") {
    BalancerState st(BalancerParams::halving(1, rat(1, 2)));
    // symmetric state: tie breaks to agent 0
    CHECK(choose_assignee(st, {rat(1, 100)}) == 0);
    // agent 0 ahead on the sole measure: interval goes to agent 1
    st.apply({rat(1, 100)}, 0);
    CHECK(choose_assignee(st, {rat(1, 100)}) == 1);

    // k=3: two agents tied ahead, the trailing agent gets it
    BalancerState st3(BalancerParams::splitting(1, 3, rat(1, 2)));
    st3.apply({rat(1, 100)}, 0);
    st3.apply({rat(1, 100)}, 1);
    CHECK(choose_assignee(st3, {rat(1, 100)}) == 2);
}

TEST_CASE("k-agent cosh inequality on a grid") {
    // (k-2)/k + (2/k) cosh(x) <= e^{2x^2/k} for 0 <= x <= 1
    for (int k : {3, 4, 8, 16}) {
        for (int step = 0; step <= 20; ++step) {
            double x = step / 20.0;
            double lhs = 1.0 + (2.0 / k) * (std::cosh(x) - 1.0);
            double rhs = std::exp(2.0 * x * x / k);
            CHECK(lhs <= rhs * (1 + 1e-12));
        }
    }
}

TEST_CASE("run_online_halving on a tiny explicit stream") {
    // n=1 uniform with 512 candidates; eps=1/2: cap=1/400, g=1/32
    const long M = 512;
    std::vector<Rat> cands;
    std::vector<std::vector<Rat>> masses(1);
    for (long j = 0; j <= M; ++j) cands.push_back(rat(j, M));
    for (long j = 0; j < M; ++j) masses[0].push_back(rat(1, M));
    OnlineStream s = make_explicit_stream(uniform_n(1), cands, masses, rat(1, 2), 2);
    OnlineRunResult r = run_online_halving(s, rat(1, 2));
    CHECK(r.stats.psi_monotone);
    CHECK(r.stats.interval_masses_ok);
    CHECK(r.stats.state_bounds_ok);
    CHECK(r.stats.final_discrepancy <= rat(1, 2));
    // cuts <= 16 n log2(n->1 clamped) / eps^2 = 16*1*1/(1/4) = 64
    CHECK(r.stats.cuts <= 64);
    CHECK(validate_proper_consensus(s.base, r.allocation, rat(1, 2), 2).pass);
}

TEST_CASE("gridded and explicit runners agree") {
    StepMeasure front({rat(0), rat(1, 2), rat(1)}, {rat(3, 2), rat(1, 2)});
    StepMeasure back({rat(0), rat(1, 4), rat(1)}, {rat(1, 2), rat(7, 6)});
    ConsensusInstance inst = make_instance({front, back});
    const uint64_t M = 4096;
    OnlineStream gridded = make_gridded_stream(inst, M, rat(1, 2), 2);

    std::vector<Rat> cands;
    for (uint64_t j = 0; j <= M; ++j) cands.push_back(rat(j, M));
    std::vector<std::vector<Rat>> masses(2);
    for (size_t i = 0; i < 2; ++i)
        for (uint64_t j = 0; j < M; ++j)
            masses[i].push_back(inst.measures[i].mass(rat(j, M), rat(j + 1, M)));
    OnlineStream explicit_form = make_explicit_stream(inst, cands, masses, rat(1, 2), 2);

    OnlineRunResult a = run_online_halving(gridded, rat(1, 2));
    OnlineRunResult b = run_online_halving(explicit_form, rat(1, 2));
    CHECK(a.stats.cuts == b.stats.cuts);
    CHECK(a.allocation.cuts.points == b.allocation.cuts.points);
    CHECK(a.allocation.assignees == b.allocation.assignees);
    CHECK(a.allocation.shares == b.allocation.shares);
}

TEST_CASE("run_online_splitting k=4") {
    const uint64_t M = 1 << 14;
    OnlineStream s = make_gridded_stream(uniform_n(2), M, rat(1, 2), 4);
    OnlineRunResult r = run_online_splitting(s, rat(1, 2), 4);
    CHECK(r.stats.psi_monotone);
    CHECK(r.stats.final_discrepancy <= rat(1, 8));  // eps/k
    CHECK(validate_proper_consensus(s.base, r.allocation, rat(1, 2), 4).pass);
}

TEST_CASE("cap violations are rejected") {
    std::vector<Rat> cands{rat(0), rat(1, 2), rat(1)};
    std::vector<std::vector<Rat>> masses{{rat(1, 2), rat(1, 2)}};
    OnlineStream s = make_explicit_stream(uniform_n(1), cands, masses, rat(1, 2), 2);
    CHECK_THROWS_AS(run_online_halving(s, rat(1, 2)), std::invalid_argument);
}
