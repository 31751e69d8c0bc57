#include <doctest.h>

#include "fairsplit/adversary.hpp"

using namespace fairsplit;

TEST_CASE("potential_M") {
    CHECK(potential_M(rat(0), rat(0), rat(1, 10)) == 0);
    // M(2e, -2e, e) = 28 e^2, the boundary of the feasible box
    Rat e = rat(1, 10);
    CHECK(potential_M(2 * e, Rat(-2 * e), e) == 28 * e * e);
    // proportional increments gain at least alpha^2/2
    Rat x = rat(1, 50), y = rat(-1, 100);
    Rat p1 = (10 * e - 4 * y) / 100, p2 = (10 * e + 4 * x) / 100;
    Rat alpha = p1 + p2;
    Rat up = potential_M(x + p1, y + p2, e) - potential_M(x, y, e);
    Rat down = potential_M(x - p1, Rat(y - p2), e) - potential_M(x, y, e);
    CHECK(up >= alpha * alpha / 2);
    CHECK(down >= alpha * alpha / 2);
}

TEST_CASE("balanced_binary_sequence") {
    CHECK(balanced_binary_sequence(rat(0), 5) == std::vector<int>{0, 0, 0, 0, 0});
    CHECK(balanced_binary_sequence(rat(1, 2), 6) == std::vector<int>{1, 0, 1, 0, 1, 0});
    CHECK(balanced_binary_sequence(rat(1, 3), 6) == std::vector<int>{1, 0, 0, 1, 0, 0});
    // prefix deviation < 1 exactly
    for (auto g : {rat(3, 7), rat(13, 64), rat(99, 100)}) {
        auto seq = balanced_binary_sequence(g, 500);
        long ones = 0;
        for (size_t j = 1; j <= seq.size(); ++j) {
            ones += seq[j - 1];
            CHECK(rat_abs(Rat(Rat(ones) - g * static_cast<long>(j))) < 1);
        }
    }
}

TEST_CASE("punishment tail and its inequality") {
    Rat eps = rat(1, 10);
    auto gaps = punishment_tail(rat(1, 2), Rat(2 * eps), eps, rat(1, 2), rat(1, 1000));
    Rat len(0), m0(0), m1(0);
    for (const auto& g : gaps) {
        len += g.length;
        m0 += g.masses[0];
        m1 += g.masses[1];
        CHECK(g.masses[0] <= rat(1, 1000));
        CHECK(g.masses[1] <= rat(1, 1000));
    }
    CHECK(len == rat(1, 2));
    CHECK(m0 == rat(1, 2));
    CHECK(m1 == 1);

    CHECK_THROWS_AS(punishment_tail(rat(1, 2), rat(0), eps, rat(1, 2), rat(1, 1000)),
                    std::domain_error);

    // exhaustive: no cut/sign pattern beats the punishment
    CHECK(punishment_unbeatable(Rat(2 * eps), eps, rat(9, 10), 12, 10));
    CHECK(punishment_unbeatable(Rat(-2 * eps), eps, rat(1, 2), 12, 10));
}

TEST_CASE("necklace punishment needs many intervals") {
    // m = 64, Delta = 8: a proper completion needs more than Delta/4 intervals
    long m = 64, delta = 8;
    long alpha = 40;
    Rat gamma = rat(m, alpha + m);
    auto bits = balanced_binary_sequence(gamma, alpha + m);
    std::vector<int> tail(bits.begin(), bits.end());
    CHECK(necklace_tail_needs_intervals(tail, delta, alpha, m, delta / 4));
}

TEST_CASE("consensus n2 adversary basics") {
    Rat eps = rat(1, 20);
    ConsensusAdversaryN2 adv(eps);
    // a balancer cutting every eps of length stays unpunished and pays many cuts
    IntervalStreamBalancer balancer(eps);
    auto result = run_consensus_game(adv, balancer, 2);
    CHECK_FALSE(result.transcript.aborted);
    CHECK_FALSE(adv.punished());
    CHECK(result.transcript.cut_count >= 5);  // floor(1/(4 eps))

    // a balancer waiting longer than 4 eps gets punished and loses
    ConsensusAdversaryN2 adv2(eps);
    IntervalStreamBalancer lazy(Rat(5 * eps));
    auto result2 = run_consensus_game(adv2, lazy, 2);
    CHECK_FALSE(result2.transcript.aborted);
    CHECK(adv2.punished());
    CHECK_FALSE(result2.validation.pass);
}

TEST_CASE("consensus n3 adversary gamma and certification") {
    Rat eps = rat(1, 10);
    ConsensusAdversaryN3 adv(eps);
    CHECK(adv.gamma() == rat(1, 2));  // symmetric start

    PotentialStreamBalancer balancer;
    auto result = run_consensus_game(adv, balancer, 2);
    CHECK_FALSE(result.transcript.aborted);
    CHECK_FALSE(adv.punished());
    CHECK(result.validation.pass);
    // r >= 1/(56 eps^2) cuts inside the feasible prefix
    CHECK(result.transcript.prefix_cut_count >= 2);
    auto cert = certify_m_growth_consensus(result.transcript, eps);
    CHECK(cert.ok);
    CHECK(cert.checked_cuts > 0);
}

TEST_CASE("gamma stays positive over the state box") {
    Rat eps = rat(1, 10);
    for (int xi = -19; xi <= 19; ++xi) {
        for (int yi = -19; yi <= 19; ++yi) {
            // |x|,|y| < 2 eps sampled on a grid
            Rat x = Rat(xi) * eps / 10;
            Rat y = Rat(yi) * eps / 10;
            Rat num = 10 * eps - 4 * y;
            Rat den = 20 * eps + 4 * (x - y);
            CHECK(num > 0);
            CHECK(den > 0);
            CHECK(num < den + 4 * (10 * eps));  // gamma < 1 iff 10 eps + 4x > 0
        }
    }
}

TEST_CASE("necklace n2 adversary") {
    long m = 256;
    NecklaceAdversaryN2 adv(m);
    PotentialNecklaceBalancer balancer;
    auto result = run_necklace_game(adv, balancer, 2);
    CHECK_FALSE(result.transcript.aborted);
    CHECK(result.transcript.cut_count >= 8);  // sqrt(m)/2
    CHECK(result.validation.pass);

    // an alternating balancer keeping |x| below sqrt(m) escapes punishment
    // and still pays at least sqrt(m)/2 cuts
    NecklaceAdversaryN2 adv2(m);
    StrideNecklaceBalancer stride(15);
    auto result2 = run_necklace_game(adv2, stride, 2);
    CHECK_FALSE(result2.transcript.aborted);
    CHECK_FALSE(adv2.punished());
    CHECK(result2.transcript.cut_count >= 8);

    // waiting 2 sqrt(m) beads pushes the discrepancy to Delta and triggers
    // the balanced-sequence tail
    NecklaceAdversaryN2 adv3(m);
    StrideNecklaceBalancer lazy(32);
    auto result3 = run_necklace_game(adv3, lazy, 2);
    CHECK_FALSE(result3.transcript.aborted);
    CHECK(adv3.punished());
}

TEST_CASE("necklace n3 adversary block plan and game") {
    long m = 512;
    NecklaceAdversaryN3 adv(m);
    CHECK(adv.gamma() == rat(1, 2));
    // prefix deviation of a planned block: both colors within 2 of gamma j
    auto plan = adv.plan_block(400);
    long c0 = 0;
    for (size_t j = 1; j <= plan.size(); ++j) {
        c0 += plan[j - 1] == 0 ? 1 : 0;
        Rat dev = rat_abs(Rat(Rat(c0) - adv.gamma() * static_cast<long>(j)));
        CHECK(dev < 2);
    }

    PotentialNecklaceBalancer balancer;
    auto result = run_necklace_game(adv, balancer, 2);
    CHECK_FALSE(result.transcript.aborted);
    CHECK(result.validation.pass);
    CHECK(adv.exhausted_cleanly());
    auto cert = certify_m_growth_necklace(result.transcript, adv.scale());
    CHECK(cert.ok);
}

TEST_CASE("replay adversaries and protocol checks") {
    NecklaceInstance neck = make_necklace({0, 1, 0, 1, 0, 1}, 2);
    ReplayNecklaceAdversary adv(neck);
    PotentialNecklaceBalancer balancer;
    auto result = run_necklace_game(adv, balancer, 2);
    CHECK_FALSE(result.transcript.aborted);
    CHECK(result.validation.pass);
    CHECK(result.necklace.beads == neck.beads);

    // a never-cutting balancer ends with everything on one side
    ConsensusAdversaryN2 adv2(rat(1, 20));
    SilentStreamBalancer silent;
    auto result2 = run_consensus_game(adv2, silent, 2);
    CHECK_FALSE(result2.transcript.aborted);
    CHECK(result2.transcript.cut_count == 0);
    CHECK_FALSE(result2.validation.pass);
}
