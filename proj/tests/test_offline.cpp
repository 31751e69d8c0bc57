#include <doctest.h>

#include "fairsplit/offline_splitter.hpp"

using namespace fairsplit;

namespace {

ConsensusInstance uniform_n(size_t n) {
    std::vector<StepMeasure> ms;
    for (size_t i = 0; i < n; ++i) ms.push_back(StepMeasure::uniform());
    return make_instance(std::move(ms));
}

SystemPiece piece_1d(const Rat& mass, const Rat& coeff) {
    SystemPiece p;
    p.spans = {{rat(0), rat(1)}};
    p.masses = {mass};
    p.sum_mass = mass;
    p.coeff = coeff;
    return p;
}

bool shares_within(const Allocation& alloc, const Rat& lo, const Rat& hi) {
    for (const auto& row : alloc.shares)
        for (const auto& s : row)
            if (s < lo || s > hi) return false;
    return true;
}

}  // namespace

TEST_CASE("equal_sum_partition") {
    ConsensusInstance one = uniform_n(1);
    CutSet c1 = equal_sum_partition(one, 2);
    CHECK(c1.points == std::vector<Rat>{rat(1, 2)});

    ConsensusInstance two = uniform_n(2);
    CutSet c2 = equal_sum_partition(two, 4);
    CHECK(c2.points == std::vector<Rat>{rat(1, 4), rat(1, 2), rat(3, 4)});

    StepMeasure front({rat(0), rat(1, 2), rat(1)}, {rat(2), rat(0)});
    ConsensusInstance fl = make_instance({front});
    CutSet c3 = equal_sum_partition(fl, 2);
    CHECK(c3.points == std::vector<Rat>{rat(1, 4)});
}

TEST_CASE("reduce_floating basics") {
    CoefficientSystem sys;
    sys.pieces.push_back(piece_1d(rat(1, 2), rat(1, 2)));
    sys.pieces.push_back(piece_1d(rat(1, 2), rat(1, 2)));
    std::vector<size_t> dims{0};
    Rat before = sys.weighted_sum(dims)[0];
    reduce_floating(sys, dims);
    CHECK(sys.floating_count() <= 1);
    CHECK(sys.weighted_sum(dims)[0] == before);
    // both coefficients land on the boundary, one 0 and one 1
    std::vector<Rat> coeffs;
    for (auto& p : sys.pieces)
        coeffs.push_back(p.status == CoeffStatus::FixedOne
                             ? Rat(1)
                             : (p.status == CoeffStatus::FixedZero ? Rat(0) : p.coeff));
    CHECK(((coeffs[0] == 0 && coeffs[1] == 1) || (coeffs[0] == 1 && coeffs[1] == 0)));

    // already reduced: unchanged
    CoefficientSystem sys2;
    sys2.pieces.push_back(piece_1d(rat(1, 2), rat(1, 3)));
    reduce_floating(sys2, dims);
    CHECK(sys2.pieces[0].coeff == rat(1, 3));
    CHECK(sys2.pieces[0].status == CoeffStatus::Floating);

    // three pieces in one dimension
    CoefficientSystem sys3;
    sys3.pieces.push_back(piece_1d(rat(1, 4), rat(1, 2)));
    sys3.pieces.push_back(piece_1d(rat(1, 4), rat(1, 2)));
    sys3.pieces.push_back(piece_1d(rat(1, 2), rat(1, 2)));
    Rat before3 = sys3.weighted_sum(dims)[0];
    reduce_floating(sys3, dims);
    CHECK(sys3.floating_count() <= 1);
    CHECK(sys3.weighted_sum(dims)[0] == before3);
}

TEST_CASE("final_assignment edge cases") {
    CoefficientSystem empty;
    final_assignment(empty, 1, rat(1, 2));
    CHECK(empty.pieces.empty());

    CoefficientSystem one;
    one.pieces.push_back(piece_1d(rat(1, 4), rat(1, 2)));
    final_assignment(one, 1, rat(1, 2));
    CHECK(one.floating_count() == 0);

    // n floating pieces of mass eps/2 on distinct measures
    const size_t n = 3;
    Rat eps = rat(1, 2);
    CoefficientSystem sys;
    for (size_t i = 0; i < n; ++i) {
        SystemPiece p;
        p.spans = {{rat(static_cast<long>(i), 3), rat(static_cast<long>(i) + 1, 3)}};
        p.masses.assign(n, rat(0));
        p.masses[i] = eps / 2;
        p.sum_mass = eps / 2;
        p.coeff = rat(1, 2);
        sys.pieces.push_back(p);
    }
    final_assignment(sys, n, eps);
    CHECK(sys.floating_count() == 0);
}

TEST_CASE("offline_halving n=1 uniform eps=1/2") {
    OfflineResult r = offline_halving(uniform_n(1), rat(1, 2));
    CHECK(r.allocation.cuts.size() == 1);
    CHECK(r.allocation.shares[0][0] == rat(1, 2));
    CHECK(r.allocation.shares[1][0] == rat(1, 2));
    CHECK(absolute_discrepancy(r.allocation).overall == 0);
}

TEST_CASE("offline_halving bounds over a small grid") {
    StepMeasure front({rat(0), rat(1, 2), rat(1)}, {rat(2), rat(0)});
    StepMeasure back({rat(0), rat(1, 2), rat(1)}, {rat(0), rat(2)});
    StepMeasure mid({rat(0), rat(1, 4), rat(3, 4), rat(1)}, {rat(0), rat(2), rat(0)});
    std::vector<ConsensusInstance> instances;
    instances.push_back(uniform_n(2));
    instances.push_back(make_instance({front, back, StepMeasure::uniform()}));
    instances.push_back(make_instance({front, mid}));
    for (auto& inst : instances) {
        for (long ed : {2L, 8L, 64L}) {
            Rat eps = rat(1, ed);
            OfflineResult r = offline_halving(inst, eps);
            long n = static_cast<long>(inst.n());
            long bound = n * (2 + ceil_log2(Rat(ed))) - 1;
            CHECK(static_cast<long>(r.allocation.cuts.size()) <= bound);
            CHECK(static_cast<long>(r.stats.cut_count) <= bound);
            CHECK(r.stats.reductions_bounded);
            CHECK(shares_within(r.allocation, rat(1, 2) - eps / 2, rat(1, 2) + eps / 2));
            long round_bound = ceil_log2(Rat(ed)) + 1;
            CHECK(static_cast<long>(r.stats.rounds) <= round_bound);
        }
    }
}

TEST_CASE("offline_halving eps=1/2 gives both agents a quarter with <= 3n cuts") {
    for (size_t n : {1u, 2u, 5u}) {
        OfflineResult r = offline_halving(uniform_n(n), rat(1, 2));
        CHECK(r.allocation.cuts.size() <= 3 * n);
        CHECK(shares_within(r.allocation, rat(1, 4), rat(3, 4)));
    }
}

TEST_CASE("offline_splitting k agents") {
    // k=3, n=1 uniform: all shares within 2eps/3 of each other
    Rat eps = rat(1, 2);
    OfflineResult r = offline_splitting(uniform_n(1), eps, 3);
    ValidationReport rep = validate_proper_consensus(uniform_n(1), r.allocation, eps, 3);
    CHECK(rep.pass);
    CHECK(absolute_discrepancy(r.allocation).overall <= 2 * eps / 3);

    // k=4, n=2
    OfflineResult r2 = offline_splitting(uniform_n(2), rat(1, 2), 4);
    ValidationReport rep2 = validate_proper_consensus(uniform_n(2), r2.allocation, rat(1, 2), 4);
    CHECK(rep2.pass);
    long bound = 2 * 3 * (2 + ceil_log2(Rat(24)));  // n(k-1)ceil(2+log2(3k/eps))
    CHECK(static_cast<long>(r2.stats.cut_count) <= bound);

    // k=2 matches the halving guarantee at eps' scale
    OfflineResult r3 = offline_splitting(uniform_n(2), rat(1, 2), 2);
    CHECK(validate_proper_consensus(uniform_n(2), r3.allocation, rat(1, 2), 2).pass);
}

TEST_CASE("offline shares conservation") {
    StepMeasure front({rat(0), rat(1, 2), rat(1)}, {rat(2), rat(0)});
    ConsensusInstance inst = make_instance({front, StepMeasure::uniform()});
    OfflineResult r = offline_halving(inst, rat(1, 8));
    for (size_t i = 0; i < inst.n(); ++i) {
        Rat total(0);
        for (int a = 0; a < r.allocation.agents; ++a) total += r.allocation.shares[a][i];
        CHECK(total == 1);
    }
}
