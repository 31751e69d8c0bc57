#include <doctest.h>

#include "fairsplit/offline_necklace.hpp"

using namespace fairsplit;

namespace {

// Independent dumb recount of a necklace allocation.
std::vector<std::vector<long>> recount(const NecklaceInstance& neck, const Allocation& alloc) {
    std::vector<std::vector<long>> counts(alloc.agents,
                                          std::vector<long>(neck.n(), 0));
    long start = 0;
    for (size_t p = 0; p < alloc.assignees.size(); ++p) {
        long end = p < alloc.cuts.gaps.size() ? alloc.cuts.gaps[p] : neck.total_beads();
        for (long t = start; t < end; ++t) ++counts[alloc.assignees[p]][neck.beads[t]];
        start = end;
    }
    return counts;
}

bool within_one(const NecklaceInstance& neck, const Allocation& alloc) {
    auto counts = recount(neck, alloc);
    for (size_t i = 0; i < neck.n(); ++i) {
        long lo = counts[0][i], hi = counts[0][i];
        for (int a = 1; a < alloc.agents; ++a) {
            lo = std::min(lo, counts[a][i]);
            hi = std::max(hi, counts[a][i]);
        }
        if (hi - lo > 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("fix_marks identity when marks already at boundaries") {
    NecklaceInstance neck = make_necklace({0, 0, 1, 1}, 2);
    NecklaceEmbedding emb = necklace_to_consensus(neck);
    Allocation cont = build_allocation(
        emb.instance, consensus_cuts({rat(1, 4), rat(3, 4)}), {0, 1, 0}, 2);
    Allocation fixed = fix_marks(neck, emb, cont);
    CHECK(fixed.cuts.gaps == std::vector<long>{1, 3});
    CHECK(validate_proper_necklace(neck, fixed, 2).pass);
}

TEST_CASE("fix_marks shifts interior marks exactly") {
    // two interior marks inside the two beads of color 1 (beads 1 and 4)
    NecklaceInstance neck = make_necklace({0, 1, 0, 0, 1, 0}, 2);
    NecklaceEmbedding emb = necklace_to_consensus(neck);
    // marks at 1/6+1/24 (inside bead 2) and 4/6+1/12 (inside bead 5)
    Allocation cont = build_allocation(
        emb.instance, consensus_cuts({rat(5, 24), rat(3, 4)}), {0, 1, 0}, 2);
    Allocation fixed = fix_marks(neck, emb, cont);
    for (long g : fixed.cuts.gaps) CHECK(g >= 1);
    CHECK(within_one(neck, fixed));
}

TEST_CASE("fix_marks rounds a single leftover mark to the nearest boundary") {
    NecklaceInstance neck = make_necklace({0, 0}, 1);
    NecklaceEmbedding emb = necklace_to_consensus(neck);
    // mark at offset 0.3 of the first bead rounds left; the piece vanishes
    Allocation cont =
        build_allocation(emb.instance, consensus_cuts({rat(3, 20)}), {0, 1}, 2);
    Allocation fixed = fix_marks(neck, emb, cont);
    CHECK(fixed.cuts.gaps.empty());
    CHECK(fixed.shares[1][0] == 2);

    // offset 0.7 rounds right instead
    Allocation cont2 =
        build_allocation(emb.instance, consensus_cuts({rat(7, 20)}), {0, 1}, 2);
    Allocation fixed2 = fix_marks(neck, emb, cont2);
    CHECK(fixed2.cuts.gaps == std::vector<long>{1});
    CHECK(fixed2.shares[0][0] == 1);
    CHECK(fixed2.shares[1][0] == 1);

    // a mid-bead tie also rounds left
    Allocation cont3 =
        build_allocation(emb.instance, consensus_cuts({rat(1, 4)}), {0, 1}, 2);
    Allocation fixed3 = fix_marks(neck, emb, cont3);
    CHECK(fixed3.cuts.gaps.empty());
    CHECK(fixed3.shares[1][0] == 2);
}

TEST_CASE("offline_necklace_halving on small and structured necklaces") {
    // (1,1,2,2)
    {
        NecklaceInstance neck = make_necklace({0, 0, 1, 1}, 2);
        auto r = offline_necklace_halving(neck);
        CHECK(validate_proper_necklace(neck, r.allocation, 2).pass);
    }
    // single color, even count: exact split
    {
        NecklaceInstance neck = make_necklace(std::vector<int>(8, 0), 1);
        auto r = offline_necklace_halving(neck);
        auto counts = recount(neck, r.allocation);
        CHECK(counts[0][0] == 4);
        CHECK(counts[1][0] == 4);
    }
    // parity: odd count leaves exactly one extra bead
    {
        NecklaceInstance neck = make_necklace({0, 0, 0, 0, 0}, 1);
        auto r = offline_necklace_halving(neck);
        auto counts = recount(neck, r.allocation);
        CHECK(std::abs(counts[0][0] - counts[1][0]) == 1);
    }
}

TEST_CASE("offline_necklace_halving cut bound") {
    // deterministic mixed necklace, n=3
    std::vector<int> beads;
    for (int t = 0; t < 60; ++t) beads.push_back((t * 7 + t / 9) % 3);
    NecklaceInstance neck = make_necklace(std::move(beads), 3);
    auto r = offline_necklace_halving(neck);
    CHECK(validate_proper_necklace(neck, r.allocation, 2).pass);
    long m = neck.max_count();
    long bound = 3 * (3 + ceil_log2(Rat(m)));
    CHECK(static_cast<long>(r.allocation.cuts.size()) <= bound);
}

TEST_CASE("two_color_circular_split examples") {
    NecklaceInstance alt = make_necklace({0, 1, 0, 1}, 2);
    CircularSplitResult r = two_color_circular_split(alt, 2);
    CHECK(r.circular_cuts == std::vector<long>{0, 2});
    auto counts = recount(alt, r.allocation);
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) CHECK(counts[a][c] == 1);

    NecklaceInstance blocks = make_necklace({0, 0, 1, 1}, 2);
    CircularSplitResult r2 = two_color_circular_split(blocks, 2);
    CHECK(r2.circular_cuts == std::vector<long>{1, 3});

    NecklaceInstance any = make_necklace({0, 1, 1, 0}, 2);
    CircularSplitResult r3 = two_color_circular_split(any, 1);
    CHECK(r3.circular_cuts.empty());
    CHECK(r3.allocation.cuts.size() == 0);

    CHECK_THROWS_AS(two_color_circular_split(make_necklace({0, 0, 1}, 2), 2),
                    std::domain_error);
}

TEST_CASE("two_color_circular_split exactness and cut count") {
    // alternating necklace, k = 3 (forces the window preference rule)
    std::vector<int> beads;
    for (int t = 0; t < 6; ++t) beads.push_back(t % 2);
    NecklaceInstance neck = make_necklace(std::move(beads), 2);
    CircularSplitResult r = two_color_circular_split(neck, 3);
    CHECK(r.circular_cuts.size() == 4);
    auto counts = recount(neck, r.allocation);
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 2; ++c) CHECK(counts[a][c] == 1);

    // larger deterministic case
    std::vector<int> big;
    for (int t = 0; t < 40; ++t) big.push_back(((t * 13) / 3) % 2);
    // force counts divisible by 4: count and patch
    int ones = 0;
    for (int b : big) ones += b;
    for (int t = 0; ones % 4 != 0; ++t)
        if (big[t] == 0) {
            big[t] = 1;
            ++ones;
        }
    NecklaceInstance neck2 = make_necklace(std::move(big), 2);
    CircularSplitResult r2 = two_color_circular_split(neck2, 4);
    CHECK(r2.circular_cuts.size() == 6);
    auto counts2 = recount(neck2, r2.allocation);
    for (int a = 0; a < 4; ++a) {
        CHECK(counts2[a][0] == neck2.color_counts[0] / 4);
        CHECK(counts2[a][1] == neck2.color_counts[1] / 4);
    }
}
