#include "fairsplit/generate.hpp"

#include <stdexcept>

#include "fairsplit/params.hpp"

namespace fairsplit {

namespace {

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

size_t next_pow2(size_t v) {
    size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

}  // namespace

DetRng::DetRng(uint64_t seed) : state_(seed ^ 0x6a09e667f3bcc908ULL) {}

uint64_t DetRng::next() { return splitmix64(state_); }

uint64_t DetRng::below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty range");
    // rejection sampling keeps the draw unbiased and reproducible
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
}

ConsensusInstance generate_instance(uint64_t seed, size_t n, size_t segments) {
    if (n < 1 || segments < 1) throw std::invalid_argument("need measures and segments");
    DetRng rng(seed);
    const long W = 1L << 20;
    const long G = static_cast<long>(segments);
    std::vector<Rat> points(segments + 1);
    for (size_t j = 0; j <= segments; ++j) points[j] = rat(static_cast<long>(j), G);
    std::vector<StepMeasure> measures;
    measures.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        std::vector<long> raw(segments);
        long total = 0;
        for (auto& r : raw) {
            r = 1 + static_cast<long>(rng.below(1000));
            total += r;
        }
        // integer weights v_j summing to G*W exactly
        std::vector<long> v(segments);
        long assigned = 0;
        for (size_t j = 0; j < segments; ++j) {
            v[j] = static_cast<long>((static_cast<__int128>(raw[j]) * G * W) / total);
            assigned += v[j];
        }
        for (long j = 0; assigned < G * W; ++j, ++assigned) v[j % segments] += 1;
        std::vector<Rat> dens(segments);
        for (size_t j = 0; j < segments; ++j) dens[j] = rat(v[j], W);
        measures.push_back(StepMeasure(points, std::move(dens)));
    }
    return make_instance(std::move(measures));
}

OnlineStream generate_stream(uint64_t seed, size_t n, size_t segments, const Rat& epsilon,
                             int k) {
    size_t g = next_pow2(std::max<size_t>(segments, 2));
    ConsensusInstance inst = generate_instance(seed, n, g);
    BalancerParams params = BalancerParams::splitting(n, k, epsilon);
    // finest density over the cap bounds the grid
    Rat d_max(0);
    for (const auto& m : inst.measures)
        for (const auto& d : m.densities()) d_max = std::max(d_max, d);
    Rat need = d_max / params.cap;
    uint64_t grid = 1;
    while (Rat(static_cast<long>(grid)) < need || grid < g) grid <<= 1;
    return make_gridded_stream(std::move(inst), grid, epsilon, k);
}

NecklaceInstance generate_necklace(uint64_t seed, const std::vector<long>& counts) {
    if (counts.empty()) throw std::invalid_argument("need at least one color");
    std::vector<int> beads;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 1) throw std::invalid_argument("counts must be positive");
        beads.insert(beads.end(), counts[i], static_cast<int>(i));
    }
    DetRng rng(seed);
    for (size_t j = beads.size() - 1; j > 0; --j) {
        size_t pick = rng.below(j + 1);
        std::swap(beads[j], beads[pick]);
    }
    return make_necklace(std::move(beads), counts.size());
}

}  // namespace fairsplit
