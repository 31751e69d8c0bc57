#pragma once

#include <cstdint>
#include <vector>

#include "fairsplit/measure.hpp"
#include "fairsplit/necklace.hpp"
#include "fairsplit/stream.hpp"

namespace fairsplit {

// Deterministic generator: the engine is pinned by the standard and all
// bounded draws go through our own reduction, so a seed fixes every byte of
// output on any platform.
class DetRng {
public:
    explicit DetRng(uint64_t seed);
    uint64_t next();
    // uniform in [0, bound)
    uint64_t below(uint64_t bound);

private:
    uint64_t state_;
};

// Random step measures over `segments` equal-length pieces with exact
// rational densities on a 2^-20 weight grid, each summing to exactly 1.
ConsensusInstance generate_instance(uint64_t seed, size_t n, size_t segments);

// Gridded stream for the instance: candidate grid fine enough that every
// per-gap mass obeys the cap for (epsilon, k). Segment count is rounded up
// to a power of two so breakpoints sit on the grid.
OnlineStream generate_stream(uint64_t seed, size_t n, size_t segments, const Rat& epsilon,
                             int k);

// Seeded shuffle of the bead multiset given by counts.
NecklaceInstance generate_necklace(uint64_t seed, const std::vector<long>& counts);

}  // namespace fairsplit
