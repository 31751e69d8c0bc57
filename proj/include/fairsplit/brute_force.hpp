#pragma once

#include <vector>

#include "fairsplit/allocation.hpp"
#include "fairsplit/necklace.hpp"

namespace fairsplit {

struct BruteSolution {
    std::vector<long> gaps;
    std::vector<int> assignees;
};

// Exhaustive enumeration of every cut subset and assignment of a two-agent
// necklace with at most `max_beads` beads. Serves as the independent oracle
// for the rounding algorithms.
struct BruteForceResult {
    std::vector<BruteSolution> proper;
    long min_cuts = -1;
};

BruteForceResult brute_force_checker(const NecklaceInstance& neck, long max_beads = 12);

// Membership in the proper set, by direct bead recounting (independent of
// the allocation module's bookkeeping).
bool brute_force_is_proper(const NecklaceInstance& neck, const Allocation& alloc, int k);

}  // namespace fairsplit
