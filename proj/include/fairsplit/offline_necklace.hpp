#pragma once

#include <vector>

#include "fairsplit/allocation.hpp"
#include "fairsplit/necklace.hpp"
#include "fairsplit/offline_splitter.hpp"
#include "fairsplit/rational.hpp"

namespace fairsplit {

// Rounds a continuous two-agent allocation over the bead embedding to bead
// boundaries: same-agent floating marks merge, same-color floating mark
// pairs shift simultaneously (preserving both agents' totals exactly) until
// fixed or collided, and at most one leftover mark per color rounds to the
// closest boundary, moving one color's count by at most one bead.
Allocation fix_marks(const NecklaceInstance& neck, const NecklaceEmbedding& emb,
                     const Allocation& continuous);

struct OfflineNecklaceResult {
    Allocation allocation;
    size_t continuous_cuts = 0;
};

// Necklace halving via the consensus embedding at eps = 1/(2m) plus mark
// fixing; per-color discrepancy <= 1 with at most n(3 + ceil(log2 m)) cuts,
// all at bead boundaries.
OfflineNecklaceResult offline_necklace_halving(const NecklaceInstance& neck);

struct CircularSplitResult {
    Allocation allocation;
    // Distinct circular gap ids bounding the arcs, seam gap 0 included when
    // an arc ends there; exactly 2k-2 of them.
    std::vector<long> circular_cuts;
};

// Two colors, k agents, k dividing both color counts: repeatedly finds a
// circular arc of (m1+m2)/k beads holding exactly m1/k beads of color 1 by
// the discrete intermediate value theorem and peels it off.
CircularSplitResult two_color_circular_split(const NecklaceInstance& neck, int k);

}  // namespace fairsplit
