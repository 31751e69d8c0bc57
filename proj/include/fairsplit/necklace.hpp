#pragma once

#include <cstddef>
#include <vector>

#include "fairsplit/measure.hpp"
#include "fairsplit/rational.hpp"

namespace fairsplit {

// Ordered beads, colors 0-based in [0, n). color_counts[i] = m_i.
struct NecklaceInstance {
    std::vector<int> beads;
    std::vector<long> color_counts;

    size_t n() const { return color_counts.size(); }
    long total_beads() const { return static_cast<long>(beads.size()); }
    long max_count() const;
};

NecklaceInstance make_necklace(std::vector<int> beads, size_t n_colors);

// Consensus embedding: bead t of color i becomes the interval
// [t/T, (t+1)/T) carrying mu_i-mass 1/m_i and nothing else. Cuts restricted
// to bead boundaries correspond to gap indices of the necklace.
struct NecklaceEmbedding {
    ConsensusInstance instance;
    long bead_count = 0;

    // Point of the boundary between bead g and bead g+1 (g in [0, T]).
    Rat boundary(long g) const { return rat(g, bead_count); }
    // Gap index if p is a bead boundary, -1 otherwise.
    long boundary_index(const Rat& p) const;
    // Bead containing p in its interior or left-closed start (0-based).
    long bead_at(const Rat& p) const;
};

NecklaceEmbedding necklace_to_consensus(const NecklaceInstance& neck);

}  // namespace fairsplit
