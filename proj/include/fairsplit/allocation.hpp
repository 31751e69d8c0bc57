#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fairsplit/measure.hpp"
#include "fairsplit/necklace.hpp"
#include "fairsplit/rational.hpp"

namespace fairsplit {

// Cut positions. Consensus cuts are rational points strictly inside (0,1);
// necklace cuts are gap indices in [1, T-1], gap g sitting between beads
// g and g+1 (1-based beads).
struct CutSet {
    std::vector<Rat> points;
    std::vector<long> gaps;
    bool is_necklace = false;

    size_t size() const { return is_necklace ? gaps.size() : points.size(); }
};

CutSet consensus_cuts(std::vector<Rat> points);
CutSet necklace_cuts(std::vector<long> gaps, long total_beads);

// Intervals are [cut_j, cut_{j+1}) except the last, which is closed; all
// measures are non-atomic so the convention never moves mass, it only makes
// serialization canonical. Agents are 0-based.
struct Allocation {
    CutSet cuts;
    std::vector<int> assignees;               // one per resulting interval
    std::vector<std::vector<Rat>> shares;     // [agent][measure], exact
    int agents = 0;

    size_t intervals() const { return assignees.size(); }
};

Allocation build_allocation(const ConsensusInstance& inst, CutSet cuts,
                            std::vector<int> assignees, int agents);
Allocation build_allocation(const NecklaceInstance& neck, CutSet cuts,
                            std::vector<int> assignees, int agents);

struct DiscrepancyReport {
    std::vector<Rat> per_measure;  // max pairwise share gap per measure
    Rat overall;                   // max over measures
};

DiscrepancyReport absolute_discrepancy(const Allocation& alloc);

struct ValidationReport {
    bool pass = false;
    Rat bound;
    Rat observed;
    size_t cut_count = 0;
    std::string detail;
};

// Proper consensus split: overall discrepancy <= 2 eps / k (inclusive).
ValidationReport validate_proper_consensus(const ConsensusInstance& inst,
                                           const Allocation& alloc, const Rat& epsilon, int k);

// Proper necklace split: every agent holds floor(m_i/k) or ceil(m_i/k)
// beads of every color.
ValidationReport validate_proper_necklace(const NecklaceInstance& neck,
                                          const Allocation& alloc, int k);

}  // namespace fairsplit
