#pragma once

#include <cstddef>
#include <vector>

#include "fairsplit/allocation.hpp"
#include "fairsplit/measure.hpp"
#include "fairsplit/rational.hpp"

namespace fairsplit {

// One marked interval of the traversal phase: carries exactly 1/(kn) of the
// labeling measure (the terminal piece may absorb the residual tail).
struct MarkedInterval {
    Rat left;
    Rat right;
    size_t label = 0;
};

struct MarkResult {
    std::vector<MarkedInterval> intervals;
    long oracle_calls = 0;
};

// Traverses [0,1] once making kn marks; each measure ends up labeling
// exactly k intervals. The argmin rule breaks ties to the lowest measure
// index. Runs out of measure only if the instance invariants are broken,
// which surfaces as std::logic_error.
MarkResult mark_phase(const ConsensusInstance& inst, int k);

struct UniformSplit {
    std::vector<size_t> cut_positions;  // cut before bead index (0-based)
    std::vector<int> assignees;         // per resulting interval
};

// Splits a label sequence with exactly k beads of each color using at most
// n(k-1) cuts so each agent receives one bead of every color. Intervals go
// to an agent holding none of their colors.
UniformSplit split_uniform_necklace(const std::vector<size_t>& labels, int k);

struct Type1Result {
    Allocation allocation;
    long oracle_calls = 0;
    std::vector<MarkedInterval> marks;
};

// Every agent receives at least 1/(kn) of every measure with at most
// n(k-1) cuts and O(n^2 k) oracle calls.
Type1Result type1_solve(const ConsensusInstance& inst, int k);

}  // namespace fairsplit
