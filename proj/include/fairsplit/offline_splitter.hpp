#pragma once

#include <cstddef>
#include <vector>

#include "fairsplit/allocation.hpp"
#include "fairsplit/measure.hpp"
#include "fairsplit/rational.hpp"

namespace fairsplit {

// Half-open interval [left, right) of [0,1].
struct Span {
    Rat left;
    Rat right;
};

enum class CoeffStatus { Floating, FixedZero, FixedOne };

// A piece of the working collection: contiguous spans, its exact per-measure
// mass vector, and a coefficient in [0,1] read as the fraction owned by the
// first of the two groups being separated.
struct SystemPiece {
    std::vector<Span> spans;
    std::vector<Rat> masses;  // per measure
    Rat sum_mass;             // sum over measures
    Rat coeff;
    CoeffStatus status = CoeffStatus::Floating;
};

struct CoefficientSystem {
    std::vector<SystemPiece> pieces;

    size_t floating_count() const;
    // Sum of coeff * masses over non-fixed-zero pieces, restricted to dims.
    std::vector<Rat> weighted_sum(const std::vector<size_t>& dims) const;
};

// Splits [0,1] into `parts` pieces of equal total measure n/parts using
// parts-1 cuts placed by the summed-measure oracle.
CutSet equal_sum_partition(const ConsensusInstance& inst, size_t parts);

// Shifts floating coefficients along exact kernel vectors of the floating
// mass vectors (restricted to dims) until at most |dims| remain floating.
// Fixes at least one coefficient per step; the weighted sum over dims is
// preserved exactly. Throws std::logic_error if no kernel exists while the
// floating count still exceeds |dims|.
void reduce_floating(CoefficientSystem& system, const std::vector<size_t>& dims);

struct OfflineStats {
    size_t cut_count = 0;  // cut operations performed
    size_t rounds = 0;     // halving rounds after the initial partition
    bool reductions_bounded = true;  // floating <= |dims| after every reduce
};

struct OfflineResult {
    Allocation allocation;
    OfflineStats stats;
};

// Proper consensus halving: both collections receive a mu_i-share inside
// [1/2 - eps/2, 1/2 + eps/2] for every i, with at most
// n(2 + ceil(log2(1/eps))) - 1 cuts.
OfflineResult offline_halving(const ConsensusInstance& inst, const Rat& epsilon);

// Fixes every remaining floating piece of a system whose floating pieces all
// have total measure <= eps/2, retiring one measure at a time (lowest
// qualifying index) and re-reducing whenever the floating count exceeds the
// active dimension.
void final_assignment(CoefficientSystem& system, size_t n_measures, const Rat& epsilon);

// k-agent splitting by recursive bisection with eps' = eps/(3k); proper per
// validate_proper_consensus with at most n(k-1)(2 + ceil(log2(3k/eps))) cuts.
OfflineResult offline_splitting(const ConsensusInstance& inst, const Rat& epsilon, int k);

}  // namespace fairsplit
