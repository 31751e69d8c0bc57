#pragma once

#include <cstddef>
#include <vector>

#include "fairsplit/rational.hpp"

namespace fairsplit {

// Non-atomic probability measure on [0,1] given by a piecewise-constant
// density over rational breakpoints. Immutable after construction.
class StepMeasure {
public:
    StepMeasure(std::vector<Rat> breakpoints, std::vector<Rat> densities);

    static StepMeasure uniform();

    const std::vector<Rat>& breakpoints() const { return breakpoints_; }
    const std::vector<Rat>& densities() const { return densities_; }
    size_t segments() const { return densities_.size(); }

    // Exact mass of [a, b].
    Rat mass(const Rat& a, const Rat& b) const;

    // Smallest y >= x with mass([x, y]) == delta, or 1 if none exists.
    Rat point_with_mass(const Rat& x, const Rat& delta) const;

private:
    std::vector<Rat> breakpoints_;
    std::vector<Rat> densities_;
    std::vector<Rat> prefix_;  // cumulative mass at each breakpoint

    Rat cumulative(const Rat& x) const;  // mass of [0, x]
    size_t segment_of(const Rat& x) const;
};

struct ConsensusInstance {
    std::vector<StepMeasure> measures;

    size_t n() const { return measures.size(); }

    // Summed step function of all measures, on merged breakpoints.
    // Total mass is n, not 1.
    const StepMeasure& sum_measure() const;

private:
    mutable std::vector<StepMeasure> sum_cache_;
};

ConsensusInstance make_instance(std::vector<StepMeasure> measures);

// mu_i([a, b]), exact.
Rat measure_of_interval(const StepMeasure& m, const Rat& a, const Rat& b);

// Smallest y >= x with mu_i([x, y]) = delta, or 1 otherwise.
Rat oracle_point(const ConsensusInstance& inst, const Rat& x, size_t i, const Rat& delta);

// Smallest y >= x with sum_i mu_i([x, y]) = delta, or 1 otherwise.
Rat oracle_sum_point(const ConsensusInstance& inst, const Rat& x, const Rat& delta);

}  // namespace fairsplit
