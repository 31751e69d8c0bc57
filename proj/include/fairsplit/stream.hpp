#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsplit/measure.hpp"
#include "fairsplit/params.hpp"
#include "fairsplit/rational.hpp"

namespace fairsplit {

// Online presentation of a consensus instance: ordered cut candidates
// 0 = x_1 < ... < x_m = 1 with per-gap masses bounded by the model cap.
//
// Two storage forms. A gridded stream has candidates j/grid with every
// measure breakpoint on the grid, so gap masses are density/grid and never
// materialized. An explicit stream lists candidates and gap masses directly.
struct OnlineStream {
    ConsensusInstance base;
    Rat epsilon;
    int k = 2;

    std::optional<uint64_t> grid;           // uniform candidates j/grid
    std::vector<Rat> candidates;            // explicit form (grid unset)
    std::vector<std::vector<Rat>> gap_masses;  // [measure][gap], explicit form

    size_t n() const { return base.n(); }
    size_t gap_count() const;
    Rat candidate(size_t j) const;          // x_{j+1}, 0-based
    Rat gap_mass(size_t i, size_t j) const; // mass of measure i on gap j
};

OnlineStream make_explicit_stream(ConsensusInstance base, std::vector<Rat> candidates,
                                  std::vector<std::vector<Rat>> gap_masses, const Rat& epsilon,
                                  int k);

// Gridded form; checks every breakpoint lies on the grid.
OnlineStream make_gridded_stream(ConsensusInstance base, uint64_t grid, const Rat& epsilon,
                                 int k);

struct CapViolation {
    enum Kind { GapOverCap, MassSumNotOne } kind;
    size_t measure = 0;
    size_t gap = 0;
    Rat observed;
    Rat bound;
    std::string describe() const;
};

struct CapReport {
    bool pass = true;
    Rat cap;
    std::vector<CapViolation> violations;
};

// Confirms every gap mass obeys the per-gap cap for the stream's k and that
// each measure's gap masses sum to exactly 1. Violations are data, not errors.
CapReport validate_stream_caps(const OnlineStream& stream, const Rat& epsilon);

}  // namespace fairsplit
