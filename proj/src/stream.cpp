#include "fairsplit/stream.hpp"

#include <sstream>
#include <stdexcept>

namespace fairsplit {

size_t OnlineStream::gap_count() const {
    if (grid) return static_cast<size_t>(*grid);
    return candidates.empty() ? 0 : candidates.size() - 1;
}

Rat OnlineStream::candidate(size_t j) const {
    if (grid) return rat(static_cast<long>(j), static_cast<long>(*grid));
    return candidates.at(j);
}

Rat OnlineStream::gap_mass(size_t i, size_t j) const {
    if (grid) return base.measures[i].mass(candidate(j), candidate(j + 1));
    return gap_masses.at(i).at(j);
}

OnlineStream make_explicit_stream(ConsensusInstance base, std::vector<Rat> candidates,
                                  std::vector<std::vector<Rat>> gap_masses, const Rat& epsilon,
                                  int k) {
    if (candidates.size() < 2 || candidates.front() != 0 || candidates.back() != 1)
        throw std::invalid_argument("candidates must run from 0 to 1");
    for (size_t j = 1; j < candidates.size(); ++j)
        if (!(candidates[j - 1] < candidates[j]))
            throw std::invalid_argument("candidates must be strictly increasing");
    if (gap_masses.size() != base.n())
        throw std::invalid_argument("one gap-mass row per measure required");
    for (const auto& row : gap_masses)
        if (row.size() + 1 != candidates.size())
            throw std::invalid_argument("gap-mass row length mismatch");
    OnlineStream s;
    s.base = std::move(base);
    s.epsilon = epsilon;
    s.k = k;
    s.candidates = std::move(candidates);
    s.gap_masses = std::move(gap_masses);
    return s;
}

OnlineStream make_gridded_stream(ConsensusInstance base, uint64_t grid, const Rat& epsilon,
                                 int k) {
    if (grid < 1) throw std::invalid_argument("grid must be positive");
    for (const auto& m : base.measures)
        for (const auto& bp : m.breakpoints()) {
            Rat scaled = bp * static_cast<long>(grid);
            if (scaled.get_den() != 1)
                throw std::invalid_argument("measure breakpoint off the candidate grid");
        }
    OnlineStream s;
    s.base = std::move(base);
    s.epsilon = epsilon;
    s.k = k;
    s.grid = grid;
    return s;
}

std::string CapViolation::describe() const {
    std::ostringstream os;
    if (kind == GapOverCap)
        os << "gap " << gap << " measure " << measure << " mass " << rat_str(observed)
           << " exceeds cap " << rat_str(bound);
    else
        os << "measure " << measure << " gap masses sum to " << rat_str(observed)
           << ", expected 1";
    return os.str();
}

CapReport validate_stream_caps(const OnlineStream& stream, const Rat& epsilon) {
    CapReport report;
    BalancerParams params = BalancerParams::splitting(stream.n(), stream.k, epsilon);
    report.cap = params.cap;
    for (size_t i = 0; i < stream.n(); ++i) {
        Rat total(0);
        if (stream.grid) {
            // Constant density per segment: the largest gap mass of measure i
            // within a segment is density/grid, so segments suffice.
            const auto& m = stream.base.measures[i];
            for (size_t seg = 0; seg < m.segments(); ++seg) {
                Rat gap_mass = m.densities()[seg] / Rat(static_cast<long>(*stream.grid));
                if (gap_mass > params.cap) {
                    Rat start = m.breakpoints()[seg] * static_cast<long>(*stream.grid);
                    report.pass = false;
                    report.violations.push_back({CapViolation::GapOverCap, i,
                                                 static_cast<size_t>(start.get_num().get_si()),
                                                 gap_mass, params.cap});
                }
            }
            total = 1;  // probability-measure invariant of StepMeasure
        } else {
            for (size_t j = 0; j < stream.gap_count(); ++j) {
                const Rat& mass = stream.gap_masses[i][j];
                if (mass > params.cap) {
                    report.pass = false;
                    report.violations.push_back(
                        {CapViolation::GapOverCap, i, j, mass, params.cap});
                }
                total += mass;
            }
        }
        if (total != 1) {
            report.pass = false;
            report.violations.push_back({CapViolation::MassSumNotOne, i, 0, total, Rat(1)});
        }
    }
    return report;
}

}  // namespace fairsplit
