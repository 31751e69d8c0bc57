#include "fairsplit/measure.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairsplit {

StepMeasure::StepMeasure(std::vector<Rat> breakpoints, std::vector<Rat> densities)
    : breakpoints_(std::move(breakpoints)), densities_(std::move(densities)) {
    if (breakpoints_.size() < 2)
        throw std::invalid_argument("step measure needs at least two breakpoints");
    if (densities_.size() + 1 != breakpoints_.size())
        throw std::invalid_argument("densities length must be breakpoints length - 1");
    if (breakpoints_.front() != 0 || breakpoints_.back() != 1)
        throw std::invalid_argument("breakpoints must start at 0 and end at 1");
    for (size_t j = 1; j < breakpoints_.size(); ++j)
        if (!(breakpoints_[j - 1] < breakpoints_[j]))
            throw std::invalid_argument("breakpoints must be strictly increasing");
    prefix_.resize(breakpoints_.size());
    prefix_[0] = 0;
    for (size_t j = 0; j < densities_.size(); ++j) {
        if (densities_[j] < 0) throw std::invalid_argument("negative density");
        prefix_[j + 1] = prefix_[j] + densities_[j] * (breakpoints_[j + 1] - breakpoints_[j]);
    }
    if (prefix_.back() != 1)
        throw std::invalid_argument("densities must integrate to exactly 1");
}

StepMeasure StepMeasure::uniform() {
    return StepMeasure({Rat(0), Rat(1)}, {Rat(1)});
}

size_t StepMeasure::segment_of(const Rat& x) const {
    // Largest j with breakpoints_[j] <= x, clamped to a density index.
    size_t lo = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                breakpoints_.begin();
    if (lo == 0) throw std::domain_error("point below 0");
    size_t j = lo - 1;
    if (j >= densities_.size()) j = densities_.size() - 1;
    return j;
}

Rat StepMeasure::cumulative(const Rat& x) const {
    if (x <= 0) return Rat(0);
    if (x >= 1) return Rat(1);
    size_t j = segment_of(x);
    return prefix_[j] + densities_[j] * (x - breakpoints_[j]);
}

Rat StepMeasure::mass(const Rat& a, const Rat& b) const {
    if (a < 0 || b > 1 || a > b) throw std::domain_error("interval outside [0,1]");
    return cumulative(b) - cumulative(a);
}

Rat StepMeasure::point_with_mass(const Rat& x, const Rat& delta) const {
    if (x < 0 || x > 1) throw std::domain_error("start point outside [0,1]");
    if (delta < 0) throw std::domain_error("negative mass target");
    if (delta == 0) return x;
    Rat target = cumulative(x) + delta;
    if (target > 1) return Rat(1);
    // First breakpoint index whose prefix reaches the target.
    size_t j = std::lower_bound(prefix_.begin(), prefix_.end(), target) - prefix_.begin();
    if (j == 0) return breakpoints_[0];
    if (prefix_[j] == target) return breakpoints_[j];
    size_t seg = j - 1;
    // Interior of segment seg; density is positive here since prefix grows.
    return breakpoints_[seg] + (target - prefix_[seg]) / densities_[seg];
}

const StepMeasure& ConsensusInstance::sum_measure() const {
    if (sum_cache_.empty()) {
        // Stored as the summed density divided by n, so the probability-
        // measure invariant holds; oracle_sum_point rescales its delta.
        std::vector<Rat> pts;
        for (const auto& m : measures)
            pts.insert(pts.end(), m.breakpoints().begin(), m.breakpoints().end());
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::vector<Rat> dens(pts.size() - 1, Rat(0));
        for (const auto& m : measures) {
            size_t seg = 0;
            for (size_t j = 0; j + 1 < pts.size(); ++j) {
                while (m.breakpoints()[seg + 1] <= pts[j]) ++seg;
                dens[j] += m.densities()[seg];
            }
        }
        Rat n(static_cast<long>(measures.size()));
        for (auto& d : dens) d /= n;
        sum_cache_.push_back(StepMeasure(std::move(pts), std::move(dens)));
    }
    return sum_cache_.front();
}

ConsensusInstance make_instance(std::vector<StepMeasure> measures) {
    if (measures.empty()) throw std::invalid_argument("instance needs at least one measure");
    ConsensusInstance inst;
    inst.measures = std::move(measures);
    return inst;
}

Rat measure_of_interval(const StepMeasure& m, const Rat& a, const Rat& b) {
    return m.mass(a, b);
}

Rat oracle_point(const ConsensusInstance& inst, const Rat& x, size_t i, const Rat& delta) {
    if (i >= inst.n()) throw std::domain_error("measure index out of range");
    return inst.measures[i].point_with_mass(x, delta);
}

Rat oracle_sum_point(const ConsensusInstance& inst, const Rat& x, const Rat& delta) {
    Rat n(static_cast<long>(inst.n()));
    return inst.sum_measure().point_with_mass(x, delta / n);
}

}  // namespace fairsplit
