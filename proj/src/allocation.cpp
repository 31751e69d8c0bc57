#include "fairsplit/allocation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fairsplit {

CutSet consensus_cuts(std::vector<Rat> points) {
    for (size_t j = 0; j < points.size(); ++j) {
        if (points[j] <= 0 || points[j] >= 1)
            throw std::invalid_argument("consensus cut outside (0,1)");
        if (j > 0 && !(points[j - 1] < points[j]))
            throw std::invalid_argument("cut points must be strictly increasing");
    }
    CutSet c;
    c.points = std::move(points);
    return c;
}

CutSet necklace_cuts(std::vector<long> gaps, long total_beads) {
    for (size_t j = 0; j < gaps.size(); ++j) {
        if (gaps[j] < 1 || gaps[j] >= total_beads)
            throw std::invalid_argument("necklace cut gap out of range");
        if (j > 0 && gaps[j - 1] >= gaps[j])
            throw std::invalid_argument("cut gaps must be strictly increasing");
    }
    CutSet c;
    c.gaps = std::move(gaps);
    c.is_necklace = true;
    return c;
}

Allocation build_allocation(const ConsensusInstance& inst, CutSet cuts,
                            std::vector<int> assignees, int agents) {
    if (cuts.is_necklace) throw std::invalid_argument("necklace cuts on a consensus instance");
    if (assignees.size() != cuts.points.size() + 1)
        throw std::invalid_argument("assignees length must be cut count + 1");
    Allocation alloc;
    alloc.agents = agents;
    alloc.shares.assign(agents, std::vector<Rat>(inst.n(), Rat(0)));
    Rat left(0);
    for (size_t piece = 0; piece < assignees.size(); ++piece) {
        int a = assignees[piece];
        if (a < 0 || a >= agents) throw std::invalid_argument("assignee out of range");
        Rat right = piece < cuts.points.size() ? cuts.points[piece] : Rat(1);
        for (size_t i = 0; i < inst.n(); ++i)
            alloc.shares[a][i] += inst.measures[i].mass(left, right);
        left = right;
    }
    alloc.cuts = std::move(cuts);
    alloc.assignees = std::move(assignees);
    return alloc;
}

Allocation build_allocation(const NecklaceInstance& neck, CutSet cuts,
                            std::vector<int> assignees, int agents) {
    if (!cuts.is_necklace && !cuts.points.empty())
        throw std::invalid_argument("consensus cuts on a necklace instance");
    cuts.is_necklace = true;
    if (assignees.size() != cuts.gaps.size() + 1)
        throw std::invalid_argument("assignees length must be cut count + 1");
    Allocation alloc;
    alloc.agents = agents;
    alloc.shares.assign(agents, std::vector<Rat>(neck.n(), Rat(0)));
    long start = 0;  // 0-based bead index
    for (size_t piece = 0; piece < assignees.size(); ++piece) {
        int a = assignees[piece];
        if (a < 0 || a >= agents) throw std::invalid_argument("assignee out of range");
        long end = piece < cuts.gaps.size() ? cuts.gaps[piece] : neck.total_beads();
        for (long t = start; t < end; ++t) alloc.shares[a][neck.beads[t]] += 1;
        start = end;
    }
    alloc.cuts = std::move(cuts);
    alloc.assignees = std::move(assignees);
    return alloc;
}

DiscrepancyReport absolute_discrepancy(const Allocation& alloc) {
    DiscrepancyReport rep;
    rep.overall = 0;
    size_t n = alloc.shares.empty() ? 0 : alloc.shares[0].size();
    rep.per_measure.assign(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        Rat lo = alloc.shares[0][i];
        Rat hi = lo;
        for (int a = 1; a < alloc.agents; ++a) {
            lo = std::min(lo, alloc.shares[a][i]);
            hi = std::max(hi, alloc.shares[a][i]);
        }
        rep.per_measure[i] = hi - lo;
        rep.overall = std::max(rep.overall, rep.per_measure[i]);
    }
    return rep;
}

ValidationReport validate_proper_consensus(const ConsensusInstance&, const Allocation& alloc,
                                           const Rat& epsilon, int k) {
    ValidationReport rep;
    rep.cut_count = alloc.cuts.size();
    rep.bound = 2 * epsilon / k;
    rep.observed = absolute_discrepancy(alloc).overall;
    rep.pass = rep.observed <= rep.bound;
    std::ostringstream os;
    os << "discrepancy " << rat_str(rep.observed) << (rep.pass ? " <= " : " > ")
       << rat_str(rep.bound) << " with " << rep.cut_count << " cuts";
    rep.detail = os.str();
    return rep;
}

ValidationReport validate_proper_necklace(const NecklaceInstance& neck, const Allocation& alloc,
                                          int k) {
    ValidationReport rep;
    rep.cut_count = alloc.cuts.size();
    rep.pass = true;
    rep.bound = 1;
    rep.observed = 0;
    for (size_t i = 0; i < neck.n(); ++i) {
        long m = neck.color_counts[i];
        Rat floor_share(m / k);
        Rat ceil_share((m + k - 1) / k);
        for (int a = 0; a < k; ++a) {
            Rat got = a < alloc.agents ? alloc.shares[a][i] : Rat(0);
            if (got != floor_share && got != ceil_share) {
                rep.pass = false;
                std::ostringstream os;
                os << "agent " << a << " holds " << rat_str(got) << " beads of color "
                   << i + 1 << ", wants " << rat_str(floor_share) << " or "
                   << rat_str(ceil_share);
                rep.detail = os.str();
            }
        }
    }
    if (rep.pass) rep.detail = "every agent within one bead per color";
    rep.observed = absolute_discrepancy(alloc).overall;
    return rep;
}

}  // namespace fairsplit
