#include "fairsplit/brute_force.hpp"

#include <cstdlib>
#include <stdexcept>

namespace fairsplit {

BruteForceResult brute_force_checker(const NecklaceInstance& neck, long max_beads) {
    const long T = neck.total_beads();
    if (T > max_beads) throw std::domain_error("necklace too large for brute force");
    const size_t n = neck.n();
    BruteForceResult result;
    // cut mask over the T-1 interior gaps
    for (long mask = 0; mask < (1L << (T - 1)); ++mask) {
        std::vector<long> gaps;
        for (long g = 1; g < T; ++g)
            if (mask & (1L << (g - 1))) gaps.push_back(g);
        size_t pieces = gaps.size() + 1;
        for (long assign = 0; assign < (1L << pieces); ++assign) {
            std::vector<long> c0(n, 0);
            long start = 0;
            for (size_t p = 0; p < pieces; ++p) {
                long end = p < gaps.size() ? gaps[p] : T;
                if (!(assign & (1L << p)))
                    for (long t = start; t < end; ++t) ++c0[neck.beads[t]];
                start = end;
            }
            bool proper = true;
            for (size_t i = 0; i < n && proper; ++i) {
                long lo = neck.color_counts[i] / 2;
                long hi = (neck.color_counts[i] + 1) / 2;
                if (c0[i] != lo && c0[i] != hi) proper = false;
            }
            if (!proper) continue;
            BruteSolution sol;
            sol.gaps = gaps;
            sol.assignees.reserve(pieces);
            for (size_t p = 0; p < pieces; ++p)
                sol.assignees.push_back((assign & (1L << p)) ? 1 : 0);
            if (result.min_cuts < 0 || static_cast<long>(gaps.size()) < result.min_cuts)
                result.min_cuts = static_cast<long>(gaps.size());
            result.proper.push_back(std::move(sol));
        }
    }
    return result;
}

bool brute_force_is_proper(const NecklaceInstance& neck, const Allocation& alloc, int k) {
    const long T = neck.total_beads();
    std::vector<std::vector<long>> counts(k, std::vector<long>(neck.n(), 0));
    long start = 0;
    for (size_t p = 0; p < alloc.assignees.size(); ++p) {
        long end = p < alloc.cuts.gaps.size() ? alloc.cuts.gaps[p] : T;
        if (end < start || end > T) return false;
        int a = alloc.assignees[p];
        if (a < 0 || a >= k) return false;
        for (long t = start; t < end; ++t) ++counts[a][neck.beads[t]];
        start = end;
    }
    if (start != T) return false;
    for (size_t i = 0; i < neck.n(); ++i) {
        long lo = neck.color_counts[i] / k;
        long hi = (neck.color_counts[i] + k - 1) / k;
        for (int a = 0; a < k; ++a)
            if (counts[a][i] != lo && counts[a][i] != hi) return false;
    }
    return true;
}

}  // namespace fairsplit
