#pragma once

#include <cstddef>
#include <vector>

#include "fairsplit/allocation.hpp"
#include "fairsplit/necklace.hpp"
#include "fairsplit/params.hpp"
#include "fairsplit/transcript.hpp"

namespace fairsplit {

struct NecklaceRunStats {
    size_t cuts = 0;
    size_t forced_cuts = 0;
    bool psi_monotone = true;
    bool interval_beads_ok = true;   // every interval within the g threshold
    bool critical_checks_ok = true;  // discrepancy and remaining-bead slack at
                                     // the moment a color turns critical
};

struct NecklaceRunOptions {
    bool record_transcript = false;
};

struct OnlineNecklaceResult {
    Allocation allocation;
    NecklaceRunStats stats;
    GameTranscript transcript;
};

// Online necklace balancer: consensus potential over normal colors, forced
// cuts isolating beads of critical colors, which go to the agent holding the
// fewest beads of that color (lowest index on ties). Integer bead state.
class NecklaceBalancer {
public:
    NecklaceBalancer(std::vector<long> color_counts, int k);

    struct Decision {
        bool cut = false;        // cut before the arriving bead
        int assignee = -1;       // agent of the closed interval
        bool forced = false;
    };

    // Reveal the next bead; the returned decision applies to the gap before
    // it. The first bead never yields a cut.
    Decision on_bead(int color);
    // Assign the trailing interval.
    int finish();

    const NecklaceRunStats& stats() const { return stats_; }
    const std::vector<std::vector<long>>& shares() const { return shares_; }
    int agents() const { return k_; }

private:
    NecklaceParams params_;
    int k_;
    size_t n_;
    std::vector<long> counts_;
    std::vector<long> remaining_;
    std::vector<long> threshold_;  // max beads of color i inside one interval
    std::vector<char> critical_;
    std::vector<long> pending_;
    std::vector<std::vector<long>> shares_;
    std::vector<long> allocated_;
    NecklaceRunStats stats_;
    double last_psi_ = 0;
    bool pending_is_isolated_critical_ = false;
    bool first_bead_ = true;

    double psi() const;
    int choose_by_psi() const;
    int choose_fewest(int color) const;
    void close_interval(int agent);
    void mark_critical(int color);
    bool critical_trigger(long remaining) const;
};

OnlineNecklaceResult run_online_necklace_halving(const NecklaceInstance& neck,
                                                 const NecklaceRunOptions& options = {});

OnlineNecklaceResult run_online_necklace_splitting(const NecklaceInstance& neck, int k,
                                                   const NecklaceRunOptions& options = {});

}  // namespace fairsplit
