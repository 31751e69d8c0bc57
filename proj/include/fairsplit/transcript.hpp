#pragma once

#include <cstddef>
#include <vector>

#include "fairsplit/rational.hpp"

namespace fairsplit {

// Alternating record of reveals and balancer decisions in the online model.
// Identical consecutive reveals are run-length encoded via `repeat`; a
// repeated reveal implies the balancer passed on every one of them except
// possibly the last (a cut always closes a run).
struct TranscriptEvent {
    enum Kind { RevealGap, RevealBead, Cut, Assign, Abort } kind;
    Rat length;                 // RevealGap
    std::vector<Rat> masses;    // RevealGap, per measure
    int color = -1;             // RevealBead (0-based)
    Rat position;               // Cut, consensus candidate point
    long gap = -1;              // Cut, necklace gap index
    int agent = -1;             // Assign
    bool in_prefix = false;     // reveal lies in the adversary's feasible prefix
    unsigned long repeat = 1;   // reveals only
};

struct GameTranscript {
    std::vector<TranscriptEvent> events;
    size_t cut_count = 0;
    size_t prefix_cut_count = 0;  // cuts whose interval lies in the feasible prefix
    bool aborted = false;
    std::string abort_reason;
};

}  // namespace fairsplit
