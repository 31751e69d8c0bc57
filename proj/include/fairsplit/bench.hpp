#pragma once

#include <string>
#include <vector>

#include "fairsplit/report.hpp"

namespace fairsplit {

// One guarantee of the library checked end to end at desk scale. Every
// tolerance is pinned here; the rows feed the report writer.
struct CriterionOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
    std::vector<BenchRow> rows;
    double seconds = 0;
};

CriterionOutcome criterion_type1();              // min share, cut and call bounds
CriterionOutcome criterion_online_halving();     // discrepancy, cuts, psi
CriterionOutcome criterion_online_splitting();   // k agents
CriterionOutcome criterion_offline_halving();    // share window, cuts, reductions
CriterionOutcome criterion_offline_necklace();   // one-bead discrepancy + brute force
CriterionOutcome criterion_online_necklace();    // proper, cut bound
CriterionOutcome criterion_adversary_games();    // lower-bound games + certificates
CriterionOutcome criterion_balanced_sequences(); // prefix deviation
CriterionOutcome criterion_circular_two_color(); // exact split, 2k-2 cuts
CriterionOutcome criterion_punishment();         // exhaustive sign patterns

// All criteria in order; independent runs inside each criterion fan out over
// `threads` workers and merge by index.
std::vector<CriterionOutcome> run_all_criteria(unsigned threads = 0);

}  // namespace fairsplit
