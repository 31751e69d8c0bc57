#pragma once

#include <cstddef>
#include <vector>

#include "fairsplit/allocation.hpp"
#include "fairsplit/params.hpp"
#include "fairsplit/stream.hpp"
#include "fairsplit/transcript.hpp"

namespace fairsplit {

// Running state of the derandomized balancer. Shares and allocated masses
// are exact; the potential is evaluated in doubles, which only ever picks
// between candidates and never enters a reported quantity.
struct BalancerState {
    BalancerParams params;
    std::vector<std::vector<Rat>> shares;  // [agent][measure]
    std::vector<Rat> allocated;            // s_t per measure
    std::vector<std::vector<double>> dshares;
    std::vector<double> dallocated;

    BalancerState() = default;
    explicit BalancerState(BalancerParams p);

    void apply(const std::vector<Rat>& interval_masses, int agent);
};

// Sum over measures (k = 2) or measures and agent pairs (k > 2) of the
// potential upper bound.
double psi_total(const BalancerState& state);

// Lazy cut rule: cut exactly when waiting one more gap would push some
// measure past g.
bool decide_cut(const BalancerState& state, const std::vector<Rat>& pending,
                const std::vector<Rat>& lookahead);

// Agent minimizing the potential after a hypothetical assignment; ties
// within a 2^-40 relative band go to the lowest index. Pure.
int choose_assignee(const BalancerState& state, const std::vector<Rat>& interval_masses);

struct RunStats {
    size_t cuts = 0;
    bool psi_monotone = true;
    bool interval_masses_ok = true;
    bool state_bounds_ok = true;  // |u_t| <= s_t <= 1 per measure
    double psi_initial = 0;
    double psi_final = 0;
    Rat final_discrepancy;
};

struct RunOptions {
    bool record_transcript = false;
};

struct OnlineRunResult {
    Allocation allocation;
    RunStats stats;
    GameTranscript transcript;
};

// Incremental balancer driven one gap of lookahead at a time; shared by the
// stream runners and the adversary games.
class ConsensusBalancer {
public:
    ConsensusBalancer(size_t n, int k, const Rat& epsilon);

    // Decision at the current position given the next gap's masses. Returns
    // the assignee of the closed interval, or -1 when not cutting.
    int on_gap(const std::vector<Rat>& gap_masses);
    // Assigns everything after the last cut.
    int finish();

    const BalancerState& state() const { return state_; }
    const RunStats& stats() const { return stats_; }
    const std::vector<Rat>& pending() const { return pending_; }

private:
    BalancerState state_;
    std::vector<Rat> pending_;
    RunStats stats_;
    double last_psi_ = 0;

    void apply_interval(int agent);
};

// Theorem-4.1 runner: discrepancy <= epsilon, cuts <= 16 n log2(n) / eps^2.
// Rejects streams violating the per-gap cap.
OnlineRunResult run_online_halving(const OnlineStream& stream, const Rat& epsilon,
                                   const RunOptions& options = {});

// k-agent generalization: discrepancy <= epsilon / k,
// cuts <= 200 k n log2(nk) / eps^2.
OnlineRunResult run_online_splitting(const OnlineStream& stream, const Rat& epsilon, int k,
                                     const RunOptions& options = {});

}  // namespace fairsplit
