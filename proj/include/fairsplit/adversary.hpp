#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "fairsplit/game.hpp"
#include "fairsplit/rational.hpp"
#include "fairsplit/transcript.hpp"

namespace fairsplit {

// Quadratic drift potential of the two tracked discrepancies:
// x^2 + y^2 + 5 scale (x - y).
Rat potential_M(const Rat& x, const Rat& y, const Rat& scale);

// Binary sequence whose every prefix carries ceil(gamma j) ones, so the ones
// count deviates from gamma j by less than 1.
std::vector<int> balanced_binary_sequence(const Rat& gamma, size_t length);

// Uniform block: tiles (from, to] with `parts` equal gaps, each carrying
// totals/parts per measure, every gap mass at most cap.
struct UniformBlock {
    Rat length;
    std::vector<Rat> masses;
    long parts = 0;
};

UniformBlock uniform_block_spec(const Rat& from, const Rat& to,
                                const std::vector<Rat>& totals, const Rat& cap);

std::vector<GapReveal> uniform_block(const Rat& from, const Rat& to,
                                     const std::vector<Rat>& totals, const Rat& cap,
                                     bool in_prefix);

// Punishment tail of the two-measure lower bound: distributes the offending
// measure's residue and the untouched reserve uniformly past the cut.
// Requires |x| >= 2 epsilon.
std::vector<GapReveal> punishment_tail(const Rat& t, const Rat& x, const Rat& epsilon,
                                       const Rat& offending_rest, const Rat& cap);

// Exhaustive form of the punishment argument: over every cut pattern of up
// to max_cuts cuts at grid positions and every sign pattern, no completion
// gets |reserve discrepancy| < eps and |offending discrepancy| <= eps.
bool punishment_unbeatable(const Rat& x, const Rat& epsilon, const Rat& offending_rest,
                           int grid_cells, int max_cuts);

// Exhaustive check of the necklace punishment: every completion of `tail`
// (0 = offending color, 1 = reserve) using fewer than `intervals` intervals
// fails to balance both colors, starting from an offending-color deficit of
// `delta` beads and totals m0/m1 per color.
bool necklace_tail_needs_intervals(const std::vector<int>& tail, long delta, long m0,
                                   long m1, long intervals);

// Interactive adversaries of the online lower bounds. All bookkeeping is
// exact; punishment fires only when the trigger condition holds.

// n = 2: density-1 gaps on measure 0, measure 1 reserved; punishes when the
// discrepancy on measure 0 reaches 2 epsilon after a cut.
class ConsensusAdversaryN2 : public StreamAdversary {
public:
    explicit ConsensusAdversaryN2(const Rat& epsilon);
    size_t measures() const override { return 2; }
    Rat epsilon() const override { return epsilon_; }
    std::optional<GapReveal> next_gap() override;
    void on_decision(bool cut, int assignee) override;

    bool punished() const { return punished_; }
    const Rat& discrepancy() const { return x_; }

private:
    Rat epsilon_, cap_, gap_len_, tail_start_;
    Rat frontier_ = Rat(0);
    Rat x_ = Rat(0);
    std::vector<Rat> pending_{Rat(0), Rat(0)};
    std::optional<GapReveal> last_;
    UniformBlock block_;
    long block_left_ = 0;
    bool punished_ = false;
    bool main_phase_ = true;

    void fold_last();
};

// n = 3: measures 0 and 1 revealed in gaps exactly proportional to
// (10 eps - 4y, 10 eps + 4x), measure 2 reserved. Gap masses carry a dyadic
// scale so state denominators stay powers of two; gap lengths are one fixed
// dyadic value throughout the main phase. The potential gains alpha^2/2 per
// cut inside the feasible prefix, up to the exactly-accounted contribution
// of the one gap already revealed when a cut lands (see the certifier).
class ConsensusAdversaryN3 : public StreamAdversary {
public:
    explicit ConsensusAdversaryN3(const Rat& epsilon);
    size_t measures() const override { return 3; }
    Rat epsilon() const override { return epsilon_; }
    std::optional<GapReveal> next_gap() override;
    void on_decision(bool cut, int assignee) override;

    bool punished() const { return punished_; }
    Rat gamma() const;  // current color-0 proportion m0/(m0+m1)
    Rat state_x() const { return x_; }
    Rat state_y() const { return y_; }

private:
    Rat epsilon_, cap_, gap_len_;
    Rat frontier_ = Rat(0);
    Rat x_ = Rat(0), y_ = Rat(0);
    Rat m0_, m1_;  // masses of every gap in the current epoch
    Rat pend0_ = Rat(0), pend1_ = Rat(0);
    Rat rev0_ = Rat(0), rev1_ = Rat(0), rev2_ = Rat(0);
    std::optional<GapReveal> last_;
    UniformBlock block_;
    long block_left_ = 0;
    bool punished_ = false;
    bool main_phase_ = true;

    void fold_last();
    void recompute_epoch_masses();
    void dump_rest(bool punish);
};

// Necklace, n = 2: color-0 beads with color 1 reserved; punishes via the
// balanced-sequence tail at gamma = m / (alpha + m) once the bead
// discrepancy reaches ceil(sqrt(m)).
class NecklaceAdversaryN2 : public NecklaceGameAdversary {
public:
    explicit NecklaceAdversaryN2(long m);
    size_t colors() const override { return 2; }
    std::vector<long> color_counts() const override { return {m_, m_}; }
    std::optional<int> next_bead() override;
    void on_decision(bool cut, int assignee) override;
    bool in_prefix() const override { return last_in_prefix_; }

    bool punished() const { return punished_; }
    long delta() const { return delta_; }

private:
    long m_, delta_;
    bool last_in_prefix_ = false;
    long emitted0_ = 0, emitted1_ = 0;
    long pending0_ = 0;
    std::optional<int> last_;
    long x_ = 0;
    std::deque<int> queue_;
    bool punished_ = false;
    bool main_phase_ = true;

    void fold_last();
};

// Necklace, n = 3: first m + 4 ceil(m^(2/3)) beads of colors 0/1 ordered by
// state-dependent balanced sequences, color 2 reserved; punishes at bead
// discrepancy above ceil(m^(2/3)).
class NecklaceAdversaryN3 : public NecklaceGameAdversary {
public:
    explicit NecklaceAdversaryN3(long m);
    size_t colors() const override { return 3; }
    std::vector<long> color_counts() const override { return {m_, m_, m_}; }
    std::optional<int> next_bead() override;
    void on_decision(bool cut, int assignee) override;
    bool in_prefix() const override { return last_in_prefix_; }

    bool punished() const { return punished_; }
    long scale() const { return scale_; }
    const Rat& gamma() const { return gamma_; }
    bool exhausted_cleanly() const { return !clamped_; }

    // Remaining block reordering for the current state; exposed so the
    // prefix-deviation property is directly testable.
    std::vector<int> plan_block(size_t length) const;

private:
    long m_, scale_, block_len_;
    long emitted_[3] = {0, 0, 0};
    long pending_[3] = {0, 0, 0};
    std::optional<int> last_;
    long x_ = 0, y_ = 0;
    Rat gamma_;
    std::deque<int> queue_;   // planned reveals for the current phase
    long block_emitted_ = 0;
    bool punished_ = false;
    bool in_block_ = true;
    bool clamped_ = false;
    bool last_in_prefix_ = false;

    void fold_last();
    void recompute_gamma();
    void replan_block();
    void start_punishment(int offending);
    void start_rest();
};

struct MCertification {
    bool ok = true;
    size_t checked_cuts = 0;
    Rat total_slack;  // consensus: exact sum of committed-gap corrections
};

// Replays a consensus transcript and certifies, for every cut whose whole
// interval lies in the feasible prefix, that M grew by at least
// alpha^2/2 - slack, alpha being the interval's combined active mass. The
// slack is the exactly computed cross term of the interval's first gap: that
// gap is revealed before the cut opening the interval is decided, so it is
// proportioned to the previous state (zero slack when states agree). All
// later gaps cancel exactly.
MCertification certify_m_growth_consensus(const GameTranscript& transcript,
                                          const Rat& epsilon);

// Necklace analogue: growth at least j^2/2 - 15 scale for a cut of j beads,
// checked while the pre-cut state stays inside the |x|,|y| <= scale box.
MCertification certify_m_growth_necklace(const GameTranscript& transcript, long scale);

}  // namespace fairsplit
