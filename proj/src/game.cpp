#include "fairsplit/game.hpp"

#include <stdexcept>

namespace fairsplit {

void PotentialStreamBalancer::begin(size_t n, int k, const Rat& epsilon) {
    balancer_ = std::make_unique<ConsensusBalancer>(n, k, epsilon);
}

int PotentialStreamBalancer::on_gap(const GapReveal& gap) {
    return balancer_->on_gap(gap.masses);
}

int PotentialStreamBalancer::finish() { return balancer_->finish(); }

const RunStats* PotentialStreamBalancer::stats() const {
    return balancer_ ? &balancer_->stats() : nullptr;
}

void IntervalStreamBalancer::begin(size_t, int, const Rat&) {
    since_cut_ = 0;
    has_pending_ = false;
    flip_ = 0;
}

int IntervalStreamBalancer::on_gap(const GapReveal& gap) {
    int assignee = -1;
    if (has_pending_ && since_cut_ >= stride_) {
        assignee = flip_;
        flip_ = 1 - flip_;
        since_cut_ = 0;
    }
    has_pending_ = true;
    since_cut_ += gap.length;
    return assignee;
}

void PotentialNecklaceBalancer::begin(const std::vector<long>& color_counts, int k) {
    balancer_ = std::make_unique<NecklaceBalancer>(color_counts, k);
}

NecklaceBalancer::Decision PotentialNecklaceBalancer::on_bead(int color) {
    return balancer_->on_bead(color);
}

int PotentialNecklaceBalancer::finish() { return balancer_->finish(); }

const NecklaceRunStats* PotentialNecklaceBalancer::stats() const {
    return balancer_ ? &balancer_->stats() : nullptr;
}

void StrideNecklaceBalancer::begin(const std::vector<long>&, int k) {
    pending_ = 0;
    first_ = true;
    flip_ = 0;
    k_ = k;
}

NecklaceBalancer::Decision StrideNecklaceBalancer::on_bead(int) {
    NecklaceBalancer::Decision d;
    if (!first_ && pending_ >= stride_) {
        d.cut = true;
        d.assignee = flip_;
        flip_ = (flip_ + 1) % k_;
        pending_ = 0;
    }
    ++pending_;
    first_ = false;
    return d;
}

namespace {

void abort_game(GameTranscript& tr, const std::string& reason) {
    tr.aborted = true;
    tr.abort_reason = reason;
    TranscriptEvent ev;
    ev.kind = TranscriptEvent::Abort;
    tr.events.push_back(ev);
}

}  // namespace

ConsensusGameResult run_consensus_game(StreamAdversary& adversary,
                                       StreamBalancerStrategy& balancer, int k,
                                       const GameOptions& options) {
    const size_t n = adversary.measures();
    const Rat epsilon = adversary.epsilon();
    BalancerParams params = BalancerParams::splitting(n, k, epsilon);
    ConsensusGameResult result;
    balancer.begin(n, k, epsilon);

    std::vector<Rat> candidates{Rat(0)};
    std::vector<std::vector<Rat>> gap_masses(n);
    std::vector<Rat> revealed(n, Rat(0));
    std::vector<Rat> pending(n, Rat(0));
    std::vector<std::vector<Rat>> shares(k, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> cut_points;
    std::vector<int> assignees;
    Rat pos(0);
    bool last_gap_in_prefix = false;
    // the gap revealed last joins `pending` once the next reveal arrives
    std::vector<Rat> last_masses;

    auto push_reveal = [&](const GapReveal& r) {
        auto& evs = result.transcript.events;
        if (!evs.empty() && evs.back().kind == TranscriptEvent::RevealGap &&
            evs.back().in_prefix == r.in_prefix && evs.back().length == r.length &&
            evs.back().masses == r.masses) {
            ++evs.back().repeat;
            return;
        }
        TranscriptEvent ev;
        ev.kind = TranscriptEvent::RevealGap;
        ev.length = r.length;
        ev.masses = r.masses;
        ev.in_prefix = r.in_prefix;
        evs.push_back(std::move(ev));
    };

    while (auto reveal = adversary.next_gap()) {
        if (reveal->masses.size() != n || reveal->length <= 0) {
            abort_game(result.transcript, "adversary revealed a malformed gap");
            break;
        }
        bool legal = pos + reveal->length <= 1;
        for (size_t i = 0; i < n && legal; ++i) {
            if (reveal->masses[i] < 0 || reveal->masses[i] > params.cap) legal = false;
            if (revealed[i] + reveal->masses[i] > 1) legal = false;
        }
        if (!legal) {
            abort_game(result.transcript, "adversary exceeded a cap or a measure total");
            break;
        }
        push_reveal(*reveal);
        if (!last_masses.empty())
            for (size_t i = 0; i < n; ++i) pending[i] += last_masses[i];

        int assignee = balancer.on_gap(*reveal);
        bool cut = assignee >= 0;
        if (cut) {
            if (assignee >= k || pos == 0) {
                abort_game(result.transcript, "balancer made an illegal cut");
                break;
            }
            for (size_t i = 0; i < n; ++i) {
                shares[assignee][i] += pending[i];
                pending[i] = 0;
            }
            cut_points.push_back(pos);
            assignees.push_back(assignee);
            ++result.transcript.cut_count;
            if (last_gap_in_prefix) ++result.transcript.prefix_cut_count;
            TranscriptEvent cut_ev;
            cut_ev.kind = TranscriptEvent::Cut;
            cut_ev.position = pos;
            cut_ev.in_prefix = last_gap_in_prefix;
            result.transcript.events.push_back(cut_ev);
            TranscriptEvent as;
            as.kind = TranscriptEvent::Assign;
            as.agent = assignee;
            result.transcript.events.push_back(as);
        }
        adversary.on_decision(cut, assignee);

        for (size_t i = 0; i < n; ++i) revealed[i] += reveal->masses[i];
        if (options.materialize_stream)
            for (size_t i = 0; i < n; ++i) gap_masses[i].push_back(reveal->masses[i]);
        pos += reveal->length;
        if (options.materialize_stream) candidates.push_back(pos);
        last_gap_in_prefix = reveal->in_prefix;
        last_masses = std::move(reveal->masses);
    }

    if (!result.transcript.aborted) {
        if (pos != 1) {
            abort_game(result.transcript, "adversary stopped before reaching 1");
        } else {
            for (size_t i = 0; i < n; ++i)
                if (revealed[i] != 1)
                    abort_game(result.transcript, "adversary left measure mass unplaced");
        }
    }
    if (result.transcript.aborted) return result;

    int final_agent = balancer.finish();
    if (final_agent < 0 || final_agent >= k) {
        abort_game(result.transcript, "balancer gave the tail to no agent");
        return result;
    }
    if (!last_masses.empty())
        for (size_t i = 0; i < n; ++i) pending[i] += last_masses[i];
    for (size_t i = 0; i < n; ++i) shares[final_agent][i] += pending[i];
    assignees.push_back(final_agent);
    TranscriptEvent as;
    as.kind = TranscriptEvent::Assign;
    as.agent = final_agent;
    result.transcript.events.push_back(as);

    for (size_t i = 0; i < n; ++i) {
        Rat total(0);
        for (int a = 0; a < k; ++a) total += shares[a][i];
        if (total != 1) {
            abort_game(result.transcript, "share bookkeeping lost mass");
            return result;
        }
    }

    result.allocation.cuts = consensus_cuts(std::move(cut_points));
    result.allocation.assignees = std::move(assignees);
    result.allocation.shares = std::move(shares);
    result.allocation.agents = k;
    result.discrepancy = absolute_discrepancy(result.allocation);
    result.validation.cut_count = result.allocation.cuts.size();
    result.validation.bound = 2 * epsilon / k;
    result.validation.observed = result.discrepancy.overall;
    result.validation.pass = result.validation.observed <= result.validation.bound;

    if (options.materialize_stream) {
        std::vector<StepMeasure> measures;
        for (size_t i = 0; i < n; ++i) {
            std::vector<Rat> dens(gap_masses[i].size());
            for (size_t j = 0; j < dens.size(); ++j)
                dens[j] = gap_masses[i][j] / (candidates[j + 1] - candidates[j]);
            measures.push_back(StepMeasure(candidates, std::move(dens)));
        }
        result.stream = make_explicit_stream(make_instance(std::move(measures)), candidates,
                                             gap_masses, epsilon, k);
        Allocation check = build_allocation(result.stream->base, result.allocation.cuts,
                                            result.allocation.assignees, k);
        if (check.shares != result.allocation.shares) {
            abort_game(result.transcript, "share bookkeeping mismatch against replay");
            return result;
        }
    }
    return result;
}

NecklaceGameResult run_necklace_game(NecklaceGameAdversary& adversary,
                                     NecklaceBalancerStrategy& balancer, int k) {
    const size_t n = adversary.colors();
    std::vector<long> declared = adversary.color_counts();
    NecklaceGameResult result;
    balancer.begin(declared, k);

    std::vector<int> beads;
    std::vector<long> seen(n, 0);
    std::vector<long> gaps;
    std::vector<int> assignees;
    bool prev_bead_in_prefix = false;

    while (auto color = adversary.next_bead()) {
        if (*color < 0 || static_cast<size_t>(*color) >= n ||
            seen[*color] >= declared[*color]) {
            abort_game(result.transcript, "adversary revealed an illegal bead");
            break;
        }
        TranscriptEvent ev;
        ev.kind = TranscriptEvent::RevealBead;
        ev.color = *color;
        ev.in_prefix = adversary.in_prefix();
        result.transcript.events.push_back(ev);

        auto d = balancer.on_bead(*color);
        if (d.cut) {
            if (beads.empty() || d.assignee < 0 || d.assignee >= k) {
                abort_game(result.transcript, "balancer made an illegal cut");
                break;
            }
            gaps.push_back(static_cast<long>(beads.size()));
            assignees.push_back(d.assignee);
            ++result.transcript.cut_count;
            if (prev_bead_in_prefix) ++result.transcript.prefix_cut_count;
            TranscriptEvent cut_ev;
            cut_ev.kind = TranscriptEvent::Cut;
            cut_ev.gap = gaps.back();
            cut_ev.in_prefix = prev_bead_in_prefix;
            result.transcript.events.push_back(cut_ev);
            TranscriptEvent as;
            as.kind = TranscriptEvent::Assign;
            as.agent = d.assignee;
            result.transcript.events.push_back(as);
        }
        adversary.on_decision(d.cut, d.assignee);
        ++seen[*color];
        beads.push_back(*color);
        prev_bead_in_prefix = ev.in_prefix;
    }

    if (!result.transcript.aborted) {
        for (size_t i = 0; i < n; ++i)
            if (seen[i] != declared[i])
                abort_game(result.transcript, "adversary withheld declared beads");
    }
    if (result.transcript.aborted) return result;

    int final_agent = balancer.finish();
    if (final_agent < 0 || final_agent >= k) {
        abort_game(result.transcript, "balancer gave the tail to no agent");
        return result;
    }
    assignees.push_back(final_agent);
    TranscriptEvent as;
    as.kind = TranscriptEvent::Assign;
    as.agent = final_agent;
    result.transcript.events.push_back(as);

    result.necklace = make_necklace(std::move(beads), n);
    result.allocation =
        build_allocation(result.necklace,
                         necklace_cuts(std::move(gaps), result.necklace.total_beads()),
                         std::move(assignees), k);
    result.validation = validate_proper_necklace(result.necklace, result.allocation, k);
    return result;
}

ReplayStreamAdversary::ReplayStreamAdversary(OnlineStream stream)
    : stream_(std::move(stream)) {}

std::optional<GapReveal> ReplayStreamAdversary::next_gap() {
    if (next_ >= stream_.gap_count()) return std::nullopt;
    GapReveal r;
    r.length = stream_.candidate(next_ + 1) - stream_.candidate(next_);
    r.masses.resize(stream_.n());
    for (size_t i = 0; i < stream_.n(); ++i) r.masses[i] = stream_.gap_mass(i, next_);
    ++next_;
    return r;
}

std::optional<int> ReplayNecklaceAdversary::next_bead() {
    if (next_ >= neck_.total_beads()) return std::nullopt;
    return neck_.beads[next_++];
}

}  // namespace fairsplit
