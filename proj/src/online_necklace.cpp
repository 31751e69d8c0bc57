#include "fairsplit/online_necklace.hpp"

#include <cmath>
#include <stdexcept>

namespace fairsplit {

namespace {

constexpr double kTieBand = 0x1p-40;
constexpr double kPsiSlack = 1.0 + 0x1p-30;

// Largest c in [0, m_i] with (c/m_i)^3 <= g^3, exact.
long interval_threshold(const Rat& g_cubed, long m_i) {
    mpz_class rhs_num = g_cubed.get_num() * m_i * m_i * m_i;
    const mpz_class& rhs_den = g_cubed.get_den();
    long lo = 0, hi = m_i;
    while (lo < hi) {
        long mid = (lo + hi + 1) / 2;
        mpz_class lhs = mpz_class(mid) * mid * mid * rhs_den;
        if (lhs <= rhs_num)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

}  // namespace

NecklaceBalancer::NecklaceBalancer(std::vector<long> color_counts, int k)
    : k_(k), n_(color_counts.size()), counts_(std::move(color_counts)) {
    if (k_ < 2) throw std::invalid_argument("balancer needs at least two agents");
    long m = 0;
    for (long c : counts_) m = std::max(m, c);
    params_ = NecklaceParams::splitting(n_, k_, m);
    remaining_ = counts_;
    pending_.assign(n_, 0);
    allocated_.assign(n_, 0);
    shares_.assign(k_, std::vector<long>(n_, 0));
    threshold_.resize(n_);
    critical_.assign(n_, 0);
    for (size_t i = 0; i < n_; ++i) {
        threshold_[i] = interval_threshold(params_.g_cubed, counts_[i]);
        // Critical from the start when the remaining-bead rule already fires
        // or when a single bead of the color overflows the cap (threshold 0).
        if (params_.all_critical || threshold_[i] < 1 || critical_trigger(counts_[i]))
            critical_[i] = 1;
    }
    last_psi_ = psi();
}

bool NecklaceBalancer::critical_trigger(long remaining) const {
    Rat cube = Rat(remaining) * remaining * remaining;
    // k = 2: remaining < 20 m^(2/3) log^(1/3); k > 2: remaining <= 10 k^(1/3) m^(2/3)
    return k_ == 2 ? cube < params_.critical_cubed : cube <= params_.critical_cubed;
}

double NecklaceBalancer::psi() const {
    double total = 0;
    for (size_t i = 0; i < n_; ++i) {
        if (critical_[i]) continue;
        double inv_m = 1.0 / static_cast<double>(counts_[i]);
        double slack = std::exp(params_.slack_coeff *
                                (1.0 - static_cast<double>(allocated_[i]) * inv_m));
        double sum = 0;
        for (int a = 0; a < k_; ++a)
            for (int b = a + 1; b < k_; ++b)
                sum += std::cosh(params_.lambda *
                                 static_cast<double>(shares_[a][i] - shares_[b][i]) * inv_m);
        total += sum * slack;
    }
    return total;
}

int NecklaceBalancer::choose_by_psi() const {
    int best = 0;
    double best_psi = 0;
    for (int c = 0; c < k_; ++c) {
        double psi_c = 0;
        for (size_t i = 0; i < n_; ++i) {
            if (critical_[i]) continue;
            double inv_m = 1.0 / static_cast<double>(counts_[i]);
            double slack = std::exp(
                params_.slack_coeff *
                (1.0 - static_cast<double>(allocated_[i] + pending_[i]) * inv_m));
            double sum = 0;
            for (int a = 0; a < k_; ++a)
                for (int b = a + 1; b < k_; ++b) {
                    long x = shares_[a][i] - shares_[b][i];
                    if (a == c) x += pending_[i];
                    if (b == c) x -= pending_[i];
                    sum += std::cosh(params_.lambda * static_cast<double>(x) * inv_m);
                }
            psi_c += sum * slack;
        }
        if (c == 0 || psi_c < best_psi * (1.0 - kTieBand)) {
            best = c;
            best_psi = psi_c;
        }
    }
    return best;
}

int NecklaceBalancer::choose_fewest(int color) const {
    int best = 0;
    for (int a = 1; a < k_; ++a)
        if (shares_[a][color] < shares_[best][color]) best = a;
    return best;
}

void NecklaceBalancer::close_interval(int agent) {
    for (size_t i = 0; i < n_; ++i) {
        if (pending_[i] > threshold_[i]) stats_.interval_beads_ok = false;
        shares_[agent][i] += pending_[i];
        allocated_[i] += pending_[i];
        pending_[i] = 0;
    }
    double p = psi();
    if (p > last_psi_ * kPsiSlack) stats_.psi_monotone = false;
    last_psi_ = p;
}

void NecklaceBalancer::mark_critical(int color) {
    critical_[color] = 1;
    // Dropping a non-negative term from psi cannot raise it.
    last_psi_ = psi();
    // At this moment the assigned bead discrepancy must be small enough for
    // the remaining beads to even it out.
    long lo = shares_[0][color], hi = shares_[0][color];
    for (int a = 1; a < k_; ++a) {
        lo = std::min(lo, shares_[a][color]);
        hi = std::max(hi, shares_[a][color]);
    }
    long diff = hi - lo;
    long m = params_.m;
    // The arriving bead is already routed by the fewest-count rule, so it
    // counts towards the beads available for rebalancing.
    long available = remaining_[color] + 1;
    if (k_ == 2) {
        // |u| m_i <= 10 m^(2/3) log^(1/3)
        Rat cube = Rat(diff) * diff * diff;
        if (cube > Rat(1000) * m * m * params_.log_factor) stats_.critical_checks_ok = false;
        if (available <= diff) stats_.critical_checks_ok = false;
    } else {
        long deficit = 0;
        for (int a = 0; a < k_; ++a) deficit += hi - shares_[a][color];
        if (available < deficit) stats_.critical_checks_ok = false;
    }
}

NecklaceBalancer::Decision NecklaceBalancer::on_bead(int color) {
    if (color < 0 || static_cast<size_t>(color) >= n_)
        throw std::invalid_argument("bead color out of range");
    if (remaining_[color] <= 0) throw std::invalid_argument("more beads than declared");
    --remaining_[color];
    if (!critical_[color] && critical_trigger(remaining_[color])) mark_critical(color);

    Decision d;
    bool has_pending = false;
    for (size_t i = 0; i < n_; ++i)
        if (pending_[i] > 0) has_pending = true;

    if (!first_bead_ && has_pending) {
        if (pending_is_isolated_critical_) {
            // forced cut after an isolated critical bead
            int c_pending = 0;
            for (size_t i = 0; i < n_; ++i)
                if (pending_[i] > 0) c_pending = static_cast<int>(i);
            d.cut = true;
            d.forced = true;
            d.assignee = choose_fewest(c_pending);
        } else if (critical_[color]) {
            // forced cut before a critical bead
            d.cut = true;
            d.forced = true;
            d.assignee = choose_by_psi();
        } else if (pending_[color] + 1 > threshold_[color]) {
            d.cut = true;
            d.assignee = choose_by_psi();
        }
    }
    if (d.cut) {
        close_interval(d.assignee);
        ++stats_.cuts;
        if (d.forced) ++stats_.forced_cuts;
    }
    pending_[color] += 1;
    // a critical bead always starts its own interval: the gap before it was
    // either just cut or already free
    pending_is_isolated_critical_ = critical_[color] != 0;
    first_bead_ = false;
    return d;
}

int NecklaceBalancer::finish() {
    int agent;
    if (pending_is_isolated_critical_) {
        int c_pending = 0;
        for (size_t i = 0; i < n_; ++i)
            if (pending_[i] > 0) c_pending = static_cast<int>(i);
        agent = choose_fewest(c_pending);
    } else {
        agent = choose_by_psi();
    }
    close_interval(agent);
    return agent;
}

namespace {

OnlineNecklaceResult run_necklace(const NecklaceInstance& neck, int k,
                                  const NecklaceRunOptions& options) {
    NecklaceBalancer balancer(neck.color_counts, k);
    OnlineNecklaceResult result;
    std::vector<long> gaps;
    std::vector<int> assignees;
    for (long t = 0; t < neck.total_beads(); ++t) {
        auto d = balancer.on_bead(neck.beads[t]);
        if (options.record_transcript) {
            TranscriptEvent ev;
            ev.kind = TranscriptEvent::RevealBead;
            ev.color = neck.beads[t];
            result.transcript.events.push_back(ev);
        }
        if (d.cut) {
            gaps.push_back(t);
            assignees.push_back(d.assignee);
            if (options.record_transcript) {
                TranscriptEvent cut;
                cut.kind = TranscriptEvent::Cut;
                cut.gap = t;
                result.transcript.events.push_back(cut);
                TranscriptEvent as;
                as.kind = TranscriptEvent::Assign;
                as.agent = d.assignee;
                result.transcript.events.push_back(as);
            }
        }
    }
    assignees.push_back(balancer.finish());
    result.stats = balancer.stats();
    result.transcript.cut_count = result.stats.cuts;
    result.allocation = build_allocation(
        neck, necklace_cuts(std::move(gaps), neck.total_beads()), std::move(assignees), k);
    return result;
}

}  // namespace

OnlineNecklaceResult run_online_necklace_halving(const NecklaceInstance& neck,
                                                 const NecklaceRunOptions& options) {
    return run_necklace(neck, 2, options);
}

OnlineNecklaceResult run_online_necklace_splitting(const NecklaceInstance& neck, int k,
                                                   const NecklaceRunOptions& options) {
    if (k < 2) throw std::invalid_argument("splitting needs at least two agents");
    return run_necklace(neck, k, options);
}

}  // namespace fairsplit
