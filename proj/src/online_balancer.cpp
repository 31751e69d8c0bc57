#include "fairsplit/online_balancer.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fairsplit {

namespace {

constexpr double kTieBand = 0x1p-40;
constexpr double kPsiSlack = 1.0 + 0x1p-30;  // rounding slack of the monotone check

double pair_cosh_sum(const BalancerState& st, size_t i) {
    double total = 0;
    int k = st.params.k;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            total += std::cosh(st.params.lambda * (st.dshares[a][i] - st.dshares[b][i]));
    return total;
}

}  // namespace

BalancerState::BalancerState(BalancerParams p) : params(std::move(p)) {
    shares.assign(params.k, std::vector<Rat>(params.n, Rat(0)));
    allocated.assign(params.n, Rat(0));
    dshares.assign(params.k, std::vector<double>(params.n, 0.0));
    dallocated.assign(params.n, 0.0);
}

void BalancerState::apply(const std::vector<Rat>& interval_masses, int agent) {
    for (size_t i = 0; i < params.n; ++i) {
        if (interval_masses[i] == 0) continue;
        shares[agent][i] += interval_masses[i];
        allocated[i] += interval_masses[i];
        double d = rat_double(interval_masses[i]);
        dshares[agent][i] += d;
        dallocated[i] += d;
    }
}

double psi_total(const BalancerState& state) {
    double psi = 0;
    const double coeff = state.params.slack_coeff;
    if (state.params.k == 2) {
        for (size_t i = 0; i < state.params.n; ++i) {
            double u = state.dshares[0][i] - state.dshares[1][i];
            psi += std::cosh(state.params.lambda * u) *
                   std::exp(coeff * (1.0 - state.dallocated[i]));
        }
    } else {
        for (size_t i = 0; i < state.params.n; ++i)
            psi += pair_cosh_sum(state, i) * std::exp(coeff * (1.0 - state.dallocated[i]));
    }
    return psi;
}

bool decide_cut(const BalancerState& state, const std::vector<Rat>& pending,
                const std::vector<Rat>& lookahead) {
    (void)pending;
    for (size_t i = 0; i < state.params.n; ++i)
        if (lookahead[i] > state.params.g) return true;
    return false;
}

int choose_assignee(const BalancerState& state, const std::vector<Rat>& interval_masses) {
    const int k = state.params.k;
    const double lambda = state.params.lambda;
    const double coeff = state.params.slack_coeff;
    std::vector<double> mass_d(state.params.n);
    for (size_t i = 0; i < state.params.n; ++i) mass_d[i] = rat_double(interval_masses[i]);

    int best = 0;
    double best_psi = 0;
    if (k == 2) {
        for (int c = 0; c < 2; ++c) {
            double psi = 0;
            for (size_t i = 0; i < state.params.n; ++i) {
                double u = state.dshares[0][i] - state.dshares[1][i];
                u += c == 0 ? mass_d[i] : -mass_d[i];
                psi += std::cosh(lambda * u) *
                       std::exp(coeff * (1.0 - state.dallocated[i] - mass_d[i]));
            }
            if (c == 0 || psi < best_psi * (1.0 - kTieBand)) {
                best = c;
                best_psi = psi;
            }
        }
        return best;
    }
    // k > 2: only the k-1 pairs involving the candidate change their cosh.
    std::vector<double> base_cosh(state.params.n);
    for (size_t i = 0; i < state.params.n; ++i) base_cosh[i] = pair_cosh_sum(state, i);
    for (int c = 0; c < k; ++c) {
        double psi = 0;
        for (size_t i = 0; i < state.params.n; ++i) {
            double sum = base_cosh[i];
            for (int b = 0; b < k; ++b) {
                if (b == c) continue;
                double x = state.dshares[c][i] - state.dshares[b][i];
                sum -= std::cosh(lambda * x);
                sum += std::cosh(lambda * (x + mass_d[i]));
            }
            psi += sum * std::exp(coeff * (1.0 - state.dallocated[i] - mass_d[i]));
        }
        if (c == 0 || psi < best_psi * (1.0 - kTieBand)) {
            best = c;
            best_psi = psi;
        }
    }
    return best;
}

ConsensusBalancer::ConsensusBalancer(size_t n, int k, const Rat& epsilon)
    : state_(BalancerParams::splitting(n, k, epsilon)), pending_(n, Rat(0)) {
    last_psi_ = psi_total(state_);
    stats_.psi_initial = last_psi_;
}

void ConsensusBalancer::apply_interval(int agent) {
    for (size_t i = 0; i < state_.params.n; ++i) {
        if (pending_[i] > state_.params.g) stats_.interval_masses_ok = false;
    }
    state_.apply(pending_, agent);
    for (size_t i = 0; i < state_.params.n; ++i) {
        if (state_.allocated[i] > 1) stats_.state_bounds_ok = false;
        for (int a = 0; a < state_.params.k; ++a)
            for (int b = a + 1; b < state_.params.k; ++b) {
                Rat u = state_.shares[a][i] - state_.shares[b][i];
                if (rat_abs(u) > state_.allocated[i]) stats_.state_bounds_ok = false;
            }
    }
    double psi = psi_total(state_);
    if (psi > last_psi_ * kPsiSlack) stats_.psi_monotone = false;
    last_psi_ = psi;
    std::fill(pending_.begin(), pending_.end(), Rat(0));
}

int ConsensusBalancer::on_gap(const std::vector<Rat>& gap_masses) {
    std::vector<Rat> lookahead(pending_);
    for (size_t i = 0; i < lookahead.size(); ++i) lookahead[i] += gap_masses[i];
    int assignee = -1;
    bool has_pending = false;
    for (const auto& p : pending_)
        if (p != 0) has_pending = true;
    if (has_pending && decide_cut(state_, pending_, lookahead)) {
        assignee = choose_assignee(state_, pending_);
        apply_interval(assignee);
        ++stats_.cuts;
    }
    for (size_t i = 0; i < pending_.size(); ++i) pending_[i] += gap_masses[i];
    return assignee;
}

int ConsensusBalancer::finish() {
    int assignee = choose_assignee(state_, pending_);
    apply_interval(assignee);
    stats_.psi_final = last_psi_;
    Rat disc(0);
    for (size_t i = 0; i < state_.params.n; ++i)
        for (int a = 0; a < state_.params.k; ++a)
            for (int b = a + 1; b < state_.params.k; ++b)
                disc = std::max(disc, rat_abs(Rat(state_.shares[a][i] - state_.shares[b][i])));
    stats_.final_discrepancy = disc;
    return assignee;
}

namespace {

// Explicit-candidate runner built on the incremental balancer.
OnlineRunResult run_explicit(const OnlineStream& stream, const Rat& epsilon, int k,
                             const RunOptions& options) {
    const size_t n = stream.n();
    ConsensusBalancer balancer(n, k, epsilon);
    OnlineRunResult result;
    std::vector<Rat> cut_points;
    std::vector<int> assignees;
    const size_t gaps = stream.gap_count();
    for (size_t j = 0; j < gaps; ++j) {
        std::vector<Rat> gm(n);
        for (size_t i = 0; i < n; ++i) gm[i] = stream.gap_mass(i, j);
        if (options.record_transcript) {
            TranscriptEvent ev;
            ev.kind = TranscriptEvent::RevealGap;
            ev.length = stream.candidate(j + 1) - stream.candidate(j);
            ev.masses = gm;
            result.transcript.events.push_back(std::move(ev));
        }
        int assignee = balancer.on_gap(gm);
        if (assignee >= 0) {
            cut_points.push_back(stream.candidate(j));
            assignees.push_back(assignee);
            if (options.record_transcript) {
                TranscriptEvent cut;
                cut.kind = TranscriptEvent::Cut;
                cut.position = stream.candidate(j);
                result.transcript.events.push_back(std::move(cut));
                TranscriptEvent as;
                as.kind = TranscriptEvent::Assign;
                as.agent = assignee;
                result.transcript.events.push_back(std::move(as));
            }
        }
    }
    assignees.push_back(balancer.finish());
    if (options.record_transcript) {
        TranscriptEvent as;
        as.kind = TranscriptEvent::Assign;
        as.agent = assignees.back();
        result.transcript.events.push_back(std::move(as));
    }
    result.stats = balancer.stats();
    result.transcript.cut_count = result.stats.cuts;
    result.allocation = build_allocation(stream.base, consensus_cuts(std::move(cut_points)),
                                         std::move(assignees), k);
    return result;
}

// Integer fast path for gridded streams: all masses become int64 numerators
// over D = grid * lcm(density denominators). Falls back to the explicit
// runner when D would overflow.
struct GridTables {
    bool ok = false;
    long long D = 0;
    double invD = 0;
    // per measure: breakpoint grid indices, per-gap unit masses, prefix units
    std::vector<std::vector<long long>> bp;
    std::vector<std::vector<long long>> unit;
    std::vector<std::vector<long long>> prefix;
    long long g_units = 0;  // floor(g * D); mass <= g iff units <= g_units
};

GridTables build_tables(const OnlineStream& stream, const Rat& g) {
    GridTables t;
    const uint64_t M = *stream.grid;
    mpz_class denom_lcm = 1;
    for (const auto& m : stream.base.measures)
        for (const auto& d : m.densities())
            mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), d.get_den_mpz_t());
    mpz_class D = denom_lcm * static_cast<unsigned long>(M);
    if (!D.fits_slong_p() || D.get_si() > (1LL << 62) / 4) return t;
    t.D = D.get_si();
    t.invD = 1.0 / static_cast<double>(t.D);
    const size_t n = stream.n();
    t.bp.resize(n);
    t.unit.resize(n);
    t.prefix.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const auto& m = stream.base.measures[i];
        size_t segs = m.segments();
        t.bp[i].resize(segs + 1);
        t.unit[i].resize(segs);
        t.prefix[i].resize(segs + 1);
        t.prefix[i][0] = 0;
        for (size_t j = 0; j <= segs; ++j) {
            Rat scaled = m.breakpoints()[j] * static_cast<long>(M);
            t.bp[i][j] = scaled.get_num().get_si();
        }
        for (size_t j = 0; j < segs; ++j) {
            // density * lcm is integral; one gap carries density/M mass.
            Rat u = m.densities()[j] * Rat(denom_lcm);
            if (u.get_den() != 1) throw std::logic_error("lcm failed to clear denominator");
            mpz_class un = u.get_num();
            if (!un.fits_slong_p()) return t;
            t.unit[i][j] = un.get_si();
            t.prefix[i][j + 1] =
                t.prefix[i][j] + t.unit[i][j] * (t.bp[i][j + 1] - t.bp[i][j]);
        }
    }
    Rat gd = g * Rat(D);
    t.g_units = rat_floor(gd).get_si();
    t.ok = true;
    return t;
}

OnlineRunResult run_gridded(const OnlineStream& stream, const Rat& epsilon, int k,
                            const RunOptions& options) {
    BalancerParams params = BalancerParams::splitting(stream.n(), k, epsilon);
    GridTables tab = build_tables(stream, params.g);
    if (!tab.ok) return run_explicit(stream, epsilon, k, options);

    const size_t n = stream.n();
    const long long M = static_cast<long long>(*stream.grid);
    const double lambda = params.lambda;
    const double coeff = params.slack_coeff;

    // cumulative units of measure i on [0, idx/M]
    auto cum = [&](size_t i, long long idx) -> long long {
        const auto& bp = tab.bp[i];
        size_t lo = 0, hi = bp.size() - 1;
        while (lo + 1 < hi) {
            size_t mid = (lo + hi) / 2;
            if (bp[mid] <= idx)
                lo = mid;
            else
                hi = mid;
        }
        return tab.prefix[i][lo] + tab.unit[i][lo] * (idx - bp[lo]);
    };
    // smallest index s with cum(i, s) > target, or M+1 if none
    auto first_above = [&](size_t i, long long target) -> long long {
        const auto& pf = tab.prefix[i];
        if (pf.back() <= target) return M + 1;
        size_t seg = 0;
        size_t lo = 0, hi = pf.size() - 1;
        while (lo + 1 < hi) {  // first breakpoint with prefix > target
            size_t mid = (lo + hi) / 2;
            if (pf[mid] > target)
                hi = mid;
            else
                lo = mid;
        }
        seg = lo;  // prefix[seg] <= target < prefix[seg+1]
        long long inside = (target - pf[seg]) / tab.unit[i][seg];
        return tab.bp[i][seg] + inside + 1;
    };

    std::vector<std::vector<long long>> shares(k, std::vector<long long>(n, 0));
    std::vector<long long> allocated(n, 0);
    std::vector<long long> cum_at_cut(n, 0);
    RunStats stats;
    stats.psi_initial = static_cast<double>(n) * (k == 2 ? 1 : k * (k - 1) / 2) *
                        std::exp(coeff);
    double last_psi = stats.psi_initial;

    std::vector<Rat> cut_points;
    std::vector<int> assignees;
    std::vector<long long> interval(n);
    std::vector<double> interval_d(n);

    auto choose_and_apply = [&](long long at_idx, bool is_cut) {
        for (size_t i = 0; i < n; ++i) {
            long long c = cum(i, at_idx);
            interval[i] = c - cum_at_cut[i];
            interval_d[i] = static_cast<double>(interval[i]) * tab.invD;
            if (interval[i] > tab.g_units) stats.interval_masses_ok = false;
            cum_at_cut[i] = c;
        }
        int best = 0;
        double best_psi = 0;
        for (int c = 0; c < k; ++c) {
            double psi = 0;
            for (size_t i = 0; i < n; ++i) {
                double expo = std::exp(
                    coeff * (1.0 - (static_cast<double>(allocated[i]) + interval[i]) * tab.invD));
                double sum = 0;
                for (int a = 0; a < k; ++a)
                    for (int b = a + 1; b < k; ++b) {
                        double x = static_cast<double>(shares[a][i] - shares[b][i]);
                        if (a == c) x += interval[i];
                        if (b == c) x -= interval[i];
                        sum += std::cosh(lambda * x * tab.invD);
                    }
                psi += sum * expo;
            }
            if (c == 0 || psi < best_psi * (1.0 - kTieBand)) {
                best = c;
                best_psi = psi;
            }
        }
        for (size_t i = 0; i < n; ++i) {
            shares[best][i] += interval[i];
            allocated[i] += interval[i];
        }
        if (best_psi > last_psi * kPsiSlack) stats.psi_monotone = false;
        last_psi = best_psi;
        if (is_cut) {
            ++stats.cuts;
            cut_points.push_back(rat(static_cast<long>(at_idx), static_cast<long>(M)));
        }
        assignees.push_back(best);
    };

    long long c_idx = 0;
    while (true) {
        // Earliest candidate where one more gap would push a measure past g.
        long long next_cut = M + 1;
        for (size_t i = 0; i < n; ++i) {
            long long target = cum(i, c_idx) + tab.g_units;
            long long s = first_above(i, target);
            if (s <= M) next_cut = std::min(next_cut, s - 1);
        }
        if (next_cut > M - 1) break;  // no further trigger; tail is one interval
        if (next_cut <= c_idx)
            throw std::logic_error("gap exceeding g although caps were validated");
        choose_and_apply(next_cut, true);
        c_idx = next_cut;
    }
    choose_and_apply(M, false);

    stats.psi_final = last_psi;
    Rat disc(0);
    for (size_t i = 0; i < n; ++i)
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) {
                long long diff = shares[a][i] - shares[b][i];
                disc = std::max(disc, rat_abs(rat(static_cast<long>(diff),
                                                  static_cast<long>(tab.D))));
            }
    stats.final_discrepancy = disc;

    OnlineRunResult result;
    result.stats = stats;
    result.transcript.cut_count = stats.cuts;
    result.allocation = build_allocation(stream.base, consensus_cuts(std::move(cut_points)),
                                         std::move(assignees), k);
    return result;
}

OnlineRunResult run_stream(const OnlineStream& stream, const Rat& epsilon, int k,
                           const RunOptions& options) {
    CapReport caps = validate_stream_caps(stream, epsilon);
    if (!caps.pass)
        throw std::invalid_argument("stream violates the online model cap: " +
                                    caps.violations.front().describe());
    if (stream.grid && !options.record_transcript)
        return run_gridded(stream, epsilon, k, options);
    return run_explicit(stream, epsilon, k, options);
}

}  // namespace

OnlineRunResult run_online_halving(const OnlineStream& stream, const Rat& epsilon,
                                   const RunOptions& options) {
    return run_stream(stream, epsilon, 2, options);
}

OnlineRunResult run_online_splitting(const OnlineStream& stream, const Rat& epsilon, int k,
                                     const RunOptions& options) {
    if (k < 2) throw std::invalid_argument("splitting needs at least two agents");
    return run_stream(stream, epsilon, k, options);
}

}  // namespace fairsplit
