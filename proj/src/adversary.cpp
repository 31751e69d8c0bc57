#include "fairsplit/adversary.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairsplit {

Rat potential_M(const Rat& x, const Rat& y, const Rat& scale) {
    return x * x + y * y + 5 * scale * (x - y);
}

std::vector<int> balanced_binary_sequence(const Rat& gamma, size_t length) {
    if (gamma < 0 || gamma > 1) throw std::invalid_argument("gamma outside [0,1]");
    std::vector<int> seq(length);
    mpz_class prev = 0;
    for (size_t j = 1; j <= length; ++j) {
        // ceil(gamma j)
        mpz_class num = gamma.get_num() * static_cast<long>(j);
        mpz_class cur;
        mpz_cdiv_q(cur.get_mpz_t(), num.get_mpz_t(), gamma.get_den_mpz_t());
        seq[j - 1] = static_cast<int>(mpz_class(cur - prev).get_si());
        prev = cur;
    }
    return seq;
}

UniformBlock uniform_block_spec(const Rat& from, const Rat& to,
                                const std::vector<Rat>& totals, const Rat& cap) {
    if (!(from < to)) throw std::invalid_argument("empty block");
    UniformBlock block;
    block.parts = 1;
    for (const auto& t : totals) {
        if (t < 0) throw std::invalid_argument("negative residual mass");
        if (t == 0) continue;
        long need = static_cast<long>(rat_ceil(Rat(t / cap)).get_si());
        block.parts = std::max(block.parts, need);
    }
    block.length = (to - from) / block.parts;
    block.masses.reserve(totals.size());
    for (const auto& t : totals) block.masses.push_back(Rat(t / block.parts));
    return block;
}

std::vector<GapReveal> uniform_block(const Rat& from, const Rat& to,
                                     const std::vector<Rat>& totals, const Rat& cap,
                                     bool in_prefix) {
    UniformBlock block = uniform_block_spec(from, to, totals, cap);
    std::vector<GapReveal> gaps(block.parts);
    for (long j = 0; j < block.parts; ++j) {
        gaps[j].length = block.length;
        gaps[j].in_prefix = in_prefix;
        gaps[j].masses = block.masses;
    }
    return gaps;
}

std::vector<GapReveal> punishment_tail(const Rat& t, const Rat& x, const Rat& epsilon,
                                       const Rat& offending_rest, const Rat& cap) {
    if (rat_abs(x) < 2 * epsilon)
        throw std::domain_error("punishment requires discrepancy at least 2 epsilon");
    if (t < 0 || t >= 1) throw std::domain_error("cut point outside [0,1)");
    return uniform_block(t, Rat(1), {offending_rest, Rat(1)}, cap, false);
}

bool punishment_unbeatable(const Rat& x, const Rat& epsilon, const Rat& offending_rest,
                           int grid_cells, int max_cuts) {
    if (rat_abs(x) < 2 * epsilon)
        throw std::domain_error("punishment requires discrepancy at least 2 epsilon");
    const int G = grid_cells;
    // verdicts by the signed sum S of interval lengths, in 1/G units
    std::vector<char> beats(2 * G + 1, 0);
    for (int s = -G; s <= G; ++s) {
        Rat S = rat(s, G);
        Rat d_reserve = rat_abs(S);
        Rat d_off = rat_abs(Rat(x + offending_rest * S));
        beats[s + G] = d_reserve < epsilon && d_off <= epsilon;
    }
    // exhaustive: all cut subsets of the interior grid points, all signs
    const int points = G - 1;
    for (long mask = 0; mask < (1L << points); ++mask) {
        if (__builtin_popcountl(mask) > max_cuts) continue;
        std::vector<int> lens;
        int prev = 0;
        for (int p = 1; p <= points; ++p)
            if (mask & (1L << (p - 1))) {
                lens.push_back(p - prev);
                prev = p;
            }
        lens.push_back(G - prev);
        const size_t pieces = lens.size();
        for (long signs = 0; signs < (1L << pieces); ++signs) {
            int S = 0;
            for (size_t p = 0; p < pieces; ++p)
                S += (signs & (1L << p)) ? lens[p] : -lens[p];
            if (beats[S + G]) return false;
        }
    }
    return true;
}

bool necklace_tail_needs_intervals(const std::vector<int>& tail, long delta, long m0,
                                   long m1, long intervals) {
    const long len = static_cast<long>(tail.size());
    std::vector<long> pre0(len + 1, 0), pre1(len + 1, 0);
    for (long t = 0; t < len; ++t) {
        pre0[t + 1] = pre0[t] + (tail[t] == 0 ? 1 : 0);
        pre1[t + 1] = pre1[t] + (tail[t] == 1 ? 1 : 0);
    }
    (void)m0;
    (void)m1;
    // pieces and signs such that both color differences land within one bead
    std::vector<long> cuts;
    auto proper_with = [&](const std::vector<long>& bounds) {
        // bounds: piece end positions, ascending, last == len
        size_t pieces = bounds.size();
        for (long signs = 0; signs < (1L << pieces); ++signs) {
            long d0 = delta, d1 = 0;
            long start = 0;
            for (size_t p = 0; p < pieces; ++p) {
                long end = bounds[p];
                long sgn = (signs & (1L << p)) ? 1 : -1;
                d0 += sgn * (pre0[end] - pre0[start]);
                d1 += sgn * (pre1[end] - pre1[start]);
                start = end;
            }
            if (std::abs(d0) <= 1 && std::abs(d1) <= 1) return true;
        }
        return false;
    };
    // enumerate cut position subsets of size < intervals
    std::vector<long> bounds;
    auto rec = [&](auto&& self, long next_pos, long remaining) -> bool {
        bounds.push_back(len);
        bool beaten = proper_with(bounds);
        bounds.pop_back();
        if (beaten) return true;
        if (remaining == 0) return false;
        for (long p = next_pos; p < len; ++p) {
            bounds.push_back(p);
            bool r = self(self, p + 1, remaining - 1);
            bounds.pop_back();
            if (r) return true;
        }
        return false;
    };
    return !rec(rec, 1, intervals - 2);
}

// ---------------------------------------------------------------- n = 2

ConsensusAdversaryN2::ConsensusAdversaryN2(const Rat& epsilon) : epsilon_(epsilon) {
    if (epsilon_ <= 0 || epsilon_ > rat(1, 4))
        throw std::invalid_argument("adversary wants epsilon in (0, 1/4]");
    cap_ = epsilon_ * epsilon_ / (100 * log_term(2));
    gap_len_ = cap_ / 2;
    tail_start_ = 1 - cap_;
}

void ConsensusAdversaryN2::fold_last() {
    if (!last_) return;
    for (size_t i = 0; i < 2; ++i) pending_[i] += last_->masses[i];
    last_.reset();
}

std::optional<GapReveal> ConsensusAdversaryN2::next_gap() {
    fold_last();
    GapReveal r;
    if (block_left_ > 0) {
        r.length = block_.length;
        r.masses = block_.masses;
        --block_left_;
    } else if (main_phase_ && frontier_ < tail_start_) {
        Rat len = std::min(gap_len_, Rat(tail_start_ - frontier_));
        r.length = len;
        r.masses = {len, Rat(0)};  // density 1 on measure 0
        r.in_prefix = true;
    } else if (frontier_ < 1) {
        // benign completion: measure 1 plus the rest of measure 0
        main_phase_ = false;
        block_ = uniform_block_spec(frontier_, Rat(1), {Rat(1 - frontier_), Rat(1)}, cap_);
        block_left_ = block_.parts - 1;
        r.length = block_.length;
        r.masses = block_.masses;
    } else {
        return std::nullopt;
    }
    frontier_ += r.length;
    last_ = r;
    return r;
}

void ConsensusAdversaryN2::on_decision(bool cut, int assignee) {
    if (!cut) return;
    x_ += assignee == 0 ? pending_[0] : Rat(-pending_[0]);
    pending_ = {Rat(0), Rat(0)};
    if (main_phase_ && !punished_ && rat_abs(x_) >= 2 * epsilon_) {
        punished_ = true;
        main_phase_ = false;
        // everything after the frontier becomes the uniform punishment tail
        block_ = uniform_block_spec(frontier_, Rat(1), {Rat(1 - frontier_), Rat(1)}, cap_);
        block_left_ = block_.parts;
    }
}

// ---------------------------------------------------------------- n = 3

ConsensusAdversaryN3::ConsensusAdversaryN3(const Rat& epsilon) : epsilon_(epsilon) {
    if (epsilon_ <= 0 || epsilon_ > rat(1, 4))
        throw std::invalid_argument("adversary wants epsilon in (0, 1/4]");
    cap_ = epsilon_ * epsilon_ / (100 * log_term(3));
    // fixed dyadic gap length, at most cap/4
    long r = ceil_log2(Rat(4 / cap_));
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(r));
    gap_len_ = Rat(mpz_class(1), den);
    recompute_epoch_masses();
}

Rat ConsensusAdversaryN3::gamma() const { return m0_ / (m0_ + m1_); }

// Gap masses exactly proportional to (10 eps - 4y, 10 eps + 4x) with a
// dyadic weight, combined mass in (cap/2, cap].
void ConsensusAdversaryN3::recompute_epoch_masses() {
    Rat a0 = 10 * epsilon_ - 4 * y_;
    Rat a1 = 10 * epsilon_ + 4 * x_;
    Rat sum = a0 + a1;
    mpz_class common;
    mpz_lcm(common.get_mpz_t(), a0.get_den_mpz_t(), a1.get_den_mpz_t());
    // smallest power of two with sum * common / 2^r <= cap
    long r = ceil_log2(Rat(sum * Rat(common) / cap_));
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(r));
    Rat weight(common, den);
    weight.canonicalize();
    m0_ = a0 * weight;
    m1_ = a1 * weight;
}

void ConsensusAdversaryN3::fold_last() {
    if (!last_) return;
    pend0_ += last_->masses[0];
    pend1_ += last_->masses[1];
    last_.reset();
}

void ConsensusAdversaryN3::dump_rest(bool punish) {
    main_phase_ = false;
    punished_ = punish;
    std::vector<Rat> rest{Rat(1 - rev0_), Rat(1 - rev1_), Rat(1 - rev2_)};
    block_ = uniform_block_spec(frontier_, Rat(1), rest, cap_);
    block_left_ = block_.parts;
}

std::optional<GapReveal> ConsensusAdversaryN3::next_gap() {
    fold_last();
    GapReveal r;
    if (block_left_ > 0) {
        r.length = block_.length;
        r.masses = block_.masses;
        --block_left_;
    } else if (main_phase_) {
        if (rev0_ + m0_ > 1 || rev1_ + m1_ > 1 || frontier_ + gap_len_ >= 1) {
            // feasible prefix over: a measure or the interval cannot afford
            // one more full gap
            dump_rest(false);
            r.length = block_.length;
            r.masses = block_.masses;
            --block_left_;
        } else {
            r.length = gap_len_;
            r.masses = {m0_, m1_, Rat(0)};
            r.in_prefix = true;
        }
    } else {
        return std::nullopt;
    }
    rev0_ += r.masses[0];
    rev1_ += r.masses[1];
    rev2_ += r.masses[2];
    frontier_ += r.length;
    last_ = r;
    return r;
}

void ConsensusAdversaryN3::on_decision(bool cut, int assignee) {
    if (!cut) return;
    Rat sgn = assignee == 0 ? Rat(1) : Rat(-1);
    x_ += sgn * pend0_;
    y_ += sgn * pend1_;
    pend0_ = 0;
    pend1_ = 0;
    if (main_phase_) {
        if (rat_abs(x_) >= 2 * epsilon_ || rat_abs(y_) >= 2 * epsilon_)
            dump_rest(true);
        else
            recompute_epoch_masses();
    }
}

// ------------------------------------------------------- necklace, n = 2

NecklaceAdversaryN2::NecklaceAdversaryN2(long m) : m_(m) {
    if (m_ < 1) throw std::invalid_argument("need at least one bead per color");
    delta_ = ceil_root(mpz_class(m_), 2).get_si();
}

void NecklaceAdversaryN2::fold_last() {
    if (!last_) return;
    if (*last_ == 0) ++pending0_;
    last_.reset();
}

std::optional<int> NecklaceAdversaryN2::next_bead() {
    fold_last();
    int bead;
    if (!queue_.empty()) {
        bead = queue_.front();
        queue_.pop_front();
    } else if (main_phase_ && emitted0_ < m_) {
        bead = 0;
    } else if (emitted1_ < m_ || emitted0_ < m_) {
        // benign completion: remaining color-1 beads (and any color-0 left)
        main_phase_ = false;
        bead = emitted1_ < m_ ? 1 : 0;
    } else {
        return std::nullopt;
    }
    if (bead == 0)
        ++emitted0_;
    else
        ++emitted1_;
    last_ = bead;
    last_in_prefix_ = main_phase_;
    return bead;
}

void NecklaceAdversaryN2::on_decision(bool cut, int assignee) {
    if (!cut) return;
    x_ += assignee == 0 ? pending0_ : -pending0_;
    pending0_ = 0;
    if (main_phase_ && !punished_ && std::abs(x_) >= delta_) {
        punished_ = true;
        main_phase_ = false;
        // remainder starts at the bead already revealed (color 0)
        long alpha = (m_ - emitted0_) + 1;
        Rat gamma = rat(m_, alpha + m_);  // color-1 share of the tail
        auto seq = balanced_binary_sequence(gamma, static_cast<size_t>(alpha + m_));
        if (seq[0] != 0) {
            auto it = std::find(seq.begin(), seq.end(), 0);
            if (it != seq.end()) std::swap(seq[0], *it);
        }
        // seq[0] stands for the committed bead; queue the rest
        for (size_t j = 1; j < seq.size(); ++j) queue_.push_back(seq[j] == 1 ? 1 : 0);
    }
}

// ------------------------------------------------------- necklace, n = 3

NecklaceAdversaryN3::NecklaceAdversaryN3(long m) : m_(m) {
    if (m_ < 8) throw std::invalid_argument("block construction needs m >= 8");
    scale_ = ceil_root(mpz_class(m_) * m_, 3).get_si();
    block_len_ = std::min(m_ + 4 * scale_, 2 * m_);
    recompute_gamma();
    replan_block();
}

void NecklaceAdversaryN3::recompute_gamma() {
    gamma_ = Rat(10 * scale_ - 4 * y_) / Rat(20 * scale_ + 4 * (x_ - y_));
}

void NecklaceAdversaryN3::fold_last() {
    if (!last_) return;
    ++pending_[*last_];
    last_.reset();
}

std::vector<int> NecklaceAdversaryN3::plan_block(size_t length) const {
    // ones carry the gamma fraction: color 0
    auto seq = balanced_binary_sequence(gamma_, length);
    for (auto& b : seq) b = b == 1 ? 0 : 1;
    return seq;
}

void NecklaceAdversaryN3::replan_block() {
    queue_.clear();
    long remaining = block_len_ - block_emitted_;
    if (remaining <= 0) return;
    bool have_committed = last_.has_value() && *last_ != 2;
    size_t plan_len = static_cast<size_t>(remaining) + (have_committed ? 1 : 0);
    auto plan = plan_block(plan_len);
    size_t start = 0;
    if (have_committed) {
        if (plan[0] != *last_) {
            auto it = std::find(plan.begin(), plan.end(), *last_);
            if (it != plan.end()) std::swap(plan[0], *it);
        }
        start = 1;
    }
    long avail[2] = {m_ - emitted_[0], m_ - emitted_[1]};
    for (size_t j = start; j < plan.size(); ++j) {
        int c = plan[j];
        if (avail[c] == 0) {
            c = 1 - c;
            clamped_ = true;
        }
        if (avail[c] == 0) break;  // both active colors exhausted
        --avail[c];
        queue_.push_back(c);
    }
}

void NecklaceAdversaryN3::start_punishment(int offending) {
    punished_ = true;
    in_block_ = false;
    queue_.clear();
    bool committed = last_.has_value() && *last_ == offending;
    long alpha = (m_ - emitted_[offending]) + (committed ? 1 : 0);
    Rat gamma = rat(m_, alpha + m_);  // color-2 share
    auto seq = balanced_binary_sequence(gamma, static_cast<size_t>(alpha + m_));
    size_t start = 0;
    if (committed) {
        if (seq[0] != 0) {
            auto it = std::find(seq.begin(), seq.end(), 0);
            if (it != seq.end()) std::swap(seq[0], *it);
        }
        start = 1;
    }
    for (size_t j = start; j < seq.size(); ++j)
        queue_.push_back(seq[j] == 1 ? 2 : offending);
    // innocent leftovers ride behind the punishment block
    int innocent = 1 - offending;
    for (long j = 0; j < m_ - emitted_[innocent]; ++j) queue_.push_back(innocent);
}

void NecklaceAdversaryN3::start_rest() {
    in_block_ = false;
    queue_.clear();
    long left[3] = {m_ - emitted_[0], m_ - emitted_[1], m_ - emitted_[2]};
    bool any = true;
    while (any) {
        any = false;
        for (int c = 0; c < 3; ++c)
            if (left[c] > 0) {
                queue_.push_back(c);
                --left[c];
                any = true;
            }
    }
}

std::optional<int> NecklaceAdversaryN3::next_bead() {
    fold_last();
    if (queue_.empty() && in_block_) start_rest();
    if (queue_.empty()) return std::nullopt;
    int bead = queue_.front();
    queue_.pop_front();
    if (in_block_) ++block_emitted_;
    ++emitted_[bead];
    last_ = bead;
    last_in_prefix_ = in_block_;
    return bead;
}

void NecklaceAdversaryN3::on_decision(bool cut, int assignee) {
    if (!cut) return;
    long sgn = assignee == 0 ? 1 : -1;
    x_ += sgn * pending_[0];
    y_ += sgn * pending_[1];
    pending_[0] = pending_[1] = pending_[2] = 0;
    if (!in_block_) return;
    if (std::abs(x_) > scale_) {
        start_punishment(0);
    } else if (std::abs(y_) > scale_) {
        start_punishment(1);
    } else {
        recompute_gamma();
        replan_block();
    }
}

// --------------------------------------------------------- certification

MCertification certify_m_growth_consensus(const GameTranscript& transcript,
                                          const Rat& epsilon) {
    MCertification cert;
    cert.total_slack = 0;
    Rat x(0), y(0);
    Rat pending0(0), pending1(0);
    Rat committed0(0), committed1(0);  // first gap folded after the last cut
    bool pending_empty = true;
    Rat last0(0), last1(0);
    bool have_last = false, last_prefix = false;
    bool prefix_since_cut = true;

    auto fold = [&](const Rat& g0, const Rat& g1, bool prefix, unsigned long times) {
        if (times == 0) return;
        if (pending_empty) {
            committed0 = g0;
            committed1 = g1;
            pending_empty = false;
        }
        pending0 += g0 * static_cast<long>(times);
        pending1 += g1 * static_cast<long>(times);
        if (!prefix) prefix_since_cut = false;
    };

    for (size_t e = 0; e < transcript.events.size(); ++e) {
        const auto& ev = transcript.events[e];
        if (ev.kind == TranscriptEvent::RevealGap) {
            Rat g0 = ev.masses.size() > 0 ? ev.masses[0] : Rat(0);
            Rat g1 = ev.masses.size() > 1 ? ev.masses[1] : Rat(0);
            if (have_last) fold(last0, last1, last_prefix, 1);
            // reveals 2..repeat of this run fold now; the final one stays out
            fold(g0, g1, ev.in_prefix, ev.repeat - 1);
            last0 = g0;
            last1 = g1;
            last_prefix = ev.in_prefix;
            have_last = true;
        } else if (ev.kind == TranscriptEvent::Cut) {
            if (e + 1 >= transcript.events.size() ||
                transcript.events[e + 1].kind != TranscriptEvent::Assign) {
                cert.ok = false;
                break;
            }
            int agent = transcript.events[e + 1].agent;
            Rat sgn = agent == 0 ? Rat(1) : Rat(-1);
            Rat nx = x + sgn * pending0;
            Rat ny = y + sgn * pending1;
            if (prefix_since_cut && ev.in_prefix && !pending_empty) {
                // the first gap of the interval predates the cut opening it;
                // its cross term is the exact correction
                Rat cross = (committed0 * (10 * epsilon + 4 * x) -
                             committed1 * (10 * epsilon - 4 * y)) / 2;
                Rat slack = rat_abs(cross);
                Rat alpha = pending0 + pending1;
                Rat needed = alpha * alpha / 2 - slack;
                Rat growth = potential_M(nx, ny, epsilon) - potential_M(x, y, epsilon);
                if (growth < needed) cert.ok = false;
                cert.total_slack += slack;
                ++cert.checked_cuts;
            }
            x = nx;
            y = ny;
            pending0 = pending1 = 0;
            pending_empty = true;
            prefix_since_cut = true;
        }
    }
    return cert;
}

MCertification certify_m_growth_necklace(const GameTranscript& transcript, long scale) {
    MCertification cert;
    long x = 0, y = 0;
    long pending0 = 0, pending1 = 0, pending_any = 0;
    int last_color = -1;
    bool last_prefix = false, prefix_since_cut = true;
    Rat s(scale);
    for (size_t e = 0; e < transcript.events.size(); ++e) {
        const auto& ev = transcript.events[e];
        if (ev.kind == TranscriptEvent::RevealBead) {
            auto fold = [&](int color, bool prefix, unsigned long times) {
                if (times == 0) return;
                if (color == 0) pending0 += static_cast<long>(times);
                if (color == 1) pending1 += static_cast<long>(times);
                pending_any += static_cast<long>(times);
                if (!prefix) prefix_since_cut = false;
            };
            if (last_color >= 0) fold(last_color, last_prefix, 1);
            fold(ev.color, ev.in_prefix, ev.repeat - 1);
            last_color = ev.color;
            last_prefix = ev.in_prefix;
        } else if (ev.kind == TranscriptEvent::Cut) {
            if (e + 1 >= transcript.events.size() ||
                transcript.events[e + 1].kind != TranscriptEvent::Assign) {
                cert.ok = false;
                break;
            }
            int agent = transcript.events[e + 1].agent;
            long sgn = agent == 0 ? 1 : -1;
            long nx = x + sgn * pending0;
            long ny = y + sgn * pending1;
            bool in_box = std::labs(x) <= scale && std::labs(y) <= scale;
            if (prefix_since_cut && in_box && pending_any > 0) {
                Rat needed = rat(pending_any * pending_any, 2) - 15 * s;
                Rat growth =
                    potential_M(Rat(nx), Rat(ny), s) - potential_M(Rat(x), Rat(y), s);
                if (growth < needed) cert.ok = false;
                ++cert.checked_cuts;
            }
            x = nx;
            y = ny;
            pending0 = pending1 = pending_any = 0;
            prefix_since_cut = true;
        }
    }
    return cert;
}

}  // namespace fairsplit
