#include "fairsplit/offline_necklace.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fairsplit {

namespace {

struct MarkList {
    // positions strictly increasing in (0,1); agents one longer
    std::vector<Rat> marks;
    std::vector<int> agents;
    long T = 0;

    bool fixed(size_t j) const {
        Rat scaled = marks[j] * T;
        return scaled.get_den() == 1;
    }
    long bead(size_t j) const {
        Rat scaled = marks[j] * T;
        return rat_floor(scaled).get_si();
    }
};

// Removes empty pieces (duplicate positions) and merges neighbours split by
// a same-agent floating mark.
void normalize(MarkList& ml) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t j = 0; j + 1 < ml.marks.size(); ++j) {
            if (ml.marks[j] == ml.marks[j + 1]) {
                // empty piece between duplicates
                ml.marks.erase(ml.marks.begin() + j);
                ml.agents.erase(ml.agents.begin() + j + 1);
                changed = true;
                break;
            }
        }
        if (changed) continue;
        for (size_t j = 0; j < ml.marks.size(); ++j) {
            if (ml.agents[j] == ml.agents[j + 1] && !ml.fixed(j)) {
                ml.marks.erase(ml.marks.begin() + j);
                ml.agents.erase(ml.agents.begin() + j);
                changed = true;
                break;
            }
        }
    }
}

// Leftmost pair of floating marks lying inside beads of the same color, or
// (size, size) if none.
std::pair<size_t, size_t> floating_pair(const MarkList& ml, const NecklaceInstance& neck) {
    std::vector<size_t> first_of_color(neck.n(), ml.marks.size());
    for (size_t j = 0; j < ml.marks.size(); ++j) {
        if (ml.fixed(j)) continue;
        int color = neck.beads[ml.bead(j)];
        if (first_of_color[color] == ml.marks.size()) {
            first_of_color[color] = j;
        } else {
            return {first_of_color[color], j};
        }
    }
    return {ml.marks.size(), ml.marks.size()};
}

void shift_pair(MarkList& ml, size_t a, size_t b) {
    // Mark a moves right; b moves so both agents' totals are unchanged.
    int dir_b = ml.agents[b] == ml.agents[a] ? -1 : 1;

    Rat bead_len = rat(1, ml.T);
    Rat limit = (rat(ml.bead(a) + 1, ml.T)) - ml.marks[a];  // a reaching its bead end
    auto tighten = [&limit](const Rat& v) {
        if (v < limit) limit = v;
    };
    // neighbour of a to the right
    if (a + 1 < ml.marks.size()) {
        if (a + 1 == b && dir_b == 1) {
            // b moves along; no constraint between them
        } else if (a + 1 == b) {
            tighten((ml.marks[b] - ml.marks[a]) / 2);
        } else {
            tighten(ml.marks[a + 1] - ml.marks[a]);
        }
    }
    if (dir_b == 1) {
        tighten(rat(ml.bead(b) + 1, ml.T) - ml.marks[b]);
        if (b + 1 < ml.marks.size()) tighten(ml.marks[b + 1] - ml.marks[b]);
    } else {
        tighten(ml.marks[b] - rat(ml.bead(b), ml.T));
        if (b > 0 && b - 1 != a) tighten(ml.marks[b] - ml.marks[b - 1]);
    }
    (void)bead_len;
    if (limit <= 0) throw std::logic_error("mark shift with no room");
    ml.marks[a] += limit;
    ml.marks[b] += dir_b * limit;
}

}  // namespace

Allocation fix_marks(const NecklaceInstance& neck, const NecklaceEmbedding& emb,
                     const Allocation& continuous) {
    if (continuous.agents != 2)
        throw std::invalid_argument("mark fixing is defined for two agents");
    MarkList ml;
    ml.T = emb.bead_count;
    ml.marks = continuous.cuts.points;
    ml.agents = continuous.assignees;

    // Exact per-agent, per-color totals must survive the shifting phase.
    auto totals = [&](const MarkList& state) {
        std::vector<std::vector<Rat>> t(2, std::vector<Rat>(neck.n(), Rat(0)));
        Rat left(0);
        for (size_t p = 0; p < state.agents.size(); ++p) {
            Rat right = p < state.marks.size() ? state.marks[p] : Rat(1);
            for (size_t i = 0; i < neck.n(); ++i)
                t[state.agents[p]][i] += emb.instance.measures[i].mass(left, right);
            left = right;
        }
        return t;
    };
    auto before = totals(ml);

    normalize(ml);
    while (true) {
        auto [a, b] = floating_pair(ml, neck);
        if (a == ml.marks.size()) break;
        shift_pair(ml, a, b);
        normalize(ml);
    }
    if (totals(ml) != before)
        throw std::logic_error("mark shifting changed an agent's totals");

    // At most one floating mark per color: round to the closest boundary,
    // ties to the left.
    for (size_t j = 0; j < ml.marks.size(); ++j) {
        if (ml.fixed(j)) continue;
        long t = ml.bead(j);
        Rat frac = ml.marks[j] * ml.T - t;
        ml.marks[j] = frac <= rat(1, 2) ? rat(t, ml.T) : rat(t + 1, ml.T);
    }
    // Rounding may create duplicates, empty end pieces or same-agent splits.
    while (!ml.marks.empty() && ml.marks.front() == 0) {
        ml.marks.erase(ml.marks.begin());
        ml.agents.erase(ml.agents.begin());
    }
    while (!ml.marks.empty() && ml.marks.back() == 1) {
        ml.marks.pop_back();
        ml.agents.pop_back();
    }
    normalize(ml);
    // Merge remaining same-agent neighbours (now all marks are fixed).
    for (size_t j = 0; j < ml.marks.size();) {
        if (ml.agents[j] == ml.agents[j + 1]) {
            ml.marks.erase(ml.marks.begin() + j);
            ml.agents.erase(ml.agents.begin() + j);
        } else {
            ++j;
        }
    }

    std::vector<long> gaps;
    gaps.reserve(ml.marks.size());
    for (size_t j = 0; j < ml.marks.size(); ++j) {
        long g = emb.boundary_index(ml.marks[j]);
        if (g < 0) throw std::logic_error("floating mark survived fixing");
        gaps.push_back(g);
    }
    return build_allocation(neck, necklace_cuts(std::move(gaps), neck.total_beads()),
                            ml.agents, 2);
}

OfflineNecklaceResult offline_necklace_halving(const NecklaceInstance& neck) {
    NecklaceEmbedding emb = necklace_to_consensus(neck);
    long m = neck.max_count();
    Rat eps = rat(1, 2 * m);
    OfflineResult cont = offline_halving(emb.instance, eps);
    OfflineNecklaceResult result;
    result.continuous_cuts = cont.allocation.cuts.size();
    result.allocation = fix_marks(neck, emb, cont.allocation);
    return result;
}

CircularSplitResult two_color_circular_split(const NecklaceInstance& neck, int k) {
    if (neck.n() != 2) throw std::invalid_argument("circular split needs exactly two colors");
    if (k < 1) throw std::invalid_argument("agent count must be positive");
    for (long m : neck.color_counts)
        if (m % k != 0)
            throw std::domain_error("circular split requires k to divide both color counts");

    const long T = neck.total_beads();
    const long target = neck.color_counts[0] / k;
    std::vector<long> alive(T);
    for (long t = 0; t < T; ++t) alive[t] = t;
    std::vector<int> owner(T, k - 1);
    std::set<long> cuts;  // circular gap ids: gap g sits before bead g (0-based)

    for (int agent = 0; agent + 1 < k; ++agent) {
        const long N = static_cast<long>(alive.size());
        const long r = k - agent;
        const long w = N / r;

        // Sliding color-1 count over circular windows of w beads.
        long count = 0;
        for (long j = 0; j < w; ++j) count += neck.beads[alive[j]] == 0 ? 1 : 0;
        long best_s = -1;
        int best_fresh = -1;
        for (long s = 0; s < N; ++s) {
            if (count == target) {
                int fresh = 0;
                long first = alive[s];
                long pred = alive[(s - 1 + N) % N];
                if ((pred + 1) % T == first && !cuts.count(first)) ++fresh;
                long last = alive[(s + w - 1) % N];
                long succ = alive[(s + w) % N];
                long gap_after = (last + 1) % T;
                if (gap_after == succ % T && !cuts.count(gap_after)) ++fresh;
                if (fresh > best_fresh) {
                    best_fresh = fresh;
                    best_s = s;
                }
                if (best_fresh == 2) break;
            }
            count -= neck.beads[alive[s]] == 0 ? 1 : 0;
            count += neck.beads[alive[(s + w) % N]] == 0 ? 1 : 0;
        }
        if (best_s < 0) throw std::logic_error("no window matched the color target");

        long first = alive[best_s];
        long pred = alive[(best_s - 1 + N) % N];
        if ((pred + 1) % T == first) cuts.insert(first);
        long last = alive[(best_s + w - 1) % N];
        long succ = alive[(best_s + w) % N];
        if ((last + 1) % T == succ % T) cuts.insert((last + 1) % T);

        std::vector<char> taken(N, 0);
        for (long j = 0; j < w; ++j) {
            long idx = (best_s + j) % N;
            owner[alive[idx]] = agent;
            taken[idx] = 1;
        }
        std::vector<long> next_alive;
        next_alive.reserve(N - w);
        for (long j = 0; j < N; ++j)
            if (!taken[j]) next_alive.push_back(alive[j]);
        alive = std::move(next_alive);
    }

    CircularSplitResult result;
    result.circular_cuts.assign(cuts.begin(), cuts.end());
    std::vector<long> gaps;
    std::vector<int> assignees{owner[0]};
    for (long t = 1; t < T; ++t) {
        if (owner[t] != owner[t - 1]) {
            gaps.push_back(t);
            assignees.push_back(owner[t]);
        }
    }
    result.allocation =
        build_allocation(neck, necklace_cuts(std::move(gaps), T), std::move(assignees), k);
    return result;
}

}  // namespace fairsplit
