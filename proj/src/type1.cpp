#include "fairsplit/type1.hpp"

#include <stdexcept>

namespace fairsplit {

MarkResult mark_phase(const ConsensusInstance& inst, int k) {
    if (k < 1) throw std::invalid_argument("agent count must be positive");
    const size_t n = inst.n();
    const Rat quantum = rat(1, k * static_cast<long>(n));
    MarkResult result;
    std::vector<int> labels_used(n, 0);
    size_t active = n;
    Rat x(0);
    while (active > 0) {
        size_t best = n;
        Rat best_y;
        for (size_t i = 0; i < n; ++i) {
            if (labels_used[i] >= k) continue;
            Rat y = oracle_point(inst, x, i, quantum);
            ++result.oracle_calls;
            if (best == n || y < best_y) {
                best = i;
                best_y = y;
            }
        }
        // The oracle answers 1 both when the mass is reached exactly at 1 and
        // when it runs out; distinguish the two before accepting the mark.
        if (best_y == 1 && inst.measures[best].mass(x, Rat(1)) != quantum)
            throw std::logic_error("marking ran out of measure; instance invariant broken");
        result.intervals.push_back({x, best_y, best});
        if (++labels_used[best] == k) --active;
        x = best_y;
    }
    return result;
}

UniformSplit split_uniform_necklace(const std::vector<size_t>& labels, int k) {
    if (k < 1) throw std::invalid_argument("agent count must be positive");
    size_t n = 0;
    for (size_t c : labels) n = std::max(n, c + 1);
    std::vector<int> occurrences(n, 0);
    for (size_t c : labels) ++occurrences[c];
    for (size_t i = 0; i < n; ++i)
        if (occurrences[i] != k)
            throw std::invalid_argument("every label must occur exactly k times");

    UniformSplit split;
    std::vector<char> seen(n, 0);
    // agent_has[a][c]: agent a already holds a bead of color c
    std::vector<std::vector<char>> agent_has(k, std::vector<char>(n, 0));

    auto assign_interval = [&](size_t from, size_t to) {
        size_t first_color = labels[from];
        int agent = -1;
        for (int a = 0; a < k; ++a)
            if (!agent_has[a][first_color]) {
                agent = a;
                break;
            }
        if (agent < 0) throw std::logic_error("no agent free of the leading color");
        for (size_t t = from; t < to; ++t) {
            if (agent_has[agent][labels[t]])
                throw std::logic_error("agent would receive a second bead of one color");
            agent_has[agent][labels[t]] = 1;
        }
        split.assignees.push_back(agent);
    };

    size_t start = 0;
    for (size_t t = 0; t < labels.size(); ++t) {
        if (t > 0 && seen[labels[t]]) {
            split.cut_positions.push_back(t);
            assign_interval(start, t);
            start = t;
        }
        seen[labels[t]] = 1;
    }
    assign_interval(start, labels.size());
    return split;
}

Type1Result type1_solve(const ConsensusInstance& inst, int k) {
    MarkResult marks = mark_phase(inst, k);
    std::vector<size_t> labels;
    labels.reserve(marks.intervals.size());
    for (const auto& mi : marks.intervals) labels.push_back(mi.label);
    UniformSplit split = split_uniform_necklace(labels, k);

    // Cut before marked interval t means cutting at its left endpoint; the
    // residual tail after the last mark rides with the final interval.
    std::vector<Rat> cut_points;
    cut_points.reserve(split.cut_positions.size());
    for (size_t pos : split.cut_positions) cut_points.push_back(marks.intervals[pos].left);

    Type1Result result;
    result.oracle_calls = marks.oracle_calls;
    result.marks = std::move(marks.intervals);
    result.allocation =
        build_allocation(inst, consensus_cuts(std::move(cut_points)), split.assignees, k);
    return result;
}

}  // namespace fairsplit
