#include "fairsplit/offline_splitter.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fairsplit {

size_t CoefficientSystem::floating_count() const {
    size_t c = 0;
    for (const auto& p : pieces)
        if (p.status == CoeffStatus::Floating) ++c;
    return c;
}

std::vector<Rat> CoefficientSystem::weighted_sum(const std::vector<size_t>& dims) const {
    std::vector<Rat> sum(dims.size(), Rat(0));
    for (const auto& p : pieces) {
        if (p.status == CoeffStatus::FixedZero) continue;
        Rat c = p.status == CoeffStatus::FixedOne ? Rat(1) : p.coeff;
        for (size_t d = 0; d < dims.size(); ++d) sum[d] += c * p.masses[dims[d]];
    }
    return sum;
}

namespace {

// Sum-measure mass of [a,b]; the cached sum measure is scaled by 1/n.
Rat collection_mass(const ConsensusInstance& inst, const Rat& a, const Rat& b) {
    return inst.sum_measure().mass(a, b) * static_cast<long>(inst.n());
}

std::vector<Rat> piece_masses(const ConsensusInstance& inst, const std::vector<Span>& spans) {
    std::vector<Rat> masses(inst.n(), Rat(0));
    for (const auto& sp : spans)
        for (size_t i = 0; i < inst.n(); ++i) masses[i] += inst.measures[i].mass(sp.left, sp.right);
    return masses;
}

Rat spans_sum_mass(const ConsensusInstance& inst, const std::vector<Span>& spans) {
    Rat total(0);
    for (const auto& sp : spans) total += collection_mass(inst, sp.left, sp.right);
    return total;
}

// Point inside the span list where the prefix sum-measure reaches `target`.
// Returns (span index, point); the point may equal a span endpoint.
std::pair<size_t, Rat> locate_quantile(const ConsensusInstance& inst,
                                       const std::vector<Span>& spans, Rat target) {
    for (size_t s = 0; s < spans.size(); ++s) {
        Rat here = collection_mass(inst, spans[s].left, spans[s].right);
        if (here < target) {
            target -= here;
            continue;
        }
        Rat scaled = target / static_cast<long>(inst.n());
        Rat y = inst.sum_measure().point_with_mass(spans[s].left, scaled);
        return {s, y};
    }
    throw std::logic_error("quantile beyond collection mass");
}

// Splits a span list at an interior sum-measure point into (left, right).
// Counts a new cut only if the point is strictly inside a span.
struct SplitOutcome {
    std::vector<Span> left, right;
    bool new_cut = false;
    Rat at;
};

SplitOutcome split_spans_at_mass(const ConsensusInstance& inst, const std::vector<Span>& spans,
                                 const Rat& target) {
    auto [s, y] = locate_quantile(inst, spans, target);
    SplitOutcome out;
    out.at = y;
    for (size_t j = 0; j < s; ++j) out.left.push_back(spans[j]);
    if (y > spans[s].left) {
        out.left.push_back({spans[s].left, y});
        if (y < spans[s].right) {
            out.right.push_back({y, spans[s].right});
            out.new_cut = true;
        }
    } else {
        out.right.push_back(spans[s]);
    }
    for (size_t j = s + 1; j < spans.size(); ++j) out.right.push_back(spans[j]);
    if (out.left.empty() || out.right.empty())
        throw std::logic_error("degenerate split of a positive-mass piece");
    return out;
}

SystemPiece make_piece(const ConsensusInstance& inst, std::vector<Span> spans, Rat coeff) {
    SystemPiece p;
    p.masses = piece_masses(inst, spans);
    p.sum_mass = Rat(0);
    for (const auto& m : p.masses) p.sum_mass += m;
    p.spans = std::move(spans);
    p.coeff = std::move(coeff);
    return p;
}

// Row echelon form over the rationals with full elimination above and below
// pivots, so kernel vectors read off directly.
struct Echelon {
    std::vector<std::vector<Rat>> m;  // rows x cols
    std::vector<int> pivot_row_of_col;
    std::vector<int> pivot_col_of_row;

    void build(std::vector<std::vector<Rat>> matrix, size_t cols) {
        m = std::move(matrix);
        size_t rows = m.size();
        pivot_row_of_col.assign(cols, -1);
        pivot_col_of_row.clear();
        size_t rank = 0;
        for (size_t col = 0; col < cols && rank < rows; ++col) {
            size_t r = rank;
            while (r < rows && m[r][col] == 0) ++r;
            if (r == rows) continue;
            std::swap(m[r], m[rank]);
            for (size_t other = 0; other < rows; ++other) {
                if (other == rank || m[other][col] == 0) continue;
                Rat factor = m[other][col] / m[rank][col];
                for (size_t c = col; c < cols; ++c) m[other][c] -= factor * m[rank][c];
            }
            pivot_row_of_col[col] = static_cast<int>(rank);
            pivot_col_of_row.push_back(static_cast<int>(col));
            ++rank;
        }
    }

    // Kernel vector with 1 in free column f and support on pivot columns.
    std::vector<Rat> kernel(size_t f) const {
        size_t cols = pivot_row_of_col.size();
        std::vector<Rat> w(cols, Rat(0));
        w[f] = 1;
        for (size_t col = 0; col < cols; ++col) {
            int r = pivot_row_of_col[col];
            if (r < 0) continue;
            w[col] = -m[r][f] / m[r][col];
        }
        return w;
    }

    int first_free() const {
        for (size_t col = 0; col < pivot_row_of_col.size(); ++col)
            if (pivot_row_of_col[col] < 0) return static_cast<int>(col);
        return -1;
    }
};

}  // namespace

CutSet equal_sum_partition(const ConsensusInstance& inst, size_t parts) {
    if (parts < 1) throw std::invalid_argument("parts must be positive");
    Rat quantum = rat(static_cast<long>(inst.n()), static_cast<long>(parts));
    std::vector<Rat> cuts;
    Rat x(0);
    for (size_t r = 1; r < parts; ++r) {
        x = oracle_sum_point(inst, x, quantum);
        cuts.push_back(x);
    }
    return consensus_cuts(std::move(cuts));
}

void reduce_floating(CoefficientSystem& system, const std::vector<size_t>& dims) {
    std::vector<Rat> before = system.weighted_sum(dims);

    auto floating_ids = [&] {
        std::vector<size_t> ids;
        for (size_t r = 0; r < system.pieces.size(); ++r)
            if (system.pieces[r].status == CoeffStatus::Floating) ids.push_back(r);
        return ids;
    };

    std::vector<size_t> ids = floating_ids();
    Echelon ech;
    bool dirty = true;
    while (ids.size() > dims.size()) {
        if (dirty) {
            std::vector<std::vector<Rat>> matrix(dims.size(), std::vector<Rat>(ids.size()));
            for (size_t d = 0; d < dims.size(); ++d)
                for (size_t c = 0; c < ids.size(); ++c)
                    matrix[d][c] = system.pieces[ids[c]].masses[dims[d]];
            ech.build(std::move(matrix), ids.size());
            dirty = false;
        }
        int f = ech.first_free();
        if (f < 0) throw std::logic_error("no kernel although floating exceeds dimension");
        std::vector<Rat> w = ech.kernel(static_cast<size_t>(f));

        // Maximal steps in both directions; take the first boundary hit,
        // ties to the positive direction.
        Rat t_pos(-1), t_neg(-1);
        for (size_t c = 0; c < ids.size(); ++c) {
            if (w[c] == 0) continue;
            const Rat& coeff = system.pieces[ids[c]].coeff;
            Rat up = w[c] > 0 ? Rat((1 - coeff) / w[c]) : Rat(coeff / -w[c]);
            Rat down = w[c] > 0 ? Rat(coeff / w[c]) : Rat((1 - coeff) / -w[c]);
            if (t_pos < 0 || up < t_pos) t_pos = up;
            if (t_neg < 0 || down < t_neg) t_neg = down;
        }
        Rat step = t_pos <= t_neg ? t_pos : -t_neg;

        std::vector<size_t> still;
        for (size_t c = 0; c < ids.size(); ++c) {
            if (w[c] == 0) {
                still.push_back(ids[c]);
                continue;
            }
            SystemPiece& piece = system.pieces[ids[c]];
            piece.coeff += step * w[c];
            if (piece.coeff == 0) {
                piece.status = CoeffStatus::FixedZero;
                if (ech.pivot_row_of_col[c] >= 0) dirty = true;
            } else if (piece.coeff == 1) {
                piece.status = CoeffStatus::FixedOne;
                if (ech.pivot_row_of_col[c] >= 0) dirty = true;
            } else {
                still.push_back(ids[c]);
            }
        }
        if (still.size() == ids.size())
            throw std::logic_error("kernel step fixed no coefficient");
        if (!dirty) {
            // Only free columns were fixed; drop them from the echelon form.
            std::vector<size_t> keep;
            for (size_t c = 0; c < ids.size(); ++c) {
                if (std::find(still.begin(), still.end(), ids[c]) != still.end())
                    keep.push_back(c);
            }
            std::vector<int> new_pivot_row(keep.size());
            for (size_t kcol = 0; kcol < keep.size(); ++kcol)
                new_pivot_row[kcol] = ech.pivot_row_of_col[keep[kcol]];
            for (auto& row : ech.m) {
                std::vector<Rat> nr(keep.size());
                for (size_t kcol = 0; kcol < keep.size(); ++kcol) nr[kcol] = row[keep[kcol]];
                row = std::move(nr);
            }
            ech.pivot_row_of_col = std::move(new_pivot_row);
        }
        ids = std::move(still);
    }

    std::vector<Rat> after = system.weighted_sum(dims);
    if (before != after)
        throw std::logic_error("weighted sum drifted during reduction");
}

void final_assignment(CoefficientSystem& system, size_t n_measures, const Rat& epsilon) {
    Rat half_eps = epsilon / 2;
    std::vector<size_t> dims(n_measures);
    for (size_t i = 0; i < n_measures; ++i) dims[i] = i;

    while (system.floating_count() > 0) {
        if (!dims.empty()) {
            // Lowest measure whose floating mass is small enough to retire.
            size_t chosen = dims.size();
            for (size_t d = 0; d < dims.size(); ++d) {
                Rat total(0);
                for (const auto& p : system.pieces)
                    if (p.status == CoeffStatus::Floating) total += p.masses[dims[d]];
                if (total <= half_eps) {
                    chosen = d;
                    break;
                }
            }
            if (chosen == dims.size())
                throw std::logic_error("no retirable measure; mass bound violated");
            dims.erase(dims.begin() + static_cast<long>(chosen));
        }
        if (system.floating_count() > dims.size()) reduce_floating(system, dims);
    }
}

namespace {

struct EngineOutput {
    std::vector<Span> group_a;
    std::vector<Span> group_b;
    size_t cuts = 0;
    size_t rounds = 0;
};

// One bisection: separates `collection` into two span collections where the
// first receives a q-fraction of every measure up to eps/2, using at most
// n(2 + ceil(log2(1/eps))) - 1 cuts.
EngineOutput run_rounding(const ConsensusInstance& inst, const std::vector<Span>& collection,
                          const Rat& q, const Rat& epsilon, OfflineStats& stats) {
    const size_t n = inst.n();
    EngineOutput out;
    Rat total = spans_sum_mass(inst, collection);
    Rat half_eps = epsilon / 2;

    CoefficientSystem system;
    // Initial partition into 2n equal sum-measure pieces.
    {
        size_t parts = 2 * n;
        Rat quantum = total / static_cast<long>(parts);
        std::vector<Span> rest = collection;
        for (size_t r = 0; r + 1 < parts; ++r) {
            SplitOutcome sp = split_spans_at_mass(inst, rest, quantum);
            if (sp.new_cut) ++out.cuts;
            system.pieces.push_back(make_piece(inst, std::move(sp.left), q));
            rest = std::move(sp.right);
        }
        system.pieces.push_back(make_piece(inst, std::move(rest), q));
    }

    std::vector<size_t> dims(n);
    for (size_t i = 0; i < n; ++i) dims[i] = i;
    reduce_floating(system, dims);
    if (system.floating_count() > dims.size()) stats.reductions_bounded = false;

    auto max_floating_mass = [&] {
        Rat m(-1);
        for (const auto& p : system.pieces)
            if (p.status == CoeffStatus::Floating && p.sum_mass > m) m = p.sum_mass;
        return m;
    };

    while (true) {
        Rat biggest = max_floating_mass();
        if (biggest < 0 || biggest <= half_eps) break;
        ++out.rounds;
        std::vector<SystemPiece> next;
        next.reserve(system.pieces.size() + n);
        for (auto& p : system.pieces) {
            if (p.status != CoeffStatus::Floating) {
                next.push_back(std::move(p));
                continue;
            }
            SplitOutcome sp = split_spans_at_mass(inst, p.spans, p.sum_mass / 2);
            if (sp.new_cut) ++out.cuts;
            next.push_back(make_piece(inst, std::move(sp.left), p.coeff));
            next.push_back(make_piece(inst, std::move(sp.right), p.coeff));
        }
        system.pieces = std::move(next);
        reduce_floating(system, dims);
        if (system.floating_count() > dims.size()) stats.reductions_bounded = false;
    }

    final_assignment(system, n, epsilon);

    for (const auto& p : system.pieces) {
        auto& target = p.status == CoeffStatus::FixedOne ? out.group_a : out.group_b;
        target.insert(target.end(), p.spans.begin(), p.spans.end());
    }
    auto by_left = [](const Span& a, const Span& b) { return a.left < b.left; };
    std::sort(out.group_a.begin(), out.group_a.end(), by_left);
    std::sort(out.group_b.begin(), out.group_b.end(), by_left);
    return out;
}

Allocation allocation_from_groups(const ConsensusInstance& inst,
                                  const std::vector<std::vector<Span>>& groups) {
    // Each span belongs to exactly one agent; boundaries become the cut set.
    std::map<Rat, int> owner_by_left;
    for (size_t a = 0; a < groups.size(); ++a)
        for (const auto& sp : groups[a]) owner_by_left[sp.left] = static_cast<int>(a);
    std::vector<Rat> cuts;
    std::vector<int> assignees;
    for (const auto& [left, agent] : owner_by_left) {
        if (left != 0) cuts.push_back(left);
        assignees.push_back(agent);
    }
    return build_allocation(inst, consensus_cuts(std::move(cuts)), std::move(assignees),
                            static_cast<int>(groups.size()));
}

}  // namespace

OfflineResult offline_halving(const ConsensusInstance& inst, const Rat& epsilon) {
    if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("epsilon must be in (0,1]");
    OfflineResult result;
    std::vector<Span> whole{{Rat(0), Rat(1)}};
    EngineOutput out = run_rounding(inst, whole, rat(1, 2), epsilon, result.stats);
    result.stats.cut_count = out.cuts;
    result.stats.rounds = out.rounds;
    result.allocation = allocation_from_groups(inst, {out.group_a, out.group_b});
    return result;
}

OfflineResult offline_splitting(const ConsensusInstance& inst, const Rat& epsilon, int k) {
    if (k < 2) throw std::invalid_argument("splitting needs at least two agents");
    if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("epsilon must be in (0,1]");
    Rat eps_prime = epsilon / (3 * k);
    OfflineResult result;
    std::vector<std::vector<Span>> agent_spans(k);

    // Recursive bisection of the agent range [lo, hi).
    auto split_range = [&](auto&& self, std::vector<Span> collection, int lo, int hi) -> void {
        int s = hi - lo;
        if (s == 1) {
            agent_spans[lo] = std::move(collection);
            return;
        }
        int s1 = s / 2;
        EngineOutput out =
            run_rounding(inst, collection, rat(s1, s), eps_prime, result.stats);
        result.stats.cut_count += out.cuts;
        result.stats.rounds = std::max(result.stats.rounds, out.rounds);
        self(self, std::move(out.group_a), lo, lo + s1);
        self(self, std::move(out.group_b), lo + s1, hi);
    };
    split_range(split_range, {{Rat(0), Rat(1)}}, 0, k);

    result.allocation = allocation_from_groups(inst, agent_spans);
    return result;
}

}  // namespace fairsplit
