#include "fairsplit/necklace.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairsplit {

long NecklaceInstance::max_count() const {
    long m = 0;
    for (long c : color_counts) m = std::max(m, c);
    return m;
}

NecklaceInstance make_necklace(std::vector<int> beads, size_t n_colors) {
    if (beads.empty()) throw std::invalid_argument("empty necklace");
    if (n_colors == 0) throw std::invalid_argument("necklace needs at least one color");
    NecklaceInstance neck;
    neck.color_counts.assign(n_colors, 0);
    for (int c : beads) {
        if (c < 0 || static_cast<size_t>(c) >= n_colors)
            throw std::invalid_argument("bead color out of range");
        ++neck.color_counts[c];
    }
    neck.beads = std::move(beads);
    return neck;
}

NecklaceEmbedding necklace_to_consensus(const NecklaceInstance& neck) {
    const long T = neck.total_beads();
    NecklaceEmbedding emb;
    emb.bead_count = T;
    std::vector<Rat> points(T + 1);
    for (long t = 0; t <= T; ++t) points[t] = rat(t, T);
    std::vector<StepMeasure> measures;
    measures.reserve(neck.n());
    for (size_t i = 0; i < neck.n(); ++i) {
        std::vector<Rat> dens(T, Rat(0));
        if (neck.color_counts[i] == 0)
            throw std::invalid_argument("color with zero beads");
        // Bead interval has length 1/T and mass 1/m_i, so density T/m_i.
        Rat d = rat(T, neck.color_counts[i]);
        for (long t = 0; t < T; ++t)
            if (neck.beads[t] == static_cast<int>(i)) dens[t] = d;
        measures.push_back(StepMeasure(points, std::move(dens)));
    }
    emb.instance = make_instance(std::move(measures));
    return emb;
}

long NecklaceEmbedding::boundary_index(const Rat& p) const {
    Rat scaled = p * bead_count;
    if (scaled.get_den() != 1) return -1;
    return scaled.get_num().get_si();
}

long NecklaceEmbedding::bead_at(const Rat& p) const {
    Rat scaled = p * bead_count;
    mpz_class t = rat_floor(scaled);
    long b = t.get_si();
    if (b >= bead_count) b = bead_count - 1;
    return b;
}

}  // namespace fairsplit
