#include "fairsplit/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace fairsplit {

namespace {

Json rat_array(const std::vector<Rat>& v) {
    Json arr = Json::array();
    for (const auto& q : v) arr.push_back(rat_str(q));
    return arr;
}

std::vector<Rat> rats_from(const Json& arr) {
    std::vector<Rat> v;
    v.reserve(arr.size());
    for (const auto& item : arr) v.push_back(rat_parse(item.get<std::string>()));
    return v;
}

}  // namespace

Json to_json(const StepMeasure& m) {
    return Json{{"breakpoints", rat_array(m.breakpoints())},
                {"densities", rat_array(m.densities())}};
}

Json to_json(const ConsensusInstance& inst) {
    Json measures = Json::array();
    for (const auto& m : inst.measures) measures.push_back(to_json(m));
    return Json{{"type", "consensus"}, {"measures", measures}};
}

Json to_json(const NecklaceInstance& neck) {
    Json beads = Json::array();
    for (int c : neck.beads) beads.push_back(c + 1);
    return Json{{"type", "necklace"}, {"beads", beads}};
}

Json to_json(const OnlineStream& stream) {
    Json j{{"type", "stream"}, {"k", stream.k}, {"epsilon", rat_str(stream.epsilon)}};
    Json measures = Json::array();
    for (const auto& m : stream.base.measures) measures.push_back(to_json(m));
    j["measures"] = measures;
    if (stream.grid) {
        j["grid"] = *stream.grid;
    } else {
        j["candidates"] = rat_array(stream.candidates);
        Json rows = Json::array();
        for (const auto& row : stream.gap_masses) rows.push_back(rat_array(row));
        j["gap_masses"] = rows;
    }
    return j;
}

Json to_json(const Allocation& alloc) {
    Json j{{"type", "allocation"}};
    j["problem"] = alloc.cuts.is_necklace ? "necklace" : "consensus";
    if (alloc.cuts.is_necklace)
        j["cuts"] = alloc.cuts.gaps;
    else
        j["cuts"] = rat_array(alloc.cuts.points);
    j["assignees"] = alloc.assignees;
    Json shares = Json::array();
    for (const auto& row : alloc.shares) shares.push_back(rat_array(row));
    j["shares"] = shares;
    j["agents"] = alloc.agents;
    return j;
}

Json to_json(const DiscrepancyReport& rep) {
    return Json{{"per_measure", rat_array(rep.per_measure)}, {"overall", rat_str(rep.overall)}};
}

StepMeasure measure_from_json(const Json& j) {
    return StepMeasure(rats_from(j.at("breakpoints")), rats_from(j.at("densities")));
}

ConsensusInstance consensus_from_json(const Json& j) {
    std::vector<StepMeasure> measures;
    for (const auto& m : j.at("measures")) measures.push_back(measure_from_json(m));
    return make_instance(std::move(measures));
}

NecklaceInstance necklace_from_json(const Json& j) {
    std::vector<int> beads;
    int max_color = 0;
    for (const auto& b : j.at("beads")) {
        int c = b.get<int>();
        if (c < 1) throw std::invalid_argument("bead colors are 1-based positive integers");
        max_color = std::max(max_color, c);
        beads.push_back(c - 1);
    }
    return make_necklace(std::move(beads), static_cast<size_t>(max_color));
}

OnlineStream stream_from_json(const Json& j) {
    Rat epsilon = rat_parse(j.at("epsilon").get<std::string>());
    int k = j.value("k", 2);
    if (j.contains("grid"))
        return make_gridded_stream(consensus_from_json(j), j.at("grid").get<uint64_t>(),
                                   epsilon, k);
    std::vector<Rat> candidates = rats_from(j.at("candidates"));
    std::vector<std::vector<Rat>> rows;
    for (const auto& row : j.at("gap_masses")) rows.push_back(rats_from(row));
    ConsensusInstance base;
    if (j.contains("measures")) {
        base = consensus_from_json(j);
    } else {
        // Synthesize step densities from the gap masses.
        std::vector<StepMeasure> measures;
        for (const auto& row : rows) {
            std::vector<Rat> dens(row.size());
            for (size_t g = 0; g < row.size(); ++g)
                dens[g] = row[g] / (candidates[g + 1] - candidates[g]);
            measures.push_back(StepMeasure(candidates, std::move(dens)));
        }
        base = make_instance(std::move(measures));
    }
    return make_explicit_stream(std::move(base), std::move(candidates), std::move(rows),
                                epsilon, k);
}

Allocation allocation_from_json(const Json& j) {
    Allocation alloc;
    alloc.agents = j.at("agents").get<int>();
    if (j.at("problem") == "necklace") {
        alloc.cuts.is_necklace = true;
        for (const auto& g : j.at("cuts")) alloc.cuts.gaps.push_back(g.get<long>());
    } else {
        alloc.cuts.points = rats_from(j.at("cuts"));
    }
    for (const auto& a : j.at("assignees")) alloc.assignees.push_back(a.get<int>());
    for (const auto& row : j.at("shares")) alloc.shares.push_back(rats_from(row));
    return alloc;
}

InstanceKind instance_kind(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "consensus") return InstanceKind::Consensus;
    if (type == "necklace") return InstanceKind::Necklace;
    if (type == "stream") return InstanceKind::Stream;
    throw std::invalid_argument("unknown instance type: " + type);
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace fairsplit
