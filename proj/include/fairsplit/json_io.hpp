#pragma once

#include <string>

#include <json.hpp>

#include "fairsplit/allocation.hpp"
#include "fairsplit/measure.hpp"
#include "fairsplit/necklace.hpp"
#include "fairsplit/stream.hpp"

namespace fairsplit {

using Json = nlohmann::ordered_json;

// Instance schema:
//   {"type":"consensus","measures":[{"breakpoints":[...],"densities":[...]}]}
//   {"type":"necklace","beads":[1,2,1]}            (colors 1-based on disk)
//   {"type":"stream", "k":2, "epsilon":"1/4", ...}
// Rationals are "p/q" strings ("p" when q = 1).

Json to_json(const StepMeasure& m);
Json to_json(const ConsensusInstance& inst);
Json to_json(const NecklaceInstance& neck);
Json to_json(const OnlineStream& stream);
Json to_json(const Allocation& alloc);
Json to_json(const DiscrepancyReport& rep);

StepMeasure measure_from_json(const Json& j);
ConsensusInstance consensus_from_json(const Json& j);
NecklaceInstance necklace_from_json(const Json& j);
OnlineStream stream_from_json(const Json& j);
Allocation allocation_from_json(const Json& j);

// Dispatch on "type"; throws std::invalid_argument for unknown kinds.
enum class InstanceKind { Consensus, Necklace, Stream };
InstanceKind instance_kind(const Json& j);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace fairsplit
