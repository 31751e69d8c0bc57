#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairsplit/adversary.hpp"
#include "fairsplit/game.hpp"

namespace fairsplit {

// Game parameters shared by every named strategy.
struct GameParams {
    Rat epsilon = rat(1, 10);
    long m = 256;
    int k = 2;
    std::string instance_path;  // replay adversaries
    Rat stride = rat(1, 20);    // interval test balancer
    long bead_stride = 8;       // stride test balancer
};

// Named factories so third-party strategies can be plugged into the runner.
// Stream balancers: potential, silent, interval. Stream adversaries:
// consensus-n2, consensus-n3, replay. Necklace balancers: potential, stride.
// Necklace adversaries: necklace-n2, necklace-n3, replay.
std::unique_ptr<StreamBalancerStrategy> make_stream_balancer(const std::string& name,
                                                             const GameParams& params);
std::unique_ptr<StreamAdversary> make_stream_adversary(const std::string& name,
                                                       const GameParams& params);
std::unique_ptr<NecklaceBalancerStrategy> make_necklace_balancer(const std::string& name,
                                                                 const GameParams& params);
std::unique_ptr<NecklaceGameAdversary> make_necklace_adversary(const std::string& name,
                                                               const GameParams& params);

bool is_necklace_adversary(const std::string& name);

struct GameOutcome {
    nlohmann::ordered_json summary;  // transcript + validation + certificates
    bool pass = false;
};

// Orchestrates one game between named strategies, validates the result and
// certifies potentials where the adversary defines them.
GameOutcome run_game(const std::string& balancer, const std::string& adversary,
                     const GameParams& params);

nlohmann::ordered_json transcript_to_json(const GameTranscript& transcript);

}  // namespace fairsplit
