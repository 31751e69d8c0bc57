#include "fairsplit/registry.hpp"

#include <stdexcept>

#include "fairsplit/json_io.hpp"

namespace fairsplit {

std::unique_ptr<StreamBalancerStrategy> make_stream_balancer(const std::string& name,
                                                             const GameParams& params) {
    if (name == "potential" || name == "online-halving" || name == "online-splitting")
        return std::make_unique<PotentialStreamBalancer>();
    if (name == "silent") return std::make_unique<SilentStreamBalancer>();
    if (name == "interval") return std::make_unique<IntervalStreamBalancer>(params.stride);
    throw std::invalid_argument("unknown stream balancer: " + name);
}

std::unique_ptr<StreamAdversary> make_stream_adversary(const std::string& name,
                                                       const GameParams& params) {
    if (name == "consensus-n2") return std::make_unique<ConsensusAdversaryN2>(params.epsilon);
    if (name == "consensus-n3") return std::make_unique<ConsensusAdversaryN3>(params.epsilon);
    if (name == "replay") {
        Json j = load_json_file(params.instance_path);
        return std::make_unique<ReplayStreamAdversary>(stream_from_json(j));
    }
    throw std::invalid_argument("unknown stream adversary: " + name);
}

std::unique_ptr<NecklaceBalancerStrategy> make_necklace_balancer(const std::string& name,
                                                                 const GameParams& params) {
    if (name == "potential" || name == "online-necklace")
        return std::make_unique<PotentialNecklaceBalancer>();
    if (name == "stride") return std::make_unique<StrideNecklaceBalancer>(params.bead_stride);
    throw std::invalid_argument("unknown necklace balancer: " + name);
}

std::unique_ptr<NecklaceGameAdversary> make_necklace_adversary(const std::string& name,
                                                               const GameParams& params) {
    if (name == "necklace-n2") return std::make_unique<NecklaceAdversaryN2>(params.m);
    if (name == "necklace-n3") return std::make_unique<NecklaceAdversaryN3>(params.m);
    if (name == "replay") {
        Json j = load_json_file(params.instance_path);
        return std::make_unique<ReplayNecklaceAdversary>(necklace_from_json(j));
    }
    throw std::invalid_argument("unknown necklace adversary: " + name);
}

bool is_necklace_adversary(const std::string& name) {
    return name == "necklace-n2" || name == "necklace-n3";
}

nlohmann::ordered_json transcript_to_json(const GameTranscript& transcript) {
    nlohmann::ordered_json events = nlohmann::ordered_json::array();
    for (const auto& ev : transcript.events) {
        nlohmann::ordered_json e;
        switch (ev.kind) {
            case TranscriptEvent::RevealGap: {
                e["ev"] = "reveal";
                e["len"] = rat_str(ev.length);
                nlohmann::ordered_json masses = nlohmann::ordered_json::array();
                for (const auto& m : ev.masses) masses.push_back(rat_str(m));
                e["masses"] = masses;
                if (ev.repeat > 1) e["repeat"] = ev.repeat;
                if (ev.in_prefix) e["prefix"] = true;
                break;
            }
            case TranscriptEvent::RevealBead:
                e["ev"] = "bead";
                e["color"] = ev.color + 1;
                if (ev.repeat > 1) e["repeat"] = ev.repeat;
                if (ev.in_prefix) e["prefix"] = true;
                break;
            case TranscriptEvent::Cut:
                e["ev"] = "cut";
                if (ev.gap >= 0)
                    e["gap"] = ev.gap;
                else
                    e["pos"] = rat_str(ev.position);
                break;
            case TranscriptEvent::Assign:
                e["ev"] = "assign";
                e["agent"] = ev.agent;
                break;
            case TranscriptEvent::Abort:
                e["ev"] = "abort";
                break;
        }
        events.push_back(std::move(e));
    }
    nlohmann::ordered_json j;
    j["type"] = "transcript";
    j["cuts"] = transcript.cut_count;
    j["prefix_cuts"] = transcript.prefix_cut_count;
    j["aborted"] = transcript.aborted;
    if (transcript.aborted) j["abort_reason"] = transcript.abort_reason;
    j["events"] = events;
    return j;
}

GameOutcome run_game(const std::string& balancer, const std::string& adversary,
                     const GameParams& params) {
    GameOutcome outcome;
    nlohmann::ordered_json& j = outcome.summary;
    j["type"] = "game";
    j["balancer"] = balancer;
    j["adversary"] = adversary;

    bool necklace_game = is_necklace_adversary(adversary);
    if (!necklace_game && adversary == "replay") {
        Json inst = load_json_file(params.instance_path);
        necklace_game = instance_kind(inst) == InstanceKind::Necklace;
    }

    if (necklace_game) {
        auto adv = make_necklace_adversary(adversary, params);
        auto bal = make_necklace_balancer(balancer, params);
        auto result = run_necklace_game(*adv, *bal, params.k);
        j["validation"] = {{"pass", result.validation.pass},
                           {"detail", result.validation.detail},
                           {"cuts", result.validation.cut_count}};
        if (adversary == "necklace-n3") {
            auto* n3 = dynamic_cast<NecklaceAdversaryN3*>(adv.get());
            auto cert = certify_m_growth_necklace(result.transcript, n3->scale());
            j["m_accounting"] = {{"ok", cert.ok}, {"checked_cuts", cert.checked_cuts}};
        }
        j["transcript"] = transcript_to_json(result.transcript);
        outcome.pass = !result.transcript.aborted && result.validation.pass;
    } else {
        auto adv = make_stream_adversary(adversary, params);
        auto bal = make_stream_balancer(balancer, params);
        GameOptions opts;
        opts.materialize_stream = false;
        auto result = run_consensus_game(*adv, *bal, params.k, opts);
        j["validation"] = {{"pass", result.validation.pass},
                           {"detail",
                            "discrepancy " + rat_str(result.validation.observed) + " vs " +
                                rat_str(result.validation.bound)},
                           {"cuts", result.validation.cut_count}};
        if (adversary == "consensus-n3") {
            auto cert = certify_m_growth_consensus(result.transcript, params.epsilon);
            j["m_growth"] = {{"ok", cert.ok},
                             {"checked_cuts", cert.checked_cuts},
                             {"total_slack", rat_str(cert.total_slack)}};
        }
        j["transcript"] = transcript_to_json(result.transcript);
        outcome.pass = !result.transcript.aborted && result.validation.pass;
    }
    return outcome;
}

}  // namespace fairsplit
