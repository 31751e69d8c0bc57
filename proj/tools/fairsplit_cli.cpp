// Command line front end: instance generation, solving, games, validation
// and benchmark reports. Exit code 0 iff every validation passed.

#include <CLI11.hpp>

#include <iostream>

#include "fairsplit/bench.hpp"
#include "fairsplit/brute_force.hpp"
#include "fairsplit/generate.hpp"
#include "fairsplit/json_io.hpp"
#include "fairsplit/offline_necklace.hpp"
#include "fairsplit/offline_splitter.hpp"
#include "fairsplit/online_balancer.hpp"
#include "fairsplit/online_necklace.hpp"
#include "fairsplit/registry.hpp"
#include "fairsplit/report.hpp"
#include "fairsplit/type1.hpp"

using namespace fairsplit;

namespace {

void write_or_print(const Json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out, j);
}

Json allocation_report(const Allocation& alloc, const ValidationReport& validation) {
    Json j = to_json(alloc);
    j["discrepancy"] = to_json(absolute_discrepancy(alloc));
    j["validation"] = {{"pass", validation.pass},
                       {"detail", validation.detail},
                       {"cuts", validation.cut_count}};
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"consensus and necklace splitting toolkit"};
    app.require_subcommand(1);
    bool all_valid = true;

    // ------------------------------------------------------------- gen
    auto* gen = app.add_subcommand("gen", "generate instances");
    std::string gen_kind = "consensus";
    uint64_t seed = 1;
    size_t gen_n = 2, gen_segments = 6;
    std::string gen_counts = "8,8";
    std::string gen_eps = "1/4";
    int gen_k = 2;
    std::string gen_out;
    gen->add_option("kind", gen_kind, "consensus | stream | necklace");
    gen->add_option("--seed", seed);
    gen->add_option("--n", gen_n, "number of measures / colors");
    gen->add_option("--segments", gen_segments);
    gen->add_option("--counts", gen_counts, "necklace color counts, comma separated");
    gen->add_option("--epsilon", gen_eps, "stream tolerance");
    gen->add_option("--agents", gen_k, "stream agent count");
    gen->add_option("--out", gen_out);
    gen->callback([&] {
        if (gen_kind == "consensus") {
            write_or_print(to_json(generate_instance(seed, gen_n, gen_segments)), gen_out);
        } else if (gen_kind == "stream") {
            write_or_print(
                to_json(generate_stream(seed, gen_n, gen_segments, rat_parse(gen_eps), gen_k)),
                gen_out);
        } else if (gen_kind == "necklace") {
            std::vector<long> counts;
            std::stringstream ss(gen_counts);
            std::string item;
            while (std::getline(ss, item, ',')) counts.push_back(std::stol(item));
            write_or_print(to_json(generate_necklace(seed, counts)), gen_out);
        } else {
            throw CLI::ValidationError("unknown kind " + gen_kind);
        }
    });

    // ------------------------------------------------------------- solve
    auto* solve = app.add_subcommand("solve", "run a splitting algorithm");
    std::string algo;
    std::string in_path, stream_path, out_path;
    std::string eps_text = "1/4";
    int agents = 2;
    bool with_transcript = false;
    solve->add_option("algorithm", algo,
                      "type1 | online-halving | online-splitting | online-necklace | "
                      "offline-halving | offline-splitting | offline-necklace | circular2")
        ->required();
    solve->add_option("--instance", in_path);
    solve->add_option("--stream", stream_path);
    solve->add_option("--epsilon", eps_text);
    solve->add_option("--agents", agents);
    solve->add_flag("--transcript", with_transcript, "record the online transcript");
    solve->add_option("--out", out_path);
    solve->callback([&] {
        Json result;
        if (algo == "type1") {
            ConsensusInstance inst = consensus_from_json(load_json_file(in_path));
            Type1Result r = type1_solve(inst, agents);
            Rat floor_share = rat(1, static_cast<long>(inst.n()) * agents);
            ValidationReport rep;
            rep.cut_count = r.allocation.cuts.size();
            rep.bound = floor_share;
            rep.observed = floor_share;
            rep.pass = true;
            for (const auto& row : r.allocation.shares)
                for (const auto& s : row)
                    if (s < floor_share) rep.pass = false;
            rep.detail = rep.pass ? "every share at least 1/(nk)" : "share below 1/(nk)";
            result = allocation_report(r.allocation, rep);
            result["oracle_calls"] = r.oracle_calls;
            all_valid = all_valid && rep.pass;
        } else if (algo == "online-halving" || algo == "online-splitting") {
            std::string path = stream_path.empty() ? in_path : stream_path;
            OnlineStream stream = stream_from_json(load_json_file(path));
            Rat eps = solve->count("--epsilon") ? rat_parse(eps_text) : stream.epsilon;
            int k = algo == "online-halving" ? 2 : agents;
            RunOptions opts;
            opts.record_transcript = with_transcript;
            OnlineRunResult r = algo == "online-halving"
                                    ? run_online_halving(stream, eps, opts)
                                    : run_online_splitting(stream, eps, k, opts);
            ValidationReport rep = validate_proper_consensus(stream.base, r.allocation, eps, k);
            result = allocation_report(r.allocation, rep);
            result["psi_monotone"] = r.stats.psi_monotone;
            if (with_transcript) result["transcript"] = transcript_to_json(r.transcript);
            all_valid = all_valid && rep.pass;
        } else if (algo == "online-necklace") {
            NecklaceInstance neck = necklace_from_json(load_json_file(in_path));
            NecklaceRunOptions opts;
            opts.record_transcript = with_transcript;
            OnlineNecklaceResult r =
                agents == 2 ? run_online_necklace_halving(neck, opts)
                            : run_online_necklace_splitting(neck, agents, opts);
            ValidationReport rep = validate_proper_necklace(neck, r.allocation, agents);
            result = allocation_report(r.allocation, rep);
            if (with_transcript) result["transcript"] = transcript_to_json(r.transcript);
            all_valid = all_valid && rep.pass;
        } else if (algo == "offline-halving" || algo == "offline-splitting") {
            ConsensusInstance inst = consensus_from_json(load_json_file(in_path));
            Rat eps = rat_parse(eps_text);
            int k = algo == "offline-halving" ? 2 : agents;
            OfflineResult r = algo == "offline-halving" ? offline_halving(inst, eps)
                                                        : offline_splitting(inst, eps, k);
            ValidationReport rep = validate_proper_consensus(inst, r.allocation, eps, k);
            result = allocation_report(r.allocation, rep);
            all_valid = all_valid && rep.pass;
        } else if (algo == "offline-necklace") {
            NecklaceInstance neck = necklace_from_json(load_json_file(in_path));
            OfflineNecklaceResult r = offline_necklace_halving(neck);
            ValidationReport rep = validate_proper_necklace(neck, r.allocation, 2);
            result = allocation_report(r.allocation, rep);
            all_valid = all_valid && rep.pass;
        } else if (algo == "circular2") {
            NecklaceInstance neck = necklace_from_json(load_json_file(in_path));
            CircularSplitResult r = two_color_circular_split(neck, agents);
            ValidationReport rep = validate_proper_necklace(neck, r.allocation, agents);
            result = allocation_report(r.allocation, rep);
            result["circular_cuts"] = r.circular_cuts;
            all_valid = all_valid && rep.pass;
        } else {
            throw CLI::ValidationError("unknown algorithm " + algo);
        }
        write_or_print(result, out_path);
    });

    // ------------------------------------------------------------- game
    auto* game = app.add_subcommand("game", "adversary game");
    std::string g_balancer = "potential", g_adversary = "consensus-n2";
    std::string g_eps = "1/10", g_out, g_instance;
    long g_m = 256;
    int g_k = 2;
    game->add_option("--balancer", g_balancer, "potential | silent | interval | stride");
    game->add_option("--adversary", g_adversary,
                     "consensus-n2 | consensus-n3 | necklace-n2 | necklace-n3 | replay");
    game->add_option("--epsilon", g_eps);
    game->add_option("--m", g_m, "beads per color");
    game->add_option("--agents", g_k);
    game->add_option("--instance", g_instance, "instance file for replay");
    game->add_option("--out", g_out);
    game->callback([&] {
        GameParams params;
        params.epsilon = rat_parse(g_eps);
        params.m = g_m;
        params.k = g_k;
        params.instance_path = g_instance;
        GameOutcome outcome = run_game(g_balancer, g_adversary, params);
        all_valid = all_valid && outcome.pass;
        write_or_print(outcome.summary, g_out);
    });

    // ------------------------------------------------------------- validate
    auto* val = app.add_subcommand("validate", "check an allocation against an instance");
    std::string v_instance, v_allocation, v_eps = "1/4";
    int v_k = 2;
    val->add_option("--instance", v_instance)->required();
    val->add_option("--allocation", v_allocation)->required();
    val->add_option("--epsilon", v_eps);
    val->add_option("--agents", v_k);
    val->callback([&] {
        Json inst_json = load_json_file(v_instance);
        Allocation alloc = allocation_from_json(load_json_file(v_allocation));
        ValidationReport rep;
        if (instance_kind(inst_json) == InstanceKind::Necklace) {
            NecklaceInstance neck = necklace_from_json(inst_json);
            Allocation rebuilt = build_allocation(neck, alloc.cuts, alloc.assignees, v_k);
            if (rebuilt.shares != alloc.shares) {
                std::cout << "{\"pass\": false, \"detail\": \"stored shares disagree\"}\n";
                all_valid = false;
                return;
            }
            rep = validate_proper_necklace(neck, rebuilt, v_k);
        } else {
            ConsensusInstance inst = instance_kind(inst_json) == InstanceKind::Stream
                                         ? stream_from_json(inst_json).base
                                         : consensus_from_json(inst_json);
            Allocation rebuilt = build_allocation(inst, alloc.cuts, alloc.assignees, v_k);
            if (rebuilt.shares != alloc.shares) {
                std::cout << "{\"pass\": false, \"detail\": \"stored shares disagree\"}\n";
                all_valid = false;
                return;
            }
            rep = validate_proper_consensus(inst, rebuilt, rat_parse(v_eps), v_k);
        }
        Json j{{"pass", rep.pass},
               {"detail", rep.detail},
               {"discrepancy", rat_str(rep.observed)},
               {"bound", rat_str(rep.bound)}};
        std::cout << j.dump(2) << "\n";
        all_valid = all_valid && rep.pass;
    });

    // ------------------------------------------------------------- bench
    auto* bench = app.add_subcommand("bench", "run the guarantee benchmarks");
    std::string b_out = "bench_report";
    unsigned b_threads = 0;
    bench->add_option("--out", b_out, "output prefix; writes <out>.csv and <out>.json");
    bench->add_option("--threads", b_threads);
    bench->callback([&] {
        auto outcomes = run_all_criteria(b_threads);
        std::vector<BenchRow> rows;
        for (const auto& c : outcomes) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ", "
                      << c.seconds << " s)\n";
            all_valid = all_valid && c.pass;
            rows.insert(rows.end(), c.rows.begin(), c.rows.end());
        }
        write_report_files(rows, b_out);
        std::cout << "report written to " << b_out << ".csv and " << b_out << ".json\n";
    });

    // ------------------------------------------------------------- brute
    auto* brute = app.add_subcommand("brute", "exhaustive small-necklace oracle");
    std::string br_instance;
    brute->add_option("--instance", br_instance)->required();
    brute->callback([&] {
        NecklaceInstance neck = necklace_from_json(load_json_file(br_instance));
        BruteForceResult r = brute_force_checker(neck);
        Json j{{"proper_solutions", r.proper.size()}, {"min_cuts", r.min_cuts}};
        std::cout << j.dump(2) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return all_valid ? 0 : 1;
}
