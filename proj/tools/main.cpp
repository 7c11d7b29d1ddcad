// hodge-forge: build Bergman fans of matroids, compute their Chow rings
// with exact rational arithmetic, and verify duality, Hard Lefschetz,
// Hodge-Riemann and the deletion tower decomposition.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hodgeforge/bergman.hpp"
#include "hodgeforge/chow.hpp"
#include "hodgeforge/convexity.hpp"
#include "hodgeforge/errors.hpp"
#include "hodgeforge/hodge.hpp"
#include "hodgeforge/json_io.hpp"
#include "hodgeforge/matroid.hpp"

namespace {

using namespace hodgeforge;

struct RunConfig {
    std::string matroid_path;
    std::string mode = "direct";
    int element = 0;
    std::string witness = "default";
    int steps = 8;
    std::string format = "text";
    std::string out;
    int jobs = 1;
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty())
        std::cout << text << "\n";
    else
        write_file(cfg.out, text + "\n");
}

RatVec witness_coefficients(const RunConfig& cfg, const Matroid& m) {
    if (cfg.witness == "default") return submodular_class(m);
    return load_witness(cfg.witness, m);
}

int cmd_matroid_info(const RunConfig& cfg) {
    Matroid m = load_matroid(cfg.matroid_path);
    std::vector<int> by_rank(m.rank() + 1, 0);
    for (int r : m.flat_ranks) ++by_rank[r];
    std::vector<int> cl = coloops(m);
    std::vector<std::pair<int, int>> pair_sizes; // element -> |S_i|, non-coloops only
    for (int e = 1; e <= m.ground_size; ++e)
        if (std::find(cl.begin(), cl.end(), e) == cl.end())
            pair_sizes.emplace_back(e, static_cast<int>(deletion_flat_pairs(m, e).size()));

    if (cfg.format == "json") {
        Json j;
        j["name"] = m.name;
        j["ground_size"] = m.ground_size;
        j["rank"] = m.rank();
        j["flats_by_rank"] = by_rank;
        j["coloops"] = cl;
        Json ps;
        for (auto [e, s] : pair_sizes) ps[std::to_string(e)] = s;
        j["pair_flat_counts"] = ps;
        emit(cfg, j.dump(2));
        return 0;
    }
    std::string text;
    text += "name: " + (m.name.empty() ? std::string("(unnamed)") : m.name) + "\n";
    text += "ground size: " + std::to_string(m.ground_size) + "\n";
    text += "rank: " + std::to_string(m.rank()) + "\n";
    text += "flats by rank:";
    for (int c : by_rank) text += " " + std::to_string(c);
    text += "\ncoloops:";
    if (cl.empty()) text += " none";
    for (int e : cl) text += " " + std::to_string(e);
    text += "\npair flats per non-coloop:";
    if (pair_sizes.empty()) text += " none";
    for (auto [e, s] : pair_sizes)
        text += " |S_" + std::to_string(e) + "|=" + std::to_string(s);
    emit(cfg, text);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    Matroid m = load_matroid(cfg.matroid_path);
    VerifyOptions opt;
    opt.mode = cfg.mode;
    opt.element = cfg.element;
    opt.steps = cfg.steps;
    opt.jobs = cfg.jobs;
    if (cfg.witness != "default") opt.witness = load_witness(cfg.witness, m);
    VerifyReport rep = verify_main_theorem(m, opt);
    if (cfg.format == "json") {
        emit(cfg, verify_to_json(rep).dump(2));
    } else {
        std::string text;
        text += "mode: " + rep.mode + "\n";
        if (rep.mode == "tower")
            text += "element: " + std::to_string(rep.element) + ", " +
                    std::to_string(rep.tower_length) + " subdivisions\n";
        text += "hilbert:";
        for (int d : rep.hilbert) text += " " + std::to_string(d);
        text += "\n";
        for (const auto& n : rep.notes) text += "note: " + n + "\n";
        for (const auto& c : rep.checks) {
            text += std::string(c.pass ? "PASS " : "FAIL ") + c.name;
            if (!c.detail.empty()) text += " (" + c.detail + ")";
            text += "\n";
        }
        text += rep.ok ? "all checks passed" : "verification FAILED";
        emit(cfg, text);
    }
    return rep.ok ? 0 : 1;
}

int cmd_fan_dump(const RunConfig& cfg) {
    Matroid m = load_matroid(cfg.matroid_path);
    emit(cfg, fan_to_json(bergman_fan(m)).dump(2));
    return 0;
}

int cmd_chow_report(const RunConfig& cfg) {
    Matroid m = load_matroid(cfg.matroid_path);
    Fan f = bergman_fan(m);
    ChowSpace c = chow_space(f, cfg.jobs);
    int mw_dim = static_cast<int>(mw_space(f, c).size());
    emit(cfg, chow_report_json(c, mw_dim).dump(2));
    return 0;
}

int cmd_tower_dump(const RunConfig& cfg) {
    Matroid m = load_matroid(cfg.matroid_path);
    int elem = cfg.element;
    if (elem == 0) {
        for (int e = 1; e <= m.ground_size; ++e)
            if (!is_coloop(m, e)) { elem = e; break; }
        if (elem == 0) throw ColoopInput("tower-dump: every element is a coloop");
    }
    emit(cfg, tower_to_json(deletion_tower(m, elem)).dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chow rings of Bergman fans: exact duality, Lefschetz and "
                 "Hodge-Riemann verification"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_matroid = true) {
        if (needs_matroid)
            sub->add_option("--matroid", cfg.matroid_path, "matroid flats file (JSON)")
                ->required();
        sub->add_option("--format", cfg.format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", cfg.out, "write the report to a file instead of stdout");
        sub->add_option("--jobs", cfg.jobs, "worker threads for independent subproblems")
            ->check(CLI::Range(1, 1024));
    };

    CLI::App* info = app.add_subcommand("matroid-info", "rank, flats, coloops and pair flats");
    add_common(info);

    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    add_common(verify);
    verify->add_option("--mode", cfg.mode, "direct or tower")
        ->check(CLI::IsMember({"direct", "tower"}));
    verify->add_option("--element", cfg.element, "tower element (default: smallest non-coloop)")
        ->check(CLI::Range(1, 62));
    verify->add_option("--witness", cfg.witness,
                       "strictly convex witness: 'default' or a coefficients file");
    verify->add_option("--steps", cfg.steps, "deformation scan sample count")
        ->check(CLI::Range(1, 100000));

    CLI::App* fan = app.add_subcommand("fan-dump", "Bergman fan rays and maximal cones");
    add_common(fan);

    CLI::App* chow = app.add_subcommand("chow-report", "Hilbert function, relations and basis");
    add_common(chow);

    CLI::App* tower = app.add_subcommand("tower-dump", "deletion tower structure");
    add_common(tower);
    tower->add_option("--element", cfg.element, "element to delete");

    // HODGE_FORGE_SEED is reserved for future randomized features; all
    // current computation is deterministic and ignores it.
    if (std::getenv("HODGE_FORGE_SEED") != nullptr) {}

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (info->parsed()) return cmd_matroid_info(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (fan->parsed()) return cmd_fan_dump(cfg);
        if (chow->parsed()) return cmd_chow_report(cfg);
        if (tower->parsed()) return cmd_tower_dump(cfg);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const AxiomViolation& e) {
        std::cerr << "axiom violation: " << e.what() << "\n";
        return 2;
    } catch (const ColoopInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionFailure& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
