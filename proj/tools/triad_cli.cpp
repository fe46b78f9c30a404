// triad: equilibria, simulation, operating diagrams and randomized
// validation for the three-stage chemostat.
//
// Exit codes: 0 ok, 1 unexpected failure, 2 invalid input, 3 integrator
// stiffness, 4 every diagram cell invalid, 5 analytic/numeric disagreement.

#include "triad/diagram.hpp"
#include "triad/equilibria.hpp"
#include "triad/errors.hpp"
#include "triad/io.hpp"
#include "triad/simulator.hpp"
#include "triad/validation.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

enum Exit : int {
    kOk = 0,
    kFailure = 1,
    kInvalid = 2,
    kStiff = 3,
    kAllInvalid = 4,
    kDisagreement = 5,
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("triad");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("TRIAD_LOG")) {
        const std::string lvl = env;
        if (lvl == "debug") {
            spdlog::set_level(spdlog::level::debug);
        } else if (lvl == "info") {
            spdlog::set_level(spdlog::level::info);
        } else if (!lvl.empty()) {
            spdlog::warn("TRIAD_LOG={} not recognised (use debug or info)", lvl);
        }
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw triad::ConfigError(path, "cannot open output file");
    return os;
}

std::optional<std::string> pick(const std::string& flag, const std::optional<std::string>& cfg) {
    if (!flag.empty()) return flag;
    return cfg;
}

int cmd_equilibria(const std::string& config_path, const std::string& out_flag) {
    const triad::RunConfig cfg = triad::load_config(config_path);
    spdlog::info("loaded {} ({} hydrolysis)", config_path, triad::to_string(cfg.model.hydrolysis));
    const nlohmann::json report = triad::equilibria_report(cfg.model);

    int n_exist = 0;
    for (const auto& e : report["equilibria"]) {
        if (e["exists"].get<bool>()) ++n_exist;
        spdlog::debug("{}: exists={}", e["label"].get<std::string>(), e["exists"].get<bool>());
    }
    spdlog::info("{} of {} candidates exist, max residual {:.3e}", n_exist,
                 report["equilibria"].size(), report["max_residual"].get<double>());

    const std::string text = report.dump(2);
    if (auto out = pick(out_flag, cfg.output_path)) {
        open_out(*out) << text << '\n';
        spdlog::info("report written to {}", *out);
    }
    std::cout << text << '\n';
    return kOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_flag) {
    const triad::RunConfig cfg = triad::load_config(config_path);
    if (!cfg.sim) throw triad::ConfigError("/sim", "simulate needs a sim block");
    if (!cfg.initial) throw triad::ConfigError("/sim/initial", "simulate needs an initial state");

    spdlog::info("integrating to t = {} (rtol {}, atol {})", cfg.sim->t_end, cfg.sim->rtol,
                 cfg.sim->atol);
    triad::Trajectory traj = triad::integrate(cfg.model, *cfg.initial, *cfg.sim);
    const auto eqs = triad::equilibria(cfg.model);
    traj.terminal = triad::detect_convergence(cfg.model, traj, eqs);
    const triad::OmegaCheck omega = triad::check_omega(traj, cfg.model);
    spdlog::info("{} accepted, {} rejected steps", traj.accepted_steps, traj.rejected_steps);

    for (const auto& v : traj.monitor_violations) {
        std::cerr << "monitor violation: " << v.monitor << " at t=" << triad::format_double(v.time)
                  << " magnitude=" << triad::format_double(v.magnitude) << '\n';
    }

    const triad::State& xf = traj.states.back();
    nlohmann::json summary = {
        {"terminal", traj.terminal.str()},
        {"t_final", traj.times.back()},
        {"final_state", {{"X0", xf[0]}, {"S1", xf[1]}, {"X1", xf[2]}, {"S2", xf[3]}, {"X2", xf[4]}}},
        {"distance_to_nearest", traj.terminal.distance},
        {"final_residual", traj.terminal.residual},
        {"accepted_steps", traj.accepted_steps},
        {"rejected_steps", traj.rejected_steps},
        {"points", traj.times.size()},
        {"monitor_violations", traj.monitor_violations.size()},
        {"omega", {{"ok", omega.ok}, {"worst_excess", omega.worst_excess},
                   {"worst_time", omega.worst_time}, {"tolerance", omega.tolerance}}}};

    if (auto out = pick(out_flag, cfg.output_path)) {
        auto os = open_out(*out);
        triad::write_trajectory_csv(os, traj);
        std::cout << summary.dump(2) << '\n';
    } else {
        triad::write_trajectory_csv(std::cout, traj);
        std::cerr << summary.dump(2) << '\n';
    }
    return kOk;
}

int cmd_diagram(const std::string& config_path, const std::string& out_flag,
                const std::string& boundaries_flag) {
    const triad::RunConfig cfg = triad::load_config(config_path);
    if (!cfg.scan) throw triad::ConfigError("/scan", "diagram needs a scan block");

    const triad::DiagramGrid grid = triad::scan(*cfg.scan);
    const auto boundaries = triad::extract_boundaries(grid);

    std::map<std::string, int> counts;
    int invalid = 0;
    for (const auto& c : grid.cells) {
        ++counts[c.signature];
        if (!c.valid) {
            ++invalid;
            spdlog::debug("invalid cell x={} y={}: {}", c.x, c.y.value_or(0.0), c.error);
        }
    }
    spdlog::info("{} cells, {} invalid, {} regions, {} boundaries", grid.cells.size(), invalid,
                 counts.size(), boundaries.size());

    nlohmann::json summary = {{"cells", grid.cells.size()},
                              {"nx", grid.nx},
                              {"ny", grid.ny},
                              {"invalid", invalid},
                              {"signatures", counts},
                              {"boundaries", boundaries.size()}};

    if (auto bpath = pick(boundaries_flag, cfg.boundaries_path)) {
        auto os = open_out(*bpath);
        triad::write_boundaries_csv(os, boundaries);
    }
    if (auto out = pick(out_flag, cfg.output_path)) {
        auto os = open_out(*out);
        triad::write_grid_csv(os, grid);
        std::cout << summary.dump(2) << '\n';
    } else {
        triad::write_grid_csv(std::cout, grid);
        std::cerr << summary.dump(2) << '\n';
    }

    if (grid.all_invalid()) {
        spdlog::error("every grid cell is invalid; first reason: {}",
                      grid.cells.empty() ? "" : grid.cells.front().error);
        return kAllInvalid;
    }
    return kOk;
}

int cmd_validate(int draws, std::uint64_t seed) {
    if (draws < 0) throw triad::ConfigError("--draws", "must be >= 0");
    spdlog::info("validating {} draws per mode, seed {}", draws, seed);
    const triad::ValidationSummary s = triad::run_validation(draws, seed);
    std::cout << s.to_json().dump(2) << '\n';
    if (s.disagreements() > 0) {
        for (const auto* m : {&s.first_order, &s.biomass}) {
            if (!m->first_disagreement) continue;
            triad::RunConfig repro;
            repro.model = *m->first_disagreement;
            repro.seed = seed;
            std::cerr << "disagreement at " << m->first_disagreement_label
                      << "; reproduction config:\n"
                      << triad::to_json(repro).dump(2) << '\n';
        }
        return kDisagreement;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Three-stage chemostat analysis"};
    app.require_subcommand(1);

    std::string config, out, boundaries;
    int draws = 500;
    std::uint64_t seed = 1;

    auto* eq = app.add_subcommand("equilibria", "Report every candidate equilibrium as JSON");
    eq->add_option("config", config, "JSON config")->required()->check(CLI::ExistingFile);
    eq->add_option("--out", out, "Also write the report here");

    auto* sim = app.add_subcommand("simulate", "Integrate from the configured initial state");
    sim->add_option("config", config, "JSON config")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out, "Trajectory CSV path (default stdout)");

    auto* dia = app.add_subcommand("diagram", "Operating diagram over the configured scan");
    dia->add_option("config", config, "JSON config")->required()->check(CLI::ExistingFile);
    dia->add_option("--out", out, "Grid CSV path (default stdout)");
    dia->add_option("--boundaries", boundaries, "Boundary CSV path");

    auto* val = app.add_subcommand("validate", "Randomized analytic vs numeric cross-check");
    val->add_option("--draws", draws, "Parameter draws per hydrolysis mode")->capture_default_str();
    val->add_option("--seed", seed, "Generator seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*eq) return cmd_equilibria(config, out);
        if (*sim) return cmd_simulate(config, out);
        if (*dia) return cmd_diagram(config, out, boundaries);
        if (*val) return cmd_validate(draws, seed);
    } catch (const triad::ConfigError& e) {
        std::cerr << "config error at " << e.what() << '\n';
        return kInvalid;
    } catch (const triad::ParameterError& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kInvalid;
    } catch (const triad::StiffnessError& e) {
        std::cerr << "integration failed: " << e.what() << '\n';
        return kStiff;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}
