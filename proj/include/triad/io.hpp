#pragma once

// Run configuration (JSON), analysis reports (JSON) and tabular outputs
// (CSV) for the command-line tool and the Python module.
//
// Config schema, one top-level object:
//
//   hydrolysis        "first_order" | "biomass"            (required)
//   k0 k1 k2 k3       yields                               (required)
//   D X0in S1in S2in  dilution rate and inflows            (required)
//   k_hyd             first-order hydrolysis rate          (default 0)
//   alpha0..alpha2    washout fractions                    (default 1)
//   a1 a2             mortality rates                      (default 0)
//   mu0 mu1 mu2       {"kind": "monod", "m", "K"} | {"kind": "haldane", "m",
//                     "K", "KI"} | {"kind": "linear", "c"}; mu0 only with
//                     biomass hydrolysis
//   sim               {"t_end", "rtol", "atol", "max_steps", "record_stride",
//                      "monitors", "initial": {"X0","S1","X1","S2","X2"}}
//   scan              {"x": {"param","lo","hi","n"}, "y": {...}}
//   output            {"path", "boundaries"}
//   seed              unsigned integer
//
// Unknown keys anywhere are rejected.

#include "triad/diagram.hpp"
#include "triad/model.hpp"
#include "triad/simulator.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace triad {

/// Invalid configuration. `where` is a JSON pointer ("/sim/rtol") or a
/// "line L, column C" position for syntax errors.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string at, const std::string& msg)
        : std::runtime_error(at + ": " + msg), where(std::move(at)) {}
    std::string where;
};

struct RunConfig {
    ModelParams model;
    std::optional<SimConfig> sim;
    std::optional<State> initial;
    std::optional<ScanSpec> scan;  // scan->base mirrors model
    std::optional<std::string> output_path;
    std::optional<std::string> boundaries_path;
    std::optional<std::uint64_t> seed;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const GrowthCurve& c);
nlohmann::json to_json(const ModelParams& p);
nlohmann::json to_json(const RunConfig& cfg);

/// Full equilibrium analysis: removal rates, break-evens, multiplicity (biomass
/// mode), and every candidate equilibrium with existence margins, residual,
/// analytic and numeric stability and Routh data.
nlohmann::json equilibria_report(const ModelParams& p);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_grid_csv(std::ostream& os, const DiagramGrid& grid);
void write_boundaries_csv(std::ostream& os, const std::vector<Boundary>& boundaries);

/// Minimal RFC 4180 reader (quoted fields, doubled quotes); first row is
/// the header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(std::istream& is);

/// Shortest round-trip rendering of a double (17 significant digits at most).
std::string format_double(double v);

}  // namespace triad
