#pragma once

// Operating diagrams: scan one or two operating parameters, classify every
// grid point by which equilibria exist and whether they are stable, and
// locate the boundaries between regions.

#include "triad/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace triad {

enum class ScanParam { D, S1in, S2in, X0in, a1, a2, alpha0, alpha1, alpha2, k_hyd };

std::string to_string(ScanParam s);
std::optional<ScanParam> parse_scan_param(std::string_view name);
void set_param(ModelParams& p, ScanParam which, double value);
double get_param(const ModelParams& p, ScanParam which);

struct ScanAxis {
    ScanParam param = ScanParam::D;
    double lo = 0.0;
    double hi = 1.0;
    int n = 2;

    double value(int idx) const { return lo + (hi - lo) * idx / (n - 1); }
    double step() const { return (hi - lo) / (n - 1); }
};

struct ScanSpec {
    ModelParams base;
    ScanAxis x;
    std::optional<ScanAxis> y;  // absent: one-dimensional scan

    /// Throws ParameterError on empty ranges, n < 2 or a repeated axis.
    void validate() const;
};

struct DiagramCell {
    double x = 0.0;
    std::optional<double> y;
    bool valid = true;
    /// "E00:U,E01:S,E10k1:S": existing equilibria in (j, i, k) order with
    /// analytic verdict code. "INVALID" for rejected parameter points.
    std::string signature;
    std::optional<int> n_value;  // biomass-dependent hydrolysis only
    std::string error;           // why the cell is invalid
};

struct DiagramGrid {
    ScanSpec spec;
    int nx = 0;
    int ny = 1;
    std::vector<DiagramCell> cells;  // row-major, x fastest

    const DiagramCell& at(int ix, int iy) const {
        return cells[static_cast<std::size_t>(iy) * nx + ix];
    }
    bool all_invalid() const;
};

/// Signature of a single parameter point; n_value is set in biomass mode.
/// Throws whatever validation or the solvers throw.
DiagramCell classify_point(const ModelParams& p);

DiagramGrid scan(const ScanSpec& spec);

struct Boundary {
    std::string from;  // lexicographically smaller signature
    std::string to;
    std::vector<std::pair<double, double>> points;  // edge midpoints
};

/// Midpoints of grid edges joining cells of different signature, grouped
/// per signature pair.
std::vector<Boundary> extract_boundaries(const DiagramGrid& grid);

}  // namespace triad
