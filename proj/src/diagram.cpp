#include "triad/diagram.hpp"

#include "triad/equilibria.hpp"
#include "triad/errors.hpp"
#include "triad/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace triad {

namespace {

constexpr std::array<std::pair<ScanParam, std::string_view>, 10> kParamNames{{
    {ScanParam::D, "D"},
    {ScanParam::S1in, "S1in"},
    {ScanParam::S2in, "S2in"},
    {ScanParam::X0in, "X0in"},
    {ScanParam::a1, "a1"},
    {ScanParam::a2, "a2"},
    {ScanParam::alpha0, "alpha0"},
    {ScanParam::alpha1, "alpha1"},
    {ScanParam::alpha2, "alpha2"},
    {ScanParam::k_hyd, "k_hyd"},
}};

template <class Params>
auto* field(Params& p, ScanParam which) {
    switch (which) {
        case ScanParam::D: return &p.D;
        case ScanParam::S1in: return &p.S1in;
        case ScanParam::S2in: return &p.S2in;
        case ScanParam::X0in: return &p.X0in;
        case ScanParam::a1: return &p.a1;
        case ScanParam::a2: return &p.a2;
        case ScanParam::alpha0: return &p.alpha0;
        case ScanParam::alpha1: return &p.alpha1;
        case ScanParam::alpha2: return &p.alpha2;
        case ScanParam::k_hyd: return &p.k_hyd;
    }
    return static_cast<decltype(&p.D)>(nullptr);
}

void check_axis(const ScanAxis& a, const char* which) {
    const std::string name = std::string("scan axis ") + which;
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || !(a.hi > a.lo)) {
        throw ParameterError(name + ": range must satisfy lo < hi");
    }
    if (a.n < 2) throw ParameterError(name + ": resolution must be >= 2");
}

}  // namespace

std::string to_string(ScanParam s) {
    for (const auto& [k, name] : kParamNames) {
        if (k == s) return std::string(name);
    }
    return "?";
}

std::optional<ScanParam> parse_scan_param(std::string_view name) {
    for (const auto& [k, n] : kParamNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

void set_param(ModelParams& p, ScanParam which, double value) { *field(p, which) = value; }

double get_param(const ModelParams& p, ScanParam which) {
    return *field(p, which);
}

void ScanSpec::validate() const {
    check_axis(x, "x");
    if (y) {
        check_axis(*y, "y");
        if (y->param == x.param) throw ParameterError("scan axes must be distinct parameters");
    }
}

bool DiagramGrid::all_invalid() const {
    return std::none_of(cells.begin(), cells.end(), [](const DiagramCell& c) { return c.valid; });
}

DiagramCell classify_point(const ModelParams& p) {
    p.validate();
    DiagramCell cell;
    auto eqs = equilibria(p);
    std::sort(eqs.begin(), eqs.end(),
              [](const EquilibriumRecord& a, const EquilibriumRecord& b) { return a.label < b.label; });
    for (const auto& e : eqs) {
        if (!e.exists) continue;
        if (!cell.signature.empty()) cell.signature += ',';
        cell.signature += e.label.str();
        cell.signature += ':';
        cell.signature += verdict_code(classify(p, e).analytic);
    }
    if (p.hydrolysis == Hydrolysis::BiomassDependent) cell.n_value = multiplicity(p).N;
    return cell;
}

DiagramGrid scan(const ScanSpec& spec) {
    spec.validate();
    DiagramGrid grid;
    grid.spec = spec;
    grid.nx = spec.x.n;
    grid.ny = spec.y ? spec.y->n : 1;
    grid.cells.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);

    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            ModelParams p = spec.base;
            const double xv = spec.x.value(ix);
            set_param(p, spec.x.param, xv);
            std::optional<double> yv;
            if (spec.y) {
                yv = spec.y->value(iy);
                set_param(p, spec.y->param, *yv);
            }
            DiagramCell cell;
            try {
                cell = classify_point(p);
            } catch (const std::exception& ex) {
                cell.valid = false;
                cell.signature = "INVALID";
                cell.error = ex.what();
            }
            cell.x = xv;
            cell.y = yv;
            grid.cells.push_back(std::move(cell));
        }
    }
    return grid;
}

std::vector<Boundary> extract_boundaries(const DiagramGrid& grid) {
    std::map<std::pair<std::string, std::string>, Boundary> groups;
    std::vector<std::pair<std::string, std::string>> order;

    auto add = [&](const DiagramCell& a, const DiagramCell& b, double px, double py) {
        if (a.signature == b.signature) return;
        auto key = std::minmax(a.signature, b.signature);
        std::pair<std::string, std::string> k{key.first, key.second};
        auto [it, inserted] = groups.try_emplace(k);
        if (inserted) {
            it->second.from = k.first;
            it->second.to = k.second;
            order.push_back(k);
        }
        it->second.points.emplace_back(px, py);
    };

    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const DiagramCell& c = grid.at(ix, iy);
            const double cy = c.y.value_or(0.0);
            if (ix + 1 < grid.nx) {
                const DiagramCell& r = grid.at(ix + 1, iy);
                add(c, r, 0.5 * (c.x + r.x), cy);
            }
            if (iy + 1 < grid.ny) {
                const DiagramCell& u = grid.at(ix, iy + 1);
                add(c, u, c.x, 0.5 * (cy + u.y.value_or(0.0)));
            }
        }
    }

    std::vector<Boundary> out;
    out.reserve(order.size());
    for (const auto& k : order) out.push_back(std::move(groups[k]));
    return out;
}

}  // namespace triad
