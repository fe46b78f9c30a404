#include "triad/simulator.hpp"

#include "triad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace triad {

void SimConfig::validate() const {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ParameterError("sim: t_end must be > 0");
    if (!(rtol > 0.0) || !(atol > 0.0)) throw ParameterError("sim: rtol and atol must be > 0");
    if (max_steps <= 0) throw ParameterError("sim: max_steps must be > 0");
    if (record_stride <= 0) throw ParameterError("sim: record_stride must be > 0");
    if (!(stop_when_rhs_below >= 0.0)) {
        throw ParameterError("sim: stop_when_rhs_below must be >= 0");
    }
}

std::string TerminalClassification::str() const {
    switch (kind) {
        case TerminalKind::Running: return "Running";
        case TerminalKind::MaxSteps: return "MaxSteps";
        case TerminalKind::ConvergedTo: return "ConvergedTo(" + label->str() + ")";
    }
    return "?";
}

namespace {

// Dormand-Prince 5(4) tableau (autonomous system, so the nodes c_i are unused).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

State axpy(const State& x, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = x;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double acc = 0.0;
        for (const auto& [w, k] : terms) acc += w * (*k)[i];
        out[i] += h * acc;
    }
    return out;
}

double inf_norm(const State& v) {
    double n = 0.0;
    for (double c : v) n = std::max(n, std::abs(c));
    return n;
}

double initial_step(const State& x, const State& f, const SimConfig& cfg) {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double sc = cfg.atol + cfg.rtol * std::abs(x[i]);
        d0 = std::max(d0, std::abs(x[i]) / sc);
        d1 = std::max(d1, std::abs(f[i]) / sc);
    }
    const double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    return std::min(h, cfg.t_end);
}

}  // namespace

Trajectory integrate(const ModelParams& p, const State& x0, const SimConfig& cfg) {
    cfg.validate();
    for (double c : x0) {
        if (!(c >= 0.0)) throw DomainError("integrate: initial state must be nonnegative");
    }

    Trajectory tr;
    const double z0 = total_mass(p, x0);
    const double env_tol = 1e-6 * std::max(z0, omega_bound(p));

    auto record = [&](double t, const State& x) {
        tr.times.push_back(t);
        tr.states.push_back(x);
        tr.z_values.push_back(total_mass(p, x));
    };
    auto monitor = [&](double t, const State& x) {
        if (!cfg.monitors_enabled) return;
        const double lowest = *std::min_element(x.begin(), x.end());
        if (lowest < -cfg.atol) tr.monitor_violations.push_back({t, "positivity", -lowest});
        const double excess = total_mass(p, x) - gronwall_envelope(p, z0, t);
        if (excess > env_tol) tr.monitor_violations.push_back({t, "omega", excess});
    };

    double t = 0.0;
    State x = x0;
    State k1 = rhs_extended(p, x);
    record(t, x);

    double h = initial_step(x, k1, cfg);
    const double h_floor_rel = 1e-14;
    long since_record = 0;

    while (t < cfg.t_end) {
        if (tr.accepted_steps >= cfg.max_steps) {
            tr.terminal.kind = TerminalKind::MaxSteps;
            break;
        }
        if (cfg.stop_when_rhs_below > 0.0 && inf_norm(k1) < cfg.stop_when_rhs_below) break;

        h = std::min(h, cfg.t_end - t);
        if (h <= h_floor_rel * std::max(1.0, std::abs(t))) {
            std::ostringstream msg;
            msg << "integrate: step size underflow (h = " << h << ") at t = " << t;
            throw StiffnessError(msg.str(), t, h);
        }

        const State k2 = rhs_extended(p, axpy(x, h, {{a21, &k1}}));
        const State k3 = rhs_extended(p, axpy(x, h, {{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs_extended(p, axpy(x, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 =
            rhs_extended(p, axpy(x, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = rhs_extended(
            p, axpy(x, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        State xn = axpy(x, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs_extended(p, xn);

        double err = 0.0;
        bool negative = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double e =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = cfg.atol + cfg.rtol * std::max(std::abs(x[i]), std::abs(xn[i]));
            err = std::max(err, std::abs(e) / sc);
            if (xn[i] < -cfg.atol) negative = true;
        }
        if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();

        if (negative) {
            ++tr.rejected_steps;
            h *= 0.5;
            continue;
        }
        if (err > 1.0) {
            ++tr.rejected_steps;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        // Accepted. Undershoot inside (-atol, 0) is kept unless it is
        // larger than atol * 1e-3.
        bool clipped = false;
        for (double& c : xn) {
            if (c < -cfg.atol * 1e-3) {
                c = 0.0;
                clipped = true;
            }
        }
        t = (cfg.t_end - t <= h) ? cfg.t_end : t + h;
        x = xn;
        k1 = clipped ? rhs_extended(p, x) : k7;
        ++tr.accepted_steps;
        monitor(t, x);
        if (++since_record >= cfg.record_stride) {
            record(t, x);
            since_record = 0;
        }

        h *= err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
    }
    if (tr.times.back() != t) record(t, x);
    return tr;
}

OmegaCheck check_omega(const Trajectory& traj, const ModelParams& p, std::optional<double> tol) {
    OmegaCheck out;
    if (traj.z_values.empty()) return out;
    const double z0 = traj.z_values.front();
    out.tolerance = tol.value_or(1e-6 * z0);
    out.worst_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < traj.z_values.size(); ++i) {
        const double excess = traj.z_values[i] - gronwall_envelope(p, z0, traj.times[i]);
        if (excess > out.worst_excess) {
            out.worst_excess = excess;
            out.worst_time = traj.times[i];
        }
    }
    out.ok = out.worst_excess <= out.tolerance;
    return out;
}

TerminalClassification detect_convergence(const ModelParams& p, const Trajectory& traj,
                                          const std::vector<EquilibriumRecord>& equilibria,
                                          double rhs_tol) {
    TerminalClassification out = traj.terminal;
    const State& xf = traj.states.back();
    State clamped = xf;
    for (double& c : clamped) c = std::max(c, 0.0);
    out.residual = inf_norm(rhs(p, clamped));

    double best = std::numeric_limits<double>::infinity();
    const EquilibriumRecord* nearest = nullptr;
    for (const auto& e : equilibria) {
        if (!e.exists) continue;
        double d = 0.0;
        for (std::size_t i = 0; i < xf.size(); ++i) d = std::max(d, std::abs(xf[i] - e.state[i]));
        if (d < best) {
            best = d;
            nearest = &e;
        }
    }
    out.distance = best;
    if (nearest && best <= 1e-6 * (1.0 + inf_norm(nearest->state)) && out.residual < rhs_tol) {
        out.kind = TerminalKind::ConvergedTo;
        out.label = nearest->label;
    }
    return out;
}

}  // namespace triad
