#pragma once

#include "triad/equilibria.hpp"
#include "triad/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace triad {

struct SimConfig {
    double t_end = 100.0;
    double rtol = 1e-8;
    double atol = 1e-10;
    long max_steps = 2'000'000;
    int record_stride = 1;
    bool monitors_enabled = true;
    // Stop before t_end once ||rhs||_inf drops below this (0 disables).
    double stop_when_rhs_below = 0.0;

    void validate() const;
};

struct MonitorViolation {
    double time;
    std::string monitor;  // "positivity" or "omega"
    double magnitude;
};

enum class TerminalKind { Running, MaxSteps, ConvergedTo };

struct TerminalClassification {
    TerminalKind kind = TerminalKind::Running;
    std::optional<EquilibriumLabel> label;  // ConvergedTo only
    double distance = 0.0;  // to the nearest existing equilibrium
    double residual = 0.0;  // ||rhs||_inf at the final state

    std::string str() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> z_values;
    std::vector<MonitorViolation> monitor_violations;
    TerminalClassification terminal;
    long accepted_steps = 0;
    long rejected_steps = 0;
};

/// Adaptive Dormand-Prince 5(4) integration from x0 over [0, cfg.t_end].
/// Steps that would push a component below -atol are rejected and retried
/// with half the step. Throws StiffnessError when the step underflows.
Trajectory integrate(const ModelParams& p, const State& x0, const SimConfig& cfg = {});

struct OmegaCheck {
    bool ok = true;
    double worst_excess = 0.0;  // max over points of Z(t) - envelope(t)
    double worst_time = 0.0;
    double tolerance = 0.0;
};

/// Z(t) <= envelope(t) + tol at every recorded point, where envelope is the
/// Gronwall bound. tol defaults to 1e-6 Z(0).
OmegaCheck check_omega(const Trajectory& traj, const ModelParams& p,
                       std::optional<double> tol = std::nullopt);

/// ConvergedTo(label) when the final state lies within
/// 1e-6 (1 + ||eq||_inf) of an existing equilibrium and ||rhs||_inf <
/// rhs_tol; otherwise the trajectory's own terminal kind.
TerminalClassification detect_convergence(const ModelParams& p, const Trajectory& traj,
                                          const std::vector<EquilibriumRecord>& equilibria,
                                          double rhs_tol = 1e-8);

}  // namespace triad
