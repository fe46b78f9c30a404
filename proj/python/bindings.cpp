#include "triad/diagram.hpp"
#include "triad/equilibria.hpp"
#include "triad/errors.hpp"
#include "triad/io.hpp"
#include "triad/kinetics.hpp"
#include "triad/simulator.hpp"
#include "triad/validation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

triad::ModelParams params_from(const std::string& config_json) {
    return triad::parse_config_text(config_json).model;
}

py::dict simulate(const std::string& config_json, std::optional<std::vector<double>> initial,
                  std::optional<double> t_end) {
    const triad::RunConfig cfg = triad::parse_config_text(config_json);
    triad::SimConfig sc = cfg.sim.value_or(triad::SimConfig{});
    if (t_end) sc.t_end = *t_end;
    triad::State x0{};
    if (initial) {
        if (initial->size() != 5) throw py::value_error("initial state needs 5 components");
        std::copy(initial->begin(), initial->end(), x0.begin());
    } else if (cfg.initial) {
        x0 = *cfg.initial;
    } else {
        throw py::value_error("no initial state given");
    }
    triad::Trajectory tr;
    {
        py::gil_scoped_release release;
        tr = triad::integrate(cfg.model, x0, sc);
        tr.terminal = triad::detect_convergence(cfg.model, tr, triad::equilibria(cfg.model));
    }
    std::vector<std::vector<double>> states;
    states.reserve(tr.states.size());
    for (const auto& s : tr.states) states.emplace_back(s.begin(), s.end());
    py::dict out;
    out["t"] = tr.times;
    out["states"] = states;
    out["Z"] = tr.z_values;
    out["terminal"] = tr.terminal.str();
    out["monitor_violations"] = tr.monitor_violations.size();
    out["omega_ok"] = triad::check_omega(tr, cfg.model).ok;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-stage chemostat: equilibria, stability, simulation, diagrams";

    py::register_exception<triad::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<triad::ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<triad::StiffnessError>(m, "StiffnessError", PyExc_RuntimeError);

    py::class_<triad::GrowthCurve>(m, "GrowthCurve")
        .def_static("monod", &triad::GrowthCurve::monod, py::arg("m"), py::arg("K"))
        .def_static("haldane", &triad::GrowthCurve::haldane, py::arg("m"), py::arg("K"),
                    py::arg("KI"))
        .def_static("linear", &triad::GrowthCurve::linear, py::arg("c"))
        .def("__call__", &triad::GrowthCurve::operator(), py::arg("s"))
        .def("derivative", &triad::GrowthCurve::derivative, py::arg("s"))
        .def("supremum", &triad::GrowthCurve::supremum)
        .def("peak_location", &triad::GrowthCurve::peak_location)
        .def_property_readonly("kind", &triad::GrowthCurve::kind_name)
        .def("__repr__", [](const triad::GrowthCurve& c) { return triad::to_json(c).dump(); });

    m.def("lambda1", &triad::lambda1, py::arg("mu"), py::arg("d"));
    m.def(
        "lambda2_pair",
        [](const triad::GrowthCurve& mu, double d) -> std::optional<std::pair<double, double>> {
            auto r = triad::lambda2_pair(mu, d);
            if (!r) return std::nullopt;
            return std::make_pair(r->low, r->high);
        },
        py::arg("mu"), py::arg("d"));

    m.def(
        "normalize_config",
        [](const std::string& cfg) { return triad::to_json(triad::parse_config_text(cfg)).dump(); },
        py::arg("config_json"));
    m.def(
        "equilibria_report",
        [](const std::string& cfg) { return triad::equilibria_report(params_from(cfg)).dump(); },
        py::arg("config_json"));
    m.def(
        "classify_point",
        [](const std::string& cfg) {
            const triad::DiagramCell c = triad::classify_point(params_from(cfg));
            return py::make_tuple(c.signature, c.n_value);
        },
        py::arg("config_json"));
    m.def("simulate", &simulate, py::arg("config_json"), py::arg("initial") = py::none(),
          py::arg("t_end") = py::none());
    m.def(
        "validate",
        [](int draws, std::uint64_t seed) {
            py::gil_scoped_release release;
            return triad::run_validation(draws, seed).to_json().dump();
        },
        py::arg("draws") = 500, py::arg("seed") = 1);
}
