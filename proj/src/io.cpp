#include "triad/io.hpp"

#include "triad/equilibria.hpp"
#include "triad/errors.hpp"
#include "triad/stability.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace triad {

using nlohmann::json;

namespace {

// Walks a JSON object, remembers which keys were consumed and rejects the
// rest.
class Reader {
public:
    Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(where(), "expected an object");
    }

    std::string where() const { return path_.empty() ? "/" : path_; }
    std::string child(const std::string& key) const { return path_ + "/" + key; }
    bool has(const std::string& key) const { return obj_.contains(key); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return obj_.at(key);
    }

    double number(const std::string& key) {
        if (!has(key)) throw ConfigError(child(key), "required field missing");
        const json& v = raw(key);
        if (!v.is_number()) throw ConfigError(child(key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(child(key), "must be finite");
        return d;
    }
    double number(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    long integer(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_number_integer()) throw ConfigError(child(key), "expected an integer");
        return v.get<long>();
    }

    std::string string(const std::string& key) {
        if (!has(key)) throw ConfigError(child(key), "required field missing");
        const json& v = raw(key);
        if (!v.is_string()) throw ConfigError(child(key), "expected a string");
        return v.get<std::string>();
    }

    bool boolean(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_boolean()) throw ConfigError(child(key), "expected true or false");
        return v.get<bool>();
    }

    void finish() const {
        for (const auto& [key, _] : obj_.items()) {
            if (!seen_.count(key)) throw ConfigError(child(key), "unknown field");
        }
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

GrowthCurve parse_curve(const json& j, const std::string& path) {
    Reader r(j, path);
    const std::string kind = r.string("kind");
    try {
        if (kind == "monod") {
            const double m = r.number("m");
            const double K = r.number("K");
            r.finish();
            return GrowthCurve::monod(m, K);
        }
        if (kind == "haldane") {
            const double m = r.number("m");
            const double K = r.number("K");
            const double KI = r.number("KI");
            r.finish();
            return GrowthCurve::haldane(m, K, KI);
        }
        if (kind == "linear") {
            const double c = r.number("c");
            r.finish();
            return GrowthCurve::linear(c);
        }
    } catch (const ParameterError& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path + "/kind", "expected \"monod\", \"haldane\" or \"linear\"");
}

ScanAxis parse_axis(const json& j, const std::string& path) {
    Reader r(j, path);
    ScanAxis a;
    const std::string name = r.string("param");
    const auto param = parse_scan_param(name);
    if (!param) throw ConfigError(path + "/param", "unknown scan parameter \"" + name + "\"");
    a.param = *param;
    a.lo = r.number("lo");
    a.hi = r.number("hi");
    if (!r.has("n")) throw ConfigError(path + "/n", "required field missing");
    const long n = r.integer("n");
    if (n < 2 || n > 100000) throw ConfigError(path + "/n", "must lie in [2, 100000]");
    a.n = static_cast<int>(n);
    if (!(a.hi > a.lo)) throw ConfigError(path, "range must satisfy lo < hi");
    r.finish();
    return a;
}

SimConfig parse_sim(Reader& r, std::optional<State>& initial) {
    SimConfig s;
    s.t_end = r.number("t_end", s.t_end);
    s.rtol = r.number("rtol", s.rtol);
    s.atol = r.number("atol", s.atol);
    if (r.has("max_steps")) s.max_steps = r.integer("max_steps");
    if (r.has("record_stride")) s.record_stride = static_cast<int>(r.integer("record_stride"));
    if (r.has("monitors")) s.monitors_enabled = r.boolean("monitors");
    s.stop_when_rhs_below = r.number("stop_when_rhs_below", s.stop_when_rhs_below);
    if (r.has("initial")) {
        Reader ir(r.raw("initial"), r.child("initial"));
        State x{};
        static constexpr const char* names[] = {"X0", "S1", "X1", "S2", "X2"};
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = ir.number(names[i]);
            if (x[i] < 0.0) throw ConfigError(ir.child(names[i]), "must be >= 0");
        }
        ir.finish();
        initial = x;
    }
    r.finish();
    try {
        s.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(r.where(), e.what());
    }
    return s;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json opt(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

json state_json(const State& x) {
    return {{"X0", num(x[0])}, {"S1", num(x[1])}, {"X1", num(x[2])},
            {"S2", num(x[3])}, {"X2", num(x[4])}};
}

json conditions_json(const std::vector<Condition>& cs) {
    json out = json::array();
    for (const auto& c : cs) out.push_back({{"name", c.name}, {"slack", num(c.slack)}, {"scale", num(c.scale)}});
    return out;
}

json routh_json(const RouthReport& r) {
    return {{"m11", num(r.m11)},       {"m13", num(r.m13)},
            {"m21", num(r.m21)},       {"m22", num(r.m22)},
            {"m32", num(r.m32)},       {"theta", num(r.theta)},
            {"c1", num(r.c1)},         {"c2", num(r.c2)},
            {"c3", num(r.c3)},         {"c4", num(r.c4)},
            {"c4_expanded", num(r.c4_expanded)},
            {"c4_rel_discrepancy", num(r.c4_rel_discrepancy)},
            {"slope_slack", num(r.slope_slack)}};
}

std::string quote_csv(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

RunConfig parse_config(const json& doc) {
    Reader r(doc, "");
    RunConfig cfg;
    ModelParams& p = cfg.model;

    const std::string mode = r.string("hydrolysis");
    if (mode == "first_order") {
        p.hydrolysis = Hydrolysis::FirstOrder;
    } else if (mode == "biomass") {
        p.hydrolysis = Hydrolysis::BiomassDependent;
    } else {
        throw ConfigError("/hydrolysis", "expected \"first_order\" or \"biomass\"");
    }

    p.k0 = r.number("k0");
    p.k1 = r.number("k1");
    p.k2 = r.number("k2");
    p.k3 = r.number("k3");
    p.k_hyd = r.number("k_hyd", 0.0);
    p.alpha0 = r.number("alpha0", 1.0);
    p.alpha1 = r.number("alpha1", 1.0);
    p.alpha2 = r.number("alpha2", 1.0);
    p.a1 = r.number("a1", 0.0);
    p.a2 = r.number("a2", 0.0);
    p.D = r.number("D");
    p.X0in = r.number("X0in");
    p.S1in = r.number("S1in");
    p.S2in = r.number("S2in");

    if (r.has("mu0")) p.mu0 = parse_curve(r.raw("mu0"), "/mu0");
    if (!r.has("mu1")) throw ConfigError("/mu1", "required field missing");
    p.mu1 = parse_curve(r.raw("mu1"), "/mu1");
    if (!r.has("mu2")) throw ConfigError("/mu2", "required field missing");
    p.mu2 = parse_curve(r.raw("mu2"), "/mu2");

    if (r.has("sim")) {
        Reader sr(r.raw("sim"), "/sim");
        cfg.sim = parse_sim(sr, cfg.initial);
    }
    if (r.has("scan")) {
        Reader sr(r.raw("scan"), "/scan");
        ScanSpec spec;
        if (!sr.has("x")) throw ConfigError("/scan/x", "required field missing");
        spec.x = parse_axis(sr.raw("x"), "/scan/x");
        if (sr.has("y")) spec.y = parse_axis(sr.raw("y"), "/scan/y");
        sr.finish();
        if (spec.y && spec.y->param == spec.x.param) {
            throw ConfigError("/scan/y/param", "must differ from /scan/x/param");
        }
        cfg.scan = spec;
    }
    if (r.has("output")) {
        Reader orr(r.raw("output"), "/output");
        if (orr.has("path")) cfg.output_path = orr.string("path");
        if (orr.has("boundaries")) cfg.boundaries_path = orr.string("boundaries");
        orr.finish();
    }
    if (r.has("seed")) {
        const json& s = r.raw("seed");
        if (!s.is_number_unsigned()) throw ConfigError("/seed", "expected a nonnegative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    r.finish();

    try {
        p.validate();
    } catch (const ParameterError& e) {
        throw ConfigError("/", e.what());
    }
    if (cfg.scan) cfg.scan->base = p;
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // Byte offset to line and column.
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), msg);
    }
    return parse_config(doc);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

json to_json(const GrowthCurve& c) {
    return std::visit(
        [](const auto& k) -> json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Monod>) {
                return {{"kind", "monod"}, {"m", k.m}, {"K", k.K}};
            } else if constexpr (std::is_same_v<T, Haldane>) {
                return {{"kind", "haldane"}, {"m", k.m}, {"K", k.K}, {"KI", k.KI}};
            } else {
                return {{"kind", "linear"}, {"c", k.c}};
            }
        },
        c.kind());
}

json to_json(const ModelParams& p) {
    json j = {{"hydrolysis", to_string(p.hydrolysis)},
              {"k0", p.k0},
              {"k1", p.k1},
              {"k2", p.k2},
              {"k3", p.k3},
              {"k_hyd", p.k_hyd},
              {"alpha0", p.alpha0},
              {"alpha1", p.alpha1},
              {"alpha2", p.alpha2},
              {"a1", p.a1},
              {"a2", p.a2},
              {"D", p.D},
              {"X0in", p.X0in},
              {"S1in", p.S1in},
              {"S2in", p.S2in},
              {"mu1", to_json(p.mu1)},
              {"mu2", to_json(p.mu2)}};
    if (p.mu0) j["mu0"] = to_json(*p.mu0);
    return j;
}

json to_json(const RunConfig& cfg) {
    json j = to_json(cfg.model);
    if (cfg.sim || cfg.initial) {
        const SimConfig s = cfg.sim.value_or(SimConfig{});
        json sj = {{"t_end", s.t_end},
                   {"rtol", s.rtol},
                   {"atol", s.atol},
                   {"max_steps", s.max_steps},
                   {"record_stride", s.record_stride},
                   {"monitors", s.monitors_enabled},
                   {"stop_when_rhs_below", s.stop_when_rhs_below}};
        if (cfg.initial) {
            const State& x = *cfg.initial;
            sj["initial"] = {{"X0", x[0]}, {"S1", x[1]}, {"X1", x[2]}, {"S2", x[3]}, {"X2", x[4]}};
        }
        j["sim"] = sj;
    }
    if (cfg.scan) {
        auto axis = [](const ScanAxis& a) {
            return json{{"param", to_string(a.param)}, {"lo", a.lo}, {"hi", a.hi}, {"n", a.n}};
        };
        json sj = {{"x", axis(cfg.scan->x)}};
        if (cfg.scan->y) sj["y"] = axis(*cfg.scan->y);
        j["scan"] = sj;
    }
    if (cfg.output_path || cfg.boundaries_path) {
        json oj = json::object();
        if (cfg.output_path) oj["path"] = *cfg.output_path;
        if (cfg.boundaries_path) oj["boundaries"] = *cfg.boundaries_path;
        j["output"] = oj;
    }
    if (cfg.seed) j["seed"] = *cfg.seed;
    return j;
}

json equilibria_report(const ModelParams& p) {
    p.validate();
    json rep;
    rep["params"] = to_json(p);
    const RemovalRates rr = removal_rates(p);
    rep["removal_rates"] = {{"D1", rr.D1}, {"D2", rr.D2}, {"Dmin", rr.Dmin}};

    const BreakEven be = break_even(p.mu1, p.mu2, rr.D1, rr.D2);
    json bej = {{"lambda1", opt(be.lambda1)},
                {"lambda2_low", be.lambda2 ? num(be.lambda2->low) : json(nullptr)},
                {"lambda2_high", be.lambda2 ? num(be.lambda2->high) : json(nullptr)}};
    if (auto h = h_functions(be.lambda1, be.lambda2, p.k1, p.k2)) {
        bej["H1"] = num(h->first);
        bej["H2"] = num(h->second);
    }
    rep["break_even"] = bej;

    if (p.hydrolysis == Hydrolysis::FirstOrder) {
        rep["x0_star"] = x0_star_firstorder(p);
        rep["s1in_star"] = s1in_star(p);
    } else {
        const MultiplicityReport m = multiplicity(p);
        rep["multiplicity"] = {{"N", m.N},
                               {"roots", m.roots},
                               {"xbar", opt(m.xbar)},
                               {"s1in_bar", opt(m.s1in_bar)},
                               {"case", to_string(m.branch_case)},
                               {"degenerate", m.degenerate},
                               {"max_root_residual", num(m.max_root_residual)}};
    }

    double max_residual = 0.0;
    json list = json::array();
    for (const auto& e : equilibria(p)) {
        json ej = {{"label", e.label.str()},
                   {"j", e.label.j},
                   {"i", e.label.i},
                   {"k", e.label.k ? json(*e.label.k) : json(nullptr)},
                   {"exists", e.exists},
                   {"state", state_json(e.state)}};
        json margins = json::array();
        for (const auto& m : e.existence_margins) margins.push_back({{"name", m.name}, {"slack", num(m.slack)}});
        ej["existence_margins"] = margins;
        if (e.exists) {
            const double res = residual_norm(p, e.state);
            max_residual = std::max(max_residual, res);
            ej["residual"] = num(res);
            const StabilityVerdict v = classify(p, e);
            json vj = {{"analytic", to_string(v.analytic)},
                       {"numeric", to_string(v.numeric)},
                       {"agreement", v.agreement},
                       {"max_real_part", num(v.max_real_part)},
                       {"spectral_tol", num(v.spectral_tol)},
                       {"conditions", conditions_json(v.conditions)}};
            json eig = json::array();
            for (const auto& z : v.eigenvalues) eig.push_back({num(z.real()), num(z.imag())});
            vj["eigenvalues"] = eig;
            if (v.table_literal) {
                vj["table_literal"] = to_string(*v.table_literal);
                vj["table_literal_conditions"] = conditions_json(v.table_literal_conditions);
            }
            if (v.routh) vj["routh"] = routh_json(*v.routh);
            ej["stability"] = vj;
        } else {
            ej["residual"] = nullptr;
            ej["stability"] = nullptr;
        }
        list.push_back(ej);
    }
    rep["equilibria"] = list;
    rep["max_residual"] = max_residual;
    return rep;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,X0,S1,X1,S2,X2,Z\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        os << format_double(traj.times[i]);
        for (double c : traj.states[i]) os << ',' << format_double(c);
        os << ',' << format_double(traj.z_values[i]) << '\n';
    }
}

void write_grid_csv(std::ostream& os, const DiagramGrid& grid) {
    os << "x,y,signature,n_value\n";
    for (const auto& c : grid.cells) {
        os << format_double(c.x) << ',' << (c.y ? format_double(*c.y) : "") << ','
           << quote_csv(c.signature) << ',' << (c.n_value ? std::to_string(*c.n_value) : "")
           << '\n';
    }
}

void write_boundaries_csv(std::ostream& os, const std::vector<Boundary>& boundaries) {
    os << "from,to,x,y\n";
    for (const auto& b : boundaries) {
        for (const auto& [x, y] : b.points) {
            os << quote_csv(b.from) << ',' << quote_csv(b.to) << ',' << format_double(x) << ','
               << format_double(y) << '\n';
        }
    }
}

CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    char c;
    auto end_row = [&] {
        row.push_back(field);
        field.clear();
        if (t.header.empty() && t.rows.empty()) {
            t.header = row;
        } else {
            t.rows.push_back(row);
        }
        row.clear();
        any = false;
    };
    while (is.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (is.peek() == '"') {
                    is.get(c);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        any = true;
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(field);
            field.clear();
        } else if (c == '\n') {
            end_row();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (any || !row.empty() || !field.empty()) end_row();
    return t;
}

}  // namespace triad
