#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "isingdrift/boundary.hpp"
#include "isingdrift/drift.hpp"
#include "isingdrift/initcond.hpp"
#include "isingdrift/parallel.hpp"
#include "isingdrift/simulate.hpp"
#include "isingdrift/theory.hpp"

namespace isingdrift::cli {

using Json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::stod(format_number(x));
}

std::optional<double> read_optional(const Json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<double>();
}

template <class T>
void read_if(const Json& j, const char* key, T& field) {
    if (j.contains(key) && !j[key].is_null()) field = j[key].get<T>();
}

std::vector<Vec2> parse_vertices(const std::string& text) {
    std::vector<Vec2> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        const auto comma = item.find(',');
        if (comma == std::string::npos) throw UsageError("bad vertex '" + item + "': expected x,y");
        try {
            v.push_back(Vec2{std::stod(item.substr(0, comma)), std::stod(item.substr(comma + 1))});
        } catch (const std::logic_error&) {
            throw UsageError("bad vertex '" + item + "': expected x,y");
        }
    }
    return v;
}

std::string default_format(const std::string& command) { return command == "theory" ? "json" : "csv"; }

// Run-length encoding of one row: "<count><sign>" pairs, e.g. "3-4+3-".
std::string rle_row(const SpinConfig& c, long y) {
    std::string s;
    const Rect& w = c.window();
    long x = w.x0;
    while (x <= w.x1) {
        const int v = c.spin(x, y);
        long k = 0;
        while (x <= w.x1 && c.spin(x, y) == v) ++k, ++x;
        s += std::to_string(k);
        s += v == 1 ? '+' : '-';
    }
    return s;
}

Json rle_config(const SpinConfig& c) {
    const Rect& w = c.window();
    Json rows = Json::array();
    for (long y = w.y0; y <= w.y1; ++y) rows.push_back(rle_row(c, y));
    return Json{{"x0", w.x0}, {"y0", w.y0}, {"width", w.width()}, {"height", w.height()}, {"rows", rows}};
}

// RFC 4180: quote fields holding separators, quotes or line breaks.
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + '"';
}

std::string csv_cell(const Json& v) {
    if (v.is_null()) return "nan";
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_number()) return v.dump();
    if (v.is_string()) return csv_quote(v.get<std::string>());
    return csv_quote(v.dump());
}

std::string to_csv(const Json& rows) {
    std::string s;
    if (rows.empty()) return s;
    bool first = true;
    for (const auto& [key, value] : rows.front().items()) {
        (void)value;
        s += (first ? "" : ",") + csv_quote(key);
        first = false;
    }
    s += '\n';
    for (const Json& row : rows) {
        first = true;
        for (const auto& [key, value] : row.items()) {
            (void)key;
            s += (first ? "" : ",") + csv_cell(value);
            first = false;
        }
        s += '\n';
    }
    return s;
}

Probe probe_for(const ExperimentConfig& c, const Curve& curve) {
    return make_probe(curve, probe_parameter(c, curve), c.r);
}

SpohnOptions spohn_options(const ExperimentConfig& c) {
    SpohnOptions o;
    o.require_monotone = !c.allow_nonmonotone;
    return o;
}

Json drift_rows(const ExperimentConfig& c, const Curve& curve) {
    Json rows = Json::array();
    const double t_s = probe_parameter(c, curve);
    const Probe p = make_probe(curve, t_s, c.r);
    for (long N : c.N) {
        const InitialCondition ic = c.init == "spohn" ? spohn_initial(curve, p, c.delta, N, spohn_options(c))
                                                      : deterministic_initial(curve, p, c.delta, N);
        const DriftReport rep = expected_drift(ic, curve, t_s, c.r, c.delta, c.M, c.samples, c.seed, N, c.threads);
        rows.push_back(Json{{"N", N},
                            {"r", number(c.r)},
                            {"delta", number(c.delta)},
                            {"M", c.M},
                            {"K", c.samples},
                            {"seed", c.seed},
                            {"theta", number(rep.theta)},
                            {"mean_A", number(rep.mean)},
                            {"stderr_A", number(rep.stderr_mean)},
                            {"scaled", number(rep.scaled)},
                            {"theory_det", number(rep.theory_det)},
                            {"theory_spohn", number(rep.theory_spohn)}});
    }
    return rows;
}

Json corner_rows(const ExperimentConfig& c, const Curve& curve) {
    Json rows = Json::array();
    const Probe p = probe_for(c, curve);
    const bool spohn = c.init == "spohn";
    const double theory = spohn ? corner_density_spohn(p.theta0) : corner_density_deterministic(p.theta0);
    for (long N : c.N) {
        double count = 0.0;
        if (spohn) {
            const SpohnProbeSampler sampler(curve, p, c.delta, N, spohn_options(c));
            std::vector<double> counts(static_cast<std::size_t>(c.samples));
            parallel_for(
                counts.size(),
                [&](std::size_t k) {
                    Rng rng = make_rng(c.seed, k);
                    counts[k] = static_cast<double>(corner_count(sampler.sample(rng), p.x0, c.delta, p.s, p.r));
                },
                c.threads);
            count = mean_stderr(counts).mean;
        } else {
            const SpinConfig cfg = deterministic_config(curve, N, probe_window(p, c.delta, N));
            count = static_cast<double>(corner_count(cfg, p.x0, c.delta, p.s, p.r));
        }
        rows.push_back(Json{{"N", N},
                            {"delta", number(c.delta)},
                            {"theta0", number(p.theta0)},
                            {"C_N", number(count)},
                            {"C_N/(N*delta)", number(count / (static_cast<double>(N) * c.delta))},
                            {"theory", number(theory)}});
    }
    return rows;
}

Json theory_rows(const ExperimentConfig& c, const Curve& curve) {
    Json rows = Json::array();
    if (curve.kind() == CurveKind::polygon) {
        const auto& v = curve.vertices();
        const std::size_t m = v.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Vec2 prev = v[(i + m - 1) % m] - v[i], next = v[(i + 1) % m] - v[i];
            const double tp = wrap_angle(std::atan2(prev.y, prev.x)), tn = wrap_angle(std::atan2(next.y, next.x));
            const TheoryValue t1 = t1_limit(tp, tn, CornerDensityFn::deterministic());
            Json row{{"vertex", i},        {"x", number(v[i].x)}, {"y", number(v[i].y)},
                     {"theta_prev", number(tp)}, {"theta_next", number(tn)}};
            try {
                const Pro1Case pc = pro1_case(tp, tn);
                row["case"] = pc.label;
                row["value"] = number(pc.value);
            } catch (const std::domain_error& e) {
                row["case"] = e.what();
                row["value"] = nullptr;
            }
            row["t1_det"] = number(t1.value);
            row["degenerate"] = t1.degenerate;
            rows.push_back(row);
        }
        return rows;
    }
    const double t_s = probe_parameter(c, curve);
    const double theta = tangent_angle(curve, t_s), xi = curvature(curve, t_s);
    Json row{{"t", number(t_s)},
             {"theta", number(theta)},
             {"xi", number(xi)},
             {"C_det", number(corner_density_deterministic(theta))},
             {"C_spohn", number(corner_density_spohn(theta))},
             {"theory_det", number(limit_deterministic(theta, xi))},
             {"theory_spohn", number(limit_spohn(theta, xi))}};
    if (c.r > 0.0) {
        const Probe p = make_probe(curve, t_s, c.r);
        const TheoryValue det = t1_limit(p.theta0, p.theta1, CornerDensityFn::deterministic());
        const TheoryValue sp = t1_limit(p.theta0, p.theta1, CornerDensityFn::spohn());
        row["r"] = number(c.r);
        row["theta0"] = number(p.theta0);
        row["theta1"] = number(p.theta1);
        row["t1_det_scaled"] = number(det.value / (2.0 * c.r));
        row["t1_spohn_scaled"] = number(sp.value / (2.0 * c.r));
        row["degenerate"] = det.degenerate;
    }
    rows.push_back(row);
    return rows;
}

SpinConfig droplet(const Curve& curve, long N) { return deterministic_config(curve, N); }

Json simulate_rows(const ExperimentConfig& c, const Curve& curve, bool flat) {
    Json rows = Json::array();
    const std::vector<double> taus = snapshot_times(*c.tau_max, c.snapshots);
    for (long N : c.N) {
        const SpinConfig init = droplet(curve, N);
        std::vector<Trajectory> runs(static_cast<std::size_t>(c.replicas));
        const bool keep = c.keep_configs && !flat;
        parallel_for(
            runs.size(),
            [&](std::size_t r) {
                Engine e(init, c.seed + r);
                runs[r] = run_until(e, *c.tau_max, taus, keep);
            },
            c.threads);
        for (std::size_t r = 0; r < runs.size(); ++r) {
            const Trajectory& tr = runs[r];
            if (flat) {
                for (const Snapshot& s : tr.snapshots)
                    rows.push_back(Json{{"N", N},
                                        {"replica", r},
                                        {"seed", c.seed + r},
                                        {"tau", number(s.tau)},
                                        {"volume", number(s.volume)}});
                continue;
            }
            Json snaps = Json::array();
            for (const Snapshot& s : tr.snapshots) {
                Json js{{"tau", number(s.tau)}, {"volume", number(s.volume)}};
                if (s.config) js["config"] = rle_config(*s.config);
                snaps.push_back(js);
            }
            rows.push_back(Json{{"N", N},
                                {"replica", r},
                                {"seed", c.seed + r},
                                {"absorbed", tr.absorbed},
                                {"absorption_tau", tr.absorbed ? number(tr.absorption_tau) : Json(nullptr)},
                                {"events", tr.events},
                                {"snapshots", snaps}});
        }
    }
    return rows;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
}

void validate(ExperimentConfig& c) {
    require(c.shape == "circle" || c.shape == "ellipse" || c.shape == "polygon" || c.shape == "square",
            "--shape must be circle, ellipse, polygon or square");
    require(c.init == "deterministic" || c.init == "spohn", "--init must be deterministic or spohn");
    if (c.out.empty()) c.out = default_format(c.command);
    require(c.out == "csv" || c.out == "json", "--out must be csv or json");
    require(!(c.t && c.theta), "--t and --theta are mutually exclusive");
    if (c.shape == "polygon") require(!c.vertices.empty(), "missing required flag --vertices");
    const bool needs_ladder = c.command != "theory";
    if (needs_ladder) require(!c.N.empty(), "missing required flag --N");
    for (long n : c.N) require(n > 0, "--N values must be positive");
    require(c.samples >= 1, "--samples must be >= 1");
    require(c.M >= 0, "--M must be >= 0");
    if (c.command == "drift" || c.command == "corners") {
        require(c.r > 0.0, "missing required flag --r");
        if (c.command == "corners") require(c.delta > 0.0, "missing required flag --delta");
        if (c.delta <= 0.0) c.delta = c.r / 10.0;
    }
    if (c.command == "simulate") {
        require(c.tau_max.has_value(), "missing required flag --tau-max");
        require(*c.tau_max >= 0.0, "--tau-max must be >= 0");
        require(c.snapshots >= 1, "--snapshots must be >= 1");
        require(c.replicas >= 1, "--replicas must be >= 1");
    }
}

void add_shape_options(CLI::App* s, ExperimentConfig& c) {
    s->add_option("--shape", c.shape, "circle | ellipse | polygon | square");
    s->add_option("--radius", c.radius, "circle radius");
    s->add_option("--cx", c.cx, "centre x");
    s->add_option("--cy", c.cy, "centre y");
    s->add_option("--a", c.a, "ellipse semi-axis along x");
    s->add_option("--b", c.b, "ellipse semi-axis along y");
    s->add_option("--side", c.side, "square side length");
    s->add_option("--vertices", c.vertices, "polygon vertices x1,y1;x2,y2;... (counterclockwise)");
    s->add_option("--offset", c.offset, "shift polygon/square vertices by (offset, offset)");
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Json to_json(const ExperimentConfig& c) {
    return Json{{"command", c.command},
                {"shape", c.shape},
                {"radius", c.radius},
                {"cx", c.cx},
                {"cy", c.cy},
                {"a", c.a},
                {"b", c.b},
                {"side", c.side},
                {"vertices", c.vertices},
                {"offset", c.offset},
                {"t", c.t ? Json(*c.t) : Json(nullptr)},
                {"theta", c.theta ? Json(*c.theta) : Json(nullptr)},
                {"r", c.r},
                {"delta", c.delta},
                {"M", c.M},
                {"init", c.init},
                {"allow_nonmonotone", c.allow_nonmonotone},
                {"N", c.N},
                {"samples", c.samples},
                {"seed", c.seed},
                {"tau_max", c.tau_max ? Json(*c.tau_max) : Json(nullptr)},
                {"snapshots", c.snapshots},
                {"replicas", c.replicas},
                {"keep_configs", c.keep_configs},
                {"out", c.out}};
}

ExperimentConfig from_json(const Json& doc) {
    const Json& j = (doc.contains("meta") && doc["meta"].contains("config")) ? doc["meta"]["config"] : doc;
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    ExperimentConfig c;
    read_if(j, "command", c.command);
    read_if(j, "shape", c.shape);
    read_if(j, "radius", c.radius);
    read_if(j, "cx", c.cx);
    read_if(j, "cy", c.cy);
    read_if(j, "a", c.a);
    read_if(j, "b", c.b);
    read_if(j, "side", c.side);
    read_if(j, "vertices", c.vertices);
    read_if(j, "offset", c.offset);
    c.t = read_optional(j, "t");
    c.theta = read_optional(j, "theta");
    read_if(j, "r", c.r);
    read_if(j, "delta", c.delta);
    read_if(j, "M", c.M);
    read_if(j, "init", c.init);
    read_if(j, "allow_nonmonotone", c.allow_nonmonotone);
    read_if(j, "N", c.N);
    read_if(j, "samples", c.samples);
    read_if(j, "seed", c.seed);
    c.tau_max = read_optional(j, "tau_max");
    read_if(j, "snapshots", c.snapshots);
    read_if(j, "replicas", c.replicas);
    read_if(j, "keep_configs", c.keep_configs);
    read_if(j, "out", c.out);
    return c;
}

Curve make_curve(const ExperimentConfig& c) {
    if (c.shape == "circle") return Curve::circle(Vec2{c.cx, c.cy}, c.radius);
    if (c.shape == "ellipse") return Curve::ellipse(Vec2{c.cx, c.cy}, c.a, c.b);
    std::vector<Vec2> v;
    if (c.shape == "square") {
        const double h = c.side / 2.0;
        v = {{c.cx - h, c.cy - h}, {c.cx + h, c.cy - h}, {c.cx + h, c.cy + h}, {c.cx - h, c.cy + h}};
    } else {
        v = parse_vertices(c.vertices);
    }
    for (Vec2& p : v) p = p + Vec2{c.offset, c.offset};
    return Curve::polygon(std::move(v));
}

double probe_parameter(const ExperimentConfig& c, const Curve& curve) {
    if (c.t) return wrap_param(*c.t);
    if (curve.kind() == CurveKind::polygon) throw UsageError("polygons take the probe position as --t");
    return param_at_tangent_angle(curve, c.theta.value_or(0.0));
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    std::vector<std::string> args;
    std::string config_path;
    for (std::size_t i = 0; i < args_in.size(); ++i) {
        if (args_in[i] == "--config" && i + 1 < args_in.size())
            config_path = args_in[++i];
        else if (args_in[i].rfind("--config=", 0) == 0)
            config_path = args_in[i].substr(9);
        else
            args.push_back(args_in[i]);
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            err << "error: cannot read config file " << config_path << "\n";
            return kUsage;
        }
        try {
            cfg = from_json(Json::parse(in));
        } catch (const std::exception& e) {
            err << "error: bad config file: " << e.what() << "\n";
            return kUsage;
        }
        if ((args.empty() || args.front().rfind("-", 0) == 0) && !cfg.command.empty())
            args.insert(args.begin(), cfg.command);
    }

    CLI::App app{"Initial drift of Ising droplets under zero-temperature Glauber dynamics", "isingdrift"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    double t_val = 0.0, theta_val = 0.0, tau_val = 0.0;
    std::vector<long> ladder;
    std::vector<CLI::App*> subs;
    const std::pair<const char*, const char*> commands[] = {
        {"drift", "expected averaged drift A_N along an N ladder (CSV)"},
        {"theory", "closed-form limit values for a shape and probe (JSON)"},
        {"corners", "corner counts C_N near the probe end x0 (CSV)"},
        {"simulate", "kinetic Monte Carlo of the droplet volume (CSV or JSON)"}};
    std::vector<std::tuple<CLI::Option*, CLI::Option*, CLI::Option*, CLI::Option*>> flags;
    for (const auto& [name, help] : commands) {
        CLI::App* s = app.add_subcommand(name, help);
        add_shape_options(s, cfg);
        CLI::Option* ot = s->add_option("--t", t_val, "probe centre as curve parameter in [0,1)");
        CLI::Option* oth = s->add_option("--theta", theta_val, "probe centre by tangent angle (smooth curves)");
        s->add_option("--r", cfg.r, "probe radius");
        s->add_option("--delta", cfg.delta, "small-ball radius bound (default r/10 for drift)");
        s->add_option("--M", cfg.M, "quadrature resolution (0: exact integral)");
        s->add_option("--init", cfg.init, "deterministic | spohn");
        s->add_flag("--allow-nonmonotone", cfg.allow_nonmonotone,
                    "let Spohn increments follow the sign of f' on a non-monotone arc");
        CLI::Option* on = s->add_option("--N", ladder, "scale ladder, e.g. 512,1024")->delimiter(',');
        s->add_option("--samples,--K", cfg.samples, "independent initial conditions");
        s->add_option("--seed", cfg.seed, "base RNG seed");
        CLI::Option* otau = s->add_option("--tau-max", tau_val, "final scaled time t/N^2");
        s->add_option("--snapshots", cfg.snapshots, "number of equally spaced snapshot times");
        s->add_option("--replicas", cfg.replicas, "independent KMC runs");
        s->add_flag("--keep-configs", cfg.keep_configs, "include run-length encoded configurations (JSON)");
        s->add_option("--out", cfg.out, "csv | json");
        s->add_option("--output,-o", cfg.output, "write to this file instead of stdout");
        s->add_option("--threads", cfg.threads, "worker threads (default: ISINGDRIFT_THREADS or all cores)");
        subs.push_back(s);
        flags.emplace_back(ot, oth, on, otau);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        cfg.command = subs[i]->get_name();
        const auto& [ot, oth, on, otau] = flags[i];
        if (ot->count()) cfg.t = t_val, cfg.theta.reset();
        if (oth->count()) cfg.theta = theta_val, cfg.t.reset();
        if (on->count()) cfg.N = ladder;
        if (otau->count()) cfg.tau_max = tau_val;
        if (ot->count() && oth->count()) cfg.theta = theta_val;  // trips the exclusivity check
    }
    CLI::App* sub = app.get_subcommands().front();

    try {
        validate(cfg);
        const Curve curve = make_curve(cfg);
        Json rows;
        if (cfg.command == "drift") rows = drift_rows(cfg, curve);
        else if (cfg.command == "corners") rows = corner_rows(cfg, curve);
        else if (cfg.command == "theory") rows = theory_rows(cfg, curve);
        else rows = simulate_rows(cfg, curve, cfg.out == "csv");

        std::string text;
        if (cfg.out == "json") {
            const Json doc{{"meta", Json{{"version", kVersion}, {"config", to_json(cfg)}, {"seed", cfg.seed}}},
                           {"rows", rows}};
            text = doc.dump(2) + "\n";
        } else {
            text = to_csv(rows);
        }
        if (cfg.output.empty()) {
            out << text;
        } else {
            std::ofstream f(cfg.output);
            if (!f) throw std::runtime_error("cannot write " + cfg.output);
            f << text;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << sub->help();
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}

}  // namespace isingdrift::cli
