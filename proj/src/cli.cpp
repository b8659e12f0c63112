#include "topospec/cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "topospec/charclass.hpp"
#include "topospec/configurations.hpp"
#include "topospec/spectrum.hpp"

namespace topospec::cli {

using nlohmann::json;

std::string render_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
    throw ParseError(where.empty() ? what : what + " at '" + where + "'");
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) parse_fail(where, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const char* k : allowed)
            if (key == k) { known = true; break; }
        if (!known) parse_fail(where, "unknown key '" + key + "'");
    }
}

double get_number(const json& obj, const std::string& where, const char* key,
                  std::optional<double> fallback = {}) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        parse_fail(where, std::string("missing required key '") + key + "'");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) parse_fail(where, std::string("key '") + key + "' must be a number");
    return v.get<double>();
}

struct RunConfig {
    std::string config_name;
    std::map<std::string, double> params;
    std::string task;
    QuadratureSpec quad;

    // integrate
    ClassKind integrate_class = ClassKind::Euler2;
    bool has_class = false;
    std::optional<json> cycle_json;

    // spectrum / curve
    std::string free_param;
    Interval interval{0.0, 1.0};
    int n_min = 1, n_max = 5;
    bool use_abs = true;
    int scan_points = 512;
    double root_tol = 1e-12;
    double residual_tol = 1e-9;
    int grid = 64;

    // sweep
    std::vector<std::pair<std::string, std::array<double, 3>>> sweep_grid; // min,max,steps

    // verify
    std::optional<int> points_override;

    // output
    std::string out_path;
    std::string out_format = "csv";
};

ClassKind parse_class(const std::string& s, const std::string& where) {
    if (s == "euler2") return ClassKind::Euler2;
    if (s == "chern1") return ClassKind::Chern1;
    if (s == "pontrjagin1") return ClassKind::Pontrjagin1;
    parse_fail(where, "unknown class '" + s + "'");
}

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }

    RunConfig rc;
    require_keys(doc, "", {"configuration", "task", "integrate", "spectrum",
                           "curve", "sweep", "quadrature", "verify", "output"});

    if (!doc.contains("task")) parse_fail("", "missing required key 'task'");
    rc.task = doc.at("task").get<std::string>();
    if (rc.task != "integrate" && rc.task != "spectrum" && rc.task != "curve" &&
        rc.task != "verify" && rc.task != "dim" && rc.task != "sweep")
        parse_fail("task", "unknown task '" + rc.task + "'");

    if (rc.task != "verify") {
        if (!doc.contains("configuration"))
            parse_fail("", "missing required key 'configuration'");
        const json& c = doc.at("configuration");
        require_keys(c, "configuration", {"name", "params"});
        if (!c.contains("name"))
            parse_fail("configuration", "missing required key 'name'");
        rc.config_name = c.at("name").get<std::string>();
        if (c.contains("params")) {
            const json& p = c.at("params");
            if (!p.is_object()) parse_fail("configuration.params", "expected an object");
            for (const auto& [key, value] : p.items()) {
                if (!value.is_number())
                    parse_fail("configuration.params", "parameter '" + key +
                                                           "' must be a number");
                rc.params[key] = value.get<double>();
            }
        }
    }

    if (doc.contains("quadrature")) {
        const json& q = doc.at("quadrature");
        require_keys(q, "quadrature",
                     {"points_per_axis", "refinement_levels", "convergence_tol"});
        rc.quad.points_per_axis = static_cast<int>(
            get_number(q, "quadrature", "points_per_axis", 64));
        rc.quad.refinement_levels = static_cast<int>(
            get_number(q, "quadrature", "refinement_levels", 3));
        rc.quad.convergence_tol =
            get_number(q, "quadrature", "convergence_tol", 1e-8);
        rc.quad.validate();
        rc.points_override = rc.quad.points_per_axis;
    }

    if (doc.contains("integrate")) {
        const json& i = doc.at("integrate");
        require_keys(i, "integrate", {"class", "cycle"});
        if (i.contains("class")) {
            rc.integrate_class =
                parse_class(i.at("class").get<std::string>(), "integrate.class");
            rc.has_class = true;
        }
        if (i.contains("cycle")) rc.cycle_json = i.at("cycle");
    }

    if (doc.contains("spectrum")) {
        const json& sp = doc.at("spectrum");
        require_keys(sp, "spectrum",
                     {"free_param", "interval", "n_min", "n_max", "use_abs",
                      "scan_points", "root_tol", "residual_tol"});
        if (!sp.contains("free_param"))
            parse_fail("spectrum", "missing required key 'free_param'");
        rc.free_param = sp.at("free_param").get<std::string>();
        if (!sp.contains("interval"))
            parse_fail("spectrum", "missing required key 'interval'");
        const json& iv = sp.at("interval");
        if (!iv.is_array() || iv.size() != 2)
            parse_fail("spectrum.interval", "expected [lo, hi]");
        rc.interval = {iv[0].get<double>(), iv[1].get<double>()};
        rc.n_min = static_cast<int>(get_number(sp, "spectrum", "n_min", 1));
        rc.n_max = static_cast<int>(get_number(sp, "spectrum", "n_max", 5));
        if (sp.contains("use_abs")) rc.use_abs = sp.at("use_abs").get<bool>();
        rc.scan_points =
            static_cast<int>(get_number(sp, "spectrum", "scan_points", 512));
        rc.root_tol = get_number(sp, "spectrum", "root_tol", 1e-12);
        rc.residual_tol = get_number(sp, "spectrum", "residual_tol", 1e-9);
    }

    if (doc.contains("curve")) {
        const json& cu = doc.at("curve");
        require_keys(cu, "curve", {"free_param", "interval", "grid"});
        if (!cu.contains("free_param"))
            parse_fail("curve", "missing required key 'free_param'");
        rc.free_param = cu.at("free_param").get<std::string>();
        if (!cu.contains("interval"))
            parse_fail("curve", "missing required key 'interval'");
        const json& iv = cu.at("interval");
        if (!iv.is_array() || iv.size() != 2)
            parse_fail("curve.interval", "expected [lo, hi]");
        rc.interval = {iv[0].get<double>(), iv[1].get<double>()};
        rc.grid = static_cast<int>(get_number(cu, "curve", "grid", 64));
    }

    if (doc.contains("sweep")) {
        const json& sw = doc.at("sweep");
        require_keys(sw, "sweep", {"grid"});
        if (!sw.contains("grid")) parse_fail("sweep", "missing required key 'grid'");
        const json& g = sw.at("grid");
        if (!g.is_object()) parse_fail("sweep.grid", "expected an object");
        for (const auto& [key, value] : g.items()) {
            require_keys(value, "sweep.grid." + key, {"min", "max", "steps"});
            const double lo = get_number(value, "sweep.grid." + key, "min");
            const double hi = get_number(value, "sweep.grid." + key, "max");
            const double steps = get_number(value, "sweep.grid." + key, "steps");
            if (steps < 1) parse_fail("sweep.grid." + key, "steps must be >= 1");
            rc.sweep_grid.emplace_back(key, std::array<double, 3>{lo, hi, steps});
        }
    }

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        require_keys(o, "output", {"path", "format"});
        if (o.contains("path")) rc.out_path = o.at("path").get<std::string>();
        if (o.contains("format")) {
            rc.out_format = o.at("format").get<std::string>();
            if (rc.out_format != "csv" && rc.out_format != "json")
                parse_fail("output.format", "format must be csv or json");
        }
    }
    return rc;
}

const Chart& config_chart(const ConfigurationDescriptor& cfg) {
    if (cfg.gauge) return cfg.gauge->charts.front();
    if (!cfg.pieces.empty()) return cfg.pieces.front().chart;
    throw InvalidParameter("configuration '" + cfg.name + "' has no chart");
}

CycleSpec parse_cycle(const json& cj, const Chart& chart) {
    require_keys(cj, "integrate.cycle", {"axes", "fixed", "bounds"});
    CycleSpec cycle;
    if (!cj.contains("axes")) parse_fail("integrate.cycle", "missing 'axes'");
    for (const auto& a : cj.at("axes")) {
        if (a.is_string())
            cycle.axes.push_back(chart.axis_index(a.get<std::string>()));
        else
            cycle.axes.push_back(a.get<int>());
    }
    cycle.fixed_coords.assign(static_cast<size_t>(chart.dim), 0.0);
    if (cj.contains("fixed")) {
        for (const auto& [key, value] : cj.at("fixed").items())
            cycle.fixed_coords[static_cast<size_t>(chart.axis_index(key))] =
                value.get<double>();
    }
    if (!cj.contains("bounds")) parse_fail("integrate.cycle", "missing 'bounds'");
    for (const auto& b : cj.at("bounds")) {
        if (!b.is_array() || b.size() != 2)
            parse_fail("integrate.cycle.bounds", "expected [lo, hi] pairs");
        cycle.bounds.push_back({b[0].get<double>(), b[1].get<double>()});
    }
    return cycle;
}

ClassDensity density_for(const ConfigurationDescriptor& cfg, ClassKind kind) {
    switch (kind) {
    case ClassKind::Euler2:
        if (!cfg.metric)
            throw InvalidParameter("euler2 needs a metric configuration");
        return euler_density_2d(*cfg.metric);
    case ClassKind::Chern1:
        if (!cfg.gauge)
            throw InvalidParameter("chern1 needs a gauge configuration");
        return chern1_density(field_strength(*cfg.gauge), 0);
    case ClassKind::Pontrjagin1: {
        if (!cfg.metric)
            throw InvalidParameter("pontrjagin1 needs a metric configuration");
        CoFrame cf = coframe_from_metric(*cfg.metric);
        return pontrjagin1_density(curvature(spin_connection(cf)));
    }
    }
    throw InvalidParameter("unknown class kind");
}

// --- output writing ---------------------------------------------------------

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Generic, "cannot write '" + tmp.string() + "'");
        out << content;
    }
    fs::rename(tmp, target);
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (size_t i = 0; i < t.header.size(); ++i)
        os << (i ? "," : "") << t.header[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

json meta_json(const QuadratureSpec& q, const std::string& extra_key = "",
               const json& extra = {}) {
    json meta;
    meta["quadrature"] = {{"points_per_axis", q.points_per_axis},
                          {"refinement_levels", q.refinement_levels},
                          {"convergence_tol", q.convergence_tol}};
    meta["version"] = "0.1.0";
    if (!extra_key.empty()) meta[extra_key] = extra;
    return meta;
}

std::string to_json_doc(const std::string& task, const Table& t,
                        const json& meta) {
    json doc;
    doc["task"] = task;
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r;
        for (size_t i = 0; i < row.size(); ++i) {
            // numbers stay numbers in JSON output
            const std::string& cell = row[i];
            double v = 0.0;
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec == std::errc() && res.ptr == cell.data() + cell.size())
                r[t.header[i]] = v;
            else
                r[t.header[i]] = cell;
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["meta"] = meta;
    return doc.dump(2) + "\n";
}

void emit(const RunConfig& rc, const std::string& task, const Table& t,
          const json& meta) {
    if (rc.out_path.empty()) return;
    if (rc.out_format == "csv")
        write_atomic(rc.out_path, to_csv(t));
    else
        write_atomic(rc.out_path, to_json_doc(task, t, meta));
}

// --- tasks -------------------------------------------------------------------

int task_integrate(const RunConfig& rc, std::ostream& out) {
    ConfigurationDescriptor cfg = make_config(rc.config_name, rc.params);
    IntegralResult result;
    std::string label;
    if (rc.cycle_json) {
        const Chart& chart = config_chart(cfg);
        CycleSpec cycle = parse_cycle(*rc.cycle_json, chart);
        ClassKind kind = rc.has_class ? rc.integrate_class : cfg.default_class;
        ClassDensity d = density_for(cfg, kind);
        result = integrate_class(d, chart, cycle, rc.quad);
        label = to_string(kind);
    } else {
        ClassKind kind = rc.has_class ? rc.integrate_class : cfg.default_class;
        if (kind != cfg.default_class) {
            const Chart& chart = config_chart(cfg);
            ClassDensity d = density_for(cfg, kind);
            result = integrate_class(d, chart, rc.quad);
        } else {
            InvariantValue v = evaluate_invariant(cfg, rc.quad);
            result.value = v.value;
            result.err_estimate = v.err;
            result.converged = v.converged;
        }
        label = to_string(kind);
    }

    Table t;
    t.header = {"value", "err_estimate", "converged"};
    t.rows.push_back({render_double(result.value), render_double(result.err_estimate),
                      result.converged ? "1" : "0"});
    emit(rc, "integrate", t, meta_json(rc.quad));

    char line[160];
    std::snprintf(line, sizeof(line), "%s = %.6f (err %.1e)%s", label.c_str(),
                  result.value, result.err_estimate,
                  result.converged ? "" : " [NOT CONVERGED]");
    out << line << "\n";
    return result.converged ? 0 : 2;
}

int task_spectrum(const RunConfig& rc, std::ostream& out) {
    if (rc.free_param.empty())
        throw ParseError("spectrum task needs a 'spectrum' section");
    SpectrumProblem prob;
    prob.invariant =
        catalog_invariant(rc.config_name, rc.params, rc.free_param, rc.quad);
    prob.free_param = rc.free_param;
    prob.search = rc.interval;
    prob.n_min = rc.n_min;
    prob.n_max = rc.n_max;
    prob.use_abs = rc.use_abs;
    prob.scan_points = rc.scan_points;
    prob.root_tol = rc.root_tol;
    prob.residual_tol = rc.residual_tol;
    SpectrumTable table = solve_spectrum(prob);

    Table t;
    t.header = {"n", "param_value", "invariant_value", "residual",
                "quadrature_err"};
    double max_residual = 0.0;
    for (const auto& row : table.rows) {
        max_residual = std::max(max_residual, row.residual);
        t.rows.push_back({std::to_string(row.n), render_double(row.param_value),
                          render_double(row.invariant_value),
                          render_double(row.residual),
                          render_double(row.quadrature_err)});
    }
    json flags;
    flags["no_roots"] = table.no_roots;
    flags["bracket_ambiguity"] = table.bracket_ambiguity;
    flags["warnings"] = table.warnings;
    emit(rc, "spectrum", t, meta_json(rc.quad, "flags", flags));

    out << "spectrum: " << t.rows.size() << " rows, max residual "
        << render_double(max_residual)
        << (table.no_roots ? " [NO ROOTS]" : "") << "\n";
    return table.no_roots ? 2 : 0;
}

int task_curve(const RunConfig& rc, std::ostream& out) {
    if (rc.free_param.empty())
        throw ParseError("curve task needs a 'curve' section");
    SpectrumProblem prob;
    prob.invariant =
        catalog_invariant(rc.config_name, rc.params, rc.free_param, rc.quad);
    prob.free_param = rc.free_param;
    prob.search = rc.interval;
    auto points = invariant_curve(prob, rc.grid);

    Table t;
    t.header = {"param", "invariant", "quad_err", "ok", "segment", "direction"};
    int failures = 0;
    for (const auto& p : points) {
        if (!p.ok) ++failures;
        t.rows.push_back({render_double(p.param), render_double(p.value),
                          render_double(p.quad_err), p.ok ? "1" : "0",
                          std::to_string(p.segment), std::to_string(p.direction)});
    }
    emit(rc, "curve", t, meta_json(rc.quad));
    out << "curve: " << t.rows.size() << " rows, " << failures
        << " failed points\n";
    return 0;
}

int task_sweep(const RunConfig& rc, std::ostream& out) {
    if (rc.sweep_grid.empty())
        throw ParseError("sweep task needs a 'sweep' section with a grid");

    std::vector<long long> steps;
    long long total = 1;
    for (const auto& [name, mms] : rc.sweep_grid) {
        (void)name;
        steps.push_back(static_cast<long long>(mms[2]));
        total *= steps.back();
    }

    Table t;
    for (const auto& [name, mms] : rc.sweep_grid) {
        (void)mms;
        t.header.push_back(name);
    }
    t.header.push_back("invariant");
    t.header.push_back("quad_err");
    t.header.push_back("status");

    int flagged = 0;
    for (long long flat = 0; flat < total; ++flat) {
        // row order: lexicographic in grid indices, last parameter fastest
        long long rem = flat;
        std::map<std::string, double> params = rc.params;
        std::vector<std::string> row;
        for (int d = static_cast<int>(rc.sweep_grid.size()) - 1; d >= 0; --d) {
            const auto& [name, mms] = rc.sweep_grid[d];
            const long long idx = rem % steps[d];
            rem /= steps[d];
            const double v =
                steps[d] == 1
                    ? mms[0]
                    : mms[0] + (mms[1] - mms[0]) * idx / (steps[d] - 1);
            params[name] = v;
        }
        for (const auto& [name, mms] : rc.sweep_grid) {
            (void)mms;
            row.push_back(render_double(params.at(name)));
        }
        try {
            ConfigurationDescriptor cfg = make_config(rc.config_name, params);
            InvariantValue v = evaluate_invariant(cfg, rc.quad);
            row.push_back(render_double(v.value));
            row.push_back(render_double(v.err));
            row.push_back(v.converged ? "ok" : "not_converged");
            if (!v.converged) ++flagged;
        } catch (const Error& e) {
            row.push_back("nan");
            row.push_back("nan");
            row.push_back(std::string("error:") + e.what());
            ++flagged;
        }
        t.rows.push_back(std::move(row));
    }
    emit(rc, "sweep", t, meta_json(rc.quad));
    out << "sweep: " << t.rows.size() << " rows, " << flagged << " flagged\n";
    return 0;
}

int task_dim(const RunConfig& rc, std::ostream& out) {
    ConfigurationDescriptor cfg = make_config(rc.config_name, rc.params);
    const int d = bundle_dimension(cfg);
    out << "dim(P) = " << d << "  [base " << cfg.base_dim << " + "
        << cfg.group.name() << " " << cfg.group.dimension() << "]\n";
    return 0;
}

int dispatch(const RunConfig& rc, std::ostream& out) {
    if (rc.task == "integrate") return task_integrate(rc, out);
    if (rc.task == "spectrum") return task_spectrum(rc, out);
    if (rc.task == "curve") return task_curve(rc, out);
    if (rc.task == "sweep") return task_sweep(rc, out);
    if (rc.task == "dim") return task_dim(rc, out);
    if (rc.task == "verify") {
        VerifyOptions opts;
        opts.points_override = rc.points_override;
        return run_verify(out, opts);
    }
    throw ParseError("unknown task '" + rc.task + "'");
}

int guarded(std::ostream& err, auto&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int run_config(const std::string& path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] { return dispatch(parse_run_config(path), out); });
}

int run_sweep(const std::string& path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig rc = parse_run_config(path);
        if (rc.task != "sweep")
            throw ParseError("sweep entry point needs task = \"sweep\"");
        return task_sweep(rc, out);
    });
}

int run_verify(std::ostream& out, const VerifyOptions& opts) {
    auto items = run_verification(opts);
    print_report(out, items);
    const int code = verify_exit_code(items);
    out << (code == 0 ? "verification passed"
            : code == 2 ? "verification flagged (under-resolved quadrature)"
                        : "verification FAILED")
        << "\n";
    return code;
}

int run_list(std::ostream& out) {
    for (const auto& entry : catalog()) {
        out << entry.name << "  -- " << entry.summary << "\n";
        for (const auto& p : entry.params)
            out << "    " << p.name << " (default " << render_double(p.default_value)
                << "): " << p.doc << "\n";
        if (entry.dim_only) out << "    [dimension bookkeeping only]\n";
    }
    return 0;
}

int run_dim(const std::string& config_name, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ConfigurationDescriptor cfg = make_config(config_name, {});
        const int d = bundle_dimension(cfg);
        out << "dim(P) = " << d << "  [base " << cfg.base_dim << " + "
            << cfg.group.name() << " " << cfg.group.dimension() << "]\n";
        return 0;
    });
}

} // namespace topospec::cli
