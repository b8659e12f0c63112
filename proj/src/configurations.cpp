#include "topospec/configurations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace topospec {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPoleMargin = 1e-4;
} // namespace

int GroupSpec::dimension() const {
    switch (family) {
    case Family::SO:
        if (k < 1) throw UnknownGroup("SO(k) needs k >= 1");
        return k * (k - 1) / 2;
    case Family::LorentzSO13:
        return 6;
    case Family::U1:
        return 1;
    case Family::SU:
        if (k < 1) throw UnknownGroup("SU(k) needs k >= 1");
        return k * k - 1;
    case Family::Product: {
        if (factors.empty()) throw UnknownGroup("empty product group");
        int d = 0;
        for (const auto& f : factors) d += f.dimension();
        return d;
    }
    }
    throw UnknownGroup("unrecognized group family");
}

std::string GroupSpec::name() const {
    switch (family) {
    case Family::SO: return "SO(" + std::to_string(k) + ")";
    case Family::LorentzSO13: return "SO(1,3)";
    case Family::U1: return "U(1)";
    case Family::SU: return "SU(" + std::to_string(k) + ")";
    case Family::Product: {
        std::string s;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) s += "x";
            s += factors[i].name();
        }
        return s;
    }
    }
    return "?";
}

void BlackHoleParams::validate() const {
    if (!(m > 0.0)) throw InvalidParameter("black-hole mass must be positive");
    if (!(r0 > 0.0)) throw InvalidParameter("r0 must be positive");
    if (m * m < e * e + a * a)
        throw InvalidParameter("naked singularity: m^2 < e^2 + a^2 (m=" +
                               std::to_string(m) + ", e=" + std::to_string(e) +
                               ", a=" + std::to_string(a) + ")");
}

double BlackHoleParams::horizon_plus() const {
    return m + std::sqrt(std::max(0.0, m * m - e * e - a * a));
}

double BlackHoleParams::horizon_minus() const {
    return m - std::sqrt(std::max(0.0, m * m - e * e - a * a));
}

bool BlackHoleParams::extremal(double tol) const {
    return horizon_plus() - horizon_minus() <= tol * m;
}

InvariantValue evaluate_invariant(const ConfigurationDescriptor& cfg,
                                  const QuadratureSpec& quad, int workers) {
    InvariantValue out;
    if (cfg.degenerate_cycle) return out; // exactly zero, converged
    if (cfg.pieces.empty())
        throw InvalidParameter("configuration '" + cfg.name +
                               "' has no default invariant");
    for (const auto& piece : cfg.pieces) {
        IntegralResult r = piece.cycle
                               ? integrate_class(piece.density, piece.chart,
                                                 *piece.cycle, quad, workers)
                               : integrate_class(piece.density, piece.chart, quad,
                                                 workers);
        out.value += r.value;
        out.err += r.err_estimate;
        out.converged = out.converged && r.converged;
    }
    out.value += cfg.correction;
    out.value *= cfg.normalization;
    out.err *= std::fabs(cfg.normalization);
    return out;
}

ConfigurationDescriptor sphere_config(double R) {
    if (!(R > 0.0)) throw InvalidParameter("sphere radius must be positive");
    ConfigurationDescriptor cfg;
    cfg.name = "sphere";
    cfg.base_dim = 2;
    cfg.group = GroupSpec::so(2);
    cfg.params = {{"R", R}};
    cfg.default_class = ClassKind::Euler2;

    MetricSpec metric = MetricSpec::make_diagonal(
        2, [R](std::span<const double> x, std::span<double> d) {
            const double s = std::sin(x[0]);
            d[0] = R * R;
            d[1] = R * R * s * s;
        });
    metric.safe_dist = [](std::span<const double> x) {
        return std::min(x[0], kPi - x[0]);
    };
    cfg.metric = metric;

    IntegrationPiece piece;
    piece.chart = Chart(2, {{kPoleMargin, kPi - kPoleMargin}, {0.0, 2.0 * kPi}},
                        {"theta", "phi"});
    piece.density = euler_density_2d(metric);
    cfg.pieces.push_back(std::move(piece));
    cfg.correction = 2.0 * (1.0 - std::cos(kPoleMargin)); // both pole caps
    return cfg;
}

ConfigurationDescriptor monopole_config(double g) {
    if (g == 0.0) throw InvalidParameter("monopole charge must be nonzero");
    ConfigurationDescriptor cfg;
    cfg.name = "monopole";
    cfg.base_dim = 2;
    cfg.group = GroupSpec::u1();
    cfg.params = {{"g", g}};
    cfg.default_class = ClassKind::Chern1;

    const double band = 0.25;
    GaugeConnection conn;
    conn.charts.push_back(Chart(2, {{0.0, kPi / 2 + band}, {0.0, 2.0 * kPi}},
                                {"theta", "phi"}));
    conn.charts.push_back(Chart(2, {{kPi / 2 - band, kPi}, {0.0, 2.0 * kPi}},
                                {"theta", "phi"}));
    conn.A.push_back(PFormField(2, 1, [g](std::span<const double> x,
                                          std::span<double> out) {
        out[0] = 0.0;                         // theta leg
        out[1] = g * (1.0 - std::cos(x[0])); // phi leg
    }));
    conn.A.push_back(PFormField(2, 1, [g](std::span<const double> x,
                                          std::span<double> out) {
        out[0] = 0.0;
        out[1] = -g * (1.0 + std::cos(x[0]));
    }));
    conn.overlap = Chart(2, {{kPi / 2 - band, kPi / 2 + band}, {0.0, 2.0 * kPi}},
                         {"theta", "phi"});
    conn.transition = [g](std::span<const double> x) { return 2.0 * g * x[1]; };
    cfg.gauge = conn;

    FieldStrength fs = field_strength(conn);
    IntegrationPiece north;
    north.chart = Chart(2, {{0.0, kPi / 2}, {0.0, 2.0 * kPi}}, {"theta", "phi"});
    north.density = chern1_density(fs, 0);
    IntegrationPiece south;
    south.chart = Chart(2, {{kPi / 2, kPi}, {0.0, 2.0 * kPi}}, {"theta", "phi"});
    south.density = chern1_density(fs, 1);
    cfg.pieces.push_back(std::move(north));
    cfg.pieces.push_back(std::move(south));
    return cfg;
}

ConfigurationDescriptor oscillator_config(double m, double k1, double k2,
                                          double E, double q0, double L) {
    MechanicalSystem sys = oscillator_system(m, k1, k2, E);
    if (!(q0 > 0.0)) throw InvalidParameter("q0 must be positive");
    if (!(L > 0.0)) throw InvalidParameter("strip extent L must be positive");
    if (k1 > 0.0) {
        const double dir[2] = {1.0, 0.0};
        const double qt = turning_value(sys, std::span<const double>(dir, 2));
        if (q0 >= qt)
            throw InvalidParameter("q0 = " + std::to_string(q0) +
                                   " reaches the turning point " +
                                   std::to_string(qt));
    }

    ConfigurationDescriptor cfg;
    cfg.name = "oscillator";
    cfg.base_dim = 2;
    cfg.group = GroupSpec::so(2);
    cfg.params = {{"m", m}, {"k1", k1}, {"k2", k2},
                  {"E", E}, {"q0", q0}, {"L", L}};
    cfg.default_class = ClassKind::Euler2;

    MetricSpec metric = jacobi_metric(sys);
    cfg.metric = metric;

    IntegrationPiece piece;
    piece.chart = allowed_region(sys, {{0.0, q0}, {0.0, L}});
    piece.chart.axis_names[0] = "q1";
    piece.chart.axis_names[1] = "q2";
    piece.density = euler_density_2d(metric);
    cfg.pieces.push_back(std::move(piece));
    cfg.normalization = 2.0 * kPi / L;
    return cfg;
}

ConfigurationDescriptor reissner_nordstrom_config(const BlackHoleParams& p) {
    p.validate();
    if (p.a != 0.0)
        throw InvalidParameter("Reissner-Nordstrom requires a = 0");
    if (p.e == 0.0)
        throw InvalidParameter("U(1) invariants need a nonzero charge");

    ConfigurationDescriptor cfg;
    cfg.name = "reissner_nordstrom";
    cfg.base_dim = 4;
    cfg.group = GroupSpec::u1();
    const double rp = p.horizon_plus();
    const double rm = p.horizon_minus();
    const double T = 2.0 * kPi / p.r0;
    cfg.params = {{"m", p.m}, {"e", p.e},       {"r0", p.r0},
                  {"r_plus", rp}, {"r_minus", rm}};
    cfg.default_class = ClassKind::Chern1;

    const double r_lo = 0.25 * rm;
    const double r_hi = 4.0 * p.m + 2.0 * rp;
    GaugeConnection conn;
    conn.diff = DiffSpec::order4_scaled();
    conn.charts.push_back(Chart(2, {{0.0, T}, {r_lo, r_hi}}, {"t", "r"}));
    const double e = p.e;
    conn.A.push_back(PFormField(2, 1, [e](std::span<const double> x,
                                          std::span<double> out) {
        out[0] = -e / x[1]; // t leg
        out[1] = 0.0;       // r leg
    }));
    cfg.gauge = conn;

    if (p.extremal()) {
        cfg.degenerate_cycle = true;
        return cfg;
    }

    FieldStrength fs = field_strength(conn);
    IntegrationPiece piece;
    piece.chart = conn.charts[0];
    CycleSpec cycle;
    cycle.axes = {1, 0}; // (r, t): orientation making the invariant positive
    cycle.fixed_coords = {0.0, 0.0};
    cycle.bounds = {{rm, rp}, {0.0, T}};
    piece.cycle = cycle;
    piece.density = chern1_density(fs, 0);
    cfg.pieces.push_back(std::move(piece));
    return cfg;
}

ConfigurationDescriptor kerr_newman_config(const BlackHoleParams& p) {
    p.validate();
    if (p.e == 0.0)
        throw InvalidParameter("U(1) invariants need a nonzero charge");

    ConfigurationDescriptor cfg;
    cfg.name = "kerr_newman";
    cfg.base_dim = 4;
    cfg.group = GroupSpec::u1();
    const double rp = p.horizon_plus();
    const double rm = p.horizon_minus();
    const double T = 2.0 * kPi / p.r0;
    cfg.params = {{"m", p.m},      {"e", p.e},      {"a", p.a},
                  {"r0", p.r0},    {"r_plus", rp},  {"r_minus", rm}};
    cfg.default_class = ClassKind::Chern1;

    const double r_lo = 0.25 * rm;
    const double r_hi = 4.0 * p.m + 2.0 * rp;
    GaugeConnection conn;
    conn.diff = DiffSpec::order4_scaled();
    conn.charts.push_back(Chart(4,
                                {{0.0, T},
                                 {r_lo, r_hi},
                                 {kPoleMargin, kPi - kPoleMargin},
                                 {0.0, 2.0 * kPi}},
                                {"t", "r", "theta", "phi"}));
    const double e = p.e, a = p.a;
    conn.A.push_back(PFormField(4, 1, [e, a](std::span<const double> x,
                                             std::span<double> out) {
        const double r = x[1];
        const double ct = std::cos(x[2]);
        const double st = std::sin(x[2]);
        const double sigma = r * r + a * a * ct * ct;
        out[0] = -e * r / sigma;
        out[1] = 0.0;
        out[2] = 0.0;
        out[3] = e * r * a * st * st / sigma;
    }));
    cfg.gauge = conn;

    if (p.extremal()) {
        cfg.degenerate_cycle = true;
        return cfg;
    }

    FieldStrength fs = field_strength(conn);
    IntegrationPiece piece;
    piece.chart = conn.charts[0];
    CycleSpec cycle;
    cycle.axes = {1, 0};
    cycle.fixed_coords = {0.0, 0.0, kPi / 2, 0.0};
    cycle.bounds = {{rm, rp}, {0.0, T}};
    piece.cycle = cycle;
    piece.density = chern1_density(fs, 0);
    cfg.pieces.push_back(std::move(piece));
    return cfg;
}

int bundle_dimension(const ConfigurationDescriptor& cfg) {
    return cfg.base_dim + cfg.group.dimension();
}

namespace {

ConfigurationDescriptor dim_only_config(const std::string& name, int base_dim,
                                        GroupSpec group) {
    ConfigurationDescriptor cfg;
    cfg.name = name;
    cfg.base_dim = base_dim;
    cfg.group = std::move(group);
    return cfg;
}

double param_or(const std::map<std::string, double>& params,
                const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    const std::vector<std::string>& known) {
    for (const auto& [key, value] : params) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InvalidParameter("unknown parameter '" + key + "'");
    }
}

} // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"sphere",
         "round 2-sphere, Euler class (Gauss-Bonnet oracle)",
         {{"R", 1.0, "radius > 0"}},
         false},
        {"monopole",
         "Dirac monopole, two-chart U(1) connection, first Chern class",
         {{"g", 0.5, "monopole charge != 0"}},
         false},
        {"oscillator",
         "harmonic oscillators via the Jacobi metric, Euler class on [0,q0]x[0,L]",
         {{"m", 1.0, "mass > 0"},
          {"k1", 1.0, "spring constant >= 0"},
          {"k2", 0.0, "spring constant >= 0"},
          {"E", 1.0, "total energy > 0"},
          {"q0", 1.0, "strip end, 0 < q0 < turning point"},
          {"L", 1.0, "transverse strip extent > 0"}},
         false},
        {"reissner_nordstrom",
         "Reissner-Nordstrom U(1) connection, Chern invariant on the "
         "inter-horizon cycle",
         {{"m", 1.0, "mass, m^2 >= e^2"},
          {"e", 0.6, "charge != 0"},
          {"r0", 1.0, "time-cycle constant > 0 (period 2*pi/r0)"}},
         false},
        {"kerr_newman",
         "Kerr-Newman U(1) connection; cycle integrals reported numerically",
         {{"m", 1.0, "mass, m^2 >= e^2 + a^2"},
          {"e", 0.6, "charge != 0"},
          {"a", 0.3, "specific angular momentum"},
          {"r0", 1.0, "time-cycle constant > 0"}},
         false},
        {"gravity4d", "vacuum gravitational field, SO(1,3) frame bundle", {}, true},
        {"su2_minkowski", "SU(2) Yang-Mills on Minkowski spacetime", {}, true},
        {"su3_minkowski", "SU(3) Yang-Mills on Minkowski spacetime", {}, true},
        {"standard_model",
         "U(1) x SU(2) x SU(3) gauge configuration on Minkowski spacetime",
         {},
         true},
    };
    return entries;
}

ConfigurationDescriptor make_config(const std::string& name,
                                    const std::map<std::string, double>& params) {
    if (name == "sphere") {
        reject_unknown(params, {"R"});
        return sphere_config(param_or(params, "R", 1.0));
    }
    if (name == "monopole") {
        reject_unknown(params, {"g"});
        return monopole_config(param_or(params, "g", 0.5));
    }
    if (name == "oscillator") {
        reject_unknown(params, {"m", "k1", "k2", "E", "q0", "L"});
        return oscillator_config(
            param_or(params, "m", 1.0), param_or(params, "k1", 1.0),
            param_or(params, "k2", 0.0), param_or(params, "E", 1.0),
            param_or(params, "q0", 1.0), param_or(params, "L", 1.0));
    }
    if (name == "reissner_nordstrom") {
        reject_unknown(params, {"m", "e", "r0"});
        BlackHoleParams p;
        p.m = param_or(params, "m", 1.0);
        p.e = param_or(params, "e", 0.6);
        p.a = 0.0;
        p.r0 = param_or(params, "r0", 1.0);
        return reissner_nordstrom_config(p);
    }
    if (name == "kerr_newman") {
        reject_unknown(params, {"m", "e", "a", "r0"});
        BlackHoleParams p;
        p.m = param_or(params, "m", 1.0);
        p.e = param_or(params, "e", 0.6);
        p.a = param_or(params, "a", 0.3);
        p.r0 = param_or(params, "r0", 1.0);
        return kerr_newman_config(p);
    }
    if (name == "gravity4d") {
        reject_unknown(params, {});
        return dim_only_config(name, 4, GroupSpec::lorentz());
    }
    if (name == "su2_minkowski") {
        reject_unknown(params, {});
        return dim_only_config(name, 4, GroupSpec::su(2));
    }
    if (name == "su3_minkowski") {
        reject_unknown(params, {});
        return dim_only_config(name, 4, GroupSpec::su(3));
    }
    if (name == "standard_model") {
        reject_unknown(params, {});
        return dim_only_config(
            name, 4,
            GroupSpec::product({GroupSpec::u1(), GroupSpec::su(2),
                                GroupSpec::su(3)}));
    }
    throw InvalidParameter("unknown configuration '" + name + "'");
}

} // namespace topospec
