#include "topospec/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace topospec {

namespace {

GaussRule compute_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x; // ascending order
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

struct LevelGrid {
    int dim = 0;
    long long slab_size = 1; // nodes per outermost-axis slab
    std::array<const GaussRule*, kMaxDim> rules{};
    std::array<double, kMaxDim> mid{}, half{};
};

// Kahan sum of one outermost-axis slab in axis-major order. Returns the
// number of nodes passing the region predicate.
long long sum_slab(const PFormField& density, const Chart& chart,
                   const LevelGrid& g, int i0, double* out) {
    const int dim = g.dim;
    Kahan acc;
    long long passing = 0;
    std::array<int, kMaxDim> idx{};
    idx[0] = i0;
    Point x{};
    x[0] = g.mid[0] + g.half[0] * g.rules[0]->nodes[i0];
    double comp = 0.0;
    std::span<const double> xv(x.data(), static_cast<size_t>(dim));
    std::span<double> cv(&comp, 1);
    for (long long flat = 0; flat < g.slab_size; ++flat) {
        // decode flat -> (i1..i_{d-1}), lexicographic
        long long rem = flat;
        for (int a = dim - 1; a >= 1; --a) {
            const int n = static_cast<int>(g.rules[a]->nodes.size());
            idx[a] = static_cast<int>(rem % n);
            rem /= n;
            x[a] = g.mid[a] + g.half[a] * g.rules[a]->nodes[idx[a]];
        }
        if (!chart.in_region(xv)) continue;
        ++passing;
        density.eval(xv, cv);
        if (!std::isfinite(comp))
            throw NonFiniteEvaluation("density non-finite at quadrature node");
        double w = g.rules[0]->weights[i0] * g.half[0];
        for (int a = 1; a < dim; ++a) w *= g.rules[a]->weights[idx[a]] * g.half[a];
        acc.add(w * comp);
    }
    *out = acc.sum;
    return passing;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw InvalidParameter("Gauss-Legendre order must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

int workers_from_env() {
    const char* env = std::getenv("TOPOSPEC_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

IntegralResult integrate(const PFormField& density, const Chart& chart,
                         const QuadratureSpec& spec, int max_workers) {
    spec.validate();
    if (density.dim != chart.dim)
        throw InvalidParameter("density dim != chart dim");
    if (density.degree != chart.dim)
        throw InvalidParameter("integrate() needs a top-degree density (degree " +
                               std::to_string(density.degree) + " on dim " +
                               std::to_string(chart.dim) + ")");
    const int workers = max_workers > 0 ? max_workers : workers_from_env();
    const int sign = chart.orientation_sign();

    double prev = 0.0;
    IntegralResult res;
    for (int level = 0; level < spec.refinement_levels; ++level) {
        const int n = spec.points_per_axis << level;
        LevelGrid g;
        g.dim = chart.dim;
        for (int a = 0; a < chart.dim; ++a) {
            g.rules[a] = &gauss_legendre(n);
            g.mid[a] = 0.5 * (chart.bounds[a].lo + chart.bounds[a].hi);
            g.half[a] = 0.5 * chart.bounds[a].length();
            if (a > 0) g.slab_size *= n;
        }

        std::vector<double> partial(static_cast<size_t>(n), 0.0);
        std::vector<long long> passing(static_cast<size_t>(n), 0);
        std::exception_ptr error;
        int error_slab = n;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
#endif
        for (int i0 = 0; i0 < n; ++i0) {
            try {
                passing[i0] = sum_slab(density, chart, g, i0, &partial[i0]);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical(topospec_integrate_error)
#endif
                if (i0 < error_slab) { // keep the first slab's error
                    error_slab = i0;
                    error = std::current_exception();
                }
            }
        }
        if (error) std::rethrow_exception(error);

        Kahan total;
        long long pass_total = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            total.add(partial[i0]);
            pass_total += passing[i0];
        }
        if (pass_total == 0)
            throw EmptyDomain("region predicate rejected every quadrature node (" +
                              std::to_string(n) + " per axis)");

        const double value = sign * total.sum;
        if (level > 0) res.err_estimate = std::fabs(value - prev);
        prev = value;
        res.value = value;
        long long nodes = 1;
        for (int a = 0; a < chart.dim; ++a) nodes *= n;
        res.nodes = nodes;
    }
    res.converged = spec.refinement_levels < 2 ||
                    res.err_estimate <= spec.convergence_tol;
    return res;
}

} // namespace topospec
