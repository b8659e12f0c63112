// Compares the serial reference integrator against the OpenMP kernel on the
// heaviest densities in the catalog and checks that both produce bit-identical
// values (the reduction order is fixed by contract).

#include <chrono>
#include <cstdio>
#include <cstring>
#include <thread>
#include <vector>

#include "topospec/configurations.hpp"
#include "topospec/spectrum.hpp"

using namespace topospec;

namespace {

double time_invariant(const ConfigurationDescriptor& cfg,
                      const QuadratureSpec& quad, int workers, double* value) {
    const auto t0 = std::chrono::steady_clock::now();
    InvariantValue v = evaluate_invariant(cfg, quad, workers);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    *value = v.value;
    return dt;
}

void bench_case(const char* name, const ConfigurationDescriptor& cfg,
                const QuadratureSpec& quad, const std::vector<int>& workers) {
    std::printf("%-32s (points %d, levels %d)\n", name, quad.points_per_axis,
                quad.refinement_levels);
    double serial_value = 0.0;
    double serial_time = time_invariant(cfg, quad, 1, &serial_value);
    std::printf("  %2d thread(s): %8.3f ms   value %.15g\n", 1,
                serial_time * 1e3, serial_value);
    for (int w : workers) {
        if (w <= 1) continue;
        double value = 0.0;
        const double t = time_invariant(cfg, quad, w, &value);
        const bool identical =
            std::memcmp(&value, &serial_value, sizeof(double)) == 0;
        std::printf("  %2d thread(s): %8.3f ms   speedup %5.2fx   %s\n", w,
                    t * 1e3, serial_time / t,
                    identical ? "bit-identical" : "MISMATCH");
    }
}

} // namespace

int main() {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    std::vector<int> workers = {2, 4};
    if (hw > 4) workers.push_back(hw);

    bench_case("sphere euler (R=1)", sphere_config(1.0),
               QuadratureSpec{128, 3, 1e-8}, workers);
    bench_case("oscillator euler (k=1, E=1)",
               oscillator_config(1.0, 1.0, 0.0, 1.0, 1.2, 1.0),
               QuadratureSpec{128, 3, 1e-8}, workers);
    BlackHoleParams p{1.0, 0.6, 0.0, 1.0};
    bench_case("reissner-nordstrom chern", reissner_nordstrom_config(p),
               QuadratureSpec{256, 3, 1e-8}, workers);
    return 0;
}
