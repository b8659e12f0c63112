#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "topospec/quadrature.hpp"

namespace topospec {

enum class VerifyStatus {
    Pass,
    Fail,
    Flagged, // integrals did not converge: the oracle is not graded
    Info,    // informational line, never a failure
};

struct VerifyItem {
    int criterion = 0; // acceptance criterion this item belongs to
    std::string name;
    VerifyStatus status = VerifyStatus::Pass;
    double residual = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    std::string detail;
};

struct VerifyOptions {
    // Overrides points_per_axis of every internal quadrature spec, e.g. to
    // demonstrate under-resolution flagging.
    std::optional<int> points_override;
    int workers = -1; // -1: TOPOSPEC_THREADS
};

// Built-in oracle suite: Gauss-Bonnet spheres, monopole charge quantization,
// oscillator and black-hole closed forms, spectrum solves, area consistency,
// property checks (d.d = 0, torsion, gauge invariance, determinism).
std::vector<VerifyItem> run_verification(const VerifyOptions& opts = {});

bool all_passed(const std::vector<VerifyItem>& items);
bool any_flagged(const std::vector<VerifyItem>& items);
void print_report(std::ostream& os, const std::vector<VerifyItem>& items);

// 0 all pass, 2 flagged-only, 1 failures.
int verify_exit_code(const std::vector<VerifyItem>& items);

} // namespace topospec
