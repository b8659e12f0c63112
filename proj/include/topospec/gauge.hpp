#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topospec/chart.hpp"
#include "topospec/exterior.hpp"
#include "topospec/forms.hpp"

namespace topospec {

// U(1) connection data on one or two charts. Connections are stored as
// real-valued 1-forms (units with hbar = c = 1). With two charts, `overlap`
// is the common band and `transition` the scalar lambda with
// A[0] - A[1] = d lambda there.
struct GaugeConnection {
    std::vector<Chart> charts;
    std::vector<PFormField> A; // one 1-form per chart
    std::optional<Chart> overlap;
    ScalarField transition;
    DiffSpec diff = DiffSpec::order2();

    void validate() const {
        if (charts.empty() || charts.size() > 2)
            throw InvalidParameter("GaugeConnection needs one or two charts");
        if (A.size() != charts.size())
            throw InvalidParameter("one connection 1-form per chart required");
        for (size_t i = 0; i < A.size(); ++i)
            if (A[i].degree != 1 || A[i].dim != charts[i].dim)
                throw InvalidParameter("connection must be a 1-form on its chart");
    }
};

// F = dA per chart.
struct FieldStrength {
    std::vector<Chart> charts;
    std::vector<PFormField> F; // one 2-form per chart
};

FieldStrength field_strength(const GaugeConnection& A);

struct TransitionReport {
    double max_residual = 0.0;
    int samples = 0;
    bool pass = false;
};

// Max over a deterministic overlap grid of |(A_N - A_S) - d lambda|
// components; PASS iff < 1e-8. Throws MissingTransition for single-chart
// connections.
TransitionReport verify_transition(const GaugeConnection& A, int samples);

} // namespace topospec
