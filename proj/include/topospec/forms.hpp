#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "topospec/chart.hpp"
#include "topospec/errors.hpp"
#include "topospec/linalg.hpp"

namespace topospec {

inline constexpr int kMaxComps = 70; // C(8,4)

int binomial(int n, int k);

// Strictly increasing multi-indices of length p over {0..n-1}, enumerated in
// lexicographic order. Component arrays of p-forms are indexed by this order.
class IndexSets {
public:
    // Flattened table: combo r occupies entries [r*p, (r+1)*p).
    static std::span<const int> combos(int n, int p);
    static int count(int n, int p) { return binomial(n, p); }
    static std::span<const int> combo(int n, int p, int rank);
    // Rank of a strictly increasing index tuple.
    static int rank(int n, std::span<const int> combo);
};

// Inserts `idx` into the strictly increasing tuple `combo`; returns the rank
// of the enlarged tuple and the sign (-1)^position. Fails (-1 rank) when idx
// is already present.
struct InsertResult {
    int rank = -1;
    int sign = 0;
};
InsertResult insert_index(int n, std::span<const int> combo, int idx);

using ScalarField = std::function<double(std::span<const double>)>;
using ArrayField =
    std::function<void(std::span<const double>, std::span<double>)>;

// Antisymmetric-tensor field of fixed degree. `components` writes the
// coefficient on each increasing multi-index; evaluation must be pure.
struct PFormField {
    int dim = 0;
    int degree = 0;
    ArrayField components;

    PFormField() = default;
    PFormField(int dimension, int p, ArrayField comps)
        : dim(dimension), degree(p), components(std::move(comps)) {
        if (dim < 1 || dim > kMaxDim)
            throw InvalidParameter("form dim out of range");
        if (degree < 0 || degree > dim)
            throw InvalidParameter("form degree must be in [0, dim]");
    }

    int n_comps() const { return binomial(dim, degree); }

    void eval(std::span<const double> x, std::span<double> out) const {
        components(x, out);
    }
};

PFormField scalar_as_0form(int dim, ScalarField f);
PFormField constant_form(int dim, int degree, std::vector<double> comps);
PFormField scaled_form(const PFormField& w, double factor);

} // namespace topospec
