#pragma once

#include <array>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "topospec/errors.hpp"
#include "topospec/linalg.hpp"

namespace topospec {

// Coordinate point. Only the first `dim` entries of the owning chart are
// meaningful; the tail stays zero so points can be passed as fixed arrays.
using Point = std::array<double, kMaxDim>;

using RegionFn = std::function<bool(std::span<const double>)>;

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double length() const { return hi - lo; }
};

// A coordinate box, the domain on which all fields are evaluated and
// integrated. `region`, when set, restricts the box pointwise; points that
// fail it contribute zero to integrals. `orientation` is the axis ordering
// that defines the positive volume element (identity by default).
struct Chart {
    int dim = 0;
    std::array<Interval, kMaxDim> bounds{};
    RegionFn region;
    std::array<int, kMaxDim> orientation{};
    std::array<std::string, kMaxDim> axis_names{};

    Chart() = default;

    Chart(int dimension, std::vector<Interval> box,
          std::vector<std::string> names = {}) : dim(dimension) {
        if (dim < 1 || dim > kMaxDim)
            throw InvalidParameter("chart dim must be in [1," +
                                   std::to_string(kMaxDim) + "], got " +
                                   std::to_string(dim));
        if (static_cast<int>(box.size()) != dim)
            throw InvalidParameter("chart bounds count != dim");
        for (int i = 0; i < dim; ++i) {
            if (!(box[i].lo < box[i].hi))
                throw InvalidParameter("chart interval must have lower < upper on axis " +
                                       std::to_string(i));
            bounds[i] = box[i];
        }
        std::iota(orientation.begin(), orientation.begin() + dim, 0);
        for (int i = 0; i < dim && i < static_cast<int>(names.size()); ++i)
            axis_names[i] = names[i];
    }

    void set_orientation(std::span<const int> perm) {
        if (static_cast<int>(perm.size()) != dim)
            throw InvalidParameter("orientation permutation size != dim");
        std::array<bool, kMaxDim> seen{};
        for (int i = 0; i < dim; ++i) {
            if (perm[i] < 0 || perm[i] >= dim || seen[perm[i]])
                throw InvalidParameter("orientation is not a permutation of the axes");
            seen[perm[i]] = true;
            orientation[i] = perm[i];
        }
    }

    // Sign of the orientation permutation relative to increasing axis order.
    int orientation_sign() const {
        int sign = 1;
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j)
                if (orientation[i] > orientation[j]) sign = -sign;
        return sign;
    }

    bool in_region(std::span<const double> x) const {
        return !region || region(x);
    }

    int axis_index(const std::string& name) const {
        for (int i = 0; i < dim; ++i)
            if (axis_names[i] == name) return i;
        throw InvalidParameter("unknown axis name '" + name + "'");
    }
};

} // namespace topospec
