#pragma once

#include <span>

#include "topospec/deriv.hpp"
#include "topospec/forms.hpp"

namespace topospec {

// Components of dw at x, written to `out` (size binomial(dim, p+1)).
// (dw)_{j0<...<jp} = sum_k (-1)^k d/dx_{jk} w_{j0..^jk..jp}.
void exterior_derivative(const PFormField& w, std::span<const double> x,
                         std::span<double> out,
                         const DiffSpec& spec = DiffSpec::order2(),
                         const SafeDistFn& safe_dist = {});

// Field-valued wrapper around exterior_derivative.
PFormField exterior_derivative_field(const PFormField& w,
                                     const DiffSpec& spec = DiffSpec::order2(),
                                     const SafeDistFn& safe_dist = {});

// Pointwise antisymmetrized product of component arrays:
// out_K = sum over splits K = I sqcup J of sign(I,J) u_I v_J.
// Throws DegreeOverflow when p+q > dim.
void wedge(int dim, int p, std::span<const double> u, int q,
           std::span<const double> v, std::span<double> out);

} // namespace topospec
