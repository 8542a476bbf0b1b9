#ifndef TODA_QUAD_HPP
#define TODA_QUAD_HPP

#include <functional>

#include "toda/types.hpp"

namespace toda {

struct QuadResult {
    cplx value;            // trapezoid + model tail correction
    cplx trapezoid;        // raw trapezoid value
    cplx tail_correction;  // added assuming ~ mu^-2 decay beyond the edges
    double tail_estimate;  // magnitude bound for the neglected tail
};

// Trapezoid rule over the sampled grid plus a mu^-2 tail model beyond the
// edges.  The integrand must decay at least as |mu|^-2 there.
QuadResult quad_real_line(const ComplexGrid& grid);

QuadResult quad_real_line(const std::function<cplx(double)>& f, double M,
                          double h);

// Same, but throws numeric_error when the logged tail estimate exceeds tol.
cplx quad_real_line_checked(const ComplexGrid& grid, double tol);

}  // namespace toda

#endif
