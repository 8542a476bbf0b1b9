#ifndef TODA_SPECIAL_HPP
#define TODA_SPECIAL_HPP

#include <functional>

#include "toda/types.hpp"

namespace toda {

// log Gamma(z) on the principal sheet of the standard analytic continuation
// along the positive real axis.  Lanczos for Re z >= 0.5, reflection with
// Kolbig-style log-sin bookkeeping otherwise.  Throws at the poles.
cplx log_gamma(cplx z);

// Digamma function, same domain handling as log_gamma.
cplx digamma(cplx z);

// Dilogarithm Li_2(z), principal branch with cut on (1, inf).
cplx dilog(cplx z);

// varpi(lambda): antiderivative of log Gamma(1 + i t/hbar) along the straight
// segment [0, lambda], normalized by varpi(0) = 0.
cplx varpi(cplx lambda, double hbar, double tol = 1e-13);

// Adaptive Gauss-Kronrod quadrature of f along the straight segment [a, b].
cplx quad_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                  double tol = 1e-12, int max_depth = 30);

// Mean of f over npts equispaced points on the circle |z - center| = r.
// For f analytic on the closed disc this equals f(center) up to O(r^npts);
// used to evaluate entire functions given by quotient formulas next to a
// pole/zero cancellation point.
cplx analytic_circle_mean(const std::function<cplx(cplx)>& f, cplx center,
                          double r, int npts = 16);

// log(sinh z) up to an additive multiple of 2*pi*i, overflow-safe.
cplx log_sinh(cplx z);

// log(1 - e^d) up to 2*pi*i, accurate also when d is close to 0.
cplx log1m_exp(cplx d);

}  // namespace toda

#endif
