#ifndef TODA_POLY_HPP
#define TODA_POLY_HPP

#include <span>

#include "toda/types.hpp"

namespace toda {

// Dense univariate polynomial, coefficients c_0..c_n in increasing degree.
struct Polynomial {
    std::vector<cplx> coeff;

    int degree() const { return static_cast<int>(coeff.size()) - 1; }

    cplx eval(cplx x) const {
        cplx y = 0.0;
        for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) y = y * x + *it;
        return y;
    }

    static Polynomial from_roots(std::span<const cplx> roots);
};

// All roots via the companion-matrix eigenvalue method.  Residuals satisfy
// |p(r)| < 1e-10 * max|c_k| * max(1,|r|)^n.
std::vector<cplx> poly_roots(const Polynomial& p);

// Elementary symmetric polynomial e_i of the given values; e_0 = 1.
cplx elementary_symmetric(std::span<const cplx> values, int i);

// e_0..e_n in one sweep.
std::vector<cplx> elementary_symmetric_all(std::span<const cplx> values);

// Power sums p_1..p_kmax -> e_1..e_kmax by Newton's identities.
std::vector<cplx> newton_identities(std::span<const cplx> power_sums);

}  // namespace toda

#endif
