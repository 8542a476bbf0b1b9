#ifndef TODA_NEWTON_HPP
#define TODA_NEWTON_HPP

#include <functional>

#include "toda/types.hpp"

namespace toda {

struct NewtonOptions {
    double tol = 1e-12;
    int max_iter = 50;
    double fd_eps_scale = 1e-6;  // step = scale * max(1, |x_j|)
    bool allow_damping = true;
};

struct NewtonResult {
    std::vector<cplx> x;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;  // residual norm per iteration
    std::string failure;
};

using VecFunc = std::function<std::vector<cplx>(const std::vector<cplx>&)>;

// Damped Newton for holomorphic F: C^m -> C^m with central finite-difference
// Jacobian.  Throws numeric_error on a singular Jacobian; a max-iteration
// stop is reported through the result.
NewtonResult newton_system(const VecFunc& F, std::vector<cplx> x0,
                           const NewtonOptions& opts = {});

// Convenience wrapper that throws when not converged.
std::vector<cplx> newton_system_checked(const VecFunc& F, std::vector<cplx> x0,
                                        const NewtonOptions& opts = {});

}  // namespace toda

#endif
