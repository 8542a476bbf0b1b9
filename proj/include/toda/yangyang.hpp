#ifndef TODA_YANGYANG_HPP
#define TODA_YANGYANG_HPP

#include "toda/nlie.hpp"

namespace toda {

struct YangYangValue {
    cplx y_pert;
    cplx y_inst;
    cplx total;
};

// Perturbative part: N (i/hbar)(log hbar - log Lambda) sum delta^2 plus the
// double varpi sum over ordered pairs (the diagonal terms vanish).
cplx y_pert(const NlieParams& p);

// Instanton part from the converged NLIE solution.
cplx y_inst(const NlieSolution& sol);

YangYangValue yang_yang(const NlieParams& p);
YangYangValue yang_yang(const NlieSolution& sol);

struct GradReport {
    std::vector<double> deviations;  // per component k
    double max_deviation = 0.0;
};

// Central finite differences of Y against log zeta_k, unconstrained deltas.
GradReport grad_delta_check(const NlieParams& p, double eps);

struct LambdaReport {
    cplx derivative;  // i hbar dY/d log Lambda^{2N}
    cplx u;
    double deviation = 0.0;
};

LambdaReport lambda_derivative_check(const NlieParams& p, double eps);

struct GeneratingFunction {
    cplx S;
    std::vector<cplx> eta;     // log zeta / (2 pi i) on the recorded branch
    double max_fd_deviation = -1.0;  // dS/dsigma_j vs 2 pi hbar eta_j
};

// S(sigma, Lambda) = Y(-i hbar sigma, Lambda); optionally certifies the
// chain-rule identity dS/dsigma_j = 2 pi hbar eta_j by finite differences.
GeneratingFunction generating_function_S(const std::vector<cplx>& sigma,
                                         double hbar, double Lambda,
                                         bool check_fd = false,
                                         double eps = 1e-5);

}  // namespace toda

#endif
