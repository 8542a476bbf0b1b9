#ifndef TODA_NLIE_HPP
#define TODA_NLIE_HPP

#include "toda/gutzwiller.hpp"
#include "toda/types.hpp"

namespace toda {

struct NlieParams {
    int N = 0;
    double hbar = 1.0;
    double Lambda = 0.0;
    std::vector<cplx> delta;
    double M = 0.0;  // grid half-width; 0 selects the default
    double h = 0.0;  // grid step; 0 selects the default
    double tol = 1e-12;
    int max_iter = 400;

    void apply_defaults();
    void validate() const;
};

// Converged solution of the nonlinear integral equation on the real grid.
struct NlieSolution {
    NlieParams params;
    std::vector<double> mu;
    std::vector<cplx> logX;
    std::vector<cplx> L;  // log(1 + X) at the grid points
    int iterations = 0;
    double residual = 0.0;

    // X and log X continued off the real axis through the integral
    // representation; valid for |Im w| < hbar.
    cplx logX_at(cplx w) const;
    cplx X_at(cplx w) const;

    // integral over the grid of w(mu_i) * L_i; weight_degree is the degree
    // of w at infinity, so the integrand decays as mu^{-(2N - weight_degree)}
    // and the tail beyond the edges is modeled accordingly
    cplx integrate_L(const std::vector<cplx>& weights, int weight_degree) const;
};

cplx theta_poly(cplx mu, const NlieParams& p);  // vartheta(mu) = prod(mu - delta_k)
cplx theta(cplx mu, const NlieParams& p);       // Lambda^{-2N} vartheta(mu-ih/2) vartheta(mu+ih/2)
cplx log_theta(cplx mu, const NlieParams& p);

NlieSolution solve_nlie(const NlieParams& p);

// Cauchy-type factors.  The plain versions evaluate the defining integral on
// its native side of the critical line; the value versions continue
// analytically one band beyond it using the jump factor (1 + X).
cplx log_v_up(cplx lambda, const NlieSolution& sol);
cplx v_up(cplx lambda, const NlieSolution& sol);
cplx log_v_down_shifted(cplx lambda, const NlieSolution& sol);  // log v_down(lambda - i hbar)
cplx v_down_shifted(cplx lambda, const NlieSolution& sol);

// Baxter solutions built from the NLIE data.
cplx log_q_plus_delta(cplx lambda, const NlieSolution& sol);
cplx log_q_minus_delta(cplx lambda, const NlieSolution& sol);
cplx q_plus_delta(cplx lambda, const NlieSolution& sol);
cplx q_minus_delta(cplx lambda, const NlieSolution& sol);

// log zeta_k on the branch that is continuous in Lambda from the explicit
// Lambda -> 0 expression (principal log-Gammas, explicit log(hbar/Lambda)).
std::vector<cplx> log_zeta_j(const NlieSolution& sol);
std::vector<cplx> zeta_j(const NlieSolution& sol);

// Transfer-matrix data recovered from the solution via the power sums.
SpectralData tau_from_delta(const NlieSolution& sol, int kmax = 0);

// Toda energy u = -E_2 at zero total momentum.
cplx u_energy(const NlieSolution& sol);

}  // namespace toda

#endif
