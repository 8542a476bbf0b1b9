#ifndef TODA_QUANTIZE_HPP
#define TODA_QUANTIZE_HPP

#include "toda/nlie.hpp"

namespace toda {

// Quantization target: excitation modes m_1..m_N (ground state = all zero).
// Internally the strictly decreasing integer filling n_k = m_k + (N - k) is
// formed and the Yang-Yang conditions read
//     log zeta_k = 2 pi i t_k,   t_k = n_k - (sum_l n_l)/N,
// for k = 1..N-1 together with sum delta = 0.  The t_k differ by integers,
// so all zeta_j coincide and zeta^N = 1; adding a constant to all m_k leaves
// t unchanged (the advertised labeling redundancy).
struct QuantizationProblem {
    int N = 0;
    double hbar = 1.0;
    double Lambda = 0.0;
    std::vector<int> modes;
    std::vector<cplx> seed;  // optional
    double tol = 1e-10;
    int max_iter = 40;

    std::vector<double> targets() const;  // t_1..t_N
    void validate() const;
};

struct SpectrumRecord {
    int N = 0;
    double hbar = 1.0;
    double Lambda = 0.0;
    std::vector<int> modes;
    std::vector<cplx> delta_star;
    std::vector<cplx> zetas;
    cplx zeta;                   // common value
    std::vector<cplx> energies;  // E_2..E_N
    double newton_residual = 0.0;
    double nlie_residual = 0.0;
    double zeta_spread = 0.0;      // max |zeta_j - zeta| / |zeta|
    double zeta_pow_n_dev = 0.0;   // |zeta^N - 1|

    NlieParams params() const;
};

// The closed-form (X = 0) part of log zeta, no NLIE solve.
std::vector<cplx> closed_form_log_zeta(int N, double hbar, double Lambda,
                                       const std::vector<cplx>& delta);

// Solves the quantization conditions with the X = 0 closed form only; used
// to seed the full solver and as the small-Lambda oracle.
std::vector<cplx> solve_closed_form(const QuantizationProblem& qp);

SpectrumRecord quantize(const QuantizationProblem& qp);

// Independent oracle at N = 2: eigenvalue -E_2 = u of
//   -hbar^2 psi'' + 2 Lambda^2 cosh(x) psi = u psi  on L^2(R),
// by finite differences with Richardson refinement in mesh and box size.
double oracle_spectrum_n2(double hbar, double Lambda, int level);

// Entire, decaying Baxter eigen-solution at a quantized point.
cplx build_q(cplx lambda, const SpectrumRecord& rec, const NlieSolution& sol);

}  // namespace toda

#endif
