#ifndef TODA_GUTZWILLER_HPP
#define TODA_GUTZWILLER_HPP

#include <span>

#include "toda/types.hpp"

namespace toda {

// Transfer-matrix eigenvalue data: roots tau_1..tau_N of
//   t(lambda) = lambda^N + sum_k lambda^k E_{N-k} = prod (lambda - tau_k),
// with E_1 = sum tau_k = 0, plus the coupling Lambda and hbar.
struct SpectralData {
    int N = 0;
    double hbar = 1.0;
    double Lambda = 0.0;
    std::vector<cplx> tau;
    std::vector<cplx> charges;  // E_2..E_N

    static SpectralData from_tau(double hbar, double Lambda,
                                 std::vector<cplx> tau);
    static SpectralData from_charges(double hbar, double Lambda,
                                     std::vector<cplx> charges);

    cplx t(cplx lambda) const;  // product form, stable near the roots
    void validate() const;
};

// Zeros delta_1..delta_N of the Hill determinant (equivalently the quantum
// Wronskian) together with the lattice proportionality constants.
struct HillZeros {
    std::vector<cplx> delta;
    std::vector<cplx> zeta;  // q+(delta_j)/q-(delta_j)
    enum class Source { from_tau, from_delta_input } source = Source::from_tau;
};

// K+-: unique solutions of the paired difference equations normalized to 1 at
// infinity, evaluated by backward recursion of the principal-minor sequence.
// trunc = 0 selects the automatic depth (doubling until change < 1e-12).
cplx k_plus(cplx lambda, const SpectralData& s, int trunc = 0);
cplx k_minus(cplx lambda, const SpectralData& s, int trunc = 0);

// Baxter solutions built on the tau data.  The log variants return a complex
// logarithm (defined up to 2*pi*i); the value variants switch to a circle
// limit when the quotient formula degenerates near a Gamma-product pole.
cplx log_q_plus_tau(cplx lambda, const SpectralData& s);
cplx log_q_minus_tau(cplx lambda, const SpectralData& s);
cplx q_plus_tau(cplx lambda, const SpectralData& s);
cplx q_minus_tau(cplx lambda, const SpectralData& s);

cplx quantum_wronskian(cplx lambda, const SpectralData& s);
cplx log_quantum_wronskian(cplx lambda, const SpectralData& s);

// Hill determinant via the Wronskian factorization (stable for any Re
// lambda), and the direct truncated doubly-infinite determinant cross-check.
cplx hill_determinant(cplx lambda, const SpectralData& s);
cplx hill_determinant_direct(cplx lambda, const SpectralData& s, int K = 24);

// Newton on the Wronskian with the tau-lattice sinh factors stripped,
// seeded at tau_j; falls back to continuation in Lambda.
HillZeros hill_zeros(const SpectralData& s);

// Wronskian with the j-th sinh prefactor removed; regular near tau_j with a
// simple zero at delta_j.  Exposed for the zero finder and its tests.
cplx hill_times_sinh_j(cplx lambda, const SpectralData& s, int j);

}  // namespace toda

#endif
