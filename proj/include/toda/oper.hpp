#ifndef TODA_OPER_HPP
#define TODA_OPER_HPP

#include <Eigen/Dense>
#include <span>

#include "toda/gutzwiller.hpp"
#include "toda/quantize.hpp"
#include "toda/types.hpp"

namespace toda {

// Rank-N oper on the twice-punctured sphere in the z coordinate:
//   t(-i hbar z d/dz) chi = Lambda^N (i^N z + i^-N z^-1) chi.
// Scaled coordinates: w = (Lambda/hbar)^N z near infinity and
// w' = (hbar/Lambda)^N z near zero (the alternative w_inf = (Lambda/hbar)^N/z
// of the generic parameterization is just 1/w').
struct OperInstance {
    int N = 0;
    double hbar = 1.0;
    double Lambda = 0.0;
    std::vector<cplx> charges;  // E_2..E_N

    static OperInstance from_spectral(const SpectralData& s);

    cplx t(cplx lambda) const;
    // companion matrix A(z) of the first-order system -i hbar z Psi' = A Psi
    // for Psi = (chi, D chi, ..., D^{N-1} chi), D = -i hbar z d/dz
    Eigen::MatrixXcd companion(cplx z) const;
};

// Eigenvalues of the monodromy of the companion system around |z| = 1,
// transported with an embedded Dormand-Prince 5(4) pair.  Doubcomo a step
// control cross-check the result is recomputed at a tighter tolerance.
std::vector<cplx> ode_monodromy(const OperInstance& inst, double rtol = 1e-11,
                                double base_angle = 0.0);

// Floquet basis built from the Baxter solutions on the i*hbar lattice through
// the Wronskian zeros delta_j, exponents sigma_j = i delta_j / hbar.
struct FloquetBasis {
    enum class Side { zero, infinity };

    int N = 0;
    double hbar = 1.0;
    double Lambda = 0.0;
    Side side = Side::zero;
    std::vector<cplx> sigma;
    std::vector<cplx> delta;
    std::vector<cplx> log_xi;  // lattice proportionality constants (logs)
    int n_min = 0, n_max = 0;
    std::vector<std::vector<cplx>> logc;  // [j][n - n_min]

    // per-instance transfer-matrix polynomial for the residual checks
    std::vector<cplx> tau;

    static FloquetBasis build(const SpectralData& s, const HillZeros& hz,
                              Side side, int window_cap = 64,
                              int min_halfwidth = 6);

    cplx coeff(int j, int n) const;          // c_{j,n} as a value
    cplx log_coeff(int j, int n) const;      // may be -inf real part
    cplx eval_logz(int j, cplx logz) const;  // explicit branch of log z
    cplx eval(int j, cplx z) const;          // principal branch
    cplx eval_w(int j, cplx w) const;        // side-appropriate scaled variable
    cplx logz_from_w(cplx w) const;

    // relative residual of the coefficient recurrence at index n
    double recurrence_residual(int j, int n) const;
    // relative residual of the oper equation applied to the truncated series
    double oper_residual(int j, cplx z) const;

    cplx t(cplx lambda) const;
};

// Maximally decaying solutions at z = 0 / infinity as the sin-weighted
// combination of Floquet solutions.
cplx chi_max_decay(const FloquetBasis& basis, cplx z);
cplx chi_max_decay_w(const FloquetBasis& basis, cplx w);

// Regularized generalized hypergeometric 0F~_{N-1} by direct series.
cplx hypergeometric_0FN(std::span<const cplx> beta, cplx w);

// Meijer G^{N,0}_{0,N} as the sin/Gamma-weighted sum of 0F~ terms.  Subject
// to catastrophic cancellation for large |w| (digits lost ~ 2N|w|^{1/N}/ln10).
cplx meijer_maximal(std::span<const cplx> b, cplx w);

// Independent Mellin-Barnes evaluation of G^{N,0}_{0,N} on a saddle-shifted
// vertical contour; accurate uniformly in |w|.
cplx meijer_g_n0_mb(std::span<const cplx> b, cplx w);

struct RayReport {
    std::vector<double> w;
    std::vector<double> ratio_dev;  // |F/leading - 1| (even N)
    double slope = 0.0;             // log-log fit of ratio_dev, expect -1/N
    double resid_ratio = 0.0;       // odd N: one-term / two-term residuals
    bool pass = false;
};

// Leading asymptotics check of the Floquet solutions along a ray
// arg w = direction (|direction| < pi/N enforced).
RayReport floquet_asymptotics_check(const FloquetBasis& basis, int j,
                                    double direction, double w_lo, double w_hi,
                                    int npts = 8);

struct SpreadReport {
    std::vector<cplx> ratios;
    double spread = 0.0;  // max |ratio - mean| / |mean|
};

// conj(chi_inf(1/conj z)) / chi_inf(z) on positive real samples; constant
// exactly when the connection matrix is proportional to the identity.
SpreadReport antiholomorphic_symmetry_check(const FloquetBasis& binf,
                                            double z_lo = 0.75,
                                            double z_hi = 1.30, int npts = 10);

struct FourierReport {
    double max_rel_deviation = 0.0;  // transform vs chi^(0), normalized at x=0
    cplx absolute_ratio;             // transform / chi^(0) at x = 0
    double oper_residual = 0.0;      // FD residual of the transform itself
};

// Fourier transform of the Baxter eigen-solution against chi^(0)(e^x).
// With subtract_zeta = false the transform of q+ alone is analyzed, which
// must fail the oper residual test at a quantized point.
FourierReport fourier_duality_check(const SpectrumRecord& rec,
                                    const NlieSolution& sol,
                                    const FloquetBasis& b0,
                                    bool subtract_zeta = true);

}  // namespace toda

#endif
