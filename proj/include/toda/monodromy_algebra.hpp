#ifndef TODA_MONODROMY_ALGEBRA_HPP
#define TODA_MONODROMY_ALGEBRA_HPP

#include <Eigen/Dense>

#include "toda/types.hpp"

namespace toda {

// Monodromy/Stokes data on the oper locus: exponents sigma_j with zero sum,
// eigenvalues Sigma_j = e^{2 pi i sigma_j}, connection exponents eta_j, and
// the Stokes constants s_i = (-1)^{i+1} e_i(Sigma).
struct MonodromyData {
    int N = 0;
    std::vector<cplx> sigma;
    std::vector<cplx> eta;  // may stay empty until the connection matrix is needed

    std::vector<cplx> Sigma() const;
    std::vector<cplx> stokes_constants() const;
    void validate() const;
};

// Debug hook: flips the sign of every Stokes constant (used by the verify
// suite to demonstrate that the characteristic-polynomial invariant trips).
void set_stokes_sign_flip(bool flip);
bool stokes_sign_flip();

// Stokes matrix S_k, k = 0..2N-1: ones on the diagonal, s_{n-m} at the
// positions m = k-n (mod N) with k-2n (mod 2N) in {1..N-1}, where
// s_{i-N} = (-1)^{N-1} s_i.
Eigen::MatrixXcd stokes_matrix(int k, const MonodromyData& d);

// Cyclic permutation with the (-1)^{N-1} corner entry.
Eigen::MatrixXcd permutation_PN(int N);

// M_0 = S_0 S_1 P_N.
Eigen::MatrixXcd monodromy_M0(const MonodromyData& d);

// Reflected Vandermonde: row j = (Sigma_j^{N-1}, ..., Sigma_j^0).
Eigen::MatrixXcd vandermonde_V(const MonodromyData& d);

// [M]_{n,k} = [M_0^{ceil(N/2)-k}]_{n,0}, n = 0..N-1, k = 1..N.
Eigen::MatrixXcd msf_matrix(const MonodromyData& d);

// Connection matrix E = M V^{-1} T V M^{-1} with T = diag(e^{2 pi i eta_j}).
Eigen::MatrixXcd connection_E(const MonodromyData& d);

struct QuantizedScore {
    bool quantized = false;
    double score = 0.0;  // ||E - (tr E/N) 1||_F / |tr E / N|
};

QuantizedScore is_quantized_E(const Eigen::MatrixXcd& E, double tol);

}  // namespace toda

#endif
