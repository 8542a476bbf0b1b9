#include "toda/monodromy_algebra.hpp"

#include <cmath>

#include "toda/poly.hpp"

namespace toda {

namespace {
bool g_flip_stokes = false;

int imod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}
}  // namespace

void set_stokes_sign_flip(bool flip) { g_flip_stokes = flip; }
bool stokes_sign_flip() { return g_flip_stokes; }

std::vector<cplx> MonodromyData::Sigma() const {
    std::vector<cplx> S(sigma.size());
    for (std::size_t j = 0; j < sigma.size(); ++j)
        S[j] = std::exp(2.0 * pi * iu * sigma[j]);
    return S;
}

std::vector<cplx> MonodromyData::stokes_constants() const {
    std::vector<cplx> S = Sigma();
    auto e = elementary_symmetric_all(S);
    std::vector<cplx> s(N - 1);
    for (int i = 1; i <= N - 1; ++i) {
        s[i - 1] = std::pow(cplx(-1.0), i + 1) * e[i];
        if (g_flip_stokes) s[i - 1] = -s[i - 1];
    }
    return s;
}

void MonodromyData::validate() const {
    if (N < 2 || static_cast<int>(sigma.size()) != N)
        throw config_error("MonodromyData: need N >= 2 sigmas");
    cplx sum = 0.0;
    for (cplx s : sigma) sum += s;
    if (std::abs(sum) > 1e-10)
        throw config_error("MonodromyData: sum sigma must vanish");
}

Eigen::MatrixXcd stokes_matrix(int k, const MonodromyData& d) {
    d.validate();
    const int N = d.N;
    if (k < 0 || k >= 2 * N) throw config_error("stokes_matrix: k out of range");
    std::vector<cplx> s = d.stokes_constants();
    // s at a shifted index: s_{i-N} = (-1)^{N-1} s_i for i = 1..N-1
    auto s_at = [&](int i) -> cplx {
        if (i >= 1 && i <= N - 1) return s[i - 1];
        if (i <= -1 && i >= -(N - 1))
            return std::pow(cplx(-1.0), N - 1) * s[i + N - 1];
        throw config_error("stokes_matrix: bad Stokes index");
    };
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(N, N);
    for (int n = 0; n < N; ++n) {
        int r = imod(k - 2 * n, 2 * N);
        if (r < 1 || r > N - 1) continue;
        int m = imod(k - n, N);
        if (m == n) continue;
        S(m, n) = s_at(n - m);
    }
    return S;
}

Eigen::MatrixXcd permutation_PN(int N) {
    if (N < 2) throw config_error("permutation_PN: N >= 2");
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 1; i < N; ++i) P(i, i - 1) = 1.0;
    P(0, N - 1) = std::pow(cplx(-1.0), N - 1);
    return P;
}

Eigen::MatrixXcd monodromy_M0(const MonodromyData& d) {
    return stokes_matrix(0, d) * stokes_matrix(1, d) * permutation_PN(d.N);
}

Eigen::MatrixXcd vandermonde_V(const MonodromyData& d) {
    d.validate();
    std::vector<cplx> S = d.Sigma();
    for (int j = 0; j < d.N; ++j)
        for (int k = j + 1; k < d.N; ++k)
            if (std::abs(S[j] - S[k]) < 1e-12)
                throw numeric_error("vandermonde_V: Sigma collision");
    Eigen::MatrixXcd V(d.N, d.N);
    for (int j = 0; j < d.N; ++j)
        for (int k = 0; k < d.N; ++k)
            V(j, k) = std::pow(S[j], d.N - 1 - k);
    return V;
}

Eigen::MatrixXcd msf_matrix(const MonodromyData& d) {
    Eigen::MatrixXcd M0 = monodromy_M0(d);
    Eigen::MatrixXcd M0inv = M0.fullPivLu().inverse();
    const int N = d.N;
    int half_up = (N + 1) / 2;  // ceil(N/2)
    Eigen::MatrixXcd M(N, N);
    for (int k = 1; k <= N; ++k) {
        int p = half_up - k;
        Eigen::MatrixXcd Mp = Eigen::MatrixXcd::Identity(N, N);
        for (int i = 0; i < std::abs(p); ++i) Mp = Mp * (p > 0 ? M0 : M0inv);
        for (int n = 0; n < N; ++n) M(n, k - 1) = Mp(n, 0);
    }
    return M;
}

Eigen::MatrixXcd connection_E(const MonodromyData& d) {
    if (static_cast<int>(d.eta.size()) != d.N)
        throw config_error("connection_E: eta required");
    Eigen::MatrixXcd V = vandermonde_V(d);
    Eigen::MatrixXcd M = msf_matrix(d);
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(d.N, d.N);
    for (int j = 0; j < d.N; ++j)
        T(j, j) = std::exp(2.0 * pi * iu * d.eta[j]);
    Eigen::FullPivLU<Eigen::MatrixXcd> luV(V), luM(M);
    if (!luV.isInvertible() || !luM.isInvertible())
        throw numeric_error("connection_E: singular change of basis");
    return M * luV.solve(T * V) * luM.inverse();
}

QuantizedScore is_quantized_E(const Eigen::MatrixXcd& E, double tol) {
    cplx mean = E.trace() / static_cast<double>(E.rows());
    if (std::abs(mean) < 1e-14)
        throw numeric_error("is_quantized_E: zero-trace input");
    Eigen::MatrixXcd D =
        E - mean * Eigen::MatrixXcd::Identity(E.rows(), E.cols());
    QuantizedScore out;
    out.score = D.norm() / std::abs(mean);
    out.quantized = out.score < tol;
    return out;
}

}  // namespace toda
