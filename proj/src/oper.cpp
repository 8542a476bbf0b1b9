#include "toda/oper.hpp"

#include <algorithm>
#include <cmath>

#include "toda/special.hpp"

namespace toda {

OperInstance OperInstance::from_spectral(const SpectralData& s) {
    OperInstance inst;
    inst.N = s.N;
    inst.hbar = s.hbar;
    inst.Lambda = s.Lambda;
    inst.charges = s.charges;
    return inst;
}

cplx OperInstance::t(cplx lambda) const {
    // lambda^N + E_2 lambda^{N-2} + ... + E_N  (E_1 = 0)
    cplx out = std::pow(lambda, N);
    for (int k = 2; k <= N; ++k) out += charges[k - 2] * std::pow(lambda, N - k);
    return out;
}

Eigen::MatrixXcd OperInstance::companion(cplx z) const {
    // D phi_k = phi_{k+1} (k < N-1),
    // D phi_{N-1} = -E_2 phi_{N-2} - ... - E_{N-1} phi_1
    //               + (Lambda^N (i^N z + i^-N/z) - E_N) phi_0
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    for (int k = 0; k + 1 < N; ++k) A(k, k + 1) = 1.0;
    cplx lN = std::pow(cplx(Lambda), N);
    cplx iN = std::pow(iu, N);
    A(N - 1, 0) = lN * (iN * z + 1.0 / (iN * z)) - charges[N - 2];
    for (int k = 1; k + 1 < N; ++k) A(N - 1, k) = -charges[N - 2 - k];
    return A;
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double dp_b5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                             -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double dp_b4[7] = {5179.0 / 57600,  0.0,    7571.0 / 16695, 393.0 / 640,
                             -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

Eigen::MatrixXcd transport_circle(const OperInstance& inst, double rtol,
                                  double base_angle) {
    const int N = inst.N;
    auto rhs = [&](double th, const Eigen::MatrixXcd& Y) {
        cplx z = std::exp(iu * (base_angle + th));
        return (-(1.0 / inst.hbar) * inst.companion(z) * Y).eval();
    };
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Identity(N, N);
    double th = 0.0, hstep = 0.05;
    const double atol = rtol * 1e-2;
    int steps = 0;
    while (th < 2.0 * pi) {
        if (th + hstep > 2.0 * pi) hstep = 2.0 * pi - th;
        Eigen::MatrixXcd k[7];
        k[0] = rhs(th, Y);
        for (int s = 1; s < 7; ++s) {
            Eigen::MatrixXcd acc = Y;
            for (int j = 0; j < s; ++j) acc += hstep * dp_a[s][j] * k[j];
            k[s] = rhs(th + dp_c[s] * hstep, acc);
        }
        Eigen::MatrixXcd y5 = Y, y4 = Y;
        for (int s = 0; s < 7; ++s) {
            y5 += hstep * dp_b5[s] * k[s];
            y4 += hstep * dp_b4[s] * k[s];
        }
        double err = (y5 - y4).norm();
        double scale = atol + rtol * std::max(Y.norm(), y5.norm());
        if (err <= scale) {
            th += hstep;
            Y = y5;
        }
        double fac = 0.9 * std::pow(scale / std::max(err, 1e-300), 0.2);
        hstep *= std::clamp(fac, 0.2, 5.0);
        hstep = std::min(hstep, 0.3);
        if (++steps > 200000)
            throw numeric_error("ode_monodromy: step control failed");
    }
    return Y;
}

}  // namespace

std::vector<cplx> ode_monodromy(const OperInstance& inst, double rtol,
                                double base_angle) {
    Eigen::MatrixXcd M = transport_circle(inst, rtol, base_angle);
    Eigen::MatrixXcd M2 = transport_circle(inst, rtol * 0.1, base_angle);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> e1(M, false), e2(M2, false);
    std::vector<cplx> ev(inst.N), ev2(inst.N);
    for (int i = 0; i < inst.N; ++i) {
        ev[i] = e1.eigenvalues()(i);
        ev2[i] = e2.eigenvalues()(i);
    }
    // doubling/tightening cross-check on the eigenvalues
    for (int i = 0; i < inst.N; ++i) {
        double best = 1e300;
        for (int j = 0; j < inst.N; ++j)
            best = std::min(best, std::abs(ev[i] - ev2[j]));
        if (best > 1e-9 * std::max(1.0, std::abs(ev[i])))
            throw numeric_error("ode_monodromy: eigenvalues not step-stable");
    }
    return ev2;
}

FloquetBasis FloquetBasis::build(const SpectralData& s, const HillZeros& hz,
                                 Side side, int window_cap, int min_halfwidth) {
    if (hz.zeta.empty())
        throw config_error("FloquetBasis: proportionality constants required");
    FloquetBasis b;
    b.N = s.N;
    b.hbar = s.hbar;
    b.Lambda = s.Lambda;
    b.side = side;
    b.delta = hz.delta;
    b.tau = s.tau;
    b.sigma.resize(s.N);
    b.log_xi.resize(s.N);
    for (int j = 0; j < s.N; ++j) {
        b.sigma[j] = iu * hz.delta[j] / s.hbar;
        b.log_xi[j] =
            log_q_plus_tau(hz.delta[j], s) - log_q_minus_tau(hz.delta[j], s);
    }

    // hybrid lattice evaluation: each tail uses the representation that
    // decays there generically, glued by xi_j (exact on the Wronskian zeros)
    auto lc_at = [&](int j, int n) {
        cplx lam = hz.delta[j] - iu * s.hbar * static_cast<double>(n);
        if (side == Side::zero)
            return n <= 0 ? log_q_plus_tau(lam, s)
                          : b.log_xi[j] + log_q_minus_tau(lam, s);
        return n >= 0 ? log_q_minus_tau(lam, s)
                      : log_q_plus_tau(lam, s) - b.log_xi[j];
    };

    // grow the window until the edge coefficients are negligible.  The decay
    // is judged in the scaled variable w (w' on the zero side) where the
    // Lambda-power prefactors cancel; otherwise a small Lambda masks the
    // terms that matter after rescaling.
    double shift = static_cast<double>(s.N) * std::log(s.hbar / s.Lambda) *
                   (side == Side::infinity ? 1.0 : -1.0);
    int lo = -std::max(6, min_halfwidth), hi = std::max(6, min_halfwidth);
    std::vector<std::vector<cplx>> table;
    for (;;) {
        table.assign(s.N, {});
        double m = -1e300, edge = -1e300;
        for (int j = 0; j < s.N; ++j) {
            table[j].resize(hi - lo + 1);
            for (int n = lo; n <= hi; ++n) {
                table[j][n - lo] = lc_at(j, n);
                double scaled = table[j][n - lo].real() + shift * n;
                m = std::max(m, scaled);
                if (n == lo || n == hi) edge = std::max(edge, scaled);
            }
        }
        if (edge < m - 120.0 || (hi - lo) >= 2 * window_cap) break;
        lo -= 4;
        hi += 4;
    }
    b.n_min = lo;
    b.n_max = hi;
    b.logc = std::move(table);
    return b;
}

cplx FloquetBasis::log_coeff(int j, int n) const {
    if (n < n_min || n > n_max)
        return cplx(-1e300, 0.0);
    return logc[j][n - n_min];
}

cplx FloquetBasis::coeff(int j, int n) const {
    cplx lc = log_coeff(j, n);
    if (lc.real() < -700.0) return 0.0;
    return std::exp(lc);
}

cplx FloquetBasis::t(cplx lambda) const {
    cplx v = 1.0;
    for (cplx tk : tau) v *= lambda - tk;
    return v;
}

cplx FloquetBasis::eval_logz(int j, cplx logz) const {
    // F_j = sum_n c_{j,n} z^{sigma_j + n}
    cplx sum = 0.0;
    double maxre = -1e300;
    for (int n = n_min; n <= n_max; ++n) {
        cplx e = log_coeff(j, n) + (sigma[j] + static_cast<double>(n)) * logz;
        maxre = std::max(maxre, e.real());
    }
    if (maxre < -700.0) return 0.0;
    double e_lo = (log_coeff(j, n_min) + (sigma[j] + static_cast<double>(n_min)) * logz).real();
    double e_hi = (log_coeff(j, n_max) + (sigma[j] + static_cast<double>(n_max)) * logz).real();
    if (e_lo > maxre - 30.0 || e_hi > maxre - 30.0)
        throw numeric_error("floquet_eval: truncation window insufficient at this z");
    for (int n = n_min; n <= n_max; ++n) {
        cplx e = log_coeff(j, n) + (sigma[j] + static_cast<double>(n)) * logz;
        if (e.real() > maxre - 60.0) sum += std::exp(e - maxre);
    }
    return std::exp(cplx(maxre, 0.0)) * sum;
}

cplx FloquetBasis::eval(int j, cplx z) const { return eval_logz(j, std::log(z)); }

cplx FloquetBasis::logz_from_w(cplx w) const {
    double scale = static_cast<double>(N) * std::log(hbar / Lambda);
    // side infinity: w = (Lambda/hbar)^N z; side zero: w' = (hbar/Lambda)^N z
    return side == Side::infinity ? std::log(w) + scale : std::log(w) - scale;
}

cplx FloquetBasis::eval_w(int j, cplx w) const {
    return eval_logz(j, logz_from_w(w));
}

double FloquetBasis::recurrence_residual(int j, int n) const {
    // t(-i hbar (sigma_j + n)) c_n = Lambda^N (i^N c_{n-1} + i^-N c_{n+1})
    cplx lam = -iu * hbar * (sigma[j] + static_cast<double>(n));
    cplx lN = std::pow(cplx(Lambda), N);
    cplx iN = std::pow(iu, N);
    cplx lhs = t(lam) * coeff(j, n);
    cplx rhs = lN * (iN * coeff(j, n - 1) + coeff(j, n + 1) / iN);
    double scale = std::abs(lhs) + std::abs(lN * iN * coeff(j, n - 1)) +
                   std::abs(lN * coeff(j, n + 1) / iN);
    if (scale == 0.0) return 0.0;
    return std::abs(lhs - rhs) / scale;
}

double FloquetBasis::oper_residual(int j, cplx z) const {
    cplx logz = std::log(z);
    cplx lN = std::pow(cplx(Lambda), N);
    cplx iN = std::pow(iu, N);
    cplx num = 0.0;
    double scale = 0.0;
    double maxre = -1e300;
    for (int n = n_min; n <= n_max; ++n) {
        cplx e = log_coeff(j, n) + (sigma[j] + static_cast<double>(n)) * logz;
        maxre = std::max(maxre, e.real());
    }
    for (int n = n_min; n <= n_max; ++n) {
        cplx lam = -iu * hbar * (sigma[j] + static_cast<double>(n));
        cplx term = std::exp(log_coeff(j, n) +
                             (sigma[j] + static_cast<double>(n)) * logz -
                             maxre);
        cplx lhs = t(lam) * term;
        cplx rhs = lN * (iN * coeff(j, n - 1) + coeff(j, n + 1) / iN) *
                   std::exp((sigma[j] + static_cast<double>(n)) * logz - maxre);
        num += lhs - rhs;
        scale += std::abs(lhs);
    }
    return std::abs(num) / scale;
}

namespace {

std::vector<cplx> chi_weights(const FloquetBasis& b) {
    // -(i^N / pi) e^{-N pi i sigma_l} / prod_{j != l} sin(pi(sigma_l - sigma_j))
    std::vector<cplx> w(b.N);
    cplx pref = -std::pow(iu, b.N) / pi;
    for (int l = 0; l < b.N; ++l) {
        cplx den = std::exp(static_cast<double>(b.N) * pi * iu * b.sigma[l]);
        for (int j = 0; j < b.N; ++j) {
            if (j == l) continue;
            cplx sn = std::sin(pi * (b.sigma[l] - b.sigma[j]));
            if (std::abs(sn) < 1e-8)
                throw numeric_error("chi_max_decay: sigma collision");
            den *= sn;
        }
        w[l] = pref / den;
    }
    return w;
}

}  // namespace

cplx chi_max_decay(const FloquetBasis& basis, cplx z) {
    std::vector<cplx> w = chi_weights(basis);
    cplx sum = 0.0;
    for (int l = 0; l < basis.N; ++l) sum += w[l] * basis.eval(l, z);
    return sum;
}

cplx chi_max_decay_w(const FloquetBasis& basis, cplx w) {
    std::vector<cplx> wt = chi_weights(basis);
    cplx sum = 0.0;
    for (int l = 0; l < basis.N; ++l) sum += wt[l] * basis.eval_w(l, w);
    return sum;
}

cplx hypergeometric_0FN(std::span<const cplx> beta, cplx w) {
    const int q = static_cast<int>(beta.size());
    for (cplx b : beta) (void)b;
    double awq = std::pow(std::abs(w), 1.0 / (q + 1));
    if ((q + 1) * awq > 600.0)
        throw numeric_error("hypergeometric_0FN: |w| beyond series practicality");

    // series sum_n w^n / (n! prod Gamma(beta_k + n)), each term in log space
    int nmax = static_cast<int>(20 + 4 * (q + 1) * awq);
    cplx sum = 0.0;
    double max_lre = -1e300;
    std::vector<cplx> lterms;
    lterms.reserve(nmax + 1);
    cplx logw = (w == cplx(0.0)) ? cplx(-1e300, 0.0) : std::log(w);
    for (int n = 0; n <= nmax; ++n) {
        bool zero_term = false;
        cplx lt = static_cast<double>(n) * logw - log_gamma(cplx(n + 1.0));
        for (cplx b : beta) {
            cplx arg = b + static_cast<double>(n);
            double r = std::round(arg.real());
            if (r <= 0.0 && std::abs(arg - r) < 1e-14) {
                zero_term = true;  // 1/Gamma(pole) = 0
                break;
            }
            lt -= log_gamma(arg);
        }
        lterms.push_back(zero_term ? cplx(-1e300, 0.0) : lt);
        if (!zero_term) max_lre = std::max(max_lre, lt.real());
    }
    if (max_lre < -1e299) return 0.0;
    for (cplx lt : lterms)
        if (lt.real() > max_lre - 45.0) sum += std::exp(lt - max_lre);
    return std::exp(cplx(max_lre, 0.0)) * sum;
}

cplx meijer_maximal(std::span<const cplx> b, cplx w) {
    const int N = static_cast<int>(b.size());
    if (N == 1) return std::exp(-w) * std::pow(w, b[0]);
    for (int j = 0; j < N; ++j)
        for (int k = j + 1; k < N; ++k) {
            cplx d = b[j] - b[k];
            if (std::abs(d - std::round(d.real())) < 1e-9 && std::abs(d.imag()) < 1e-9)
                throw numeric_error("meijer_maximal: parameters collide mod 1");
        }
    cplx sum = 0.0;
    cplx sgn = std::pow(cplx(-1.0), N);
    for (int j = 0; j < N; ++j) {
        std::vector<cplx> beta;
        cplx pref = std::pow(w, b[j]);
        for (int k = 0; k < N; ++k) {
            if (k == j) continue;
            beta.push_back(1.0 + b[j] - b[k]);
            pref *= pi / std::sin(pi * (b[k] - b[j]));
        }
        sum += pref * hypergeometric_0FN(beta, sgn * w);
    }
    return sum;
}

cplx meijer_g_n0_mb(std::span<const cplx> b, cplx w) {
    const int N = static_cast<int>(b.size());
    if (w == cplx(0.0)) throw config_error("meijer_g_n0_mb: w != 0 required");
    double minre = 1e300;
    for (cplx bk : b) minre = std::min(minre, bk.real());
    double c = std::min(minre - 0.5, -std::pow(std::abs(w), 1.0 / N));
    cplx logw = std::log(w);

    auto integrand = [&](double t2) {
        cplx s(c, t2);
        cplx lg = s * logw;
        for (cplx bk : b) lg += log_gamma(bk - s);
        return std::exp(lg);
    };

    // trapezoid with adaptive range and step halving
    double dt = 0.25 / (1.0 + std::abs(logw));
    auto sweep = [&](double step) {
        cplx acc = integrand(0.0);
        double peak = std::abs(acc);
        for (int dir : {+1, -1}) {
            int i = 1;
            for (;; ++i) {
                cplx v = integrand(dir * step * i);
                acc += v;
                peak = std::max(peak, std::abs(v));
                if (std::abs(v) < 1e-18 * peak && step * i > 5.0) break;
                if (step * i > 4000.0)
                    throw numeric_error("meijer_g_n0_mb: contour range exhausted");
            }
        }
        return acc * step / (2.0 * pi);
    };
    cplx prev = sweep(dt);
    for (int it = 0; it < 12; ++it) {
        dt *= 0.5;
        cplx next = sweep(dt);
        if (std::abs(next - prev) < 1e-13 * std::abs(next)) return next;
        prev = next;
    }
    return prev;
}

RayReport floquet_asymptotics_check(const FloquetBasis& basis, int j,
                                    double direction, double w_lo, double w_hi,
                                    int npts) {
    const int N = basis.N;
    if (std::abs(direction) >= pi / N)
        throw config_error("floquet_asymptotics_check: ray outside |arg w| < pi/N");
    const bool at_zero = basis.side == FloquetBasis::Side::zero;
    RayReport rep;
    cplx sj = basis.sigma[j];
    cplx amp = std::exp(static_cast<double>(N) * pi * iu * sj) *
               std::sqrt(std::pow(2.0 * pi, 1 - N) / N);

    auto leading_even = [&](cplx w) {
        // infinity: e^{N w^{1/N}} w^{-(N-1)/(2N)}; zero: the w' -> 0 mirror
        cplx v = at_zero ? 1.0 / w : w;
        return amp * std::exp(static_cast<double>(N) * std::pow(v, 1.0 / N)) *
               std::pow(v, -(N - 1) / (2.0 * N));
    };
    auto two_term_odd = [&](cplx w) {
        cplx v = at_zero ? 1.0 / w : w;
        cplx up = std::exp(iu * pi) * v, dn = std::exp(-iu * pi) * v;
        auto piece = [&](cplx vv) {
            return std::exp(static_cast<double>(N) * std::pow(vv, 1.0 / N)) *
                   std::pow(vv, -(N - 1) / (2.0 * N));
        };
        return amp * (std::exp(-iu * pi * sj) * piece(up) +
                      std::exp(iu * pi * sj) * piece(dn));
    };
    auto one_term_odd = [&](cplx w) {
        cplx v = at_zero ? 1.0 / w : w;
        cplx up = std::exp(iu * pi) * v, dn = std::exp(-iu * pi) * v;
        auto piece = [&](cplx vv) {
            return std::exp(static_cast<double>(N) * std::pow(vv, 1.0 / N)) *
                   std::pow(vv, -(N - 1) / (2.0 * N));
        };
        cplx a = std::exp(-iu * pi * sj) * piece(up);
        cplx bb = std::exp(iu * pi * sj) * piece(dn);
        return amp * (std::abs(a) > std::abs(bb) ? a : bb);
    };

    double r1 = 0.0, r2 = 0.0;
    for (int i = 0; i < npts; ++i) {
        double r = w_lo * std::pow(w_hi / w_lo, static_cast<double>(i) / (npts - 1));
        cplx w = r * std::exp(iu * direction);
        if (at_zero) w = 1.0 / w;  // sample w' = 1/r e^{-i dir} -> small w'
        cplx F = basis.eval_w(j, w);
        rep.w.push_back(r);
        if (N % 2 == 0) {
            rep.ratio_dev.push_back(std::abs(F / leading_even(w) - 1.0));
        } else {
            r1 += std::abs(F - one_term_odd(w));
            r2 += std::abs(F - two_term_odd(w));
            rep.ratio_dev.push_back(std::abs(F / two_term_odd(w) - 1.0));
        }
    }
    if (N % 2 == 0) {
        // log-log slope of the deviation; expect about -1/N
        double x0 = std::log(rep.w.front()), x1 = std::log(rep.w.back());
        double y0 = std::log(rep.ratio_dev.front()), y1 = std::log(rep.ratio_dev.back());
        rep.slope = (y1 - y0) / (x1 - x0);
        bool decreasing = true;
        for (std::size_t i = 1; i < rep.ratio_dev.size(); ++i)
            if (rep.ratio_dev[i] > rep.ratio_dev[i - 1] * 1.1) decreasing = false;
        rep.pass = decreasing && std::abs(rep.slope + 1.0 / N) < 0.5;
    } else {
        rep.resid_ratio = r1 / std::max(r2, 1e-300);
        rep.pass = rep.resid_ratio > 10.0;
    }
    return rep;
}

SpreadReport antiholomorphic_symmetry_check(const FloquetBasis& binf,
                                            double z_lo, double z_hi,
                                            int npts) {
    SpreadReport rep;
    for (int i = 0; i < npts; ++i) {
        double z = z_lo * std::pow(z_hi / z_lo, static_cast<double>(i) / (npts - 1));
        cplx a = std::conj(chi_max_decay(binf, cplx(1.0 / z, 0.0)));
        cplx bb = chi_max_decay(binf, cplx(z, 0.0));
        rep.ratios.push_back(a / bb);
    }
    cplx mean = 0.0;
    for (cplx r : rep.ratios) mean += r;
    mean /= static_cast<double>(rep.ratios.size());
    for (cplx r : rep.ratios)
        rep.spread = std::max(rep.spread, std::abs(r - mean) / std::abs(mean));
    return rep;
}

FourierReport fourier_duality_check(const SpectrumRecord& rec,
                                    const NlieSolution& sol,
                                    const FloquetBasis& b0,
                                    bool subtract_zeta) {
    const NlieParams& p = sol.params;
    const double hb = p.hbar;
    const double Lq = 12.0 * hb;
    const double hq = 0.05 * hb;
    auto nq = static_cast<std::size_t>(std::llround(2.0 * Lq / hq)) + 1;

    // q(lambda) on the real axis
    std::vector<cplx> qs(nq);
    std::vector<double> lam(nq);
    for (std::size_t i = 0; i < nq; ++i) {
        lam[i] = -Lq + static_cast<double>(i) * hq;
        cplx z(lam[i], 0.0);
        cplx num = q_plus_delta(z, sol);
        if (subtract_zeta) num -= rec.zeta * q_minus_delta(z, sol);
        cplx lden = 0.0;
        for (cplx d : p.delta)
            lden += -pi * z / hb + log_sinh(pi * (z - d) / hb);
        qs[i] = num * std::exp(-lden);
    }

    auto transform = [&](double x) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < nq; ++i) {
            double wgt = (i == 0 || i + 1 == nq) ? 0.5 : 1.0;
            acc += wgt * qs[i] * std::exp(iu * x * lam[i] / hb);
        }
        return -acc * hq / (2.0 * pi * hb);
    };

    FourierReport rep;

    // value comparison at 8 sample points, normalized at x = 0
    cplx t0 = transform(0.0);
    cplx c0 = chi_max_decay(b0, cplx(1.0, 0.0));
    rep.absolute_ratio = t0 / c0;
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        double x = -1.0 + 2.0 * static_cast<double>(i) / 7.0;
        cplx lhs = transform(x) / t0;
        cplx rhs = chi_max_decay(b0, std::exp(cplx(x, 0.0))) / c0;
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    rep.max_rel_deviation = worst;

    // finite-difference residual of the oper equation in x applied to the
    // transform itself (valid discrimination even without chi)
    const double hx = 0.02;
    const int N = p.N;
    std::vector<cplx> window(7);
    double x0 = 0.3;
    for (int i = 0; i < 7; ++i) window[i] = transform(x0 + (i - 3) * hx);
    // derivatives at x0 from the 7-point stencil
    auto deriv = [&](int order) {
        // central stencils, h^4 accuracy for order <= 3
        switch (order) {
            case 0:
                return window[3];
            case 1:
                return (window[0] - 9.0 * window[1] + 45.0 * window[2] -
                        45.0 * window[4] + 9.0 * window[5] - window[6]) /
                       (-60.0 * hx);
            case 2:
                return (2.0 * window[0] - 27.0 * window[1] + 270.0 * window[2] -
                        490.0 * window[3] + 270.0 * window[4] -
                        27.0 * window[5] + 2.0 * window[6]) /
                       (180.0 * hx * hx);
            case 3:
                return (window[0] - 8.0 * window[1] + 13.0 * window[2] -
                        13.0 * window[4] + 8.0 * window[5] - window[6]) /
                       (-8.0 * hx * hx * hx);
            default:
                throw config_error("fourier_duality_check: N > 3 stencil not provided");
        }
    };
    // t(-i hbar d/dx) chi = Lambda^N (i^N e^x + i^-N e^-x) chi
    cplx lhs = std::pow(-iu * hb, N) * deriv(N);
    for (int k = 2; k <= N; ++k)
        lhs += rec.energies[k - 2] * std::pow(-iu * hb, N - k) * deriv(N - k);
    cplx lN = std::pow(cplx(p.Lambda), N), iN = std::pow(iu, N);
    cplx rhs = lN * (iN * std::exp(x0) + std::exp(-x0) / iN) * deriv(0);
    double scale = std::abs(std::pow(hb, N) * deriv(N)) + std::abs(rhs) +
                   std::abs(deriv(0));
    rep.oper_residual = std::abs(lhs - rhs) / scale;
    return rep;
}

}  // namespace toda
