#include "toda/quantize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "toda/newton.hpp"
#include "toda/special.hpp"

namespace toda {

std::vector<double> QuantizationProblem::targets() const {
    std::vector<double> n(N);
    double mean = 0.0;
    for (int k = 0; k < N; ++k) {
        n[k] = modes[k] + (N - 1 - k);
        mean += n[k];
    }
    mean /= N;
    for (double& v : n) v -= mean;
    return n;
}

void QuantizationProblem::validate() const {
    if (N < 2 || static_cast<int>(modes.size()) != N)
        throw config_error("QuantizationProblem: need N >= 2 modes");
    if (hbar <= 0 || Lambda <= 0)
        throw config_error("QuantizationProblem: hbar > 0, Lambda > 0");
    // internal filling must be strictly decreasing, otherwise two deltas
    // collide and the level is degenerate
    for (int k = 0; k + 1 < N; ++k)
        if (modes[k] + (N - 1 - k) <= modes[k + 1] + (N - 2 - k))
            throw config_error("QuantizationProblem: degenerate mode labels");
}

NlieParams SpectrumRecord::params() const {
    NlieParams p;
    p.N = N;
    p.hbar = hbar;
    p.Lambda = Lambda;
    p.delta = delta_star;
    p.apply_defaults();
    return p;
}

std::vector<cplx> closed_form_log_zeta(int N, double hbar, double Lambda,
                                       const std::vector<cplx>& delta) {
    std::vector<cplx> out(N);
    for (int k = 0; k < N; ++k) {
        cplx val = 2.0 * static_cast<double>(N) * iu / hbar * delta[k] *
                   (std::log(hbar) - std::log(Lambda));
        for (int j = 0; j < N; ++j) {
            if (j == k) continue;
            cplx dd = (delta[k] - delta[j]) / hbar;
            val += log_gamma(1.0 + iu * dd) - log_gamma(1.0 - iu * dd);
        }
        out[k] = val;
    }
    return out;
}

namespace {

std::vector<cplx> quantization_residual(const std::vector<cplx>& lz,
                                        const std::vector<cplx>& delta,
                                        const std::vector<double>& t) {
    int N = static_cast<int>(delta.size());
    std::vector<cplx> F(N);
    for (int k = 0; k + 1 < N; ++k)
        F[k] = lz[k] - 2.0 * pi * iu * t[k];
    cplx sum = 0.0;
    for (cplx d : delta) sum += d;
    F[N - 1] = sum;
    return F;
}

std::vector<cplx> seed_guess(const QuantizationProblem& qp) {
    std::vector<double> t = qp.targets();
    double lg = std::log(qp.hbar / qp.Lambda);
    if (lg < 0.5) lg = 0.5;
    std::vector<cplx> d(qp.N);
    for (int k = 0; k < qp.N; ++k)
        d[k] = pi * qp.hbar * t[k] / (qp.N * lg);
    return d;
}

}  // namespace

std::vector<cplx> solve_closed_form(const QuantizationProblem& qp) {
    qp.validate();
    std::vector<double> t = qp.targets();
    auto F = [&](const std::vector<cplx>& delta) {
        return quantization_residual(
            closed_form_log_zeta(qp.N, qp.hbar, qp.Lambda, delta), delta, t);
    };
    NewtonOptions opt;
    opt.tol = 1e-12;
    opt.max_iter = 80;
    std::vector<cplx> x0 = qp.seed.empty() ? seed_guess(qp) : qp.seed;
    return newton_system_checked(F, x0, opt);
}

SpectrumRecord quantize(const QuantizationProblem& qp) {
    qp.validate();
    std::vector<double> t = qp.targets();

    auto make_params = [&](const std::vector<cplx>& delta, double Lambda) {
        NlieParams p;
        p.N = qp.N;
        p.hbar = qp.hbar;
        p.Lambda = Lambda;
        p.delta = delta;
        p.apply_defaults();
        return p;
    };

    // damped Newton on {log zeta_k - 2 pi i t_k (k < N), sum delta}; one NLIE
    // solve per residual evaluation, forward-difference Jacobian, branch
    // continuity of log zeta monitored across accepted iterates
    auto newton_full = [&](std::vector<cplx> x, double Lambda) {
        auto eval = [&](const std::vector<cplx>& d, std::vector<cplx>& lz) {
            NlieSolution sol = solve_nlie(make_params(d, Lambda));
            lz = log_zeta_j(sol);
            return quantization_residual(lz, d, t);
        };
        auto norm_inf = [](const std::vector<cplx>& v) {
            double m = 0.0;
            for (cplx c : v) m = std::max(m, std::abs(c));
            return m;
        };
        std::vector<cplx> lz, F = eval(x, lz);
        double res = norm_inf(F);
        for (int it = 0; it < qp.max_iter; ++it) {
            if (res < qp.tol) return x;
            Eigen::MatrixXcd J(qp.N, qp.N);
            for (int j = 0; j < qp.N; ++j) {
                double eps = 1e-6 * std::max(1.0, std::abs(x[j]));
                std::vector<cplx> xp = x;
                xp[j] += eps;
                std::vector<cplx> lzp, Fp = eval(xp, lzp);
                for (int i = 0; i < qp.N; ++i) J(i, j) = (Fp[i] - F[i]) / eps;
            }
            Eigen::VectorXcd rhs(qp.N);
            for (int i = 0; i < qp.N; ++i) rhs(i) = -F[i];
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
            if (!lu.isInvertible())
                throw numeric_error("quantize: singular Jacobian");
            Eigen::VectorXcd dx = lu.solve(rhs);

            double alpha = 1.0;
            for (int half = 0;; ++half) {
                std::vector<cplx> xt = x;
                for (int i = 0; i < qp.N; ++i) xt[i] += alpha * dx(i);
                std::vector<cplx> lzt, Ft;
                bool ok = true;
                try {
                    Ft = eval(xt, lzt);
                } catch (const numeric_error&) {
                    ok = false;
                } catch (const config_error&) {
                    ok = false;  // step left the validity strip
                }
                if (ok) {
                    double rt = norm_inf(Ft);
                    if (rt < res || half >= 5) {
                        double jump = 0.0;
                        for (int k = 0; k < qp.N; ++k)
                            jump = std::max(jump, std::abs((lzt[k] - lz[k]).imag()));
                        if (jump > pi)
                            throw numeric_error(
                                "quantize: branch jump in log zeta between iterates");
                        x = std::move(xt);
                        F = std::move(Ft);
                        lz = std::move(lzt);
                        res = rt;
                        break;
                    }
                }
                if (half >= 8)
                    throw numeric_error("quantize: line search failed");
                alpha *= 0.5;
            }
        }
        if (res < qp.tol) return x;
        throw numeric_error("quantize: Newton did not converge, residual " +
                            std::to_string(res));
    };

    std::vector<cplx> delta;
    try {
        delta = newton_full(qp.seed.empty() ? solve_closed_form(qp) : qp.seed,
                            qp.Lambda);
    } catch (const numeric_error&) {
        // continuation in Lambda from the closed-form regime, step 0.05
        double L0 = std::min(0.05, qp.Lambda / 2.0);
        QuantizationProblem q0 = qp;
        q0.Lambda = L0;
        delta = solve_closed_form(q0);
        for (double L = L0;; L = std::min(L + 0.05, qp.Lambda)) {
            delta = newton_full(delta, L);
            if (L >= qp.Lambda - 1e-14) break;
        }
    }

    SpectrumRecord rec;
    rec.N = qp.N;
    rec.hbar = qp.hbar;
    rec.Lambda = qp.Lambda;
    rec.modes = qp.modes;
    rec.delta_star = delta;

    NlieSolution sol = solve_nlie(make_params(delta, qp.Lambda));
    rec.nlie_residual = sol.residual;
    std::vector<cplx> F = quantization_residual(log_zeta_j(sol), delta, t);
    rec.newton_residual = 0.0;
    for (cplx f : F) rec.newton_residual = std::max(rec.newton_residual, std::abs(f));

    rec.zetas = zeta_j(sol);
    cplx mean = 0.0;
    for (cplx z : rec.zetas) mean += z;
    mean /= static_cast<double>(qp.N);
    rec.zeta = mean;
    for (cplx z : rec.zetas)
        rec.zeta_spread = std::max(rec.zeta_spread, std::abs(z - mean) / std::abs(mean));
    rec.zeta_pow_n_dev = std::abs(std::pow(mean, qp.N) - 1.0);

    SpectralData s = tau_from_delta(sol);
    rec.energies = s.charges;
    return rec;
}

namespace {

// number of eigenvalues of the symmetric tridiagonal (diag a, offdiag b)
// strictly below x, by the Sturm pivot count
int sturm_count(const std::vector<double>& a, double b, double x) {
    int count = 0;
    double q = a[0] - x;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (q == 0.0) q = 1e-300;
        q = a[i] - x - b * b / q;
        if (q < 0) ++count;
    }
    return count;
}

double fd_eigenvalue(double hbar, double Lambda, int level, double Lbox, double dx) {
    auto n = static_cast<std::size_t>(std::ceil(2.0 * Lbox / dx)) + 1;
    double b = -hbar * hbar / (dx * dx);
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = -Lbox + static_cast<double>(i) * dx;
        a[i] = 2.0 * hbar * hbar / (dx * dx) + 2.0 * Lambda * Lambda * std::cosh(x);
    }
    double lo = 0.0, hi = 2.0 * Lambda * Lambda * std::cosh(Lbox);
    // bisection on the Sturm count
    while (sturm_count(a, b, hi) < level + 1) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (sturm_count(a, b, mid) >= level + 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double oracle_spectrum_n2(double hbar, double Lambda, int level) {
    if (Lambda < 1e-3)
        throw config_error("oracle_spectrum_n2: Lambda below the 1e-3 numerical-domain floor");
    if (level < 0) throw config_error("oracle_spectrum_n2: level >= 0");

    // rough scale of the eigenvalue to size the box
    double u_guess = 2.0 * Lambda * Lambda + hbar * Lambda * (2 * level + 1);
    double Lbox = std::max(10.0, 4.0 * std::acosh(std::max(1.0, u_guess / (2.0 * Lambda * Lambda))) + 4.0);

    double prev = 0.0;
    bool have_prev = false;
    for (int pass = 0; pass < 6; ++pass, Lbox *= 1.5) {
        // Richardson in the mesh at fixed box
        double dx = 0.02;
        double e1 = fd_eigenvalue(hbar, Lambda, level, Lbox, dx);
        double extrap = e1;
        for (int halvings = 0; halvings < 5; ++halvings) {
            dx *= 0.5;
            double e2 = fd_eigenvalue(hbar, Lambda, level, Lbox, dx);
            double r = (4.0 * e2 - e1) / 3.0;
            if (std::abs(r - extrap) < 1e-10 * std::max(1.0, std::abs(r)) && halvings > 0) {
                extrap = r;
                break;
            }
            extrap = r;
            e1 = e2;
        }
        if (have_prev && std::abs(extrap - prev) < 1e-9 * std::max(1.0, std::abs(extrap)))
            return extrap;
        prev = extrap;
        have_prev = true;
    }
    throw numeric_error("oracle_spectrum_n2: eigenvalue did not stabilize");
}

cplx build_q(cplx lambda, const SpectrumRecord& rec, const NlieSolution& sol) {
    const NlieParams& p = sol.params;
    auto log_den = [&](cplx z) {
        cplx ld = 0.0;
        for (cplx d : p.delta)
            ld += -pi * z / p.hbar + log_sinh(pi * (z - d) / p.hbar);
        return ld;
    };
    auto value = [&](cplx z) {
        cplx num = q_plus_delta(z, sol) - rec.zeta * q_minus_delta(z, sol);
        return num * std::exp(-log_den(z));
    };
    // denominator zeros on the lattice delta_j + i hbar Z
    double dist = 1e300;
    for (cplx d : p.delta) {
        cplx nc = (lambda - d) / (iu * p.hbar);
        double n = std::round(nc.real());
        dist = std::min(dist, std::abs(lambda - d - iu * p.hbar * n));
    }
    if (dist > 1e-4 * p.hbar) return value(lambda);
    // limit formula near a pole of the denominator: the numerator cancels
    // there at a quantized point; verify and average over a circle
    cplx num = q_plus_delta(lambda, sol) - rec.zeta * q_minus_delta(lambda, sol);
    double scale = std::abs(q_plus_delta(lambda, sol)) +
                   std::abs(rec.zeta * q_minus_delta(lambda, sol));
    if (std::abs(num) > 1e-5 * scale)
        throw numeric_error("build_q: residue does not cancel (input not quantized)");
    return analytic_circle_mean(value, lambda, 0.02 * p.hbar);
}

}  // namespace toda
