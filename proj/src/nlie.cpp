#include "toda/nlie.hpp"

#include <algorithm>
#include <cmath>

#include "toda/poly.hpp"
#include "toda/quad.hpp"
#include "toda/special.hpp"

namespace toda {

namespace {

constexpr double kContourGuard = 1e-6;

double max_abs_delta(const std::vector<cplx>& delta) {
    double m = 0.0;
    for (cplx d : delta) m = std::max(m, std::abs(d));
    return m;
}

// complex log(1+X) from logX, accurate for very negative Re logX
cplx log1p_from_log(cplx lx) {
    if (lx.real() < -700.0) return 0.0;
    cplx X = std::exp(lx);
    if (std::abs(X) < 1e-4) return X * (1.0 - X * (0.5 - X / 3.0));
    cplx onepx = 1.0 + X;
    if (onepx.real() <= 0.0 && std::abs(onepx.imag()) < 1e-12 * std::abs(X))
        throw numeric_error("nlie: 1 + X crossed the negative real axis");
    return std::log(onepx);
}

}  // namespace

void NlieParams::apply_defaults() {
    if (M <= 0.0) M = 40.0 * std::max({1.0, max_abs_delta(delta), hbar});
    if (h <= 0.0) h = hbar / 20.0;
    // keep the grid exactly symmetric
    auto n = static_cast<std::size_t>(std::llround(M / h));
    M = static_cast<double>(n) * h;
}

void NlieParams::validate() const {
    if (N < 2 || static_cast<int>(delta.size()) != N)
        throw config_error("NlieParams: need N >= 2 deltas");
    if (hbar <= 0 || Lambda < 0) throw config_error("NlieParams: hbar > 0, Lambda >= 0");
    if (tol <= 0) throw config_error("NlieParams: tol > 0");
    for (cplx d : delta)
        if (std::abs(d.imag()) >= hbar / 2.0)
            throw config_error("NlieParams: |Im delta_k| < hbar/2 required");
}

cplx theta_poly(cplx mu, const NlieParams& p) {
    cplx v = 1.0;
    for (cplx d : p.delta) v *= mu - d;
    return v;
}

cplx theta(cplx mu, const NlieParams& p) {
    cplx ih2 = iu * p.hbar / 2.0;
    return std::pow(cplx(p.Lambda), -2 * p.N) * theta_poly(mu - ih2, p) *
           theta_poly(mu + ih2, p);
}

cplx log_theta(cplx mu, const NlieParams& p) {
    cplx ih2 = iu * p.hbar / 2.0;
    cplx lg = -2.0 * p.N * std::log(p.Lambda);
    lg += std::log(theta_poly(mu - ih2, p));
    lg += std::log(theta_poly(mu + ih2, p));
    return lg;
}

NlieSolution solve_nlie(const NlieParams& params) {
    NlieParams p = params;
    p.apply_defaults();
    p.validate();
    if (p.Lambda == 0.0) throw config_error("solve_nlie: Lambda must be positive");

    NlieSolution sol;
    sol.params = p;
    ComplexGrid grid = ComplexGrid::uniform(p.M, p.h);
    sol.mu = grid.points;
    const std::size_t n = sol.mu.size();

    std::vector<cplx> ltheta(n);
    for (std::size_t i = 0; i < n; ++i) ltheta[i] = log_theta(sol.mu[i], p);

    // Poisson kernel weights, Toeplitz in the index distance
    std::vector<double> ker(n);
    for (std::size_t d = 0; d < n; ++d) {
        double x = static_cast<double>(d) * p.h;
        ker[d] = (p.hbar / pi) / (x * x + p.hbar * p.hbar);
    }

    auto convolve = [&](const std::vector<cplx>& L, std::vector<cplx>& out) {
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t d = i > j ? i - j : j - i;
                double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
                acc += ker[d] * w * L[j];
            }
            acc *= p.h;
            // kernel ~ mu^-2 on top of L ~ mu^-2N beyond the edges
            acc += (ker[i] * L[0] + ker[n - 1 - i] * L[n - 1]) * p.M /
                   static_cast<double>(2 * p.N + 1);
            out[i] = acc;
        }
    };

    std::vector<cplx> logX(n), L(n, cplx(0.0)), conv(n), next(n);
    for (std::size_t i = 0; i < n; ++i) logX[i] = -ltheta[i];
    for (std::size_t i = 0; i < n; ++i) L[i] = log1p_from_log(logX[i]);

    double alpha = 1.0;
    double prev_res = 1e300;
    int stagnant = 0;
    bool converged = false;
    for (int it = 0; it < p.max_iter; ++it) {
        convolve(L, conv);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = -ltheta[i] + conv[i];
            res = std::max(res, std::abs(next[i] - logX[i]));
        }
        for (std::size_t i = 0; i < n; ++i)
            logX[i] += alpha * (next[i] - logX[i]);
        for (std::size_t i = 0; i < n; ++i) L[i] = log1p_from_log(logX[i]);
        sol.iterations = it + 1;
        sol.residual = res;
        if (res < p.tol) {
            converged = true;
            break;
        }
        if (res > 0.75 * prev_res) {
            if (++stagnant >= 3 && alpha > 0.45) {
                alpha = 0.5;  // damped fallback when plain iteration oscillates
                stagnant = 0;
            }
        } else {
            stagnant = 0;
        }
        prev_res = res;
    }
    if (!converged)
        throw numeric_error("solve_nlie: max_iter reached, residual " +
                            std::to_string(sol.residual));

    // recompute the genuine fixed-point residual at every grid point
    convolve(L, conv);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        res = std::max(res, std::abs(-ltheta[i] + conv[i] - logX[i]));
    sol.residual = res;

    sol.logX = std::move(logX);
    sol.L = std::move(L);
    return sol;
}

cplx NlieSolution::logX_at(cplx w) const {
    const NlieParams& p = params;
    if (std::abs(w.imag()) >= p.hbar - 1e-9)
        throw numeric_error("nlie: logX continuation valid only for |Im w| < hbar");
    const std::size_t n = mu.size();
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        cplx d = w - mu[j];
        cplx k = (p.hbar / pi) / (d * d + p.hbar * p.hbar);
        double wt = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        acc += k * wt * L[j];
    }
    acc *= p.h;
    cplx d0 = w - mu[0], d1 = w - mu[n - 1];
    acc += ((p.hbar / pi) / (d0 * d0 + p.hbar * p.hbar) * L[0] +
            (p.hbar / pi) / (d1 * d1 + p.hbar * p.hbar) * L[n - 1]) *
           p.M / static_cast<double>(2 * p.N + 1);
    return -log_theta(w, p) + acc;
}

cplx NlieSolution::X_at(cplx w) const { return std::exp(logX_at(w)); }

cplx NlieSolution::integrate_L(const std::vector<cplx>& weights,
                               int weight_degree) const {
    const std::size_t n = mu.size();
    if (weights.size() != n) throw config_error("integrate_L: weight size mismatch");
    int p = 2 * params.N - weight_degree;  // decay power of the integrand
    if (p < 2)
        throw numeric_error("integrate_L: integrand decays too slowly at the edges");
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double wt = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        acc += weights[j] * wt * L[j];
    }
    acc *= params.h;
    acc += (weights[0] * L[0] + weights[n - 1] * L[n - 1]) * params.M /
           static_cast<double>(p - 1);
    return acc;
}

namespace {

// raw Cauchy integral (1/(2 pi i)) int dmu L(mu)/(z0 - mu) over the grid
cplx cauchy_integral(const NlieSolution& sol, cplx z0) {
    const std::size_t n = sol.mu.size();
    std::vector<cplx> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = 1.0 / (z0 - sol.mu[j]);
    return sol.integrate_L(w, -1) / (2.0 * pi * iu);
}

}  // namespace

cplx log_v_up(cplx lambda, const NlieSolution& sol) {
    const double hb = sol.params.hbar;
    double dist = std::abs(lambda.imag() + hb / 2.0);
    if (dist < kContourGuard)
        throw numeric_error("v_up: lambda too close to the contour Im = -hbar/2");
    cplx base = -cauchy_integral(sol, lambda + iu * hb / 2.0);
    if (lambda.imag() > -hb / 2.0) return base;
    // one-band analytic continuation below the line
    if (lambda.imag() <= -1.5 * hb + 1e-9)
        throw numeric_error("v_up: continuation implemented only one band deep");
    return base + log1p_from_log(sol.logX_at(lambda + iu * hb / 2.0));
}

cplx v_up(cplx lambda, const NlieSolution& sol) {
    return std::exp(log_v_up(lambda, sol));
}

cplx log_v_down_shifted(cplx lambda, const NlieSolution& sol) {
    const double hb = sol.params.hbar;
    double dist = std::abs(lambda.imag() - hb / 2.0);
    if (dist < kContourGuard)
        throw numeric_error("v_down: lambda too close to the contour Im = +hbar/2");
    cplx base = cauchy_integral(sol, lambda - iu * hb / 2.0);
    if (lambda.imag() < hb / 2.0) return base;
    if (lambda.imag() >= 1.5 * hb - 1e-9)
        throw numeric_error("v_down: continuation implemented only one band deep");
    return base + log1p_from_log(sol.logX_at(lambda - iu * hb / 2.0));
}

cplx v_down_shifted(cplx lambda, const NlieSolution& sol) {
    return std::exp(log_v_down_shifted(lambda, sol));
}

namespace {

double gamma_pole_distance_delta(cplx lambda, const NlieParams& p, int sign) {
    double best = 1e300;
    for (cplx d : p.delta) {
        cplx a = 1.0 - static_cast<double>(sign) * iu * (lambda - d) / p.hbar;
        double r = std::round(a.real());
        if (r > 0.0) continue;
        best = std::min(best, std::abs(a - r));
    }
    return best;
}

cplx log_q_delta(cplx lambda, const NlieSolution& sol, int sign) {
    const NlieParams& p = sol.params;
    double lg = std::log(p.hbar / p.Lambda) * sign;
    cplx out = iu * static_cast<double>(p.N) * lambda / p.hbar * lg -
               static_cast<double>(p.N) * pi * lambda / p.hbar;
    out += sign > 0 ? log_v_up(lambda, sol) : log_v_down_shifted(lambda, sol);
    for (cplx d : p.delta)
        out -= log_gamma(1.0 - static_cast<double>(sign) * iu * (lambda - d) / p.hbar);
    return out;
}

cplx q_delta_value(cplx lambda, const NlieSolution& sol, int sign) {
    if (gamma_pole_distance_delta(lambda, sol.params, sign) > 1e-6)
        return std::exp(log_q_delta(lambda, sol, sign));
    double r = 0.02 * sol.params.hbar;
    return analytic_circle_mean(
        [&](cplx z) { return std::exp(log_q_delta(z, sol, sign)); }, lambda, r);
}

}  // namespace

cplx log_q_plus_delta(cplx lambda, const NlieSolution& sol) {
    return log_q_delta(lambda, sol, +1);
}

cplx log_q_minus_delta(cplx lambda, const NlieSolution& sol) {
    return log_q_delta(lambda, sol, -1);
}

cplx q_plus_delta(cplx lambda, const NlieSolution& sol) {
    return q_delta_value(lambda, sol, +1);
}

cplx q_minus_delta(cplx lambda, const NlieSolution& sol) {
    return q_delta_value(lambda, sol, -1);
}

std::vector<cplx> log_zeta_j(const NlieSolution& sol) {
    const NlieParams& p = sol.params;
    const std::size_t n = sol.mu.size();
    std::vector<cplx> out(p.N);
    for (int k = 0; k < p.N; ++k) {
        for (int j = 0; j < p.N; ++j) {
            if (j == k) continue;
            if (std::abs(p.delta[k] - p.delta[j]) < 1e-10)
                throw numeric_error("zeta_j: coincident deltas");
        }
        cplx dk = p.delta[k];
        cplx val = 2.0 * static_cast<double>(p.N) * iu / p.hbar * dk *
                   (std::log(p.hbar) - std::log(p.Lambda));
        for (int j = 0; j < p.N; ++j) {
            if (j == k) continue;
            cplx dd = (dk - p.delta[j]) / p.hbar;
            val += log_gamma(1.0 + iu * dd) - log_gamma(1.0 - iu * dd);
        }
        std::vector<cplx> w(n);
        cplx ih2 = iu * p.hbar / 2.0;
        for (std::size_t i = 0; i < n; ++i)
            w[i] = 1.0 / (dk - sol.mu[i] + ih2) + 1.0 / (dk - sol.mu[i] - ih2);
        val -= sol.integrate_L(w, -1) / (2.0 * pi * iu);
        out[k] = val;
    }
    return out;
}

std::vector<cplx> zeta_j(const NlieSolution& sol) {
    std::vector<cplx> lz = log_zeta_j(sol);
    for (cplx& z : lz) z = std::exp(z);
    return lz;
}

SpectralData tau_from_delta(const NlieSolution& sol, int kmax) {
    const NlieParams& p = sol.params;
    if (kmax <= 0) kmax = p.N;
    if (kmax < p.N) throw config_error("tau_from_delta: kmax >= N required");
    const std::size_t n = sol.mu.size();

    std::vector<cplx> psums(kmax);
    cplx ih2 = iu * p.hbar / 2.0;
    for (int k = 1; k <= kmax; ++k) {
        cplx ps = 0.0;
        for (cplx d : p.delta) ps += std::pow(d, k);
        if (k > 1) {
            std::vector<cplx> w(n);
            for (std::size_t i = 0; i < n; ++i)
                w[i] = std::pow(sol.mu[i] + ih2, k - 1) - std::pow(sol.mu[i] - ih2, k - 1);
            ps += static_cast<double>(k) * sol.integrate_L(w, k - 2) / (2.0 * pi * iu);
        }
        psums[k - 1] = ps;
    }

    std::vector<cplx> e = newton_identities(std::span<const cplx>(psums.data(), p.N));
    Polynomial t;
    t.coeff.assign(p.N + 1, cplx(0.0));
    t.coeff[p.N] = 1.0;
    for (int k = 1; k <= p.N; ++k)
        t.coeff[p.N - k] = std::pow(cplx(-1.0), k) * e[k - 1];
    std::vector<cplx> tau = poly_roots(t);

    // pair tau_j with its delta_j seed by nearest distance
    std::vector<cplx> paired(p.N);
    std::vector<bool> used(p.N, false);
    for (int j = 0; j < p.N; ++j) {
        int best = -1;
        double bd = 1e300;
        for (int i = 0; i < p.N; ++i) {
            if (used[i]) continue;
            double d = std::abs(tau[i] - p.delta[j]);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        paired[j] = tau[best];
        used[best] = true;
    }

    // remove the numerical drift in E_1 before building SpectralData: the
    // k = 1 power sum is exactly sum(delta) by the vanishing integrand
    cplx mean = 0.0;
    for (cplx t2 : paired) mean += t2;
    cplx sum_delta = 0.0;
    for (cplx d : p.delta) sum_delta += d;
    mean = (mean - sum_delta) / static_cast<double>(p.N);
    if (std::abs(mean) > 1e-9)
        throw numeric_error("tau_from_delta: power-sum drift too large");
    for (cplx& t2 : paired) t2 -= mean;

    if (std::abs(sum_delta) < 1e-12) {
        return SpectralData::from_tau(p.hbar, p.Lambda, paired);
    }
    // nonzero total momentum: shift to the zero-momentum frame is not
    // performed; construct data with the raw roots
    SpectralData s;
    s.N = p.N;
    s.hbar = p.hbar;
    s.Lambda = p.Lambda;
    s.tau = paired;
    auto esym = elementary_symmetric_all(s.tau);
    s.charges.resize(p.N - 1);
    for (int k = 2; k <= p.N; ++k)
        s.charges[k - 2] = std::pow(cplx(-1.0), k) * esym[k];
    return s;
}

cplx u_energy(const NlieSolution& sol) {
    const NlieParams& p = sol.params;
    cplx sum = 0.0;
    for (cplx d : p.delta) sum += d * d;
    std::vector<cplx> ones(sol.mu.size(), cplx(1.0));
    cplx integral = sol.integrate_L(ones, 0);
    return 0.5 * sum + iu * p.hbar * integral / (2.0 * pi * iu);
}

}  // namespace toda
