#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toda/nlie.hpp"
#include "toda/special.hpp"

using namespace toda;

namespace {

NlieParams params2(double Lambda, double d = 0.3, double hbar = 1.0) {
    NlieParams p;
    p.N = 2;
    p.hbar = hbar;
    p.Lambda = Lambda;
    p.delta = {cplx(d), cplx(-d)};
    return p;
}

}  // namespace

TEST_CASE("theta explicit product at N=2") {
    NlieParams p = params2(0.3);
    double d = 0.3;
    cplx expect = std::pow(0.3, -4.0) * std::pow(d * d + 0.25, 2.0);
    CHECK(std::abs(theta(cplx(0.0), p) - expect) < 1e-12 * std::abs(expect));

    // leading monomial as mu -> infinity
    cplx mu(200.0, 0.0);
    cplx lead = std::pow(cplx(0.3), -4.0) * std::pow(mu, 4.0);
    CHECK(std::abs(theta(mu, p) / lead - 1.0) < 1e-3);

    // conjugation symmetry for a self-conjugate delta set
    cplx m(0.37, 0.41);
    CHECK(std::abs(theta(std::conj(m), p) - std::conj(theta(m, p))) <
          1e-12 * std::abs(theta(m, p)));
}

TEST_CASE("solve_nlie tiny Lambda gives tiny X") {
    NlieParams p = params2(1e-4);
    NlieSolution sol = solve_nlie(p);
    double mx = 0.0;
    for (cplx lx : sol.logX) mx = std::max(mx, std::abs(std::exp(lx)));
    CHECK(mx < 1e-12);
}

TEST_CASE("solve_nlie first order in Lambda^2N") {
    NlieParams p = params2(0.05);
    NlieSolution sol = solve_nlie(p);
    // converged X agrees with 1/Theta to the next order Lambda^{4N}
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.mu.size(); ++i) {
        cplx x = std::exp(sol.logX[i]);
        cplx x1 = 1.0 / theta(sol.mu[i], p);
        if (std::abs(x1) < 1e-30) continue;
        worst = std::max(worst, std::abs(x - x1) / std::abs(x1));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("solve_nlie residual and edge decay") {
    NlieParams p = params2(0.3);
    p.M = 40.0;
    p.h = 0.05;
    NlieSolution sol = solve_nlie(p);
    CHECK(sol.residual < 1e-10);

    // log-log slope of |X| over the outer decade ~ -2N
    std::size_t n = sol.mu.size();
    double mu1 = 0.1 * p.M, mu2 = p.M;
    auto at = [&](double x) {
        std::size_t i = static_cast<std::size_t>((x + sol.params.M) / sol.params.h);
        i = std::min(i, n - 1);
        return std::abs(std::exp(sol.logX[i]));
    };
    double slope = (std::log(at(mu2)) - std::log(at(mu1))) / (std::log(mu2) - std::log(mu1));
    CHECK(std::abs(slope + 2.0 * p.N) < 0.5);
}

TEST_CASE("picard iteration contracts") {
    NlieParams p = params2(0.3);
    NlieSolution sol = solve_nlie(p);
    CHECK(sol.iterations < 60);
}

TEST_CASE("v factors: trivial limit and Cauchy decay") {
    // X ~ 0: v_up = v_down = 1
    NlieSolution tiny = solve_nlie(params2(1e-4));
    CHECK(std::abs(v_up(cplx(0.2, 0.0), tiny) - 1.0) < 1e-10);
    CHECK(std::abs(v_down_shifted(cplx(0.2, 0.0), tiny) - 1.0) < 1e-10);

    NlieSolution sol = solve_nlie(params2(0.3));
    double d1 = std::abs(v_up(cplx(30.0, 0.0), sol) - 1.0);
    double d2 = std::abs(v_up(cplx(60.0, 0.0), sol) - 1.0);
    CHECK(d2 < d1);
    CHECK(d1 < 0.05);
    CHECK(d2 / d1 > 0.3);  // ~ 1/lambda, not faster
    CHECK(d2 / d1 < 0.7);
}

TEST_CASE("v contour guard") {
    NlieSolution sol = solve_nlie(params2(0.3));
    CHECK_THROWS_AS(log_v_up(cplx(0.1, -0.5), sol), numeric_error);
    CHECK_THROWS_AS(log_v_down_shifted(cplx(0.1, 0.5), sol), numeric_error);
}

TEST_CASE("q_plus_delta and q_minus_delta solve the same Baxter equation") {
    NlieParams p = params2(0.3);
    NlieSolution sol = solve_nlie(p);
    SpectralData s = tau_from_delta(sol);
    cplx ih = iu * p.hbar;
    cplx lN = std::pow(cplx(p.Lambda), p.N);
    cplx iN = std::pow(iu, p.N);
    for (cplx lam : {cplx(0.15, 0.0), cplx(-0.62, 0.1), cplx(1.2, -0.05)}) {
        for (int sign : {+1, -1}) {
            cplx q0 = sign > 0 ? q_plus_delta(lam, sol) : q_minus_delta(lam, sol);
            cplx qp = sign > 0 ? q_plus_delta(lam + ih, sol) : q_minus_delta(lam + ih, sol);
            cplx qm = sign > 0 ? q_plus_delta(lam - ih, sol) : q_minus_delta(lam - ih, sol);
            cplx resid = s.t(lam) * q0 - lN * (iN * qp + qm / iN);
            double scale = std::abs(s.t(lam) * q0) + std::abs(lN * iN * qp) +
                           std::abs(lN * qm / iN);
            CHECK(std::abs(resid) / scale < 1e-8);
        }
    }
}

TEST_CASE("quantum wronskian of the delta construction vanishes at delta_j") {
    NlieParams p = params2(0.3);
    NlieSolution sol = solve_nlie(p);
    cplx ih = iu * p.hbar;
    for (cplx dj : p.delta) {
        cplx ab = q_plus_delta(dj, sol) * q_minus_delta(dj + ih, sol);
        cplx cd = q_minus_delta(dj, sol) * q_plus_delta(dj + ih, sol);
        double scale = std::abs(ab) + std::abs(cd);
        CHECK(std::abs(ab - cd) < 1e-8 * scale);
    }
}

TEST_CASE("equivalence with the Gutzwiller construction") {
    // tau -> hill zeros delta(tau) -> NLIE -> Q_delta should reproduce Q_tau
    SpectralData s = SpectralData::from_tau(1.0, 0.2, {cplx(0.7), cplx(-0.7)});
    HillZeros hz = hill_zeros(s);
    NlieParams p;
    p.N = s.N;
    p.hbar = s.hbar;
    p.Lambda = s.Lambda;
    p.delta = hz.delta;
    NlieSolution sol = solve_nlie(p);
    for (int i = 0; i < 7; ++i) {
        cplx lam(-1.3 + 0.45 * i, 0.08);
        cplx a = q_plus_delta(lam, sol);
        cplx b = q_plus_tau(lam, s);
        CHECK(std::abs(a - b) < 1e-7 * std::abs(b));
        cplx am = q_minus_delta(lam, sol);
        cplx bm = q_minus_tau(lam, s);
        CHECK(std::abs(am - bm) < 1e-7 * std::abs(bm));
    }
}

TEST_CASE("zeta: explicit limit, ratio identity") {
    // X ~ 0 limit: the integral term drops
    NlieParams p0 = params2(1e-4);
    NlieSolution tiny = solve_nlie(p0);
    auto lz = log_zeta_j(tiny);
    for (int k = 0; k < p0.N; ++k) {
        cplx expect = 2.0 * static_cast<double>(p0.N) * iu / p0.hbar * p0.delta[k] *
                      (std::log(p0.hbar) - std::log(p0.Lambda));
        for (int j = 0; j < p0.N; ++j) {
            if (j == k) continue;
            cplx dd = (p0.delta[k] - p0.delta[j]) / p0.hbar;
            expect += log_gamma(1.0 + iu * dd) - log_gamma(1.0 - iu * dd);
        }
        CHECK(std::abs(lz[k] - expect) < 1e-9);
    }

    // ratio check against Q+(delta_j)/Q-(delta_j)
    NlieParams p = params2(0.3);
    NlieSolution sol = solve_nlie(p);
    auto zs = zeta_j(sol);
    for (int k = 0; k < p.N; ++k) {
        cplx ratio = q_plus_delta(p.delta[k], sol) / q_minus_delta(p.delta[k], sol);
        CHECK(std::abs(zs[k] - ratio) < 1e-8 * std::abs(ratio));
    }
}

TEST_CASE("tau_from_delta basics and roundtrip") {
    NlieParams p = params2(0.2);
    NlieSolution sol = solve_nlie(p);
    SpectralData s = tau_from_delta(sol);
    // sum tau = sum delta = 0
    cplx st = 0.0;
    for (cplx t : s.tau) st += t;
    CHECK(std::abs(st) < 1e-12);

    // roundtrip: hill zeros of tau(delta) are the original deltas
    HillZeros hz = hill_zeros(s);
    for (int j = 0; j < p.N; ++j) {
        double best = 1e300;
        for (cplx d : hz.delta) best = std::min(best, std::abs(d - p.delta[j]));
        CHECK(best < 1e-7);
    }
}

TEST_CASE("tau_from_delta at tiny Lambda returns delta") {
    NlieParams p = params2(1e-4);
    NlieSolution sol = solve_nlie(p);
    SpectralData s = tau_from_delta(sol);
    for (int j = 0; j < p.N; ++j)
        CHECK(std::abs(s.tau[j] - p.delta[j]) < 1e-10);
}

TEST_CASE("u_energy equals -E2 and is real") {
    NlieParams p = params2(0.3);
    NlieSolution sol = solve_nlie(p);
    cplx u = u_energy(sol);
    SpectralData s = tau_from_delta(sol);
    CHECK(std::abs(u + s.charges[0]) < 1e-8);
    CHECK(std::abs(u.imag()) < 1e-10);

    NlieSolution tiny = solve_nlie(params2(1e-4));
    cplx u0 = u_energy(tiny);
    CHECK(std::abs(u0 - cplx(0.09)) < 1e-7);  // (1/2)(d^2 + d^2), d = 0.3
}

TEST_CASE("grid refinement stability of zeta and u") {
    NlieParams p = params2(0.3);
    p.M = 40.0;
    p.h = 0.05;
    NlieSolution a = solve_nlie(p);
    NlieParams ph = p;
    ph.h = 0.025;
    NlieSolution b = solve_nlie(ph);
    NlieParams pm = p;
    pm.M = 80.0;
    NlieSolution c = solve_nlie(pm);

    auto za = log_zeta_j(a), zb = log_zeta_j(b), zc = log_zeta_j(c);
    for (int k = 0; k < p.N; ++k) {
        CHECK(std::abs(za[k] - zb[k]) < 1e-8);
        CHECK(std::abs(za[k] - zc[k]) < 1e-8);
    }
    CHECK(std::abs(u_energy(a) - u_energy(b)) < 1e-8);
    CHECK(std::abs(u_energy(a) - u_energy(c)) < 1e-8);
}

TEST_CASE("analyticity of zeta in delta (Cauchy-Riemann)") {
    NlieParams p = params2(0.3);
    double eps = 1e-5;
    auto lz_at = [&](cplx shift) {
        NlieParams q = p;
        q.delta[0] += shift;
        return log_zeta_j(solve_nlie(q));
    };
    auto re_p = lz_at(cplx(eps, 0.0)), re_m = lz_at(cplx(-eps, 0.0));
    auto im_p = lz_at(cplx(0.0, eps)), im_m = lz_at(cplx(0.0, -eps));
    for (int k = 0; k < p.N; ++k) {
        cplx ddre = (re_p[k] - re_m[k]) / (2.0 * eps);
        cplx ddim = (im_p[k] - im_m[k]) / (2.0 * eps);
        // holomorphy: d/d(Im delta) = i d/d(Re delta)
        CHECK(std::abs(ddim - iu * ddre) < 1e-6);
    }
}

TEST_CASE("invalid parameters are rejected") {
    NlieParams p = params2(0.3);
    p.delta = {cplx(0.3, 0.6), cplx(-0.3, -0.6)};  // |Im| >= hbar/2
    CHECK_THROWS_AS(solve_nlie(p), config_error);
}
