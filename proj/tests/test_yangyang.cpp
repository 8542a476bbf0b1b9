#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toda/special.hpp"
#include "toda/yangyang.hpp"

using namespace toda;

namespace {

NlieParams params2(double Lambda, double d = 0.3, double hbar = 1.0) {
    NlieParams p;
    p.N = 2;
    p.hbar = hbar;
    p.Lambda = Lambda;
    p.delta = {cplx(d), cplx(-d)};
    p.apply_defaults();
    return p;
}

}  // namespace

TEST_CASE("y_pert at delta = 0 vanishes") {
    NlieParams p;
    p.N = 2;
    p.hbar = 1.0;
    p.Lambda = 0.3;
    p.delta = {cplx(0.0), cplx(0.0)};
    CHECK(std::abs(y_pert(p)) < 1e-14);
}

TEST_CASE("y_pert is permutation symmetric") {
    NlieParams p;
    p.N = 3;
    p.hbar = 1.0;
    p.Lambda = 0.2;
    p.delta = {cplx(0.4, 0.05), cplx(-0.1, -0.05), cplx(-0.3, 0.0)};
    cplx a = y_pert(p);
    std::swap(p.delta[0], p.delta[2]);
    cplx b = y_pert(p);
    std::swap(p.delta[1], p.delta[2]);
    cplx c = y_pert(p);
    CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
    CHECK(std::abs(a - c) < 1e-12 * std::max(1.0, std::abs(a)));
}

TEST_CASE("y_pert gradient matches the explicit part of log zeta") {
    NlieParams p = params2(0.3);
    double eps = 1e-5;
    for (int k = 0; k < p.N; ++k) {
        NlieParams pp = p, pm = p;
        pp.delta[k] += eps;
        pm.delta[k] -= eps;
        cplx fd = (y_pert(pp) - y_pert(pm)) / (2.0 * eps);
        cplx expect = 2.0 * static_cast<double>(p.N) * iu / p.hbar * p.delta[k] *
                      (std::log(p.hbar) - std::log(p.Lambda));
        for (int j = 0; j < p.N; ++j) {
            if (j == k) continue;
            cplx dd = (p.delta[k] - p.delta[j]) / p.hbar;
            expect += log_gamma(1.0 + iu * dd) - log_gamma(1.0 - iu * dd);
        }
        CHECK(std::abs(fd - expect) < 1e-7);
    }
}

TEST_CASE("y_inst vanishes with X and scales as Lambda^2N") {
    NlieSolution tiny = solve_nlie(params2(1e-4));
    CHECK(std::abs(y_inst(tiny)) < 1e-10);

    cplx a = y_inst(solve_nlie(params2(0.05)));
    cplx b = y_inst(solve_nlie(params2(0.1)));
    double slope = (std::log(std::abs(b)) - std::log(std::abs(a))) / std::log(2.0);
    CHECK(std::abs(slope - 4.0) < 0.25);  // 2N = 4
}

TEST_CASE("y_inst stable under grid refinement") {
    NlieParams p = params2(0.3);
    cplx a = y_inst(solve_nlie(p));
    NlieParams q = p;
    q.h = p.h / 2.0;
    cplx b = y_inst(solve_nlie(q));
    NlieParams r = p;
    r.M = 2.0 * p.M;
    cplx c = y_inst(solve_nlie(r));
    CHECK(std::abs(a - b) < 1e-8);
    CHECK(std::abs(a - c) < 1e-8);
}

TEST_CASE("gradient identity dY/ddelta_k = log zeta_k") {
    NlieParams p = params2(0.3);
    GradReport rep = grad_delta_check(p, 1e-4);
    CHECK(rep.max_deviation < 1e-6);
}

TEST_CASE("gradient identity in the perturbative limit") {
    NlieParams p = params2(1e-4);
    GradReport rep = grad_delta_check(p, 1e-4);
    CHECK(rep.max_deviation < 1e-8);
}

TEST_CASE("gradient check scales as eps^2") {
    NlieParams p = params2(0.3);
    double d1 = grad_delta_check(p, 2e-3).max_deviation;
    double d2 = grad_delta_check(p, 1e-3).max_deviation;
    CHECK(d1 / d2 > 3.2);
    CHECK(d1 / d2 < 4.8);
}

TEST_CASE("Lambda derivative identity") {
    NlieParams p = params2(0.3);
    LambdaReport rep = lambda_derivative_check(p, 1e-4);
    CHECK(rep.deviation < 1e-6);

    // tiny Lambda: u ~ (1/2) sum delta^2, derivative dominated by y_pert
    NlieParams p0 = params2(1e-4);
    LambdaReport rep0 = lambda_derivative_check(p0, 1e-4);
    CHECK(rep0.deviation < 1e-8);
    CHECK(std::abs(rep0.u - cplx(0.09)) < 1e-7);
}

TEST_CASE("Lambda derivative check scales as eps^2") {
    NlieParams p = params2(0.3);
    double d1 = lambda_derivative_check(p, 2e-2).deviation;
    double d2 = lambda_derivative_check(p, 1e-2).deviation;
    CHECK(d1 / d2 > 3.2);
    CHECK(d1 / d2 < 4.8);
}

TEST_CASE("generating function chain rule") {
    // sigma = i delta / hbar with real delta gives purely imaginary sigma
    std::vector<cplx> sigma{iu * 0.3, -iu * 0.3};
    GeneratingFunction gf = generating_function_S(sigma, 1.0, 0.3, true, 1e-5);
    CHECK(gf.max_fd_deviation < 1e-6);
}

TEST_CASE("eta dominated by the log Lambda term at small Lambda") {
    std::vector<cplx> sigma{iu * 0.3, -iu * 0.3};
    GeneratingFunction a = generating_function_S(sigma, 1.0, 1e-3);
    GeneratingFunction b = generating_function_S(sigma, 1.0, 1e-4);
    // eta_j ~ (2N i/hbar) delta_j log(hbar/Lambda) / (2 pi i): linear in
    // log(1/Lambda) with the known coefficient
    cplx d0 = iu * 1.0 * sigma[0] * (-1.0);  // delta_0 = -i hbar sigma_0
    cplx coef = 2.0 * 2.0 * iu / 1.0 * d0 / (2.0 * pi * iu);
    cplx slope = (b.eta[0] - a.eta[0]) / (std::log(1e3) - std::log(1e4));
    CHECK(std::abs(slope - (-coef)) < 1e-6 * std::abs(coef) + 1e-9);
}

TEST_CASE("Y symmetric under simultaneous permutation") {
    NlieParams p;
    p.N = 3;
    p.hbar = 1.0;
    p.Lambda = 0.2;
    p.delta = {cplx(0.5), cplx(0.1), cplx(-0.6)};
    p.apply_defaults();
    cplx a = yang_yang(p).total;
    std::rotate(p.delta.begin(), p.delta.begin() + 1, p.delta.end());
    cplx b = yang_yang(p).total;
    CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
}
