#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toda/quantize.hpp"

using namespace toda;

TEST_CASE("mode validation") {
    QuantizationProblem qp;
    qp.N = 2;
    qp.hbar = 1.0;
    qp.Lambda = 0.3;
    qp.modes = {0, 1};  // internal filling not strictly decreasing
    CHECK_THROWS_AS(qp.validate(), config_error);
    qp.modes = {0, 0};
    CHECK_NOTHROW(qp.validate());
}

TEST_CASE("small-Lambda solution matches the closed form") {
    QuantizationProblem qp;
    qp.N = 2;
    qp.hbar = 1.0;
    qp.Lambda = 1e-3;
    qp.modes = {0, 0};
    std::vector<cplx> cf = solve_closed_form(qp);
    SpectrumRecord rec = quantize(qp);
    // NLIE correction enters at Lambda^{4} ~ 1e-12
    for (int j = 0; j < 2; ++j)
        CHECK(std::abs(rec.delta_star[j] - cf[j]) < 1e-8);
}

TEST_CASE("ground state matches the Schroedinger oracle at Lambda=0.3") {
    QuantizationProblem qp;
    qp.N = 2;
    qp.hbar = 1.0;
    qp.Lambda = 0.3;
    qp.modes = {0, 0};
    SpectrumRecord rec = quantize(qp);
    double u = -rec.energies[0].real();
    double u_o = oracle_spectrum_n2(1.0, 0.3, 0);
    CHECK(std::abs(u - u_o) / std::abs(u_o) < 1e-6);
    CHECK(std::abs(rec.energies[0].imag()) < 1e-10);

    // product of zetas at the quantized point
    cplx prod = 1.0;
    for (cplx z : rec.zetas) prod *= z;
    CHECK(std::abs(prod - 1.0) < 1e-8);
    CHECK(rec.zeta_spread < 1e-8);
    CHECK(rec.zeta_pow_n_dev < 1e-7);
}

TEST_CASE("oracle guards and consistency") {
    CHECK_THROWS_AS(oracle_spectrum_n2(1.0, 1e-4, 0), config_error);
    CHECK_THROWS_AS(oracle_spectrum_n2(1.0, 0.3, -1), config_error);

    // harmonic approximation at a deep well
    double e0 = oracle_spectrum_n2(0.2, 3.0, 0);
    double approx = 2.0 * 9.0 + 0.2 * 3.0 * std::sqrt(2.0);
    CHECK(std::abs(e0 - approx) / e0 < 0.05);

    // levels increase
    double a = oracle_spectrum_n2(1.0, 0.3, 0);
    double b = oracle_spectrum_n2(1.0, 0.3, 1);
    CHECK(b > a);
}

TEST_CASE("quantize is stable when rerun from the converged point") {
    QuantizationProblem qp;
    qp.N = 2;
    qp.hbar = 1.0;
    qp.Lambda = 0.3;
    qp.modes = {0, 0};
    SpectrumRecord rec = quantize(qp);
    QuantizationProblem qp2 = qp;
    qp2.seed = rec.delta_star;
    SpectrumRecord rec2 = quantize(qp2);
    for (int j = 0; j < 2; ++j)
        CHECK(std::abs(rec2.delta_star[j] - rec.delta_star[j]) < 1e-12);
}

TEST_CASE("parity map on the modes mirrors the deltas") {
    QuantizationProblem qa;
    qa.N = 3;
    qa.hbar = 1.0;
    qa.Lambda = 0.25;
    qa.modes = {1, 0, 0};
    SpectrumRecord ra = quantize(qa);

    QuantizationProblem qb = qa;
    qb.modes = {0, 0, -1};  // negated reversal of (1,0,0)
    SpectrumRecord rb = quantize(qb);

    for (int j = 0; j < 3; ++j)
        CHECK(std::abs(rb.delta_star[j] + ra.delta_star[2 - j]) < 1e-9);
    CHECK(std::abs(ra.energies[0] - rb.energies[0]) < 1e-9);
}

TEST_CASE("build_q: lattice regularity, decay envelope, Baxter residual") {
    QuantizationProblem qp;
    qp.N = 2;
    qp.hbar = 1.0;
    qp.Lambda = 0.3;
    qp.modes = {0, 0};
    SpectrumRecord rec = quantize(qp);
    NlieSolution sol = solve_nlie(rec.params());

    // finite at the denominator zero; residue ratio matches zeta
    cplx qd = build_q(rec.delta_star[0], rec, sol);
    CHECK(is_finite(qd));
    CHECK(std::abs(qd) > 1e-3);
    cplx ratio = q_plus_delta(rec.delta_star[0], sol) /
                 q_minus_delta(rec.delta_star[0], sol);
    CHECK(std::abs(ratio - rec.zeta) < 1e-7 * std::abs(rec.zeta));

    // decay envelope at lambda = +-8
    for (double x : {8.0, -8.0}) {
        double env = std::exp(-qp.N * pi * std::abs(x) / (2.0 * qp.hbar)) *
                     std::pow(std::abs(x), -qp.N / 2.0);
        double r = std::abs(build_q(cplx(x, 0.0), rec, sol)) / env;
        CHECK(r > 0.5);
        CHECK(r < 2.0);
    }

    // Baxter equation residual
    SpectralData s = tau_from_delta(sol);
    cplx ih = iu * qp.hbar;
    cplx lN = std::pow(cplx(qp.Lambda), qp.N), iN = std::pow(iu, qp.N);
    for (double x : {0.2, 1.1}) {
        cplx lam(x, 0.0);
        cplx q0 = build_q(lam, rec, sol);
        cplx qpv = build_q(lam + ih, rec, sol);
        cplx qmv = build_q(lam - ih, rec, sol);
        cplx resid = s.t(lam) * q0 - lN * (iN * qpv + qmv / iN);
        double scale = std::abs(s.t(lam) * q0) + std::abs(lN * iN * qpv) +
                       std::abs(lN * qmv / iN);
        CHECK(std::abs(resid) / scale < 1e-8);
    }
}

TEST_CASE("build_q rejects non-quantized input at a lattice point") {
    QuantizationProblem qp;
    qp.N = 2;
    qp.hbar = 1.0;
    qp.Lambda = 0.3;
    qp.modes = {0, 0};
    SpectrumRecord rec = quantize(qp);
    // spoil the zeta constant: residues no longer cancel
    SpectrumRecord bad = rec;
    bad.zeta *= std::exp(iu * 0.3);
    NlieSolution sol = solve_nlie(rec.params());
    CHECK_THROWS_AS(build_q(rec.delta_star[0], bad, sol), numeric_error);
}
