#include "toda/yangyang.hpp"

#include <cmath>

#include "toda/quad.hpp"
#include "toda/special.hpp"

namespace toda {

cplx y_pert(const NlieParams& p) {
    cplx sum2 = 0.0;
    for (cplx d : p.delta) sum2 += d * d;
    cplx out = static_cast<double>(p.N) * iu / p.hbar *
               (std::log(p.hbar) - std::log(p.Lambda)) * sum2;
    for (int j = 0; j < p.N; ++j)
        for (int k = 0; k < p.N; ++k) {
            if (j == k) continue;  // varpi(0) = 0
            out += varpi(p.delta[k] - p.delta[j], p.hbar);
        }
    return out;
}

cplx y_inst(const NlieSolution& sol) {
    const NlieParams& p = sol.params;
    const std::size_t n = sol.mu.size();
    // -(1/(2 pi i)) int { (1/2) log(X Theta) log(1+X) + Li2(-X) }
    // log(X Theta) equals the kernel convolution on the solution, which the
    // combination logX + logTheta reproduces within the residual.
    ComplexGrid g = ComplexGrid::uniform(p.M, p.h);
    for (std::size_t i = 0; i < n; ++i) {
        cplx lxt = sol.logX[i] + log_theta(sol.mu[i], p);
        cplx X = std::exp(sol.logX[i]);
        g.values[i] = 0.5 * lxt * sol.L[i] + dilog(-X);
    }
    // the Li2(-X) term decays like X ~ mu^{-2N}, so keep the matching tail
    QuadResult q = quad_real_line(g);
    cplx tail = (g.values.front() + g.values.back()) * p.M /
                static_cast<double>(2 * p.N - 1);
    return -(q.trapezoid + tail) / (2.0 * pi * iu);
}

YangYangValue yang_yang(const NlieSolution& sol) {
    YangYangValue v;
    v.y_pert = y_pert(sol.params);
    v.y_inst = y_inst(sol);
    v.total = v.y_pert + v.y_inst;
    return v;
}

YangYangValue yang_yang(const NlieParams& p) {
    NlieParams q = p;
    q.apply_defaults();
    return yang_yang(solve_nlie(q));
}

GradReport grad_delta_check(const NlieParams& p, double eps) {
    NlieParams base = p;
    base.apply_defaults();
    std::vector<cplx> lz = log_zeta_j(solve_nlie(base));

    GradReport rep;
    rep.deviations.resize(p.N);
    for (int k = 0; k < p.N; ++k) {
        NlieParams pp = base, pm = base;
        pp.delta[k] += eps;
        pm.delta[k] -= eps;
        cplx fd = (yang_yang(pp).total - yang_yang(pm).total) / (2.0 * eps);
        rep.deviations[k] = std::abs(fd - lz[k]);
        rep.max_deviation = std::max(rep.max_deviation, rep.deviations[k]);
    }
    return rep;
}

LambdaReport lambda_derivative_check(const NlieParams& p, double eps) {
    NlieParams base = p;
    base.apply_defaults();
    LambdaReport rep;
    rep.u = u_energy(solve_nlie(base));

    // d/d log Lambda^{2N}: log Lambda -> log Lambda +- eps/(2N)
    NlieParams pp = base, pm = base;
    pp.Lambda = base.Lambda * std::exp(eps / (2.0 * p.N));
    pm.Lambda = base.Lambda * std::exp(-eps / (2.0 * p.N));
    cplx fd = (yang_yang(pp).total - yang_yang(pm).total) / (2.0 * eps);
    rep.derivative = iu * p.hbar * fd;
    rep.deviation = std::abs(rep.derivative - rep.u);
    return rep;
}

GeneratingFunction generating_function_S(const std::vector<cplx>& sigma,
                                         double hbar, double Lambda,
                                         bool check_fd, double eps) {
    NlieParams p;
    p.N = static_cast<int>(sigma.size());
    p.hbar = hbar;
    p.Lambda = Lambda;
    p.delta.resize(sigma.size());
    for (std::size_t j = 0; j < sigma.size(); ++j)
        p.delta[j] = -iu * hbar * sigma[j];
    p.apply_defaults();

    GeneratingFunction out;
    NlieSolution sol = solve_nlie(p);
    out.S = yang_yang(sol).total;
    std::vector<cplx> lz = log_zeta_j(sol);
    out.eta.resize(lz.size());
    for (std::size_t j = 0; j < lz.size(); ++j)
        out.eta[j] = lz[j] / (2.0 * pi * iu);

    if (check_fd) {
        double worst = 0.0;
        for (std::size_t j = 0; j < sigma.size(); ++j) {
            auto S_at = [&](cplx shift) {
                std::vector<cplx> sg = sigma;
                sg[j] += shift;
                NlieParams q = p;
                for (std::size_t l = 0; l < sg.size(); ++l)
                    q.delta[l] = -iu * hbar * sg[l];
                return yang_yang(q).total;
            };
            cplx fd = (S_at(cplx(eps)) - S_at(cplx(-eps))) / (2.0 * eps);
            worst = std::max(worst,
                             std::abs(fd - 2.0 * pi * hbar * out.eta[j]));
        }
        out.max_fd_deviation = worst;
    }
    return out;
}

}  // namespace toda
