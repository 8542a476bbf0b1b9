#include "toda/newton.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace toda {

namespace {

double norm_inf(const std::vector<cplx>& v) {
    double m = 0.0;
    for (cplx c : v) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

NewtonResult newton_system(const VecFunc& F, std::vector<cplx> x0,
                           const NewtonOptions& opts) {
    const auto m = x0.size();
    NewtonResult res;
    res.x = std::move(x0);

    std::vector<cplx> f = F(res.x);
    if (f.size() != m) throw config_error("newton_system: F has wrong dimension");
    res.residual = norm_inf(f);
    res.history.push_back(res.residual);

    auto jacobian = [&](const std::vector<cplx>& x) {
        Eigen::MatrixXcd J(m, m);
        for (std::size_t j = 0; j < m; ++j) {
            double eps = opts.fd_eps_scale * std::max(1.0, std::abs(x[j]));
            std::vector<cplx> xp = x, xm = x;
            xp[j] += eps;
            xm[j] -= eps;
            std::vector<cplx> fp = F(xp), fm = F(xm);
            for (std::size_t i = 0; i < m; ++i)
                J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    (fp[i] - fm[i]) / (2.0 * eps);
        }
        return J;
    };

    for (int it = 0; it < opts.max_iter; ++it) {
        if (res.residual < opts.tol) {
            // certify the root is isolated; a degenerate seed is an error
            Eigen::FullPivLU<Eigen::MatrixXcd> lu0(jacobian(res.x));
            if (!lu0.isInvertible())
                throw numeric_error("newton_system: singular Jacobian");
            res.converged = true;
            return res;
        }
        Eigen::VectorXcd rhs(m);
        for (std::size_t i = 0; i < m; ++i) rhs(static_cast<Eigen::Index>(i)) = -f[i];
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(jacobian(res.x));
        if (!lu.isInvertible())
            throw numeric_error("newton_system: singular Jacobian");
        Eigen::VectorXcd dx = lu.solve(rhs);

        double alpha = 1.0;
        for (int half = 0;; ++half) {
            std::vector<cplx> xt = res.x;
            for (std::size_t i = 0; i < m; ++i)
                xt[i] += alpha * dx(static_cast<Eigen::Index>(i));
            std::vector<cplx> ft = F(xt);
            double rt = norm_inf(ft);
            if (rt < res.residual || !opts.allow_damping || half >= 6) {
                res.x = std::move(xt);
                f = std::move(ft);
                res.residual = rt;
                break;
            }
            alpha *= 0.5;
        }
        res.iterations = it + 1;
        res.history.push_back(res.residual);
    }
    res.converged = res.residual < opts.tol;
    if (!res.converged) res.failure = "max iterations reached";
    return res;
}

std::vector<cplx> newton_system_checked(const VecFunc& F, std::vector<cplx> x0,
                                        const NewtonOptions& opts) {
    NewtonResult r = newton_system(F, std::move(x0), opts);
    if (!r.converged)
        throw numeric_error("newton_system: " + r.failure + ", residual " +
                            std::to_string(r.residual));
    return r.x;
}

}  // namespace toda
