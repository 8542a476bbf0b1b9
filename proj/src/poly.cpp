#include "toda/poly.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace toda {

Polynomial Polynomial::from_roots(std::span<const cplx> roots) {
    Polynomial p;
    p.coeff = {cplx(1.0)};
    for (cplx r : roots) {
        p.coeff.push_back(0.0);
        for (std::size_t k = p.coeff.size() - 1; k >= 1; --k)
            p.coeff[k] = p.coeff[k - 1] - r * p.coeff[k];
        p.coeff[0] = -r * p.coeff[0];
    }
    return p;
}

std::vector<cplx> poly_roots(const Polynomial& p) {
    int n = p.degree();
    if (n < 1) throw config_error("poly_roots: degree must be >= 1");
    double cmax = 0.0;
    for (cplx c : p.coeff) cmax = std::max(cmax, std::abs(c));
    if (std::abs(p.coeff.back()) < 1e-14 * cmax)
        throw numeric_error("poly_roots: degenerate leading coefficient");

    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    cplx lead = p.coeff.back();
    for (int i = 0; i < n; ++i) C(i, n - 1) = -p.coeff[i] / lead;
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    if (es.info() != Eigen::Success)
        throw numeric_error("poly_roots: eigenvalue iteration failed");
    std::vector<cplx> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);

    for (cplx r : roots) {
        double bound = 1e-10 * cmax * std::pow(std::max(1.0, std::abs(r)), n);
        if (std::abs(p.eval(r)) > bound)
            throw numeric_error("poly_roots: residual exceeds bound");
    }
    return roots;
}

cplx elementary_symmetric(std::span<const cplx> values, int i) {
    int n = static_cast<int>(values.size());
    if (i < 0 || i > n) throw config_error("elementary_symmetric: index out of range");
    return elementary_symmetric_all(values)[i];
}

std::vector<cplx> elementary_symmetric_all(std::span<const cplx> values) {
    std::vector<cplx> e(values.size() + 1, cplx(0.0));
    e[0] = 1.0;
    std::size_t m = 0;
    for (cplx v : values) {
        ++m;
        for (std::size_t k = m; k >= 1; --k) e[k] += v * e[k - 1];
    }
    return e;
}

std::vector<cplx> newton_identities(std::span<const cplx> power_sums) {
    std::size_t k = power_sums.size();
    std::vector<cplx> e(k + 1, cplx(0.0));
    e[0] = 1.0;
    for (std::size_t m = 1; m <= k; ++m) {
        cplx acc = 0.0;
        double sign = 1.0;
        for (std::size_t i = 1; i <= m; ++i) {
            acc += sign * e[m - i] * power_sums[i - 1];
            sign = -sign;
        }
        e[m] = acc / static_cast<double>(m);
    }
    return std::vector<cplx>(e.begin() + 1, e.end());
}

}  // namespace toda
