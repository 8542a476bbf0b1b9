#include "toda/quad.hpp"

#include <cmath>

namespace toda {

ComplexGrid ComplexGrid::uniform(double M, double h) {
    if (M <= 0 || h <= 0 || h > M)
        throw config_error("ComplexGrid: need 0 < h <= M");
    ComplexGrid g;
    auto n = static_cast<std::size_t>(std::llround(M / h));
    g.step = h;
    g.half_width = static_cast<double>(n) * h;
    g.points.resize(2 * n + 1);
    for (std::size_t i = 0; i < g.points.size(); ++i)
        g.points[i] = (static_cast<double>(i) - static_cast<double>(n)) * h;
    g.values.assign(g.points.size(), cplx(0.0));
    return g;
}

cplx ComplexGrid::interp(double x) const {
    if (x <= points.front()) return values.front();
    if (x >= points.back()) return values.back();
    double u = (x - points.front()) / step;
    auto i = static_cast<std::size_t>(u);
    if (i + 1 >= points.size()) i = points.size() - 2;
    double f = u - static_cast<double>(i);
    return (1.0 - f) * values[i] + f * values[i + 1];
}

void ComplexGrid::validate() const {
    if (points.size() < 3 || points.size() != values.size())
        throw config_error("ComplexGrid: inconsistent sizes");
    for (std::size_t i = 1; i < points.size(); ++i) {
        double d = points[i] - points[i - 1];
        if (d <= 0 || std::abs(d - step) > 1e-12 * std::max(1.0, std::abs(step)))
            throw config_error("ComplexGrid: spacing not uniform");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        double mirror = points[points.size() - 1 - i];
        if (std::abs(points[i] + mirror) > 1e-12 * std::max(1.0, half_width))
            throw config_error("ComplexGrid: not symmetric about 0");
    }
}

QuadResult quad_real_line(const ComplexGrid& grid) {
    const auto& v = grid.values;
    std::size_t n = v.size();
    cplx sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += v[i];
    sum -= 0.5 * (v.front() + v.back());
    QuadResult r;
    r.trapezoid = sum * grid.step;
    double M = grid.half_width;
    r.tail_correction = (v.front() + v.back()) * M;
    r.tail_estimate = (std::abs(v.front()) + std::abs(v.back())) * M;
    r.value = r.trapezoid + r.tail_correction;
    return r;
}

QuadResult quad_real_line(const std::function<cplx(double)>& f, double M,
                          double h) {
    ComplexGrid g = ComplexGrid::uniform(M, h);
    for (std::size_t i = 0; i < g.points.size(); ++i) g.values[i] = f(g.points[i]);
    return quad_real_line(g);
}

cplx quad_real_line_checked(const ComplexGrid& grid, double tol) {
    QuadResult r = quad_real_line(grid);
    if (r.tail_estimate > tol)
        throw numeric_error("quad_real_line: integrand decays too slowly, tail estimate " +
                            std::to_string(r.tail_estimate) + " > tol");
    return r.value;
}

}  // namespace toda
