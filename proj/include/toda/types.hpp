#ifndef TODA_TYPES_HPP
#define TODA_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace toda {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iu{0.0, 1.0};

// Numerical failure inside a solver or evaluator (exit code 3 in the CLI).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid user-supplied configuration (exit code 2 in the CLI).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Uniform symmetric sampling grid on the real line with complex samples.
// points are (i - n)*h for i = 0..2n, so 0 is always a grid point and the
// grid is symmetric about it.
struct ComplexGrid {
    double half_width = 0.0;  // M
    double step = 0.0;        // h
    std::vector<double> points;
    std::vector<cplx> values;

    static ComplexGrid uniform(double M, double h);

    std::size_t size() const { return points.size(); }

    // Linear interpolation of the samples at a real abscissa.
    cplx interp(double x) const;

    // Enforces the grid invariants: strictly increasing, uniform spacing to
    // 1e-12 relative, symmetric about 0.
    void validate() const;
};

}  // namespace toda

#endif
