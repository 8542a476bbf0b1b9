#include "toda/special.hpp"

#include <array>
#include <cmath>

namespace toda {

namespace {

// Lanczos coefficients, g = 607/128, 15 terms (Boost/Godfrey set).
constexpr double lanczos_g = 4.7421875;
constexpr std::array<double, 15> lanczos_c = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool near_nonpositive_integer(cplx z, double tol) {
    if (z.real() > 0.5) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}

// log Gamma for Re z >= 0.5 by the Lanczos sum.
cplx log_gamma_lanczos(cplx z) {
    cplx x = z - 1.0;
    cplx sum = lanczos_c[0];
    for (std::size_t k = 1; k < lanczos_c.size(); ++k)
        sum += lanczos_c[k] / (x + static_cast<double>(k));
    cplx tmp = x + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (x + 0.5) * std::log(tmp) - tmp +
           std::log(sum);
}

// log sin(pi z) following Kolbig: continuous for Im z >= 0 after splitting
// z = n + eps with 0 <= Re eps < 1, large-Im asymptotic to avoid overflow.
cplx log_sin_pi_upper(cplx z) {
    if (z.imag() > 110.0)
        return -iu * pi * z + std::log(0.5) + iu * pi * 0.5;
    double n = std::floor(z.real());
    cplx eps = z - n;
    return std::log(std::sin(pi * eps)) - iu * pi * n;
}

cplx log_sin_pi(cplx z) {
    if (z.imag() >= 0.0) return log_sin_pi_upper(z);
    return std::conj(log_sin_pi_upper(std::conj(z)));
}

constexpr std::array<double, 22> bernoulli = {
    // B_0 .. B_21 (odd ones beyond B_1 vanish)
    1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0,
    -1.0 / 30.0, 0.0, 5.0 / 66.0, 0.0, -691.0 / 2730.0, 0.0, 7.0 / 6.0, 0.0,
    -3617.0 / 510.0, 0.0, 43867.0 / 798.0, 0.0, -174611.0 / 330.0, 0.0,
};

// Li_2 via the Bernoulli series in w = -log(1-z); converges for |w| < 2*pi,
// used after reduction to |z| <= 1, Re z <= 1/2.
cplx dilog_core(cplx z) {
    if (std::abs(z) < 0.25) {
        // direct series is cheap and accurate here
        cplx sum = 0.0, term = z;
        for (int k = 1; k < 80; ++k) {
            sum += term / static_cast<double>(k * k);
            term *= z;
            if (std::abs(term) < 1e-20 * (1.0 + std::abs(sum))) break;
        }
        return sum;
    }
    cplx w = -std::log(1.0 - z);
    cplx sum = 0.0, wp = w;  // tracks w^{n+1}
    double fact = 1.0;       // (n+1)!
    for (std::size_t n = 0; n < bernoulli.size(); ++n) {
        fact *= (n + 1);
        if (bernoulli[n] != 0.0) sum += bernoulli[n] * wp / fact;
        wp *= w;
    }
    return sum;
}

// Gauss-Kronrod 7-15 nodes/weights on [-1,1].
constexpr std::array<double, 8> gk_xk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr std::array<double, 8> gk_wk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> gk_wg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct GKResult {
    cplx value;
    double err;
};

GKResult gk15(const std::function<cplx(cplx)>& f, cplx a, cplx b) {
    cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx fc = f(mid);
    cplx resk = gk_wk[7] * fc;
    cplx resg = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        cplx fp = f(mid + half * gk_xk[i]);
        cplx fm = f(mid - half * gk_xk[i]);
        resk += gk_wk[i] * (fp + fm);
        if (i % 2 == 1) resg += gk_wg[i / 2] * (fp + fm);
    }
    resk *= half;
    resg *= half;
    return {resk, std::abs(resk - resg)};
}

}  // namespace

cplx log_gamma(cplx z) {
    if (near_nonpositive_integer(z, 1e-14))
        throw numeric_error("log_gamma: pole at non-positive integer");
    if (z.real() >= 0.5) return log_gamma_lanczos(z);
    // reflection: logGamma(z) = log pi - log sin(pi z) - logGamma(1-z)
    return std::log(pi) - log_sin_pi(z) - log_gamma_lanczos(1.0 - z);
}

cplx digamma(cplx z) {
    if (near_nonpositive_integer(z, 1e-14))
        throw numeric_error("digamma: pole at non-positive integer");
    cplx shift = 0.0;
    while (z.real() < 10.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    // Stirling
    cplx inv = 1.0 / z, inv2 = inv * inv;
    cplx s = std::log(z) - 0.5 * inv;
    const double b[] = {1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
                        1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
    cplx p = inv2;
    for (double c : b) {
        s -= c * p;
        p *= inv2;
    }
    return s + shift;
}

cplx dilog(cplx z) {
    if (z == cplx(0.0)) return 0.0;
    if (z == cplx(1.0)) return pi * pi / 6.0;
    if (std::abs(z) > 1.0) {
        // inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log^2(-z)/2
        cplx lz = std::log(-z);
        return -dilog(1.0 / z) - pi * pi / 6.0 - 0.5 * lz * lz;
    }
    if (z.real() > 0.5) {
        // reflection: Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z)
        return pi * pi / 6.0 - std::log(z) * std::log(1.0 - z) - dilog(1.0 - z);
    }
    return dilog_core(z);
}

cplx quad_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                  double tol, int max_depth) {
    struct Rec {
        const std::function<cplx(cplx)>& f;
        double tol;
        int max_depth;
        cplx run(cplx a, cplx b, double tol_here, int depth) const {
            GKResult r = gk15(f, a, b);
            if (r.err < tol_here || depth >= max_depth) return r.value;
            cplx mid = 0.5 * (a + b);
            return run(a, mid, 0.5 * tol_here, depth + 1) +
                   run(mid, b, 0.5 * tol_here, depth + 1);
        }
    };
    Rec rec{f, tol, max_depth};
    return rec.run(a, b, tol, 0);
}

cplx varpi(cplx lambda, double hbar, double tol) {
    if (lambda == cplx(0.0)) return 0.0;
    // poles of logGamma(1 + i t/hbar) sit at t = i hbar m, m >= 1
    double al = std::abs(lambda);
    for (int m = 1; m * hbar <= al + hbar; ++m) {
        cplx p = iu * (hbar * m);
        // distance from p to the segment [0, lambda]
        cplx u = lambda / al;
        double proj = (p * std::conj(u)).real();
        proj = std::min(std::max(proj, 0.0), al);
        if (std::abs(p - proj * u) < 1e-10 * std::max(1.0, al))
            throw numeric_error("varpi: integration path passes through a Gamma pole");
    }
    auto f = [&](cplx t) { return log_gamma(1.0 + iu * t / hbar); };
    return quad_segment(f, 0.0, lambda, tol);
}

cplx analytic_circle_mean(const std::function<cplx(cplx)>& f, cplx center,
                          double r, int npts) {
    cplx sum = 0.0;
    for (int p = 0; p < npts; ++p) {
        double th = 2.0 * pi * (p + 0.5) / npts;
        sum += f(center + r * std::exp(iu * th));
    }
    return sum / static_cast<double>(npts);
}

cplx log_sinh(cplx z) {
    if (z.real() >= 0.0)
        return z - std::log(2.0) + log1m_exp(-2.0 * z);
    return -z - std::log(2.0) + log1m_exp(2.0 * z) + iu * pi;
}

cplx log1m_exp(cplx d) {
    // log(1 - e^d); for Re d <= -1 the direct form is stable
    if (d.real() < -1.0) return std::log(1.0 - std::exp(d));
    cplx em;  // e^d - 1
    if (std::abs(d) < 1e-4)
        em = d * (1.0 + d * (0.5 + d / 6.0));
    else
        em = std::exp(d) - 1.0;
    return std::log(-em);
}

}  // namespace toda
