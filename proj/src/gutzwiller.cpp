#include "toda/gutzwiller.hpp"

#include <algorithm>
#include <cmath>

#include "toda/poly.hpp"
#include "toda/special.hpp"

namespace toda {

namespace {

constexpr int kMaxTrunc = 8192;
constexpr double kPoleGuard = 1e-8;   // lattice proximity that is an error
constexpr double kEntireSwitch = 1e-6;  // switch to the circle limit below this

// distance from lambda to the nearest point of {tau_k - dir*i*hbar*n, n>=1}
double lattice_distance(cplx lambda, const SpectralData& s, int dir) {
    double best = 1e300;
    for (cplx tk : s.tau) {
        // lambda = tk - dir*i*hbar*n  =>  n = dir*i*(lambda - tk)/hbar
        cplx nc = static_cast<double>(dir) * iu * (lambda - tk) / s.hbar;
        double n = std::round(nc.real());
        if (n < 1.0) n = 1.0;
        best = std::min(best, std::abs(lambda - (tk - static_cast<double>(dir) * iu * s.hbar * n)));
    }
    return best;
}

// backward recursion for K+ (dir=+1) / K- (dir=-1) at fixed depth
cplx k_recursion(cplx lambda, const SpectralData& s, int dir, int depth) {
    const cplx ih = static_cast<double>(dir) * iu * s.hbar;
    const cplx lam2n = std::pow(cplx(s.Lambda * s.Lambda), s.N);
    cplx k2 = 1.0, k1 = 1.0;  // K at depth+1, depth
    cplx t1 = s.t(lambda + static_cast<double>(depth + 1) * ih);
    for (int m = depth - 1; m >= 0; --m) {
        cplx t0 = s.t(lambda + static_cast<double>(m + 1) * ih);
        cplx k0 = k1 - lam2n * k2 / (t0 * t1);
        k2 = k1;
        k1 = k0;
        t1 = t0;
    }
    return k1;
}

cplx k_eval(cplx lambda, const SpectralData& s, int dir, int trunc) {
    if (s.Lambda == 0.0) return 1.0;
    if (lattice_distance(lambda, s, dir) < kPoleGuard)
        throw numeric_error("k_plus/k_minus: lambda within 1e-8 of the pole lattice");
    if (trunc > 0) return k_recursion(lambda, s, dir, trunc);
    int depth = 64;
    cplx prev = k_recursion(lambda, s, dir, depth);
    while (depth < kMaxTrunc) {
        depth *= 2;
        cplx next = k_recursion(lambda, s, dir, depth);
        if (std::abs(next - prev) < 1e-12 * std::max(1.0, std::abs(next)))
            return next;
        prev = next;
    }
    throw numeric_error("k_plus/k_minus: recursion did not converge (Lambda too large?)");
}

// nearest non-positive integer distance for a Gamma argument
double gamma_pole_distance(cplx a) {
    double r = std::round(a.real());
    if (r > 0.0) return 1e300;
    return std::abs(a - r);
}

double q_pole_distance(cplx lambda, const SpectralData& s, int sign) {
    // Gamma arguments 1 - sign*i*(lambda - tau_k)/hbar
    double best = 1e300;
    for (cplx tk : s.tau)
        best = std::min(best, gamma_pole_distance(
                                  1.0 - static_cast<double>(sign) * iu * (lambda - tk) / s.hbar));
    return best;
}

cplx log_q_tau(cplx lambda, const SpectralData& s, int sign) {
    // sign=+1: Q+, prefactor (hbar/Lambda)^{iN lambda/hbar}, Gamma(1 - i(...)/hbar)
    // sign=-1: Q-, prefactor (Lambda/hbar)^{iN lambda/hbar}, Gamma(1 + i(...)/hbar)
    double lg = std::log(s.hbar / s.Lambda) * sign;
    cplx out = iu * static_cast<double>(s.N) * lambda / s.hbar * lg -
               static_cast<double>(s.N) * pi * lambda / s.hbar;
    out += std::log(k_eval(lambda, s, sign, 0));
    for (cplx tk : s.tau)
        out -= log_gamma(1.0 - static_cast<double>(sign) * iu * (lambda - tk) / s.hbar);
    return out;
}

cplx q_tau_value(cplx lambda, const SpectralData& s, int sign) {
    if (q_pole_distance(lambda, s, sign) > kEntireSwitch)
        return std::exp(log_q_tau(lambda, s, sign));
    // Q is entire; the quotient formula degenerates here, so take the mean
    // over a small circle clear of the lattice.
    double r = 0.02 * s.hbar;
    return analytic_circle_mean(
        [&](cplx z) { return std::exp(log_q_tau(z, s, sign)); }, lambda, r);
}

}  // namespace

SpectralData SpectralData::from_tau(double hbar, double Lambda,
                                    std::vector<cplx> tau) {
    SpectralData s;
    s.N = static_cast<int>(tau.size());
    s.hbar = hbar;
    s.Lambda = Lambda;
    s.tau = std::move(tau);
    auto e = elementary_symmetric_all(s.tau);
    s.charges.resize(s.N - 1);
    for (int k = 2; k <= s.N; ++k)
        s.charges[k - 2] = std::pow(cplx(-1.0), k) * e[k];
    s.validate();
    return s;
}

SpectralData SpectralData::from_charges(double hbar, double Lambda,
                                        std::vector<cplx> charges) {
    SpectralData s;
    s.N = static_cast<int>(charges.size()) + 1;
    s.hbar = hbar;
    s.Lambda = Lambda;
    s.charges = std::move(charges);
    Polynomial t;
    t.coeff.assign(s.N + 1, cplx(0.0));
    t.coeff[s.N] = 1.0;
    for (int k = 2; k <= s.N; ++k) t.coeff[s.N - k] = s.charges[k - 2];
    s.tau = poly_roots(t);
    s.validate();
    return s;
}

cplx SpectralData::t(cplx lambda) const {
    cplx v = 1.0;
    for (cplx tk : tau) v *= lambda - tk;
    return v;
}

void SpectralData::validate() const {
    if (N < 2) throw config_error("SpectralData: N >= 2 required");
    if (hbar <= 0 || Lambda < 0) throw config_error("SpectralData: hbar > 0, Lambda >= 0");
    cplx sum = 0.0;
    double scale = 1.0;
    for (cplx tk : tau) {
        sum += tk;
        scale = std::max(scale, std::abs(tk));
    }
    if (std::abs(sum) > 1e-12 * scale * N)
        throw config_error("SpectralData: sum of tau must vanish (E_1 = 0)");
    // coefficients of prod(lambda - tau_k) reproduce E_k
    auto e = elementary_symmetric_all(tau);
    for (int k = 2; k <= N; ++k) {
        cplx expect = std::pow(cplx(-1.0), k) * e[k];
        if (std::abs(expect - charges[k - 2]) >
            1e-10 * std::max(1.0, std::abs(expect)))
            throw config_error("SpectralData: charges inconsistent with tau");
    }
}

cplx k_plus(cplx lambda, const SpectralData& s, int trunc) {
    return k_eval(lambda, s, +1, trunc);
}

cplx k_minus(cplx lambda, const SpectralData& s, int trunc) {
    return k_eval(lambda, s, -1, trunc);
}

cplx log_q_plus_tau(cplx lambda, const SpectralData& s) {
    return log_q_tau(lambda, s, +1);
}

cplx log_q_minus_tau(cplx lambda, const SpectralData& s) {
    return log_q_tau(lambda, s, -1);
}

cplx q_plus_tau(cplx lambda, const SpectralData& s) {
    return q_tau_value(lambda, s, +1);
}

cplx q_minus_tau(cplx lambda, const SpectralData& s) {
    return q_tau_value(lambda, s, -1);
}

cplx quantum_wronskian(cplx lambda, const SpectralData& s) {
    const cplx ih = iu * s.hbar;
    return q_plus_tau(lambda, s) * q_minus_tau(lambda + ih, s) -
           q_minus_tau(lambda, s) * q_plus_tau(lambda + ih, s);
}

cplx log_quantum_wronskian(cplx lambda, const SpectralData& s) {
    const cplx ih = iu * s.hbar;
    cplx la = log_q_plus_tau(lambda, s) + log_q_minus_tau(lambda + ih, s);
    cplx lb = log_q_minus_tau(lambda, s) + log_q_plus_tau(lambda + ih, s);
    if (la.real() >= lb.real()) return la + log1m_exp(lb - la);
    return lb + log1m_exp(la - lb) + iu * pi;
}

cplx hill_determinant(cplx lambda, const SpectralData& s) {
    if (s.Lambda == 0.0) return 1.0;
    // H = W * (i pi Lambda / hbar)^N e^{2 pi N lambda/hbar} / prod sinh
    cplx lh = log_quantum_wronskian(lambda, s);
    lh += static_cast<double>(s.N) * std::log(pi * s.Lambda / s.hbar);
    lh += static_cast<double>(s.N) * iu * pi / 2.0;  // i^N
    lh += 2.0 * pi * static_cast<double>(s.N) * lambda / s.hbar;
    for (cplx tk : s.tau) lh -= log_sinh(pi * (lambda - tk) / s.hbar);
    return std::exp(lh);
}

cplx hill_determinant_direct(cplx lambda, const SpectralData& s, int K) {
    // tridiagonal continuant over rows m = -K..K: diag 1,
    // sub_m = Lambda^{2N}/t(lambda + m i hbar), super_m = 1/t(lambda + m i hbar)
    const cplx ih = iu * s.hbar;
    const cplx lam2n = std::pow(cplx(s.Lambda * s.Lambda), s.N);
    cplx pm2 = 1.0, pm1 = 1.0;  // continuants
    cplx super_prev = 0.0;
    for (int m = -K; m <= K; ++m) {
        cplx tm = s.t(lambda + static_cast<double>(m) * ih);
        cplx p = pm1 - (lam2n / tm) * super_prev * pm2;
        pm2 = pm1;
        pm1 = p;
        super_prev = 1.0 / tm;
    }
    return pm1;
}

cplx hill_times_sinh_j(cplx lambda, const SpectralData& s, int j) {
    // W * (i pi Lambda/hbar)^N e^{2 pi N lambda/hbar} / prod_{l != j} sinh,
    // through the circle-protected entire values so the evaluation stays
    // regular when the zero collides with the lattice at small Lambda
    cplx w = quantum_wronskian(lambda, s);
    cplx lh = static_cast<double>(s.N) * std::log(pi * s.Lambda / s.hbar);
    lh += static_cast<double>(s.N) * iu * pi / 2.0;
    lh += 2.0 * pi * static_cast<double>(s.N) * lambda / s.hbar;
    for (int l = 0; l < s.N; ++l)
        if (l != j) lh -= log_sinh(pi * (lambda - s.tau[l]) / s.hbar);
    return w * std::exp(lh);
}

HillZeros hill_zeros(const SpectralData& s) {
    HillZeros hz;
    hz.source = HillZeros::Source::from_tau;
    hz.delta.resize(s.N);
    hz.zeta.resize(s.N);

    if (s.Lambda == 0.0) {
        // H = 1 identically, zeros merge with tau; the proportionality
        // constants carry a divergent (hbar/Lambda)^{2iN delta/hbar} phase
        // and are not defined in this limit.
        hz.delta = s.tau;
        hz.zeta.clear();
        return hz;
    }

    auto newton_zero = [&](const SpectralData& sd, int j, cplx seed) {
        cplx x = seed;
        double fd = 1e-7 * sd.hbar;
        cplx fx = hill_times_sinh_j(x, sd, j);
        double scale0 = std::abs(fx) + 1e-300;
        for (int it = 0; it < 60; ++it) {
            cplx dfx = (hill_times_sinh_j(x + fd, sd, j) -
                        hill_times_sinh_j(x - fd, sd, j)) /
                       (2.0 * fd);
            if (std::abs(dfx) == 0.0)
                throw numeric_error("hill_zeros: vanishing derivative");
            cplx step = fx / dfx;
            x -= step;
            fx = hill_times_sinh_j(x, sd, j);
            if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x)) &&
                std::abs(fx) < 1e-10 * scale0)
                return x;
        }
        if (std::abs(fx) < 1e-10 * scale0) return x;
        throw numeric_error("hill_zeros: Newton failed for zero " + std::to_string(j));
    };

    // the evaluators are singular exactly on the tau lattice, so nudge seeds
    double minsep = 1e300;
    for (int j = 0; j < s.N; ++j)
        for (int k = j + 1; k < s.N; ++k)
            minsep = std::min(minsep, std::abs(s.tau[j] - s.tau[k]));
    double nudge = std::min(0.05 * s.hbar, 0.2 * minsep);

    auto solve_all = [&](const SpectralData& sd, const std::vector<cplx>& seeds,
                         bool offset) {
        std::vector<cplx> out(sd.tau.size());
        for (int j = 0; j < sd.N; ++j) {
            cplx seed = seeds[j];
            if (offset || std::abs(seed - sd.tau[j]) < 1e-7) seed += nudge;
            out[j] = newton_zero(sd, j, seed);
        }
        return out;
    };

    std::vector<cplx> delta;
    try {
        delta = solve_all(s, s.tau, true);
    } catch (const numeric_error&) {
        // continuation in Lambda, steps of 0.05 from a small value upward
        std::vector<cplx> seeds = s.tau;
        bool first = true;
        for (double L = 0.05; L < s.Lambda - 1e-12; L += 0.05) {
            SpectralData sl = SpectralData::from_tau(s.hbar, L, s.tau);
            seeds = solve_all(sl, seeds, first);
            first = false;
        }
        delta = solve_all(s, seeds, first);
    }

    for (int j = 0; j < s.N; ++j)
        for (int k = j + 1; k < s.N; ++k)
            if (std::abs(delta[j] - delta[k]) < 1e-6)
                throw numeric_error("hill_zeros: degenerate zeros delta_j ~ delta_k");

    hz.delta = delta;
    for (int j = 0; j < s.N; ++j)
        hz.zeta[j] =
            std::exp(log_q_tau(delta[j], s, +1) - log_q_tau(delta[j], s, -1));
    return hz;
}

}  // namespace toda
