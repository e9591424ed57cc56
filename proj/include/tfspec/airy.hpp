#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tfspec/errors.hpp"
#include "tfspec/roots.hpp"

namespace tfspec {

/// Ai, Bi and their derivatives at a common real argument.
struct AiryQuartet {
    double ai;
    double bi;
    double ai_prime;
    double bi_prime;
};

/// Gamma(1/3) and Gamma(2/3), hard-coded to 16 significant digits.
struct GammaConstants {
    double gamma_one_third;
    double gamma_two_thirds;
};

namespace detail {

inline constexpr double k_gamma_one_third  = 2.678938534707747633;
inline constexpr double k_gamma_two_thirds = 1.354117939426400417;
inline constexpr double k_pi = 3.141592653589793238;

// Ai(0), Ai'(0), Bi(0), Bi'(0).
inline constexpr double k_airy_ai0  = 0.3550280538878172392;
inline constexpr double k_airy_aip0 = -0.2588194037928067984;
inline constexpr double k_airy_bi0  = 0.6149266274460007352;
inline constexpr double k_airy_bip0 = 0.4482883573538263579;

// Regime boundaries for airy_eval.  Below z_series the Maclaurin series is
// accurate (the Ai = c1 f - c2 g cancellation grows like exp(2 zeta); at
// z = 4 it still leaves ~5e-12 relative error); above z_asym the asymptotic
// expansion reaches machine accuracy (optimal-truncation error
// ~ exp(-2 zeta) with zeta = (2/3) z^(3/2) ~ e^-39 at z = 9.5).  The
// intervening window is bridged by Taylor continuation of the Airy ODE
// y'' = z y, marching each function in its stable direction: Ai inward from
// z_asym, Bi outward from z_series.
inline constexpr double k_airy_z_series = 4.0;
inline constexpr double k_airy_z_asym   = 9.5;
inline constexpr double k_airy_z_min    = -8.0;

// Maclaurin evaluation of the standard pair
//   f(z) = sum 3^k (1/3)_k z^(3k) / (3k)!,  g(z) = sum 3^k (2/3)_k z^(3k+1) / (3k+1)!
// and their derivatives, combined into the quartet.  Compensated summation
// keeps the right edge of the regime inside the 1e-10 budget.
inline AiryQuartet airy_maclaurin(double z) {
    const double z3 = z * z * z;
    // Running terms for f, g, f', g'.  f' has no k = 0 term; tfp starts at
    // its k = 1 value and is first consumed in the k = 0 loop pass.
    double tf = 1.0, tg = z, tfp = 0.5 * z * z, tgp = 1.0;
    double f = tf, g = tg, fp = 0.0, gp = tgp;
    double cf = 0.0, cg = 0.0, cfp = 0.0, cgp = 0.0; // Kahan carries
    auto add = [](double& sum, double& carry, double term) {
        double y = term - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    };
    for (int k = 0; k < 160; ++k) {
        double dk = static_cast<double>(k);
        tf *= z3 / ((3 * dk + 2) * (3 * dk + 3));
        tg *= z3 / ((3 * dk + 3) * (3 * dk + 4));
        tgp *= z3 / ((3 * dk + 1) * (3 * dk + 3));
        if (k > 0) tfp *= z3 / ((3 * dk) * (3 * dk + 2));
        add(f, cf, tf);
        add(g, cg, tg);
        add(fp, cfp, tfp);
        add(gp, cgp, tgp);
        double scale = std::fabs(f) + std::fabs(g);
        if (std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp) <
            1e-18 * (scale + 1.0))
            break;
    }
    const double c1 = k_airy_ai0;       // 1/(3^(2/3) Gamma(2/3))
    const double c2 = -k_airy_aip0;     // 1/(3^(1/3) Gamma(1/3))
    const double sqrt3 = 1.732050807568877294;
    AiryQuartet q;
    q.ai = c1 * f - c2 * g;
    q.bi = sqrt3 * (c1 * f + c2 * g);
    q.ai_prime = c1 * fp - c2 * gp;
    q.bi_prime = sqrt3 * (c1 * fp + c2 * gp);
    return q;
}

// Asymptotic expansion for large positive z (both kinds), summed to optimal
// truncation.  zeta = (2/3) z^(3/2); u_k / v_k follow the classic ratio
// recurrence u_k = u_{k-1} (6k-1)(6k-3)(6k-5) / (216 k (2k-1)).
inline AiryQuartet airy_asymptotic(double z) {
    const double sqrtz = std::sqrt(z);
    const double zeta = (2.0 / 3.0) * z * sqrtz;
    double sa = 1.0, sap = 1.0, sb = 1.0, sbp = 1.0;
    double u = 1.0, zk = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 80; ++k) {
        double dk = static_cast<double>(k);
        u *= (6 * dk - 1) * (6 * dk - 3) * (6 * dk - 5) / (216.0 * dk * (2 * dk - 1));
        zk /= zeta;
        double term = u * zk;
        if (std::fabs(term) >= prev) break; // divergent tail reached
        prev = std::fabs(term);
        double v = -term * (6 * dk + 1) / (6 * dk - 1);
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        sa += sgn * term;
        sap += sgn * v;
        sb += term;
        sbp += v;
        if (std::fabs(term) < 1e-18) break;
    }
    const double spi = 1.772453850905516027; // sqrt(pi)
    const double z14 = std::pow(z, 0.25);
    const double em = std::exp(-zeta);
    const double ep = std::exp(zeta);
    AiryQuartet q;
    q.ai = 0.5 * em * sa / (spi * z14);
    q.ai_prime = -0.5 * z14 * em * sap / spi;
    q.bi = ep * sb / (spi * z14);
    q.bi_prime = z14 * ep * sbp / spi;
    return q;
}

// Taylor-step continuation of y'' = z y from (y, y') at `from` to `to`.
// Coefficients about a center a satisfy (k+1)(k+2) c_{k+2} = a c_k + c_{k-1}.
// Steps are kept short enough that the growing-solution contamination stays
// at a few ulps per step.
inline void airy_ode_march(double& y, double& yp, double from, double to) {
    const double span = to - from;
    int nsteps = static_cast<int>(std::ceil(std::fabs(span) / 0.25));
    if (nsteps == 0) return;
    double h = span / nsteps;
    double a = from;
    for (int s = 0; s < nsteps; ++s) {
        double cm1 = 0.0, c0 = y, c1 = yp;
        double ysum = c0 + c1 * h;
        double ypsum = c1;
        double hk = h;               // h^(k+1) while forming c_{k+2} terms
        for (int k = 0; k <= 60; ++k) {
            double c2 = (a * c0 + cm1) / ((k + 1.0) * (k + 2.0));
            hk *= h;                 // now h^(k+2)
            double dy = c2 * hk;
            double dyp = (k + 2.0) * c2 * hk / h;
            ysum += dy;
            ypsum += dyp;
            cm1 = c0;
            c0 = c1;
            c1 = c2;
            if (k > 4 && std::fabs(dy) < 1e-18 * std::fabs(ysum) &&
                std::fabs(dyp) < 1e-18 * std::fabs(ypsum))
                break;
        }
        y = ysum;
        yp = ypsum;
        a += h;
    }
}

} // namespace detail

/// Gamma(1/3), Gamma(2/3) with the reflection identity asserted as a tripwire.
inline GammaConstants gamma_constants() {
    GammaConstants g{detail::k_gamma_one_third, detail::k_gamma_two_thirds};
    const double reflection = 2.0 * detail::k_pi / std::sqrt(3.0);
    if (std::fabs(g.gamma_one_third * g.gamma_two_thirds - reflection) > 1e-12)
        throw std::logic_error("gamma_constants: reflection identity violated");
    return g;
}

/// Evaluate Ai, Bi, Ai', Bi' at real z.  Covers z in [-8, +inf); accuracy
/// target 1e-10 relative on [-5, 30].  For z beyond ~104, e^(+/-zeta) leaves
/// the double range: ai underflows to 0 and bi overflows to inf, which is the
/// honest IEEE answer for the function values themselves.
inline AiryQuartet airy_eval(double z) {
    if (!std::isfinite(z)) throw std::domain_error("airy_eval: non-finite argument");
    if (z < detail::k_airy_z_min)
        throw std::domain_error("airy_eval: argument below supported range (z >= -8)");
    if (z <= detail::k_airy_z_series) return detail::airy_maclaurin(z);
    if (z >= detail::k_airy_z_asym) return detail::airy_asymptotic(z);
    // Bridge window: march each function in its stable direction.
    AiryQuartet anchor_hi = detail::airy_asymptotic(detail::k_airy_z_asym);
    AiryQuartet anchor_lo = detail::airy_maclaurin(detail::k_airy_z_series);
    AiryQuartet q;
    double y = anchor_hi.ai, yp = anchor_hi.ai_prime;
    detail::airy_ode_march(y, yp, detail::k_airy_z_asym, z);
    q.ai = y;
    q.ai_prime = yp;
    y = anchor_lo.bi;
    yp = anchor_lo.bi_prime;
    detail::airy_ode_march(y, yp, detail::k_airy_z_series, z);
    q.bi = y;
    q.bi_prime = yp;
    return q;
}

/// First negative zero of Ai', located by bisection; the even ground state of
/// -d^2/dy^2 + |y| sits at minus this value.
inline double airy_ai_prime_first_zero() {
    return bisect([](double z) { return airy_eval(z).ai_prime; }, -2.0, 0.0, 1e-13);
}

} // namespace tfspec
