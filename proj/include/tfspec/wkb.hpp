#pragma once

#include <cmath>
#include <stdexcept>

#include "tfspec/airy.hpp"
#include "tfspec/errors.hpp"

namespace tfspec {

/// Which Liouville-Green phase the caller wants:
///   inner - integrand sqrt(2 t (2-t)), defined for x in [0, 3/2)
///   outer - integrand sqrt(t (2+t)),   defined for x >= 0
/// Both give xi(x) = ((3/2) int_0^x sqrt(.) dt)^(2/3) and the WKB amplitude
/// a(x) = (xi'(x))^(-1/2).  Slopes at the origin differ: xi'(0) = 2^(2/3)
/// inner, 2^(1/3) outer.
enum class PhaseVariant { inner, outer };

struct PhasePoint {
    double xi;
    double amp;
};

namespace detail {

inline constexpr double k_cbrt2 = 1.259921049894873165;  // 2^(1/3)
inline constexpr double k_cbrt4 = 1.587401051968199475;  // 2^(2/3)

// int_0^x sqrt(2t) (1 + sgn*t/2)^(1/2) dt by the binomial series; accurate
// for x <= 0.1 where the closed forms lose digits to cancellation.
inline double phase_integral_series(double x, double sgn) {
    double bk = 1.0;         // binom(1/2, k)
    double pw = 1.0;         // (sgn/2)^k
    double xk = std::pow(x, 1.5);
    double sum = 0.0;
    for (int k = 0; k < 40; ++k) {
        double term = bk * pw * xk / (k + 1.5);
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
        bk *= (0.5 - k) / (k + 1.0);
        pw *= 0.5 * sgn;
        xk *= x;
    }
    return std::sqrt(2.0) * sum;
}

// int_0^x sqrt(t (2 + t)) dt: hyperbola-segment antiderivative.
inline double phase_integral_outer(double x) {
    if (x < 0.1) return phase_integral_series(x, +1.0);
    double s = std::sqrt(x * (2.0 + x));
    return 0.5 * ((x + 1.0) * s - std::log1p(x + s));
}

} // namespace detail

namespace detail {

inline double integrand_sq(PhaseVariant v, double x) {
    return v == PhaseVariant::inner ? 2.0 * x * (2.0 - x) : x * (2.0 + x);
}

// int_0^x sqrt(2 t (2 - t)) dt = sqrt(2) * (circle-segment antiderivative);
// the series branch integrates sqrt(2t)(1 - t/2)^(1/2) = sqrt(t(2-t)).
inline double phase_integral(PhaseVariant v, double x) {
    if (v == PhaseVariant::outer) return phase_integral_outer(x);
    if (x < 0.1) return std::sqrt(2.0) * phase_integral_series(x, -1.0);
    double s = std::sqrt(x * (2.0 - x));
    return std::sqrt(2.0) *
           (0.5 * ((x - 1.0) * s + std::asin(x - 1.0)) + 0.25 * 3.141592653589793238);
}

// Signed phase for the outer variant extended a short way below the turning
// point (negative y), where xi < 0 and Ai oscillates.  Used to evaluate the
// exterior solution on (1, sqrt(1+eps*nu)) when nu > 0.
inline double xi_signed_outer(double y) {
    if (y >= 0.0) return std::pow(1.5 * phase_integral_outer(y), 2.0 / 3.0);
    double a = -y; // int_y^0 sqrt(-t(2+t)) dt = int_0^a sqrt(u(2-u)) du
    double J = (a < 0.1) ? phase_integral_series(a, -1.0)
                         : (0.5 * ((a - 1.0) * std::sqrt(a * (2.0 - a)) + std::asin(a - 1.0)) +
                            0.25 * 3.141592653589793238);
    return -std::pow(1.5 * J, 2.0 / 3.0);
}

// xi'(y) = sqrt(q(y)/xi(y)) for the signed outer phase, with the removable
// singularity at y = 0 pinned to its limit 2^(1/3).
inline double xi_prime_signed_outer(double y, double xi) {
    if (y == 0.0) return k_cbrt2;
    return std::sqrt(y * (2.0 + y) / xi);
}

} // namespace detail

/// Phase and amplitude of the Liouville-Green change of variables.
/// Absolute accuracy ~1e-13: closed-form antiderivatives away from 0, a
/// binomial series near 0 where the closed forms cancel.
inline PhasePoint phase_eval(PhaseVariant variant, double x) {
    if (!std::isfinite(x)) throw std::domain_error("phase_eval: non-finite x");
    if (variant == PhaseVariant::inner) {
        if (x < 0.0 || x >= 1.5)
            throw std::domain_error("phase_eval(inner): x outside [0, 3/2)");
    } else {
        if (x < 0.0) throw std::domain_error("phase_eval(outer): x < 0");
    }
    PhasePoint p;
    if (x == 0.0) {
        p.xi = 0.0;
        double xip = (variant == PhaseVariant::inner) ? detail::k_cbrt4 : detail::k_cbrt2;
        p.amp = 1.0 / std::sqrt(xip);
        return p;
    }
    double I = detail::phase_integral(variant, x);
    p.xi = std::pow(1.5 * I, 2.0 / 3.0);
    double xip = std::sqrt(detail::integrand_sq(variant, x) / p.xi);
    p.amp = 1.0 / std::sqrt(xip);
    return p;
}

namespace detail {

// Leading-order decaying exterior solution expressed in the stretched
// variable y = x / sqrt(1 + eps*nu) - 1.  Tolerates a short excursion to
// y < 0 so the solution can be evaluated on all of (1, infinity) for nu of
// either sign.
inline double psi_outer_y(double nu, double eps, double y) {
    if (y < -0.25)
        throw std::domain_error("psi_outer_y: below the turning region");
    double xi = xi_signed_outer(y);
    double xip = xi_prime_signed_outer(y, xi);
    double amp = 1.0 / std::sqrt(xip);
    double arg = std::cbrt(1.0 + eps * nu) * xi / std::pow(eps, 2.0 / 3.0);
    return amp * airy_eval(arg).ai;
}

inline double psi_outer_x(double nu, double eps, double x) {
    double y = x / std::sqrt(1.0 + eps * nu) - 1.0;
    return psi_outer_y(nu, eps, y);
}

} // namespace detail

/// Leading-order decaying solution of -psi'' + (x^2-1)/eps^2 psi = (nu/eps) psi
/// on the outer interval, a(y) Ai((1+eps nu)^(1/3) xi(y) / eps^(2/3)) with
/// x = sqrt(1+eps nu)(1+y).  The dropped correction factor is O(eps^(2/3));
/// consumers must budget that relative model error.
inline double psi_a_leading(double nu, double eps, double x) {
    if (!(eps > 0.0 && eps <= 0.1))
        throw std::domain_error("psi_a_leading: eps outside (0, 0.1]");
    if (std::fabs(eps * nu) >= 0.5)
        throw std::domain_error("psi_a_leading: |eps*nu| must be < 1/2");
    double y = x / std::sqrt(1.0 + eps * nu) - 1.0;
    if (y < -1e-12)
        throw std::domain_error("psi_a_leading: x below the turning region start");
    return detail::psi_outer_y(nu, eps, std::max(y, 0.0));
}

/// (psi_A^{nu,eps})'(1) / psi_A^{nu,eps}(1) at leading order:
/// 2^(1/3) Ai'(t) / (eps^(2/3) Ai(t)) with t = eps^(1/3) 2^(-2/3) nu.
/// The dropped factor is 1 + O(eps^(2/3)).
inline double log_derivative_ratio(double nu, double eps) {
    if (!(eps > 0.0 && eps <= 0.1))
        throw std::domain_error("log_derivative_ratio: eps outside (0, 0.1]");
    double t = std::cbrt(eps) * nu / detail::k_cbrt4;
    AiryQuartet q = airy_eval(t);
    if (std::fabs(q.ai) <= 1e-13)
        throw singular_ratio_error("log_derivative_ratio: Ai vanishes at t");
    return detail::k_cbrt2 * q.ai_prime / (std::pow(eps, 2.0 / 3.0) * q.ai);
}

struct MatchingCoefficients {
    double u_p;
    double u_m;
};

/// The U_p, U_m combinations of boundary logarithmic derivatives entering the
/// 2x2 matching system:
///   U_p = eps^(2/3) [r(+sqrt(g)) + r(-sqrt(g))] / 2
///   U_m = eps^(2/3) [-r(+sqrt(g)) + r(-sqrt(g))] / 2
inline MatchingCoefficients matching_coefficients(double gamma, double eps) {
    if (!(gamma > 0.0)) throw std::domain_error("matching_coefficients: gamma must be > 0");
    double root = std::sqrt(gamma);
    double rp = log_derivative_ratio(root, eps);
    double rm = log_derivative_ratio(-root, eps);
    double e23 = std::pow(eps, 2.0 / 3.0);
    return {0.5 * e23 * (rp + rm), 0.5 * e23 * (-rp + rm)};
}

} // namespace tfspec
