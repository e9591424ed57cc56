#pragma once

#include <stdexcept>
#include <vector>

namespace tfspec {

/// Monomial coefficients of the Gegenbauer polynomial C_n^lambda, ascending
/// powers, built from the three-term recurrence
///   (m+1) C_{m+1} = 2(m+lambda) x C_m - (m + 2 lambda - 1) C_{m-1}
/// seeded with C_0 = 1, C_1 = 2 lambda x.  Exact coefficient arithmetic keeps
/// derivatives exact as well (degrees stay in single digits here).
inline std::vector<double> gegenbauer_coefficients(int n, double lambda) {
    if (n < 0) throw std::domain_error("gegenbauer: negative degree");
    std::vector<double> prev{1.0};
    if (n == 0) return prev;
    std::vector<double> cur{0.0, 2.0 * lambda};
    for (int m = 1; m < n; ++m) {
        std::vector<double> next(m + 2, 0.0);
        double a = 2.0 * (m + lambda) / (m + 1.0);
        double b = (m + 2.0 * lambda - 1.0) / (m + 1.0);
        for (size_t j = 0; j < cur.size(); ++j) next[j + 1] += a * cur[j];
        for (size_t j = 0; j < prev.size(); ++j) next[j] -= b * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline double poly_eval(const std::vector<double>& coeffs, double x) {
    double r = 0.0;
    for (size_t j = coeffs.size(); j-- > 0;) r = r * x + coeffs[j];
    return r;
}

inline std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
    if (coeffs.size() <= 1) return {0.0};
    std::vector<double> d(coeffs.size() - 1);
    for (size_t j = 1; j < coeffs.size(); ++j) d[j - 1] = static_cast<double>(j) * coeffs[j];
    return d;
}

/// C_n^lambda(x) by the value recurrence (no coefficient table needed).
inline double gegenbauer(int n, double lambda, double x) {
    if (n < 0) throw std::domain_error("gegenbauer: negative degree");
    if (n == 0) return 1.0;
    double ym = 1.0;
    double y = 2.0 * lambda * x;
    for (int m = 1; m < n; ++m) {
        double yn = (2.0 * (m + lambda) * x * y - (m + 2.0 * lambda - 1.0) * ym) / (m + 1.0);
        ym = y;
        y = yn;
    }
    return y;
}

/// Limit eigenvalues gamma_n = 2 n (n+1) of the singular Sturm-Liouville
/// problem -2(1-x^2) w'' = gamma w with w(+-1) = 0.
inline double gamma_n(int n) {
    if (n < 1) throw std::domain_error("gamma_n: n must be >= 1");
    return 2.0 * n * (n + 1.0);
}

} // namespace tfspec
