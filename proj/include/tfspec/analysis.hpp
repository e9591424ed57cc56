#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "tfspec/errors.hpp"
#include "tfspec/matching.hpp"
#include "tfspec/operators.hpp"
#include "tfspec/roots.hpp"
#include "tfspec/wkb.hpp"

namespace tfspec {

/// One eigenvalue-sweep row.  `excluded` rows (search failures or deviations
/// under the double-precision floor) are reported but never fitted.
struct SweepRow {
    double eps = 0.0;
    double gamma = 0.0;
    double deviation = 0.0;
    double a_ratio = 0.0;
    bool excluded = false;
    std::string note;
};

struct SweepResult {
    int n_target = 0;
    double target_gamma = 0.0;
    std::vector<SweepRow> rows; // sorted by eps descending
};

struct PowerFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
};

/// Below this measured |gamma - gamma_n| an eigenvalue shift is dominated by
/// round-off (~1e3 ulps of gamma_n) and must not enter rate fits.
inline constexpr double k_precision_floor = 1e-11;

/// Ordinary least squares on (log x, log y).  Requires >= 3 points with
/// positive x and y.
inline PowerFit power_fit_xy(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    const int n = static_cast<int>(lx.size());
    if (n < 3) throw fit_error("power_fit: need at least 3 usable points, have " +
                               std::to_string(n));
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
        syy += ly[i] * ly[i];
    }
    double den = n * sxx - sx * sx;
    if (den == 0.0) throw fit_error("power_fit: degenerate abscissae");
    PowerFit f;
    f.n_points = n;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_tot = syy - sy * sy / n;
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = ly[i] - (f.intercept + f.slope * lx[i]);
        ss_res += r * r;
    }
    f.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

/// Log-equispaced eps grid, count points from lo to hi inclusive.
inline std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0 && hi > 0.0) || count < 1)
        throw std::domain_error("log_spaced: need positive bounds and count >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = hi;
        return out;
    }
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        out[i] = std::exp(llo + (lhi - llo) * i / (count - 1.0));
    out.front() = lo;
    out.back() = hi;
    return out;
}

/// Trace the eigenvalue branch near gamma_n over an eps list.  Failed
/// searches and deviations below the precision floor are flagged excluded.
inline SweepResult sweep_eigenvalue(int n_target, std::vector<double> eps_values, int n_grid) {
    SweepResult res;
    res.n_target = n_target;
    res.target_gamma = gamma_n(n_target);
    std::sort(eps_values.begin(), eps_values.end(), std::greater<double>());
    for (double eps : eps_values) {
        SweepRow row;
        row.eps = eps;
        try {
            MatchResult m = find_eigenvalue(eps, n_target, n_grid);
            row.gamma = m.gamma;
            row.deviation = std::fabs(m.gamma - res.target_gamma);
            row.a_ratio = m.a_ratio;
            if (row.deviation < k_precision_floor) {
                row.excluded = true;
                row.note = "below precision floor";
            }
        } catch (const std::exception& ex) {
            row.gamma = std::nan("");
            row.deviation = std::nan("");
            row.a_ratio = std::nan("");
            row.excluded = true;
            row.note = ex.what();
        }
        res.rows.push_back(row);
    }
    return res;
}

/// Fit |gamma - gamma_n| ~ C eps^p over the non-excluded rows.
inline PowerFit power_fit(const SweepResult& sweep) {
    std::vector<double> xs, ys;
    for (const SweepRow& r : sweep.rows) {
        if (!r.excluded && r.deviation > 0.0) {
            xs.push_back(r.eps);
            ys.push_back(r.deviation);
        }
    }
    return power_fit_xy(xs, ys);
}

/// Fit |a1/a2| ~ C eps^p over the non-excluded rows.
inline PowerFit amplitude_ratio_fit(const SweepResult& sweep) {
    std::vector<double> xs, ys;
    for (const SweepRow& r : sweep.rows) {
        if (!r.excluded && std::isfinite(r.a_ratio) && r.a_ratio != 0.0) {
            xs.push_back(r.eps);
            ys.push_back(std::fabs(r.a_ratio));
        }
    }
    return power_fit_xy(xs, ys);
}

struct SelfAdjointResult {
    double lambda = 0.0;
    double delta_ratio = 0.0;
};

/// Even-mode eigenvalue of the self-adjoint problem L_-^eps w = lambda w via
/// the transcendental matching cos(sqrt(l)) / (sqrt(l) sin(sqrt(l))) =
/// -psi(1)/psi'(1), solved near lambda = (pi (2m-1)/2)^2.  delta_ratio is
/// the eps^(-2/3)-scaled root shift, which tends to
/// (2m-1) pi Gamma(1/3) / (2 6^(1/3) Gamma(2/3)).
inline SelfAdjointResult self_adjoint_eigenvalue(double eps, int m) {
    if (!(eps > 0.0 && eps <= 1e-2))
        throw std::domain_error("self_adjoint_eigenvalue: eps outside (0, 1e-2]");
    if (m < 1) throw std::domain_error("self_adjoint_eigenvalue: m must be >= 1");
    const double s_limit = 0.5 * M_PI * (2.0 * m - 1.0);
    const double e23 = std::pow(eps, 2.0 / 3.0);
    auto G = [&](double s) {
        double lambda = s * s;
        double r = log_derivative_ratio(eps * lambda, eps);
        return std::cos(s) / (s * std::sin(s)) + 1.0 / r;
    };
    // The root sits a distance ~ (2m-1) 1.71 eps^(2/3) below s_limit; keep
    // the bracket clear of the cot pole at s_limit - pi/2, which the
    // nominal 10 eps^(2/3) m width can cross for large m at coarse eps.
    double s_lo = std::max(s_limit - 10.0 * e23 * m, s_limit - 0.45 * M_PI);
    double s_hi = s_limit;
    double g_lo = G(s_lo), g_hi = G(s_hi);
    if ((g_lo > 0.0) == (g_hi > 0.0))
        throw not_found_error("self_adjoint_eigenvalue: no sign change in the bracket");
    double s = brent(G, s_lo, s_hi, 1e-15);
    SelfAdjointResult out;
    out.lambda = s * s;
    out.delta_ratio = (s_limit - s) / e23;
    return out;
}

enum class ScalingKind {
    inv_minus,
    inv_plus,
    composed,
    lambda1_minus,
    lambda1_plus,
    lambda1_absx
};

struct ScalingRow {
    double eps = 0.0;
    double value = 0.0;
    bool excluded = false;
    std::string note;
};

struct ScalingSweep {
    ScalingKind kind;
    std::vector<ScalingRow> rows;
    PowerFit fit;
};

namespace detail {

// lambda_1 of -d''/dx'' + |x|/eps^2 with two-grid Richardson (ratio 3, odd
// panel counts so the kink at x = 0 falls between nodes and the h^2
// expansion stays clean).
inline double lambda1_absx_refined(double eps, double L) {
    int m = resolved_panels(eps, L);
    if (m % 2 == 0) m += 1;
    auto lam = [&](int mm) {
        DiscreteOperator op = build_operator({PotentialKind::abs_x, eps}, L, mm);
        return smallest_eigenvalues(op, 1)[0];
    };
    double coarse = lam(m);
    double fine = lam(3 * m);
    return (9.0 * fine - coarse) / 8.0;
}

} // namespace detail

/// Quantity-vs-eps sweep with a log-log fit, for the resolvent norms and the
/// smallest-eigenvalue scalings.  Each row uses the resolution rule
/// h = eps^(2/3)/10 (override m only by editing the rule); rows that fail
/// are excluded with a note.
inline ScalingSweep scaling_sweep(ScalingKind kind, const std::vector<double>& eps_values,
                                  double L = 2.5) {
    ScalingSweep out;
    out.kind = kind;
    std::vector<double> xs, ys;
    for (double eps : eps_values) {
        ScalingRow row;
        row.eps = eps;
        try {
            int m = detail::resolved_panels(eps, L);
            switch (kind) {
                case ScalingKind::inv_minus:
                    row.value = resolvent_norm(ResolventKind::inv_minus, eps, L, m);
                    break;
                case ScalingKind::inv_plus:
                    row.value = resolvent_norm(ResolventKind::inv_plus, eps, L, m);
                    break;
                case ScalingKind::composed:
                    row.value = resolvent_norm(ResolventKind::composed, eps, L, m);
                    break;
                case ScalingKind::lambda1_minus: {
                    DiscreteOperator op = build_operator({PotentialKind::p_minus, eps}, L, m);
                    row.value = smallest_eigenvalues(op, 1)[0];
                    break;
                }
                case ScalingKind::lambda1_plus: {
                    DiscreteOperator op = build_operator({PotentialKind::q_plus, eps}, L, m);
                    row.value = smallest_eigenvalues(op, 1)[0];
                    break;
                }
                case ScalingKind::lambda1_absx:
                    row.value = detail::lambda1_absx_refined(eps, L);
                    break;
            }
            xs.push_back(eps);
            ys.push_back(row.value);
        } catch (const std::exception& ex) {
            row.excluded = true;
            row.note = ex.what();
        }
        out.rows.push_back(row);
    }
    try {
        out.fit = power_fit_xy(xs, ys);
    } catch (const fit_error&) {
        out.fit = PowerFit{}; // n_points = 0: no usable fit, rows still reported
    }
    return out;
}

} // namespace tfspec
