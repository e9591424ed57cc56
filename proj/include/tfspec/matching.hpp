#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "tfspec/errors.hpp"
#include "tfspec/gegenbauer.hpp"
#include "tfspec/inner.hpp"
#include "tfspec/roots.hpp"
#include "tfspec/wkb.hpp"

namespace tfspec {

/// The 2x2 linear system in the interior amplitudes (a1, a2): row 1 enforces
/// continuity of w' at x = 1, row 2 the prescribed jump of w''' there.
struct MatchSystem {
    double m11, m12, m21, m22;
    double gamma, eps;
};

inline MatchSystem assemble_match_system(double gamma, double eps, const InnerBasis& basis,
                                         double u_p, double u_m) {
    if (!(gamma > 0.0))
        throw std::domain_error("assemble_match_system: gamma must be > 0");
    const double e23 = std::pow(eps, 2.0 / 3.0);
    const double e53 = std::pow(eps, 5.0 / 3.0);
    MatchSystem s;
    s.gamma = gamma;
    s.eps = eps;
    s.m11 = u_p - e23 * basis.d1.first;
    s.m12 = eps * u_m / std::sqrt(gamma) - e23 * basis.d2.first;
    s.m21 = std::sqrt(gamma) * u_m - e53 * basis.d1.second;
    s.m22 = eps * u_p - e53 * basis.d2.second;
    return s;
}

namespace detail {

/// Determinant after dividing each row by its Euclidean norm.  Row scaling
/// moves no root and keeps the value in [-1, 1].
inline double normalized_determinant(const MatchSystem& s) {
    double r1 = std::hypot(s.m11, s.m12);
    double r2 = std::hypot(s.m21, s.m22);
    if (r1 == 0.0 || r2 == 0.0) return 0.0;
    return (s.m11 / r1) * (s.m22 / r2) - (s.m12 / r1) * (s.m21 / r2);
}

} // namespace detail

/// Row-normalized matching determinant at (gamma, eps) with an n-point inner
/// grid.  Sign changes in gamma locate eigenvalues.
inline double determinant(double gamma, double eps, int n_grid) {
    InnerBasis basis = solve_inner_basis(eps, gamma, n_grid);
    auto [u_p, u_m] = matching_coefficients(gamma, eps);
    return detail::normalized_determinant(assemble_match_system(gamma, eps, basis, u_p, u_m));
}

/// Located eigenvalue with the null-vector data and scattering coefficients.
struct MatchResult {
    double gamma = 0.0;
    double det_residual = 0.0;
    double a1 = 0.0, a2 = 0.0; // null vector, |a| = 1
    double a_ratio = 0.0;      // a1 / a2
    double c_plus = 0.0, c_minus = 0.0;
    int n_target = 0;
    int n_grid = 0;
    double eps = 0.0;
};

/// Locate the eigenvalue branch gamma(eps) near gamma_n = 2 n (n+1) for an
/// odd (even-eigenfunction) target index.  The search expands a bracket
/// around gamma_n geometrically, starting from half-width max(100 eps^2,
/// 1e-9) since |gamma - gamma_n| ~ C eps^2; candidate sign changes are
/// refined by Brent and accepted only if the normalized determinant actually
/// vanishes there (a sign flip across a resonance pole is rejected).
inline MatchResult find_eigenvalue(double eps, int n_target, int n_grid,
                                   double max_halfwidth = 1.0) {
    if (n_target < 1 || n_target % 2 == 0)
        throw std::domain_error(
            "find_eigenvalue: n_target must be odd (even eigenfunctions only)");
    const double target = gamma_n(n_target);

    // A probe landing essentially on the interior resonance cannot be
    // evaluated; nudge it by a few ulps (the determinant itself is smooth
    // through the resonance, only the basis solve degenerates at the point).
    auto det_at = [&](double g) {
        for (int k = 0; k < 4; ++k) {
            try {
                return determinant(g, eps, n_grid);
            } catch (const near_singular_error&) {
                g = g * (1.0 + 1e-13) + 1e-300;
            }
        }
        return determinant(g, eps, n_grid);
    };

    struct Probe {
        double g, det;
    };
    std::vector<Probe> probes;
    auto add_probe = [&](double g) {
        for (const Probe& p : probes)
            if (p.g == g) return;
        probes.push_back({g, det_at(g)});
        std::sort(probes.begin(), probes.end(),
                  [](const Probe& a, const Probe& b) { return a.g < b.g; });
    };

    double w = std::max(100.0 * eps * eps, 1e-9);
    add_probe(target - w);
    add_probe(target);
    add_probe(target + w);

    std::vector<std::pair<double, double>> rejected;
    std::ostringstream scan_log;
    while (true) {
        // Candidate intervals, nearest to the target first.
        std::vector<std::pair<double, double>> cands;
        for (size_t i = 0; i + 1 < probes.size(); ++i)
            if ((probes[i].det > 0) != (probes[i + 1].det > 0))
                cands.emplace_back(probes[i].g, probes[i + 1].g);
        std::sort(cands.begin(), cands.end(), [&](const auto& a, const auto& b) {
            double da = std::min(std::fabs(a.first - target), std::fabs(a.second - target));
            double db = std::min(std::fabs(b.first - target), std::fabs(b.second - target));
            return da < db;
        });
        for (const auto& c : cands) {
            bool seen = false;
            for (const auto& r : rejected)
                if (r.first <= c.first && c.second <= r.second) seen = true;
            if (seen) continue;
            double root;
            try {
                root = brent(det_at, c.first, c.second, 1e-14 * target);
            } catch (const std::invalid_argument&) {
                // nudged re-evaluation flipped an endpoint sign; drop it
                rejected.push_back(c);
                continue;
            }
            double resid = std::fabs(det_at(root));
            if (resid <= 1e-9) {
                MatchResult res;
                res.gamma = root;
                res.det_residual = resid;
                res.n_target = n_target;
                res.n_grid = n_grid;
                res.eps = eps;
                InnerBasis basis = solve_inner_basis(eps, root, n_grid);
                auto [u_p, u_m] = matching_coefficients(root, eps);
                MatchSystem s = assemble_match_system(root, eps, basis, u_p, u_m);
                // Null vector from the row with the larger norm.
                double r1 = std::hypot(s.m11, s.m12), r2 = std::hypot(s.m21, s.m22);
                double a1, a2;
                if (r1 >= r2) {
                    a1 = -s.m12;
                    a2 = s.m11;
                } else {
                    a1 = -s.m22;
                    a2 = s.m21;
                }
                double na = std::hypot(a1, a2);
                res.a1 = a1 / na;
                res.a2 = a2 / na;
                res.a_ratio = res.a1 / res.a2;
                double sg = std::sqrt(root);
                double psi_p = detail::psi_outer_x(sg, eps, 1.0);
                double psi_m = detail::psi_outer_x(-sg, eps, 1.0);
                res.c_plus = (res.a1 - eps / sg * res.a2) / (2.0 * psi_p);
                res.c_minus = (res.a1 + eps / sg * res.a2) / (2.0 * psi_m);
                return res;
            }
            rejected.push_back(c);
            scan_log << " rejected [" << c.first << ", " << c.second << "] resid " << resid
                     << ";";
        }
        if (w >= max_halfwidth) break;
        double w_new = std::min(4.0 * w, max_halfwidth);
        // Probe the fresh annulus on both sides, a few points per side.
        for (int i = 1; i <= 4; ++i) {
            double r = w + (w_new - w) * i / 4.0;
            add_probe(target - r);
            add_probe(target + r);
        }
        w = w_new;
    }
    std::ostringstream msg;
    msg << "find_eigenvalue: no determinant zero within |gamma - " << target << "| <= "
        << max_halfwidth << " at eps = " << eps << " (probes:";
    for (const Probe& p : probes) msg << " (" << p.g << ", " << p.det << ")";
    msg << scan_log.str() << ")";
    throw not_found_error(msg.str());
}

enum class Normalization { sup_one, l2_one };

/// Global eigenfunction samples: interior combination a1 w1 + a2 w2 on
/// [0, 1], its even reflection on [-1, 0], and the decaying exterior
/// combination c+ psi_A^{+sqrt(g)} + c- psi_A^{-sqrt(g)} beyond |x| = 1.
struct EigenfunctionProfile {
    std::vector<double> xs, ws;
    double gamma = 0.0, eps = 0.0;
    Normalization normalization = Normalization::sup_one;
};

inline EigenfunctionProfile assemble_eigenfunction(const MatchResult& result,
                                                   const InnerBasis& basis, double x_max,
                                                   Normalization norm = Normalization::sup_one) {
    if (x_max <= 1.0)
        throw std::domain_error("assemble_eigenfunction: x_max must exceed 1");
    const int n = basis.grid.n;
    const double h = basis.grid.h;
    const double sg = std::sqrt(result.gamma);

    std::vector<double> xs_half, ws_half;
    for (int k = 0; k < n; ++k) {
        xs_half.push_back(basis.grid.nodes[k]);
        ws_half.push_back(result.a1 * basis.w1[k] + result.a2 * basis.w2[k]);
    }
    xs_half.push_back(1.0);
    ws_half.push_back(result.a1); // w1(1) = 1, w2(1) = 0
    for (double x = 1.0 + h; x <= x_max + 1e-12; x += h) {
        xs_half.push_back(x);
        double p = result.c_plus * detail::psi_outer_x(sg, result.eps, x) +
                   result.c_minus * detail::psi_outer_x(-sg, result.eps, x);
        ws_half.push_back(p);
    }

    EigenfunctionProfile prof;
    prof.gamma = result.gamma;
    prof.eps = result.eps;
    prof.normalization = norm;
    for (size_t i = xs_half.size(); i-- > 1;) {
        prof.xs.push_back(-xs_half[i]);
        prof.ws.push_back(ws_half[i]);
    }
    for (size_t i = 0; i < xs_half.size(); ++i) {
        prof.xs.push_back(xs_half[i]);
        prof.ws.push_back(ws_half[i]);
    }

    double sign = ws_half[0] >= 0.0 ? 1.0 : -1.0;
    double scale = 1.0;
    if (norm == Normalization::sup_one) {
        double m = 0.0;
        for (double v : prof.ws) m = std::max(m, std::fabs(v));
        scale = m;
    } else {
        double s2 = 0.0;
        for (size_t i = 0; i + 1 < prof.xs.size(); ++i) {
            double dx = prof.xs[i + 1] - prof.xs[i];
            s2 += 0.5 * dx * (prof.ws[i] * prof.ws[i] + prof.ws[i + 1] * prof.ws[i + 1]);
        }
        scale = std::sqrt(s2);
    }
    if (scale > 0.0)
        for (double& v : prof.ws) v /= sign * scale;
    return prof;
}

/// a1/a2 at the located eigenvalue, per eps.  Errors from individual
/// eigenvalue searches propagate to the caller.
inline std::vector<std::pair<double, double>> amplitude_ratio_curve(
    const std::vector<double>& eps_list, int n_target, int n_grid = 200) {
    std::vector<std::pair<double, double>> out;
    for (double e : eps_list) {
        MatchResult r = find_eigenvalue(e, n_target, n_grid);
        out.emplace_back(e, r.a_ratio);
    }
    return out;
}

} // namespace tfspec
