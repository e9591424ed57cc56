#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfspec/errors.hpp"
#include "tfspec/linalg.hpp"

namespace tfspec {

/// Real-line potentials of the model problem, all scaled by 1/eps^2:
///   p_minus:     (x^2 - 1) 1_{|x|>1}          (inverse uniformly bounded)
///   q_plus:      2(1-x^2) 1_{|x|<1} + (x^2-1) 1_{|x|>1}
///   abs_x:       |x|                          (lambda_1 ~ -a1' eps^(-4/3))
///   p0_interior: 0 on (-1, 1) with Dirichlet walls at +-1 (the eps -> 0
///                limit of p_minus; lambda_n = pi^2 n^2 / 4)
enum class PotentialKind { p_minus, q_plus, abs_x, p0_interior };

struct PotentialSpec {
    PotentialKind kind;
    double eps;
};

inline double potential_value(const PotentialSpec& spec, double x) {
    const double e2 = spec.eps * spec.eps;
    switch (spec.kind) {
        case PotentialKind::p_minus:
            return std::fabs(x) > 1.0 ? (x * x - 1.0) / e2 : 0.0;
        case PotentialKind::q_plus:
            return (std::fabs(x) < 1.0 ? 2.0 * (1.0 - x * x) : (x * x - 1.0)) / e2;
        case PotentialKind::abs_x:
            return std::fabs(x) / e2;
        case PotentialKind::p0_interior:
            return 0.0;
    }
    return 0.0;
}

/// Dirichlet finite-difference discretization of -d^2/dx^2 + potential on
/// [-L, L]: m panels, unknowns at the m-1 interior nodes.
struct DiscreteOperator {
    TridiagonalMatrix matrix;
    std::vector<double> nodes;
    double h = 0.0;
    double half_width = 0.0;
    PotentialSpec spec{PotentialKind::p_minus, 0.0};
};

/// Assemble the discrete operator.  For the turning-point potentials the
/// grid must resolve the eps^(2/3) layer: h <= eps^(2/3)/10 or the result
/// would be silently wrong, so the assembly refuses instead.
/// p0_interior ignores L and lives on [-1, 1].
inline DiscreteOperator build_operator(const PotentialSpec& spec, double L, int m) {
    if (spec.kind != PotentialKind::p0_interior && L < 1.5)
        throw std::domain_error("build_operator: L must be >= 1.5");
    if (m < 100) throw std::domain_error("build_operator: m must be >= 100");
    if (spec.kind != PotentialKind::p0_interior && !(spec.eps > 0.0))
        throw std::domain_error("build_operator: eps must be positive");
    DiscreteOperator op;
    op.spec = spec;
    op.half_width = (spec.kind == PotentialKind::p0_interior) ? 1.0 : L;
    const int n = m - 1;
    op.h = 2.0 * op.half_width / m;
    if (spec.kind == PotentialKind::p_minus || spec.kind == PotentialKind::q_plus) {
        double h_max = std::pow(spec.eps, 2.0 / 3.0) / 10.0;
        if (op.h > h_max)
            throw resolution_error(
                "build_operator: step " + std::to_string(op.h) +
                " does not resolve the eps^(2/3) boundary layer (need h <= " +
                std::to_string(h_max) + "); raise m");
    }
    op.nodes.resize(n);
    op.matrix = TridiagonalMatrix::zeros(n);
    const double ih2 = 1.0 / (op.h * op.h);
    for (int j = 0; j < n; ++j) {
        double x = -op.half_width + (j + 1) * op.h;
        op.nodes[j] = x;
        op.matrix.diag[j] = 2.0 * ih2 + potential_value(spec, x);
        if (j + 1 < n) {
            op.matrix.sub[j] = -ih2;
            op.matrix.super[j] = -ih2;
        }
    }
    return op;
}

/// k smallest eigenvalues, ascending, via Sturm bisection on the symmetric
/// tridiagonal matrix.
inline std::vector<double> smallest_eigenvalues(const DiscreteOperator& op, int k) {
    if (k < 1 || k > 10) throw std::domain_error("smallest_eigenvalues: k must be in 1..10");
    return smallest_eigenvalues_tridiag(op.matrix.diag,
                                        op.matrix.sub, k, 1e-8);
}

namespace detail {

inline int resolved_panels(double eps, double L) {
    double h_max = std::pow(eps, 2.0 / 3.0) / 10.0;
    int m = static_cast<int>(std::ceil(2.0 * L / h_max));
    m += (10 - m % 10) % 10; // multiple of 10 keeps +-1 on the grid for L = 2.5
    return m;
}

/// The symmetric pencil reduction: with L_+ = R^T R (Cholesky), the gammas
/// are the eigenvalues of the pentadiagonal B = eps^2 R L_- R^T.
inline SymmetricBand pencil_band(double eps, double L, int m) {
    DiscreteOperator lm = build_operator({PotentialKind::p_minus, eps}, L, m);
    DiscreteOperator lp = build_operator({PotentialKind::q_plus, eps}, L, m);
    const int n = m - 1;
    std::vector<double> r, s;
    cholesky_tridiag(lp.matrix, r, s);
    auto T = [&](int i, int j) -> double {
        if (i < 0 || j < 0 || i >= n || j >= n) return 0.0;
        if (i == j) return lm.matrix.diag[i];
        if (std::abs(i - j) == 1) return lm.matrix.sub[std::min(i, j)];
        return 0.0;
    };
    auto R = [&](int i, int c) -> double {
        if (c == i) return r[i];
        if (c == i + 1 && i + 1 < n) return s[i];
        return 0.0;
    };
    SymmetricBand B = SymmetricBand::zeros(n, 2);
    const double e2 = eps * eps;
    for (int i = 0; i < n; ++i) {
        for (int d = 0; d <= 2; ++d) {
            int j = i + d;
            if (j >= n) break;
            double v = 0.0;
            for (int a = i; a <= std::min(i + 1, n - 1); ++a)
                for (int b = j; b <= std::min(j + 1, n - 1); ++b) v += R(i, a) * T(a, b) * R(j, b);
            B.band[d][i] = e2 * v;
        }
    }
    return B;
}

} // namespace detail

/// Brute-force oracle for the generalized eigenvalues: the k smallest gamma
/// of the pencil eps^2 L_+ L_-, via the symmetric Cholesky reduction and
/// banded spectrum slicing.
inline std::vector<double> generalized_gamma_spectrum(double eps, double L, int m, int k) {
    if (k < 1 || k > 6) throw std::domain_error("generalized_gamma_spectrum: k must be in 1..6");
    SymmetricBand B = detail::pencil_band(eps, L, m);
    return smallest_eigenvalues_band(B, k, 1e-10);
}

/// Eigenvector of the pencil for the index-th smallest gamma (0-based),
/// normalized to unit discrete L^2 norm.  w = R^T y with y the eigenvector
/// of the banded reduction.
inline std::vector<double> generalized_gamma_eigenvector(double eps, double L, int m, int index) {
    SymmetricBand B = detail::pencil_band(eps, L, m);
    std::vector<double> evs = smallest_eigenvalues_band(B, index + 1, 1e-10);
    std::vector<double> y = band_inverse_iteration(B, evs[index]);
    DiscreteOperator lp = build_operator({PotentialKind::q_plus, eps}, L, m);
    std::vector<double> r, s;
    cholesky_tridiag(lp.matrix, r, s);
    const int n = static_cast<int>(y.size());
    std::vector<double> w(n, 0.0);
    for (int c = 0; c < n; ++c) {
        double v = r[c] * y[c];
        if (c > 0) v += s[c - 1] * y[c - 1];
        w[c] = v;
    }
    double h = 2.0 * L / m, nrm = 0.0;
    for (double x : w) nrm += x * x * h;
    nrm = std::sqrt(nrm);
    for (double& x : w) x /= nrm;
    return w;
}

/// A_eps u = eps^-2 (L_-)^-1 (L_+)^-1 u as two tridiagonal solves on a
/// shared grid.
struct AepsApplier {
    DiscreteOperator l_minus, l_plus;
    double eps;

    AepsApplier(double eps_, double L, int m)
        : l_minus(build_operator({PotentialKind::p_minus, eps_}, L, m)),
          l_plus(build_operator({PotentialKind::q_plus, eps_}, L, m)),
          eps(eps_) {}

    std::vector<double> apply(const std::vector<double>& u) const {
        std::vector<double> t = l_plus.matrix.solve(u);
        std::vector<double> w = l_minus.matrix.solve(t);
        for (double& v : w) v /= eps * eps;
        return w;
    }
};

inline std::vector<double> apply_a_eps(const std::vector<double>& u, double eps, double L, int m) {
    return AepsApplier(eps, L, m).apply(u);
}

namespace detail {

// Cumulative integral of samples f on a uniform grid: prefix[j] =
// int_{x_0}^{x_j} f.  Piecewise-cubic rule (fourth order); one-sided
// stencils at the ends.
inline std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size());
    std::vector<double> F(n, 0.0);
    if (n < 2) return F;
    if (n < 5) {
        for (int j = 1; j < n; ++j) F[j] = F[j - 1] + 0.5 * h * (f[j - 1] + f[j]);
        return F;
    }
    for (int j = 0; j + 1 < n; ++j) {
        double inc;
        if (j == 0)
            inc = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        else if (j == n - 2)
            inc = h / 24.0 * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]);
        else
            inc = h / 24.0 * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]);
        F[j + 1] = F[j] + inc;
    }
    return F;
}

} // namespace detail

/// Action of the limiting operator: u sampled at quadrature_m + 1 uniform
/// nodes on [-1, 1] in, A_0 u at the same nodes out.  Uses the iterated
/// integral form with the order of integration exchanged, which removes the
/// 1/(1 -+ x) endpoint singularities analytically:
///   A_0 u(s) = (1-s) int_{-1}^s u/(4(1-x)) + int_s^1 u/4
///              - int_s^1 u (x-s)/(4(1+x)) + (s-1)/2 I(u),
/// where I(u) is the full double integral (identically zero in exact
/// arithmetic; keeping the quadrature value pins A_0 u(-1) = 0 exactly).
inline std::vector<double> apply_a0(const std::vector<double>& u, int quadrature_m) {
    if (quadrature_m < 8) throw std::domain_error("apply_a0: quadrature_m must be >= 8");
    const int M = quadrature_m;
    if (static_cast<int>(u.size()) != M + 1)
        throw std::invalid_argument("apply_a0: u must have quadrature_m + 1 samples");
    const double h = 2.0 / M;
    auto x_of = [&](int j) { return -1.0 + j * h; };

    // f1 = u/(4(1-x)) on nodes 0..M-1 (prefix integrals never reach x = 1).
    std::vector<double> f1(M + 1, 0.0);
    for (int j = 0; j < M; ++j) f1[j] = u[j] / (4.0 * (1.0 - x_of(j)));
    std::vector<double> f1_head(f1.begin(), f1.end() - 1);
    std::vector<double> P1 = detail::cumulative_integral(f1_head, h); // size M

    // Suffix integrals of u/4, x u/(4(1+x)), u/(4(1+x)) on nodes 1..M.
    std::vector<double> g0(M), ga(M), gb(M);
    for (int j = 1; j <= M; ++j) {
        double x = x_of(j);
        g0[j - 1] = u[j] / 4.0;
        ga[j - 1] = x * u[j] / (4.0 * (1.0 + x));
        gb[j - 1] = u[j] / (4.0 * (1.0 + x));
    }
    auto suffix = [&](const std::vector<double>& f) {
        std::vector<double> rev(f.rbegin(), f.rend());
        std::vector<double> F = detail::cumulative_integral(rev, h);
        std::vector<double> out(F.rbegin(), F.rend());
        return out; // out[j-1] = int_{x_j}^{1} f
    };
    std::vector<double> Q0 = suffix(g0), Qa = suffix(ga), Qb = suffix(gb);

    auto value_at = [&](int j) {
        double s = x_of(j);
        double t1 = (j == 0 || j == M) ? 0.0 : (1.0 - s) * P1[j];
        double t2 = (j == M) ? 0.0 : Q0[j == 0 ? 0 : j - 1];
        double t3 = (j == M) ? 0.0 : -(Qa[j == 0 ? 0 : j - 1] - s * Qb[j == 0 ? 0 : j - 1]);
        return t1 + t2 + t3;
    };
    // I(u) is the inner double integral evaluated at s = -1.
    double I = value_at(0);
    std::vector<double> out(M + 1, 0.0);
    for (int j = 0; j <= M; ++j) {
        double s = x_of(j);
        out[j] = value_at(j) + 0.5 * (s - 1.0) * I;
    }
    out[0] = 0.0;
    out[M] = 0.0;
    return out;
}

/// A_0 acting on a full-line grid sample: reads the part of u on [-1, 1]
/// (which must be node-aligned), applies A_0 there, extends by zero.
inline std::vector<double> apply_a0_fullgrid(const std::vector<double>& u,
                                             const std::vector<double>& nodes) {
    const int n = static_cast<int>(nodes.size());
    int j_lo = -1, j_hi = -1;
    for (int j = 0; j < n; ++j) {
        if (j_lo < 0 && nodes[j] >= -1.0 - 1e-12) j_lo = j;
        if (nodes[j] <= 1.0 + 1e-12) j_hi = j;
    }
    if (j_lo < 0 || j_hi < j_lo || std::fabs(nodes[j_lo] + 1.0) > 1e-9 ||
        std::fabs(nodes[j_hi] - 1.0) > 1e-9)
        throw std::invalid_argument("apply_a0_fullgrid: grid does not align with [-1, 1]");
    std::vector<double> inner(u.begin() + j_lo, u.begin() + j_hi + 1);
    std::vector<double> a0 = apply_a0(inner, j_hi - j_lo);
    std::vector<double> out(n, 0.0);
    for (int j = j_lo; j <= j_hi; ++j) out[j] = a0[j - j_lo];
    return out;
}

enum class ResolventKind { inv_minus, inv_plus, composed };

/// Discrete L^2 operator norm of (L_-)^-1, (L_+)^-1 or their composition
/// (L_+)^-1 (L_-)^-1.  The symmetric cases are reciprocal smallest
/// eigenvalues; the composition uses power iteration on K^T K (four
/// tridiagonal solves per step).
inline double resolvent_norm(ResolventKind kind, double eps, double L, int m) {
    if (kind == ResolventKind::inv_minus) {
        DiscreteOperator op = build_operator({PotentialKind::p_minus, eps}, L, m);
        return 1.0 / smallest_eigenvalues(op, 1)[0];
    }
    if (kind == ResolventKind::inv_plus) {
        DiscreteOperator op = build_operator({PotentialKind::q_plus, eps}, L, m);
        return 1.0 / smallest_eigenvalues(op, 1)[0];
    }
    DiscreteOperator lm = build_operator({PotentialKind::p_minus, eps}, L, m);
    DiscreteOperator lp = build_operator({PotentialKind::q_plus, eps}, L, m);
    const int n = m - 1;
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) v[j] = 1.0 + 1e-3 * std::sin(1.0 + 7.0 * j);
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;
    double lambda = 0.0, lambda_prev = -1.0;
    for (int it = 0; it < 5000; ++it) {
        // w = K^T K v with K = (L_+)^-1 (L_-)^-1
        std::vector<double> w = lm.matrix.solve(v);
        w = lp.matrix.solve(w);
        w = lp.matrix.solve(w);
        w = lm.matrix.solve(w);
        double num = 0.0;
        for (int j = 0; j < n; ++j) num += v[j] * w[j];
        lambda = num;
        double wn = 0.0;
        for (double x : w) wn += x * x;
        wn = std::sqrt(wn);
        for (int j = 0; j < n; ++j) v[j] = w[j] / wn;
        if (it > 4 && std::fabs(lambda - lambda_prev) <= 1e-10 * lambda)
            return std::sqrt(lambda);
        lambda_prev = lambda;
    }
    throw iteration_error("resolvent_norm: power iteration did not converge");
}

/// The hydrodynamic-limit ground state profile.
inline double thomas_fermi_profile(double x) {
    return std::fabs(x) < 1.0 ? std::sqrt(1.0 - x * x) : 0.0;
}

} // namespace tfspec
