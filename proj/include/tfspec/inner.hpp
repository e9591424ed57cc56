#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tfspec/errors.hpp"
#include "tfspec/linalg.hpp"

namespace tfspec {

/// Uniform grid on [0, 1] for the inner problem: unknowns live at
/// x_k = k h, k = 0..n-1 (h = 1/n); the boundary x_n = 1 carries imposed
/// data and is bookkept on the right-hand side.
struct Grid {
    int n = 0;
    double h = 0.0;
    std::vector<double> nodes;
    double boundary = 1.0;
};

inline Grid make_grid(int n) {
    if (n < 1) throw std::domain_error("make_grid: n must be positive");
    Grid g;
    g.n = n;
    g.h = 1.0 / n;
    g.nodes.resize(n);
    for (int k = 0; k < n; ++k) g.nodes[k] = k * g.h;
    return g;
}

/// Second-difference matrix on the grid, (1/h^2) tridiag(1, -2, 1), with the
/// first row [-2, 2, 0, ...] encoding the even-symmetry (Neumann) condition
/// at x = 0 through the ghost point w_{-1} = w_1.
inline TridiagonalMatrix build_a1(int n) {
    if (n < 3) throw std::domain_error("build_a1: n must be >= 3");
    const double h = 1.0 / n;
    const double ih2 = 1.0 / (h * h);
    TridiagonalMatrix t = TridiagonalMatrix::zeros(n);
    for (int k = 0; k < n; ++k) t.diag[k] = -2.0 * ih2;
    for (int k = 0; k + 1 < n; ++k) {
        t.super[k] = ih2;
        t.sub[k] = ih2;
    }
    t.super[0] = 2.0 * ih2;
    return t;
}

/// A2 = eps^2 A1 - 2 diag(1 - x_k^2).
inline TridiagonalMatrix build_a2(int n, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("build_a2: eps must be positive");
    TridiagonalMatrix t = build_a1(n);
    const double e2 = eps * eps;
    for (double& v : t.sub) v *= e2;
    for (double& v : t.super) v *= e2;
    const double h = 1.0 / n;
    for (int k = 0; k < n; ++k) {
        double x = k * h;
        t.diag[k] = e2 * t.diag[k] - 2.0 * (1.0 - x * x);
    }
    return t;
}

/// The two even inner basis solutions and their one-sided boundary
/// derivatives at x = 1.  Solution 1 imposes w(1) = 1, w''(1) = 0; solution 2
/// imposes w(1) = 0, w''(1) = 1.  v = w'' throughout; d = {w'(1), w'''(1)}.
struct InnerBasis {
    Grid grid;
    double eps = 0.0;
    double gamma = 0.0;
    std::vector<double> w1, v1, w2, v2;
    std::pair<double, double> d1{0.0, 0.0};
    std::pair<double, double> d2{0.0, 0.0};
};

namespace detail {

// Three-point one-sided derivative at x = 1 from the boundary value f1 and
// the last two grid values; exact on quadratics.
inline double boundary_derivative(double f1, double fnm1, double fnm2, double h) {
    return (3.0 * f1 - 4.0 * fnm1 + fnm2) / (2.0 * h);
}

} // namespace detail

/// Solve the coupled difference equations
///   A1 w = v + boundary injection,  A2 v = gamma w + boundary injection
/// for both basis solutions, as one 2n x 2n banded system (unknowns
/// interleaved w_0, v_0, w_1, v_1, ...) factored once and solved for the two
/// right-hand sides.  The closed inverse-based forms stay in the tests as the
/// independent oracle.
inline InnerBasis solve_inner_basis(double eps, double gamma, int n) {
    if (!(eps > 0.0 && eps <= 0.1))
        throw std::domain_error("solve_inner_basis: eps outside (0, 0.1]");
    if (gamma < 0.0) throw std::domain_error("solve_inner_basis: gamma must be >= 0");
    if (n < 50) throw std::domain_error("solve_inner_basis: n must be >= 50");

    InnerBasis basis;
    basis.grid = make_grid(n);
    basis.eps = eps;
    basis.gamma = gamma;
    const double h = basis.grid.h;
    const double ih2 = 1.0 / (h * h);
    const double e2 = eps * eps;

    TridiagonalMatrix a1 = build_a1(n);
    TridiagonalMatrix a2 = build_a2(n, eps);

    const int N = 2 * n;
    BandedLU lu(N, 2, 2);
    for (int k = 0; k < n; ++k) {
        // Row 2k: A1 w - v = rhs
        lu.set(2 * k, 2 * k, a1.diag[k]);
        if (k > 0) lu.set(2 * k, 2 * (k - 1), a1.sub[k - 1]);
        if (k + 1 < n) lu.set(2 * k, 2 * (k + 1), a1.super[k]);
        lu.set(2 * k, 2 * k + 1, -1.0);
        // Row 2k+1: -gamma w + A2 v = rhs
        lu.set(2 * k + 1, 2 * k + 1, a2.diag[k]);
        if (k > 0) lu.set(2 * k + 1, 2 * (k - 1) + 1, a2.sub[k - 1]);
        if (k + 1 < n) lu.set(2 * k + 1, 2 * (k + 1) + 1, a2.super[k]);
        lu.set(2 * k + 1, 2 * k, -gamma);
    }
    lu.factorize();
    // The interior resonance (where the homogeneous problem with w(1) = 0,
    // w''(1) = 0 is solvable) makes the basis amplitudes blow up nearby; the
    // row-equilibrated factorization stays usable well past that, so only a
    // essentially exact hit is treated as an error.
    if (lu.min_pivot_ratio() < 1e-18)
        throw near_singular_error(
            "solve_inner_basis: coupled system numerically singular (gamma at a discrete "
            "resonance), equilibrated pivot ratio below 1e-18",
            1.0 / std::max(lu.min_pivot_ratio(), 1e-300));

    // Boundary injections: w_n and v_n enter the k = n-1 stencils with
    // coefficients 1/h^2 (A1 row) and eps^2/h^2 (A2 row); moved to the rhs.
    auto solve_pair = [&](double wn, double vn) {
        std::vector<double> rhs(N, 0.0);
        rhs[2 * (n - 1)] = -wn * ih2;
        rhs[2 * (n - 1) + 1] = -vn * e2 * ih2;
        lu.solve(rhs);
        return rhs;
    };
    std::vector<double> s1 = solve_pair(1.0, 0.0);
    std::vector<double> s2 = solve_pair(0.0, 1.0);

    basis.w1.resize(n);
    basis.v1.resize(n);
    basis.w2.resize(n);
    basis.v2.resize(n);
    for (int k = 0; k < n; ++k) {
        basis.w1[k] = s1[2 * k];
        basis.v1[k] = s1[2 * k + 1];
        basis.w2[k] = s2[2 * k];
        basis.v2[k] = s2[2 * k + 1];
    }
    basis.d1 = {detail::boundary_derivative(1.0, basis.w1[n - 1], basis.w1[n - 2], h),
                detail::boundary_derivative(0.0, basis.v1[n - 1], basis.v1[n - 2], h)};
    basis.d2 = {detail::boundary_derivative(0.0, basis.w2[n - 1], basis.w2[n - 2], h),
                detail::boundary_derivative(1.0, basis.v2[n - 1], basis.v2[n - 2], h)};
    return basis;
}

} // namespace tfspec
