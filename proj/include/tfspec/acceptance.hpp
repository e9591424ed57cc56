#pragma once

// The acceptance suite: one self-contained check per shipped claim, each
// printing a single PASS/FAIL line with its measured numbers.  Tolerances
// are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tfspec/airy.hpp"
#include "tfspec/analysis.hpp"
#include "tfspec/gegenbauer.hpp"
#include "tfspec/matching.hpp"
#include "tfspec/operators.hpp"

namespace tfspec {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline bool agree_sig_digits(double a, double b, int digits) {
    double scale = std::max(std::fabs(a), std::fabs(b));
    if (scale == 0.0) return true;
    double tol = 0.5 * std::pow(10.0, std::floor(std::log10(scale)) - digits + 1);
    return std::fabs(a - b) <= tol;
}

inline std::string fmt(double v, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

} // namespace detail

/// Everything criterion 1..3 need from one sweep; computed once.
inline std::vector<CriterionResult> run_acceptance_criteria() {
    using clock = std::chrono::steady_clock;
    std::vector<CriterionResult> out;
    auto timed = [&](int id, const std::string& name,
                     const std::function<std::pair<bool, std::string>()>& body,
                     double runtime_limit = 0.0) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        auto t0 = clock::now();
        try {
            auto [pass, detail] = body();
            r.pass = pass;
            r.detail = detail;
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        if (runtime_limit > 0.0) {
            bool in_time = r.seconds <= runtime_limit;
            r.pass = r.pass && in_time;
            r.detail += "; runtime " + detail::fmt(r.seconds, 3) + " s (limit " +
                        detail::fmt(runtime_limit, 3) + " s)";
        }
        out.push_back(r);
    };

    const std::vector<double> sweep_eps = log_spaced(1e-6, 1e-4, 20);
    SweepResult sweep1, sweep3;

    timed(1, "gegenbauer-spectrum-rate-gamma1", [&]() -> std::pair<bool, std::string> {
        sweep1 = sweep_eigenvalue(1, sweep_eps, 200);
        PowerFit f = power_fit(sweep1);
        // Informational: fitted constant against the proven-order envelope
        // |gamma - gamma_n| <= C eps^(1/3).
        double c_env = 0.0;
        for (const SweepRow& r : sweep1.rows)
            if (!r.excluded) c_env = std::max(c_env, r.deviation / std::cbrt(r.eps));
        bool pass = f.slope >= 1.90 && f.slope <= 2.10;
        return {pass, "slope=" + detail::fmt(f.slope) + " (window [1.90, 2.10], paper 1.9959), r2=" +
                          detail::fmt(f.r_squared) + ", points=" + std::to_string(f.n_points) +
                          "/20, envelope C (dev<=C eps^(1/3)) = " + detail::fmt(c_env)};
    }, 60.0);

    timed(2, "gegenbauer-spectrum-rate-gamma3", [&]() -> std::pair<bool, std::string> {
        sweep3 = sweep_eigenvalue(3, sweep_eps, 200);
        PowerFit f = power_fit(sweep3);
        bool pass = f.slope >= 1.85 && f.slope <= 2.10;
        return {pass, "slope=" + detail::fmt(f.slope) + " (window [1.85, 2.10], paper 1.9662), r2=" +
                          detail::fmt(f.r_squared) + ", points=" + std::to_string(f.n_points) + "/20"};
    }, 120.0);

    timed(3, "amplitude-ratio-law", [&]() -> std::pair<bool, std::string> {
        PowerFit f = amplitude_ratio_fit(sweep1);
        double first = std::fabs(sweep1.rows.front().a_ratio); // largest eps
        double last = std::fabs(sweep1.rows.back().a_ratio);   // smallest eps
        bool pass = f.slope >= 1.9 && f.slope <= 2.1 && last < first;
        return {pass, "slope=" + detail::fmt(f.slope) + " (window [1.9, 2.1], paper 1.99998), |a1/a2| " +
                          detail::fmt(first) + " -> " + detail::fmt(last) + " as eps shrinks"};
    });

    timed(4, "matching-vs-pencil-oracle", [&]() -> std::pair<bool, std::string> {
        const std::vector<double> eps_set{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
        bool pass = true;
        std::string detail_str;
        for (double eps : eps_set) {
            MatchResult m = find_eigenvalue(eps, 1, 200);
            int panels = detail::resolved_panels(eps, 2.5);
            double oracle = generalized_gamma_spectrum(eps, 2.5, panels, 1)[0];
            bool ok = detail::agree_sig_digits(m.gamma, oracle, 3);
            pass = pass && ok;
            detail_str += "eps=" + detail::fmt(eps, 2) + ": match=" + detail::fmt(m.gamma, 7) +
                          " oracle=" + detail::fmt(oracle, 7) + (ok ? " ok; " : " MISMATCH; ");
        }
        if (!pass)
            detail_str +=
                "(known limitation: the determinant zero traced by the bracketing rule is the "
                "resonance-locked branch 4 + ~600 eps^2, while the resolved pencil's true "
                "eigenvalue is 4 - ~13.2 eps^(2/3); the two-branch structure is described in "
                "the README)";
        return {pass, detail_str};
    }, 300.0);

    timed(5, "operator-eigenvalue-scalings", [&]() -> std::pair<bool, std::string> {
        const std::vector<double> eps_values = log_spaced(1e-3, 1e-2, 5);
        ScalingSweep sm = scaling_sweep(ScalingKind::lambda1_minus, eps_values);
        ScalingSweep sp = scaling_sweep(ScalingKind::lambda1_plus, eps_values);
        ScalingSweep sa = scaling_sweep(ScalingKind::lambda1_absx, eps_values);
        bool ok_minus = sm.fit.slope >= -0.05 && sm.fit.slope <= 0.05;
        bool ok_plus = sp.fit.slope >= -1.40 && sp.fit.slope <= -1.26;
        bool bound_plus = true;
        for (const ScalingRow& r : sp.rows)
            if (!r.excluded && r.value * std::pow(r.eps, 4.0 / 3.0) > 4.0) bound_plus = false;
        bool ok_absx = sa.fit.slope >= -1.38 && sa.fit.slope <= -1.28;
        const ScalingRow* finest = nullptr;
        for (const ScalingRow& r : sa.rows)
            if (!r.excluded && (finest == nullptr || r.eps < finest->eps)) finest = &r;
        double prefactor = finest ? finest->value * std::pow(finest->eps, 4.0 / 3.0) : 0.0;
        bool ok_prefactor = std::fabs(prefactor - 1.0187929716) <= 1e-3;
        bool pass = ok_minus && ok_plus && bound_plus && ok_absx && ok_prefactor;
        return {pass, "lambda1(L-) slope=" + detail::fmt(sm.fit.slope) + " in [-0.05, 0.05]; " +
                          "lambda1(L+) slope=" + detail::fmt(sp.fit.slope) +
                          " in [-1.40, -1.26], eps^(4/3)-scaled max<=4: " +
                          (bound_plus ? "yes" : "NO") + "; lambda1(|x|) slope=" +
                          detail::fmt(sa.fit.slope) + " in [-1.38, -1.28], prefactor=" +
                          detail::fmt(prefactor, 10) + " (want 1.0187929716 +- 1e-3)"};
    });

    timed(6, "composed-resolvent-decay", [&]() -> std::pair<bool, std::string> {
        ScalingSweep sc = scaling_sweep(ScalingKind::composed, log_spaced(1e-3, 1e-2, 5));
        bool pass = sc.fit.slope >= 1.4;
        return {pass, "||(L+)^-1 (L-)^-1|| ~ eps^p, fitted p=" + detail::fmt(sc.fit.slope) +
                          " (need >= 1.4; proven upper order 26/15-delta ~ 1.733, reported only)"};
    });

    timed(7, "self-adjoint-boundary-shift", [&]() -> std::pair<bool, std::string> {
        SelfAdjointResult r1 = self_adjoint_eigenvalue(1e-5, 1);
        SelfAdjointResult r2 = self_adjoint_eigenvalue(1e-5, 2);
        const double want = 1.7101822104563837;
        bool ok1 = std::fabs(r1.delta_ratio / want - 1.0) <= 0.05;
        bool ok2 = std::fabs(r2.delta_ratio / (3.0 * r1.delta_ratio) - 1.0) <= 0.05;
        return {ok1 && ok2, "m=1 delta_ratio=" + detail::fmt(r1.delta_ratio, 7) + " (want " +
                                detail::fmt(want, 7) + " +-5%); m=2/m=1 ratio=" +
                                detail::fmt(r2.delta_ratio / r1.delta_ratio, 5) + " (want 3 +-5%)"};
    });

    timed(8, "a_eps-to-a0-convergence", [&]() -> std::pair<bool, std::string> {
        std::vector<std::function<double(double)>> probes = {
            [](double x) { return std::exp(-std::pow(x / 0.5, 2)); },
            [](double x) { return std::exp(-std::pow((x - 0.3) / 0.4, 2)); },
            [](double x) { return std::exp(-std::pow((x + 0.5) / 0.3, 2)); },
            [](double x) { return std::exp(-x * x); },
            [](double x) { return std::fabs(x) < 1 ? gegenbauer(2, -0.5, x) : 0.0; },
            [](double x) { return std::fabs(x) < 1 ? gegenbauer(4, -0.5, x) : 0.0; },
            [](double x) { return std::fabs(x) < 1 ? gegenbauer(6, -0.5, x) : 0.0; },
            [](double x) {
                double t = (std::fabs(x) - 1.5) / 0.35;
                return std::fabs(t) < 1 ? std::exp(-1 / (1 - t * t)) : 0.0;
            },
            [](double x) {
                double t = (x - 1.4) / 0.25;
                return std::fabs(t) < 1 ? std::exp(-1 / (1 - t * t)) : 0.0;
            },
            [](double x) {
                return std::fabs(x) < 1 ? std::sin(M_PI * x) * std::sin(M_PI * x) : 0.0;
            },
        };
        std::vector<double> ratios;
        for (double eps : {1e-2, 3e-3, 1e-3}) {
            int m = detail::resolved_panels(eps, 2.5);
            AepsApplier A(eps, 2.5, m);
            double worst = 0.0;
            for (const auto& f : probes) {
                std::vector<double> u(m - 1);
                for (int j = 0; j < m - 1; ++j) u[j] = f(A.l_minus.nodes[j]);
                std::vector<double> au = A.apply(u);
                std::vector<double> a0u = apply_a0_fullgrid(u, A.l_minus.nodes);
                double num = 0.0, den = 0.0;
                for (int j = 0; j < m - 1; ++j) {
                    double d = au[j] - a0u[j];
                    num += d * d;
                    den += u[j] * u[j];
                }
                worst = std::max(worst, std::sqrt(num / den));
            }
            ratios.push_back(worst);
        }
        bool pass = ratios[0] > ratios[1] && ratios[1] > ratios[2];
        return {pass, "max ||A_eps u - A_0 u|| / ||u|| over 10 probes: " + detail::fmt(ratios[0]) +
                          " (1e-2) -> " + detail::fmt(ratios[1]) + " (3e-3) -> " +
                          detail::fmt(ratios[2]) + " (1e-3), strictly decreasing: " +
                          (pass ? "yes" : "NO")};
    });

    timed(9, "eigenfunction-shape-and-jump", [&]() -> std::pair<bool, std::string> {
        const double eps = 1e-4;
        MatchResult r = find_eigenvalue(eps, 1, 200);
        InnerBasis basis = solve_inner_basis(eps, r.gamma, 200);
        EigenfunctionProfile prof = assemble_eigenfunction(r, basis, 1.5);
        double sup = 0.0;
        for (size_t i = 0; i < prof.xs.size(); ++i) {
            double x = prof.xs[i];
            double ref = std::fabs(x) < 1.0 ? (1.0 - x * x) : 0.0; // C_2^{-1/2} sup-normalized
            sup = std::max(sup, std::fabs(prof.ws[i] - ref));
        }
        bool ok_shape = sup <= 0.05;
        // Jump of w''' at x = 1: exterior third derivative from the ODE
        // identity, interior from the one-sided stencil on v.
        double sg = std::sqrt(r.gamma);
        double rp = log_derivative_ratio(sg, eps), rm = log_derivative_ratio(-sg, eps);
        double cp_psi = (r.a1 - eps / sg * r.a2) / 2.0;
        double cm_psi = (r.a1 + eps / sg * r.a2) / 2.0;
        double w3_plus = (sg / eps) * (-rp * cp_psi + rm * cm_psi) + 2.0 / (eps * eps) * r.a1;
        double w3_minus = r.a1 * basis.d1.second + r.a2 * basis.d2.second;
        double jump = w3_plus - w3_minus;
        double want = 2.0 * r.a1 / (eps * eps);
        bool ok_jump = std::fabs(jump - want) <= 0.05 * std::fabs(want);
        std::string msg = "sup-distance to normalized C2 = " + detail::fmt(sup) +
                          " (<= 0.05: " + (ok_shape ? "yes" : "NO") + "); [w'''] = " +
                          detail::fmt(jump) + " vs 2 w(1)/eps^2 = " + detail::fmt(want) +
                          " (within 5%: " + (ok_jump ? "yes" : "NO") + ")";
        if (!ok_jump)
            msg += " (known limitation: at the traced resonance-locked root the basis "
                   "third derivatives are amplified to ~1e16, so the jump residual noise "
                   "floor exceeds 2 w(1)/eps^2 ~ 1e2; the identity holds to machine "
                   "precision on the true eigenvalue branch; see the README)";
        return {ok_shape && ok_jump, msg};
    });

    timed(10, "special-function-suite", [&]() -> std::pair<bool, std::string> {
        double worst_w = 0.0;
        for (double z = -2.0; z <= 20.0; z += 0.125) {
            AiryQuartet q = airy_eval(z);
            worst_w = std::max(worst_w,
                               std::fabs(q.ai * q.bi_prime - q.ai_prime * q.bi - M_1_PI));
        }
        double worst_ode = 0.0;
        for (int n = 1; n <= 8; ++n) {
            auto c = gegenbauer_coefficients(n + 1, -0.5);
            auto d2 = poly_derivative(poly_derivative(c));
            for (int i = 0; i < 50; ++i) {
                double x = -0.98 + 1.96 * i / 49.0;
                double resid =
                    -2.0 * (1 - x * x) * poly_eval(d2, x) - gamma_n(n) * poly_eval(c, x);
                worst_ode = std::max(worst_ode, std::fabs(resid));
            }
        }
        double worst_id = 0.0;
        for (int n = 1; n <= 8; ++n) {
            for (int i = 0; i <= 40; ++i) {
                double x = -1.0 + 2.0 * i / 40.0;
                double lhs = gegenbauer(n + 1, -0.5, x);
                double rhs = (1 - x * x) * gegenbauer(n - 1, 1.5, x) / (n * (n + 1.0));
                worst_id = std::max(worst_id, std::fabs(lhs - rhs));
            }
        }
        bool pass = worst_w <= 1e-10 && worst_ode <= 1e-10 && worst_id <= 1e-10;
        return {pass, "Wronskian dev " + detail::fmt(worst_w, 3) + ", Gegenbauer ODE residual " +
                          detail::fmt(worst_ode, 3) + ", family identity " +
                          detail::fmt(worst_id, 3) + " (all <= 1e-10)"};
    });

    return out;
}

/// Run all criteria, print one line each, return true when all pass.
inline bool run_acceptance(std::ostream& os) {
    std::vector<CriterionResult> results = run_acceptance_criteria();
    bool all = true;
    for (const CriterionResult& r : results) {
        all = all && r.pass;
        os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.name << ": "
           << r.detail << "  [" << detail::fmt(r.seconds, 3) << " s]\n";
    }
    os << (all ? "acceptance: all criteria passed\n" : "acceptance: FAILURES present\n");
    return all;
}

} // namespace tfspec
