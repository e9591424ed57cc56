#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "tfspec/analysis.hpp"
#include "reference_values.hpp"

using namespace tfspec;

TEST_CASE("power fit recovers exact synthetic power laws") {
    for (double p : {1.0 / 3.0, 2.0 / 3.0, 1.0, 4.0 / 3.0, 2.0}) {
        std::vector<double> xs, ys;
        for (int i = 0; i < 12; ++i) {
            double x = std::pow(10.0, -6.0 + 0.4 * i);
            xs.push_back(x);
            ys.push_back(3.0 * std::pow(x, p));
        }
        PowerFit f = power_fit_xy(xs, ys);
        CHECK(std::fabs(f.slope - p) <= 1e-12);
        CHECK(std::fabs(f.intercept - std::log(3.0)) <= 1e-10);
        CHECK(f.r_squared >= 1.0 - 1e-12);
        CHECK(f.r_squared <= 1.0 + 1e-12);
    }
}

TEST_CASE("power fit on a synthetic sweep: deviation = 3 eps^2") {
    SweepResult s;
    s.n_target = 1;
    s.target_gamma = 4.0;
    for (int i = 0; i < 8; ++i) {
        SweepRow r;
        r.eps = std::pow(10.0, -6.0 + 0.25 * i);
        r.gamma = 4.0 + 3.0 * r.eps * r.eps;
        r.deviation = 3.0 * r.eps * r.eps;
        r.a_ratio = r.eps;
        s.rows.push_back(r);
    }
    PowerFit f = power_fit(s);
    CHECK(f.slope == Catch::Approx(2.0).margin(1e-12));
    CHECK(f.r_squared == Catch::Approx(1.0).margin(1e-12));
    CHECK(f.n_points == 8);
}

TEST_CASE("power fit needs at least three usable rows") {
    SweepResult s;
    s.rows.push_back({1e-4, 4.0, 1e-6, 0.0, false, ""});
    s.rows.push_back({1e-5, 4.0, 1e-8, 0.0, false, ""});
    CHECK_THROWS_AS(power_fit(s), fit_error);
    // Excluded rows never enter.
    s.rows.push_back({1e-6, 4.0, 1e-10, 0.0, true, "below precision floor"});
    CHECK_THROWS_AS(power_fit(s), fit_error);
}

TEST_CASE("sweep over an empty eps list gives empty rows") {
    SweepResult s = sweep_eigenvalue(1, {}, 200);
    CHECK(s.rows.empty());
    CHECK_THROWS_AS(power_fit(s), fit_error);
}

TEST_CASE("small production sweep: monotone deviations, sane slope") {
    auto eps_values = log_spaced(1e-5, 1e-4, 6);
    SweepResult s = sweep_eigenvalue(1, eps_values, 200);
    REQUIRE(s.rows.size() == 6);
    // rows sorted by eps descending
    for (size_t i = 0; i + 1 < s.rows.size(); ++i) CHECK(s.rows[i].eps > s.rows[i + 1].eps);
    double prev = 1e300;
    for (const SweepRow& r : s.rows) {
        CHECK_FALSE(r.excluded);
        CHECK(r.deviation > 0.0);
        CHECK(r.deviation < prev);
        prev = r.deviation;
    }
    CHECK(s.rows.front().deviation <= 1e-5); // eps = 1e-4 deviation
    PowerFit f = power_fit(s);
    CHECK(f.slope == Catch::Approx(2.0).margin(0.2));

    SECTION("fit is stable under single-row removal") {
        for (size_t drop = 0; drop < s.rows.size(); ++drop) {
            SweepResult t = s;
            t.rows.erase(t.rows.begin() + drop);
            CHECK(std::fabs(power_fit(t).slope - f.slope) < 0.05);
        }
    }

    SECTION("sweep is deterministic bit for bit") {
        SweepResult s2 = sweep_eigenvalue(1, eps_values, 200);
        REQUIRE(s2.rows.size() == s.rows.size());
        for (size_t i = 0; i < s.rows.size(); ++i) {
            CHECK(std::memcmp(&s.rows[i].gamma, &s2.rows[i].gamma, sizeof(double)) == 0);
            CHECK(std::memcmp(&s.rows[i].a_ratio, &s2.rows[i].a_ratio, sizeof(double)) == 0);
        }
    }
}

TEST_CASE("self-adjoint eigenvalue study") {
    // eps -> 0: lambda approaches pi^2/4, at the eps^(2/3) rate with the
    // Gamma-constant coefficient.
    double l3 = self_adjoint_eigenvalue(1e-3, 1).lambda;
    double l5 = self_adjoint_eigenvalue(1e-5, 1).lambda;
    double lim = M_PI * M_PI / 4.0;
    CHECK(std::fabs(l5 - lim) < std::fabs(l3 - lim));
    double corrected = std::pow(M_PI / 2.0 - refvals::delta_ratio_const *
                                                std::pow(1e-5, 2.0 / 3.0), 2);
    CHECK(l5 == Catch::Approx(corrected).margin(2e-5));

    SelfAdjointResult r1 = self_adjoint_eigenvalue(1e-5, 1);
    CHECK(std::fabs(r1.delta_ratio / refvals::delta_ratio_const - 1.0) <= 0.05);
    SelfAdjointResult r2 = self_adjoint_eigenvalue(1e-5, 2);
    CHECK(std::fabs(r2.delta_ratio / (3.0 * r1.delta_ratio) - 1.0) <= 0.05);

    CHECK_THROWS_AS(self_adjoint_eigenvalue(0.5, 1), std::domain_error);
    CHECK_THROWS_AS(self_adjoint_eigenvalue(1e-5, 0), std::domain_error);

    SECTION("higher modes stay on the (2m-1) law even at coarse eps") {
        SelfAdjointResult base = self_adjoint_eigenvalue(1e-4, 1);
        for (int m : {2, 3, 5}) {
            SelfAdjointResult r = self_adjoint_eigenvalue(1e-4, m);
            CHECK(r.delta_ratio / base.delta_ratio ==
                  Catch::Approx(2.0 * m - 1.0).epsilon(0.05));
        }
    }
}

TEST_CASE("scaling sweeps land on the documented exponents") {
    auto eps_values = log_spaced(1e-3, 1e-2, 5);
    ScalingSweep sm = scaling_sweep(ScalingKind::lambda1_minus, eps_values);
    CHECK(std::fabs(sm.fit.slope) <= 0.05);
    // constant within a factor 2 across the sweep
    CHECK(sm.rows.front().value / sm.rows.back().value < 2.0);
    CHECK(sm.rows.back().value / sm.rows.front().value < 2.0);

    ScalingSweep sp = scaling_sweep(ScalingKind::lambda1_plus, eps_values);
    CHECK(sp.fit.slope == Catch::Approx(-4.0 / 3.0).margin(0.07));

    ScalingSweep sa = scaling_sweep(ScalingKind::lambda1_absx, eps_values);
    CHECK(sa.fit.slope == Catch::Approx(-4.0 / 3.0).margin(0.05));
    // prefactor from the finest row
    const ScalingRow& finest = sa.rows.front().eps < sa.rows.back().eps ? sa.rows.front()
                                                                        : sa.rows.back();
    CHECK(std::fabs(finest.value * std::pow(finest.eps, 4.0 / 3.0) - 1.0187929716) <= 1e-3);

    ScalingSweep si = scaling_sweep(ScalingKind::inv_plus, eps_values);
    CHECK(si.fit.slope == Catch::Approx(4.0 / 3.0).margin(0.07));

    ScalingSweep sc = scaling_sweep(ScalingKind::composed, eps_values);
    CHECK(sc.fit.slope >= 1.4);
}

TEST_CASE("log_spaced endpoints and count") {
    auto v = log_spaced(1e-6, 1e-4, 20);
    REQUIRE(v.size() == 20);
    CHECK(v.front() == Catch::Approx(1e-6).epsilon(1e-12));
    CHECK(v.back() == Catch::Approx(1e-4).epsilon(1e-12));
    for (size_t i = 0; i + 1 < v.size(); ++i)
        CHECK(v[i + 1] / v[i] == Catch::Approx(v[1] / v[0]).epsilon(1e-10));
}
