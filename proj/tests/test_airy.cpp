#include <catch2/catch_amalgamated.hpp>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <random>

#include "tfspec/airy.hpp"
#include "reference_values.hpp"

using tfspec::airy_eval;
using tfspec::AiryQuartet;

namespace {
double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}
} // namespace

TEST_CASE("airy values at zero match the closed forms") {
    auto g = tfspec::gamma_constants();
    AiryQuartet q = airy_eval(0.0);
    CHECK(q.ai == Catch::Approx(1.0 / (std::pow(3.0, 2.0 / 3.0) * g.gamma_two_thirds)).epsilon(1e-14));
    CHECK(q.ai == Catch::Approx(0.3550280539).epsilon(1e-9));
    CHECK(q.ai_prime ==
          Catch::Approx(-1.0 / (std::pow(3.0, 1.0 / 3.0) * g.gamma_one_third)).epsilon(1e-14));
    CHECK(q.ai_prime == Catch::Approx(-0.2588194038).epsilon(1e-9));
    CHECK(q.bi == Catch::Approx(0.6149266274).epsilon(1e-9));
}

TEST_CASE("gamma constants satisfy the reflection identity") {
    auto g = tfspec::gamma_constants();
    double lhs = g.gamma_one_third * g.gamma_two_thirds;
    double rhs = 2.0 * M_PI / std::sqrt(3.0);
    CHECK(std::fabs(lhs - rhs) <= 1e-12);
}

TEST_CASE("airy Wronskian equals 1/pi on [-2, 20]") {
    for (double z = -2.0; z <= 20.0; z += 0.125) {
        AiryQuartet q = airy_eval(z);
        double w = q.ai * q.bi_prime - q.ai_prime * q.bi;
        CHECK(std::fabs(w - M_1_PI) <= 1e-10);
    }
}

TEST_CASE("airy matches frozen multiprecision table") {
    // Budget 2e-11: well under the 1e-10 requirement; the worst case is the
    // Maclaurin cancellation right at the series/bridge boundary (z = 4).
    for (const auto& row : refvals::airy_table) {
        AiryQuartet q = airy_eval(row.z);
        INFO("z = " << row.z);
        CHECK(rel_err(q.ai, row.ai) <= 2e-11);
        CHECK(rel_err(q.ai_prime, row.ai_prime) <= 2e-11);
        CHECK(rel_err(q.bi, row.bi) <= 2e-11);
        CHECK(rel_err(q.bi_prime, row.bi_prime) <= 2e-11);
    }
}

TEST_CASE("airy agrees with Boost.Math on [-5, 30]") {
    std::mt19937 rng(20240901u);
    std::uniform_real_distribution<double> dist(-5.0, 30.0);
    for (int i = 0; i < 300; ++i) {
        double z = dist(rng);
        AiryQuartet q = airy_eval(z);
        INFO("z = " << z);
        CHECK(rel_err(q.ai, boost::math::airy_ai(z)) <= 1e-10);
        CHECK(rel_err(q.bi, boost::math::airy_bi(z)) <= 1e-10);
        CHECK(rel_err(q.ai_prime, boost::math::airy_ai_prime(z)) <= 1e-10);
        CHECK(rel_err(q.bi_prime, boost::math::airy_bi_prime(z)) <= 1e-10);
    }
}

TEST_CASE("airy regime switchovers are consistent to 1e-10") {
    // Evaluate each switch point through both regimes and compare.
    using namespace tfspec::detail;
    AiryQuartet series_lo = airy_maclaurin(k_airy_z_series);
    AiryQuartet asym_hi = airy_asymptotic(k_airy_z_asym);
    // Ai at the series edge via the bridge (marched down from the
    // asymptotic anchor) vs the Maclaurin value.
    double y = asym_hi.ai, yp = asym_hi.ai_prime;
    airy_ode_march(y, yp, k_airy_z_asym, k_airy_z_series);
    CHECK(rel_err(y, series_lo.ai) <= 1e-10);
    CHECK(rel_err(yp, series_lo.ai_prime) <= 1e-10);
    // Bi at the asymptotic edge via the bridge (marched up from the series
    // anchor) vs the asymptotic value.
    y = series_lo.bi;
    yp = series_lo.bi_prime;
    airy_ode_march(y, yp, k_airy_z_series, k_airy_z_asym);
    CHECK(rel_err(y, asym_hi.bi) <= 1e-10);
    CHECK(rel_err(yp, asym_hi.bi_prime) <= 1e-10);
}

TEST_CASE("airy satisfies the ODE under numerical differentiation") {
    // Central second difference of ai reproduces z*ai up to O(h^2) plus
    // rounding amplified by 1/h^2.
    const double h = 1e-4;
    for (double z : {-1.5, 0.3, 2.0, 5.5, 12.0}) {
        AiryQuartet qm = airy_eval(z - h), q0 = airy_eval(z), qp = airy_eval(z + h);
        double d2_ai = (qp.ai - 2.0 * q0.ai + qm.ai) / (h * h);
        double d2_bi = (qp.bi - 2.0 * q0.bi + qm.bi) / (h * h);
        double scale_ai = std::max(std::fabs(z * q0.ai), std::fabs(q0.ai) / (h * h) * 1e-14);
        double scale_bi = std::max(std::fabs(z * q0.bi), std::fabs(q0.bi) / (h * h) * 1e-14);
        CHECK(std::fabs(d2_ai - z * q0.ai) <= 1e-5 * std::fabs(q0.ai) / (h) + 1e-7 * scale_ai);
        CHECK(std::fabs(d2_bi - z * q0.bi) <= 1e-5 * std::fabs(q0.bi) / (h) + 1e-7 * scale_bi);
    }
}

TEST_CASE("leading asymptotics hold within 2% at z = 10") {
    // Compare the fully converged value against the one-term formula
    // Ai ~ exp(-2/3 z^(3/2)) / (2 sqrt(pi) z^(1/4)).
    double z = 10.0;
    double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    double leading = std::exp(-zeta) / (2.0 * std::sqrt(M_PI) * std::pow(z, 0.25));
    double full = airy_eval(z).ai;
    CHECK(std::fabs(leading / full - 1.0) <= 0.02);
    double leading_bi = std::exp(zeta) / (std::sqrt(M_PI) * std::pow(z, 0.25));
    CHECK(std::fabs(leading_bi / airy_eval(z).bi - 1.0) <= 0.02);
}

TEST_CASE("airy rejects bad arguments") {
    CHECK_THROWS_AS(airy_eval(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(airy_eval(std::numeric_limits<double>::infinity()), std::domain_error);
    CHECK_THROWS_AS(airy_eval(-9.0), std::domain_error);
}

TEST_CASE("first zero of Ai' is where it should be") {
    double r = tfspec::airy_ai_prime_first_zero();
    CHECK(std::fabs(r - refvals::ai_prime_first_zero) <= 1e-10);
    CHECK(std::fabs(r - (-1.0187929716)) <= 1e-9);
    CHECK(std::fabs(airy_eval(r).ai_prime) <= 1e-10);
    // Simple root: sign change across it.
    double left = airy_eval(r - 0.1).ai_prime;
    double right = airy_eval(r + 0.1).ai_prime;
    CHECK(left * right < 0.0);
}
