#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "dicke/theory.h"

using namespace dicke;

namespace {

ModelParams params(int n, double g, double g_prime = 0.0) {
    ModelParams p;
    p.n_atoms = n;
    p.g = g;
    p.g_prime = g_prime;
    return p;
}

}  // namespace

TEST_CASE("saddle_point") {
    SUBCASE("transition point") {
        const auto sp = saddle_point(params(3, 1.0));
        CHECK_FALSE(sp.superradiant);
        CHECK(sp.mu == 1.0);
        CHECK(sp.lambda_a == 0.0);
        CHECK(sp.lambda_b == 0.0);
    }
    SUBCASE("N=3, g=2") {
        const auto sp = saddle_point(params(3, 2.0));
        CHECK(sp.superradiant);
        CHECK(sp.mu == doctest::Approx(0.25));
        CHECK(sp.lambda_a_sq() == doctest::Approx(2.8125).epsilon(1e-14));
        CHECK(sp.lambda_b_sq() == doctest::Approx(1.125).epsilon(1e-14));
        CHECK(sp.lambda_plus_sq == doctest::Approx(3.9375).epsilon(1e-14));
        CHECK(sp.lambda_minus_sq == doctest::Approx(1.6875).epsilon(1e-14));
    }
    SUBCASE("lambda_a^2 linear in N") {
        const double base = saddle_point(params(1, 2.5)).lambda_a_sq();
        for (int n : {2, 3, 7, 40}) CHECK(saddle_point(params(n, 2.5)).lambda_a_sq() == doctest::Approx(n * base));
    }
    SUBCASE("normal phase is flagged, not an error") {
        const auto sp = saddle_point(params(5, 0.4));
        CHECK_FALSE(sp.superradiant);
        CHECK(sp.lambda_a == 0.0);
    }
    SUBCASE("depends on g + g' only") {
        const auto a = saddle_point(params(4, 2.2, 0.0));
        const auto b = saddle_point(params(4, 1.6, 0.6));
        CHECK(a.mu == doctest::Approx(b.mu));
        CHECK(a.lambda_a == doctest::Approx(b.lambda_a));
        CHECK(a.lambda_b == doctest::Approx(b.lambda_b));
    }
}

TEST_CASE("effective_theory: N=3, g=2 constants") {
    const auto t = effective_theory(params(3, 2.0));
    CHECK(t.E_H == doctest::Approx(std::sqrt(19.0)).epsilon(1e-14));
    CHECK(t.D == doctest::Approx(8.0 / 57.0).epsilon(1e-14));
    CHECK(t.D_minus == doctest::Approx(19.0 / 45.0).epsilon(1e-14));
    CHECK(t.gamma == doctest::Approx(-15.0 / 19.0).epsilon(1e-14));
    CHECK(t.P_nearest == 4);
    CHECK(t.alpha == doctest::Approx(-0.0625).epsilon(1e-14));
    CHECK(t.E_H == doctest::Approx(4.358899).epsilon(1e-6));
    CHECK(t.D == doctest::Approx(0.140351).epsilon(1e-5));
}

TEST_CASE("effective_theory: errors and scaling") {
    CHECK_THROWS_AS(effective_theory(params(3, 0.9)), std::domain_error);
    double prev = effective_theory(params(2, 2.0)).D;
    for (int n : {4, 8, 16, 64}) {
        const double d = effective_theory(params(n, 2.0)).D;
        CHECK(d < prev);
        prev = d;
    }
    CHECK(effective_theory(params(100000, 2.0)).D < 1e-4);
}

TEST_CASE("berry_offset convention") {
    CHECK(berry_offset(3.9375).P == 4);
    CHECK(berry_offset(3.9375).alpha == doctest::Approx(-0.0625));
    CHECK(berry_offset(2.5).P == 2);
    CHECK(berry_offset(2.5).alpha == 0.5);
    CHECK(berry_offset(3.4).alpha == doctest::Approx(0.4));
    CHECK(berry_offset(3.6).alpha == doctest::Approx(-0.4));
    // Integer shifts leave alpha unchanged.
    for (double x : {1.1, 2.75, 5.5, 7.49})
        CHECK(berry_offset(x + 3.0).alpha == doctest::Approx(berry_offset(x).alpha).epsilon(1e-12));
}

TEST_CASE("landau_energy") {
    EffectiveTheory t;
    t.E_H = 2.0;
    t.D = 0.1;
    t.alpha = 0.0;
    CHECK(landau_energy(t, 0, 0) == doctest::Approx(1.0));
    CHECK(landau_energy(t, 0, 1) == doctest::Approx(landau_energy(t, 0, -1)));
    CHECK_THROWS_AS(landau_energy(t, -1, 0), std::invalid_argument);

    const auto real = effective_theory(params(3, 2.0));
    CHECK(landau_energy(real, 0, 0) == doctest::Approx(std::sqrt(19.0) / 2 + (4.0 / 57.0) * 0.0625 * 0.0625));
    CHECK(landau_energy(real, 0, 0) == doctest::Approx(2.179724).epsilon(1e-6));
}

TEST_CASE("predictions: N=3, g=2") {
    const auto p = predictions(params(3, 2.0));
    const double eh = std::sqrt(19.0);
    const double co = (1.0 / (4.0 * eh)) * (2.0 / eh + 1.0) * (2.0 / eh + 1.0);
    CHECK(p.E_G == doctest::Approx((8.0 / 57.0) * 0.5625).epsilon(1e-14));
    CHECK(p.E_G == doctest::Approx(0.0789474).epsilon(1e-6));
    CHECK(p.E_o == doctest::Approx(4.437847).epsilon(1e-6));
    CHECK(p.C_o == doctest::Approx(co).epsilon(1e-14));
    CHECK(p.C_G == doctest::Approx(2.8125 - co + 1.0 - 0.5 * (15.0 / 19.0) * 0.0625).epsilon(1e-14));
    // Published rounded values, good to ~2e-4 relative.
    CHECK(p.C_o == doctest::Approx(0.122084).epsilon(1e-3));
    CHECK(p.C_G == doctest::Approx(3.665745).epsilon(1e-3));
    CHECK(p.C_H == doctest::Approx(2.8125 / eh).epsilon(1e-14));
    CHECK(p.C_H == doctest::Approx(0.645232).epsilon(1e-6));
    CHECK(p.Q_M == doctest::Approx(-1.0 + 1.0 / eh).epsilon(1e-14));
    CHECK(p.Q_M == doctest::Approx(-0.770582).epsilon(1e-5));
    CHECK(p.Delta_PG == 0.0);
    CHECK(p.delta_crw == 0.0);
}

TEST_CASE("predictions: identities over a sweep") {
    for (int n : {1, 2, 3, 5, 20}) {
        for (double g = 1.05; g < 6.0; g += 0.137) {
            const auto p = predictions(params(n, g));
            CHECK(p.E_o == p.E_H + p.E_G);
            CHECK(p.C_o > 0);
            CHECK(p.C_H > 0);
            CHECK(p.Q_M > -1.0);
            CHECK(p.Q_M < -0.5);
        }
    }
    CHECK(predictions(params(3, 1e4)).Q_M == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("predictions: counter-rotating quantities") {
    SUBCASE("vanishes at the QCP") {
        ModelParams p = params(2, 0.8, 0.2);
        // g + g' = g_c exactly is the normal-phase boundary; approach it.
        p.g_prime = 0.2 + 1e-12;
        CHECK(std::abs(predictions(p).Delta_PG) < 1e-9);
    }
    SUBCASE("positive and growing with g' at fixed g + g'") {
        double prev = 0.0;
        for (double gp : {0.05, 0.1, 0.2, 0.4}) {
            const auto pr = predictions(params(2, 2.0 - gp, gp));
            CHECK(pr.Delta_PG > prev);
            CHECK(pr.delta_crw > 0);
            prev = pr.Delta_PG;
        }
    }
    SUBCASE("E_H unchanged when g + g' is held fixed") {
        CHECK(predictions(params(4, 2.0, 0.0)).E_H == doctest::Approx(predictions(params(4, 1.7, 0.3)).E_H));
    }
    CHECK_THROWS_AS(predictions(params(3, 0.5)), std::domain_error);
}

TEST_CASE("critical_coupling") {
    CHECK(critical_coupling(params(3, 0.0)) == doctest::Approx(1.0));
    ModelParams p = params(3, 0.0);
    p.lambda_z = 0.2;
    p.u = 0.1;
    CHECK(critical_coupling(p) == doctest::Approx(0.8));
    double prev = critical_coupling(p);
    for (double u : {0.15, 0.2, 0.3, 0.45}) {
        p.u = u;
        const double gc = critical_coupling(p);
        CHECK(gc < prev);
        prev = gc;
    }
    p.u = 0.5;
    CHECK_THROWS_AS(critical_coupling(p), std::domain_error);
    p.u = 0.0;
    p.lambda_z = 1.0;
    CHECK_THROWS_AS(critical_coupling(p), std::domain_error);
}

TEST_CASE("goldstone_envelope") {
    const ModelParams tmpl = params(3, 0.0);
    CHECK(goldstone_envelope(tmpl, 2.0) == doctest::Approx(8.0 / 57.0).epsilon(1e-14));
    for (double g : {1.5, 2.0, 3.1}) CHECK(goldstone_envelope(tmpl, g) == effective_theory(tmpl.with_g(g)).D);
    CHECK(goldstone_envelope(params(5, 0), 2.0) < goldstone_envelope(params(3, 0), 2.0));
    CHECK_THROWS_AS(goldstone_envelope(tmpl, 0.5), std::domain_error);
}
