#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oemi/dynamics.hpp"
#include "support.hpp"

using namespace oemi;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Exact closed form at the forward optimum, sqrt(Gamma_a / gamma_tilde) = sqrt(20 / 20.005).
const double kStandardT31 = testing::oracle_t31_closed_form(5.0, std::sqrt(20.005 * 5.0) / 2.0, 5.0, 5.0, 0.005);

SystemParams scaled(SystemParams p, double s) {
    for (CavityParams* c : {&p.cavity_a, &p.cavity_c, &p.cavity_d}) {
        c->kappa *= s;
        c->kappa_ext *= s;
    }
    p.mech.gamma_m *= s;
    p.couplings.g_a *= s;
    p.couplings.g_c *= s;
    p.couplings.g_x *= s;
    p.couplings.g_d_mag *= s;
    return p;
}

} // namespace

TEST_CASE("dynamical_matrix places couplings and damping") {
    SystemParams p = testing::with_couplings(5.0, 0.005, 0.0, 0.0);
    p.cavity_c.kappa = p.cavity_c.kappa_ext = 3.0;
    p.cavity_d.kappa = p.cavity_d.kappa_ext = 7.0;

    SUBCASE("decoupled modes give a diagonal matrix") {
        const DynamicalMatrix dm = dynamical_matrix(p);
        const complex i{0.0, 1.0};
        CHECK(dm.m(0, 0) == -i * 2.5);
        CHECK(dm.m(1, 1) == -i * 0.0025);
        CHECK(dm.m(2, 2) == -i * 1.5);
        CHECK(dm.m(3, 3) == -i * 3.5);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                if (r != c) CHECK(dm.m(r, c) == complex{});
        CHECK(dm.k_diag == std::array<double, 4>{5.0, 0.005, 3.0, 7.0});
    }

    SUBCASE("G_d = 5 exp(-i pi/2) sits as a conjugate pair") {
        p.couplings = {1.0, 2.0, 3.0, 5.0, -kPi / 2.0};
        const DynamicalMatrix dm = dynamical_matrix(p);
        CHECK(dm.m(1, 3).real() == Approx(0.0).epsilon(1e-15));
        CHECK(dm.m(1, 3).imag() == Approx(-5.0));
        CHECK(dm.m(3, 1).imag() == Approx(5.0));
        CHECK(dm.m(0, 1) == complex{1.0});
        CHECK(dm.m(1, 0) == complex{1.0});
        CHECK(dm.m(1, 2) == complex{2.0});
        CHECK(dm.m(2, 3) == complex{3.0});
        CHECK(dm.m(3, 2) == complex{3.0});
    }
}

TEST_CASE("no direct coupling between a and c, d") {
    testing::ParamSampler s(3);
    for (int n = 0; n < 100; ++n) {
        const DynamicalMatrix dm = dynamical_matrix(s.any());
        CHECK(dm.m(0, 2) == complex{});
        CHECK(dm.m(0, 3) == complex{});
        CHECK(dm.m(2, 0) == complex{});
        CHECK(dm.m(3, 0) == complex{});
    }
}

TEST_CASE("decoupled ports reflect with phase pi at resonance") {
    const SystemParams p = testing::with_couplings(5.0, 0.005, 0.0, 0.0);
    const ScatteringMatrix s = scattering_matrix(p, 0.0);
    CHECK(max_abs_difference(s.t, -1.0 * Matrix4C::identity()) < 1e-15);

    // T_ii = (omega - i k/2) / (omega + i k/2)
    const ScatteringMatrix s2 = scattering_matrix(p, 1.3);
    const complex i{0.0, 1.0};
    const complex expect = (1.3 - i * 2.5) / (1.3 + i * 2.5);
    CHECK(std::abs(s2.at(Port::a, Port::a) - expect) < 1e-14);
}

TEST_CASE("far-detuned probe passes through unchanged") {
    testing::ParamSampler s(4);
    for (int n = 0; n < 50; ++n) {
        const ScatteringMatrix t = scattering_matrix(s.any(), 1e6);
        CHECK(max_abs_difference(t.t, Matrix4C::identity()) < 1e-4);
    }
}

TEST_CASE("forward operating point transmits a -> c and isolates c -> a") {
    const ScatteringMatrix s = scattering_matrix(testing::standard_forward(), 0.0);
    CHECK(std::abs(s.at(Element{3, 1})) == Approx(kStandardT31).epsilon(1e-9));
    CHECK(std::abs(s.at(Element{3, 1})) == Approx(0.999875).epsilon(1e-7));
    CHECK(std::abs(s.at(Element{1, 3})) <= 1e-12);
}

TEST_CASE("elimination inverse agrees with the cofactor oracle") {
    testing::ParamSampler s(5);
    for (int n = 0; n < 300; ++n) {
        const SystemParams p = s.any();
        const double w = s.uniform(-50.0, 50.0);
        const ScatteringMatrix t = scattering_matrix(p, w);
        const auto oracle = testing::oracle_scattering(p, w);
        double worst = 0.0;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) worst = std::max(worst, std::abs(t.t(r, c) - oracle[r][c]));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("unitarity_residual") {
    CHECK(unitarity_residual(ScatteringMatrix{0.0, Matrix4C::identity()}) == 0.0);
    CHECK(unitarity_residual(ScatteringMatrix{0.0, -1.0 * Matrix4C::identity()}) == 0.0);

    Matrix4C not_unitary = Matrix4C::identity();
    not_unitary(0, 0) = 2.0;
    CHECK(unitarity_residual(ScatteringMatrix{0.0, not_unitary}) == Approx(3.0));
}

TEST_CASE("property: T is unitary for random parameters and probe frequencies") {
    testing::ParamSampler s(2024);
    double worst = 0.0;
    for (int n = 0; n < 200; ++n) {
        const SystemParams p = s.any();
        for (int k = 0; k < 20; ++k) worst = std::max(worst, unitarity_residual(scattering_matrix(p, s.uniform(-50, 50))));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("property: T is invariant under a common rescaling of rates and probe frequency") {
    testing::ParamSampler s(99);
    for (int n = 0; n < 100; ++n) {
        const SystemParams p = s.any();
        const double w = s.uniform(-50, 50);
        const ScatteringMatrix base = scattering_matrix(p, w);
        for (double k : {1e-3, 1.0, 1e3}) {
            const ScatteringMatrix t = scattering_matrix(scaled(p, k), k * w);
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c) {
                    const double ref = std::max(std::abs(base.t(r, c)), 1e-3);
                    CHECK(std::abs(t.t(r, c) - base.t(r, c)) / ref <= 1e-12);
                }
        }
    }
}

TEST_CASE("property: real couplings give a symmetric T") {
    testing::ParamSampler s(31);
    for (int n = 0; n < 200; ++n) {
        SystemParams p = s.any();
        p.couplings.g_d_phase = (n % 2 == 0) ? 0.0 : kPi;
        const ScatteringMatrix t = scattering_matrix(p, s.uniform(-50, 50));
        CHECK(max_abs_difference(t.t, t.t.transpose()) <= 1e-12);
    }
}

TEST_CASE("property: conjugating G_d transposes T") {
    testing::ParamSampler s(32);
    for (int n = 0; n < 200; ++n) {
        SystemParams p = s.any();
        SystemParams q = p;
        q.couplings.g_d_phase = -p.couplings.g_d_phase;
        const double w = s.uniform(-50, 50);
        const ScatteringMatrix t = scattering_matrix(p, w);
        const ScatteringMatrix u = scattering_matrix(q, w);
        CHECK(max_abs_difference(u.t, t.t.transpose()) <= 1e-12);
    }
}

TEST_CASE("singular resolvent is reported") {
    Matrix4C zero;
    CHECK_THROWS_AS(inverse(zero), NumericalError);

    // Undamped mode probed at its own frequency.
    Matrix4C m;
    m(0, 0) = 2.0;
    m(1, 1) = complex{0.0, -1.0};
    m(2, 2) = complex{0.0, -1.0};
    m(3, 3) = complex{0.0, -1.0};
    CHECK_THROWS_AS(transmission(m, {0.0, 1.0, 1.0, 1.0}, 2.0), NumericalError);
    CHECK_NOTHROW(transmission(m, {0.0, 1.0, 1.0, 1.0}, 2.5));
}

TEST_CASE("Element parsing") {
    CHECK(Element::parse("31") == Element{3, 1});
    CHECK(Element::parse("T13") == Element{1, 3});
    CHECK(Element::parse("4,2") == Element{4, 2});
    CHECK(Element::parse("21").label() == "T21");
    CHECK_THROWS_AS(Element::parse("55"), ParameterError);
    CHECK_THROWS_AS(Element::parse("05"), ParameterError);
    CHECK_THROWS_AS(Element::parse("311"), ParameterError);
    CHECK_THROWS_AS(Element::parse(""), ParameterError);
}
