#include <doctest.h>

#include <cmath>
#include <vector>

#include "oemi/reduced.hpp"
#include "support.hpp"

using namespace oemi;
using doctest::Approx;

namespace {

// |omega| <= gamma_tilde, 201 points.
std::vector<double> central_grid(const SystemParams& p) {
    const double g = derived_rates(p).gamma_tilde;
    return uniform_grid(-g, g, 201);
}

// Three-mode resolvent written out with the cofactor oracle.
complex oracle_reduced_t_cb(const EffectiveModel& e, double w) {
    using testing::cd;
    const cd i{0.0, 1.0};
    const std::array<double, 3> k{e.gamma_tilde, e.kappa_c, e.kappa_d};
    testing::Mat<3> r{};
    r[0] = {w + i * k[0] / 2.0, -e.g_c, -e.g_d};
    r[1] = {-e.g_c, w + i * k[1] / 2.0, -e.g_x};
    r[2] = {-std::conj(e.g_d), -e.g_x, w + i * k[2] / 2.0};
    const auto g = testing::inverse_cofactor<3>(r);
    return -i * std::sqrt(k[1]) * g[1][0] * std::sqrt(k[0]);
}

} // namespace

TEST_CASE("adiabatic_reduce: effective rates and input mixing") {
    const SystemParams p = testing::forward_optimum(0.25);
    const EffectiveModel e = adiabatic_reduce(p);
    CHECK(e.gamma_big_a == Approx(0.05));
    CHECK(e.gamma_tilde == Approx(0.055));
    CHECK(e.mix_b == Approx(std::sqrt(0.005 / 0.055)));
    CHECK(e.mix_a.real() == 0.0);
    CHECK(e.mix_a.imag() == Approx(-std::sqrt(0.05 / 0.055)));
    CHECK(e.mix_b * e.mix_b + std::norm(e.mix_a) == Approx(1.0).epsilon(1e-15));
    CHECK(e.g_c == p.couplings.g_c);
    CHECK(e.g_x == p.couplings.g_x);
    CHECK(e.g_d == p.couplings.g_d());
    CHECK(e.kappa_c == 5.0);
    CHECK(e.kappa_d == 5.0);
    CHECK(e.warnings.empty());

    CHECK(adiabatic_reduce(testing::forward_optimum(2.0)).warnings.at(0).code == "weak_coupling");
}

TEST_CASE("reduced_scattering agrees with a cofactor oracle and is unitary") {
    testing::ParamSampler s(71);
    for (int n = 0; n < 200; ++n) {
        const EffectiveModel e = adiabatic_reduce(s.any());
        const double w = s.uniform(-20.0, 20.0);
        const Matrix3C t = reduced_scattering(e, w);
        CHECK(std::abs(t(1, 0) - oracle_reduced_t_cb(e, w)) <= 1e-9);
        CHECK(unitarity_residual(t) <= 1e-10);
    }
}

TEST_CASE("reduced_scattering rejects a degenerate model") {
    EffectiveModel e;
    e.kappa_c = e.kappa_d = 1.0;
    CHECK_THROWS_AS(reduced_scattering(e, 0.0), ParameterError);
}

TEST_CASE("reduced model reproduces the impedance-matched peak") {
    // With Gamma_c = Gamma_d = gamma_tilde the b' -> c transfer is complete.
    const SystemParams p = testing::forward_optimum(0.25);
    const EffectiveModel e = adiabatic_reduce(p);
    const Matrix3C t = reduced_scattering(e, 0.0);
    CHECK(std::abs(t(1, 0)) == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(e.mix_a * t(1, 0)) == Approx(t31_resonant(p).peak_t31).epsilon(1e-12));
}

TEST_CASE("deviation shrinks with G_a / kappa_a") {
    const std::array<double, 1> zero{0.0};
    double previous = INFINITY;
    for (double ratio : {1.0 / 20.0, 1.0 / 40.0, 1.0 / 80.0, 1.0 / 100.0}) {
        const SystemParams p = testing::forward_optimum(5.0 * ratio);
        const DeviationResult at_zero = deviation(p, zero);
        const DeviationResult central = deviation(p, central_grid(p));
        CHECK(at_zero.max_abs_error <= central.max_abs_error);
        CHECK(central.warnings.empty());
        CHECK(central.max_abs_error < previous);
        previous = central.max_abs_error;
    }
    const SystemParams p20 = testing::forward_optimum(0.25);
    const SystemParams p100 = testing::forward_optimum(0.05);
    CHECK(deviation(p20, central_grid(p20)).max_abs_error < 0.01);
    CHECK(deviation(p100, central_grid(p100)).max_abs_error < 0.001);
}

TEST_CASE("deviation warnings") {
    const SystemParams p = testing::forward_optimum(0.25);
    const std::vector<double> wide = uniform_grid(-5.0, 5.0, 11);
    const DeviationResult d = deviation(p, wide);
    REQUIRE(d.warnings.size() == 1);
    CHECK(d.warnings[0].code == "grid");

    const SystemParams strong = testing::forward_optimum(5.0);
    const std::array<double, 1> zero{0.0};
    CHECK(deviation(strong, zero).warnings.at(0).code == "weak_coupling");
}
