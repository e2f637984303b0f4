#include "oemi/reduced.hpp"

#include <cmath>
#include <string>

#include "oemi/dynamics.hpp"

namespace oemi {

EffectiveModel adiabatic_reduce(const SystemParams& p) {
    const DerivedRates r = derived_rates(p);
    EffectiveModel eff;
    eff.gamma_big_a = r.gamma_big_a;
    eff.gamma_tilde = r.gamma_tilde;
    eff.mix_b = std::sqrt(p.mech.gamma_m / r.gamma_tilde);
    eff.mix_a = complex{0.0, -std::sqrt(r.gamma_big_a / r.gamma_tilde)};
    eff.g_c = p.couplings.g_c;
    eff.g_x = p.couplings.g_x;
    eff.g_d = p.couplings.g_d();
    eff.kappa_c = p.cavity_c.kappa;
    eff.kappa_d = p.cavity_d.kappa;
    if (p.couplings.g_a > kWeakCouplingRatio * p.cavity_a.kappa) {
        eff.warnings.push_back({"weak_coupling", "G_a = " + std::to_string(p.couplings.g_a) +
                                                     " MHz exceeds kappa_a / 5; adiabatic elimination is unreliable"});
    }
    return eff;
}

Matrix3C reduced_scattering(const EffectiveModel& eff, RateMHz omega) {
    if (!(eff.gamma_tilde > 0.0 && eff.kappa_c > 0.0 && eff.kappa_d > 0.0)) {
        throw ParameterError("effective model requires positive damping rates");
    }
    const complex i{0.0, 1.0};
    Matrix3C m;
    m(0, 0) = -i * eff.gamma_tilde / 2.0;
    m(1, 1) = -i * eff.kappa_c / 2.0;
    m(2, 2) = -i * eff.kappa_d / 2.0;
    m(0, 1) = eff.g_c;
    m(1, 0) = eff.g_c;
    m(0, 2) = eff.g_d;
    m(2, 0) = std::conj(eff.g_d);
    m(1, 2) = eff.g_x;
    m(2, 1) = eff.g_x;
    return transmission(m, {eff.gamma_tilde, eff.kappa_c, eff.kappa_d}, omega);
}

DeviationResult deviation(const SystemParams& p, std::span<const RateMHz> omega_grid) {
    const EffectiveModel eff = adiabatic_reduce(p);
    DeviationResult out;
    out.warnings = eff.warnings;

    bool outside = false;
    for (const RateMHz w : omega_grid) {
        if (std::abs(w) > eff.gamma_tilde) outside = true;
        const double full = std::abs(scattering_matrix(p, w).at(Port::c, Port::a));
        const double reduced = std::abs(eff.mix_a * reduced_scattering(eff, w)(1, 0));
        const double err = std::abs(full - reduced);
        if (err > out.max_abs_error) {
            out.max_abs_error = err;
            out.worst_omega = w;
        }
    }
    if (outside) {
        out.warnings.push_back({"grid", "grid extends beyond |omega| <= gamma_tilde, outside the central peak"});
    }
    return out;
}

} // namespace oemi
