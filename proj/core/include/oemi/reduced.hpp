#pragma once

// Weak-coupling model: cavity a adiabatically eliminated, leaving the
// (b', c, d) loop with an effective mechanical damping gamma_tilde and the
// effective mechanical input b'_in = mix_b b_in + mix_a a_in.

#include <complex>
#include <span>

#include "oemi/linalg.hpp"
#include "oemi/params.hpp"

namespace oemi {

struct EffectiveModel {
    RateMHz gamma_tilde = 0.0;  // Gamma_a + gamma_m
    RateMHz gamma_big_a = 0.0;
    double mix_b = 0.0;         // sqrt(gamma_m / gamma_tilde)
    complex mix_a;              // -i sqrt(Gamma_a / gamma_tilde)
    RateMHz g_c = 0.0;
    RateMHz g_x = 0.0;
    complex g_d;
    RateMHz kappa_c = 0.0;
    RateMHz kappa_d = 0.0;
    Warnings warnings;          // "weak_coupling" when G_a > kappa_a / 5
};

inline constexpr double kWeakCouplingRatio = 0.2;

EffectiveModel adiabatic_reduce(const SystemParams& params);

// 3x3 transmission over ports (b', c, d):
//   M' = [[-i gamma_tilde/2, G_c, G_d], [G_c^*, -i kappa_c/2, G_x], [G_d^*, G_x, -i kappa_d/2]]
//   K' = diag(gamma_tilde, kappa_c, kappa_d)
Matrix3C reduced_scattering(const EffectiveModel& eff, RateMHz omega);

struct DeviationResult {
    double max_abs_error = 0.0;
    RateMHz worst_omega = 0.0;
    Warnings warnings;
};

// max over the grid of | |T31_full(omega)| - |mix_a T'_{c b'}(omega)| |.
DeviationResult deviation(const SystemParams& params, std::span<const RateMHz> omega_grid);

} // namespace oemi
