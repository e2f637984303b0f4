#pragma once

// Resonant (omega = 0) closed forms, the first-order circulator matrix,
// output-field decomposition and routing metrics.

#include <array>

#include "oemi/dynamics.hpp"
#include "oemi/linalg.hpp"
#include "oemi/params.hpp"

namespace oemi {

// T13/T31 at omega = 0:
//   (G_c - 2i G_d G_x / kappa_d) / (G_c - 2i G_d^* G_x / kappa_d)
// Throws NumericalError when the denominator magnitude is below 1e-14
// (T31 vanishes: the reverse-isolation point).
complex directionality_ratio(const SystemParams& params);

// 8 G_c G_a sqrt(kappa_a kappa_c) / (4 G_a^2 kappa_c + 4 G_c^2 kappa_a + kappa_a kappa_c gamma_m)
double t31_closed_form(RateMHz g_a, RateMHz g_c, RateMHz kappa_a, RateMHz kappa_c, RateMHz gamma_m);

struct ResonantTransmission {
    double t31 = 0.0;          // closed form at the given g_c
    double peak_t31 = 0.0;     // sqrt(Gamma_a / gamma_tilde), reached at g_c_optimal
    RateMHz g_c_optimal = 0.0; // sqrt(gamma_tilde kappa_c) / 2
    Warnings warnings;         // set when params break the conditions the closed form assumes
};

ResonantTransmission t31_resonant(const SystemParams& params);

// Checks the forward nonreciprocal, G_x-matching and |G_d| conditions to
// relative tolerance `tol`. Empty result means all hold.
Warnings check_nonreciprocal_conditions(const SystemParams& params, Direction direction, double tol = 1e-9);

struct IdealScattering {
    double epsilon = 0.0;  // gamma_m / Gamma_a
    Matrix4C t;
    Warnings warnings;
};

// First-order-in-epsilon circulator matrix at the forward optimum:
//   a: (-e,      i sqrt(e), 0, -i(1 - e/2))
//   b: (i sqrt(e), 1 - e,   0, sqrt(e))
//   c: (1 - e/2, i sqrt(e), 0, 0)
//   d: (0,       0,         i, 0)
// Requires g_a > 0. Warns when e > 0.1 or when params are off-optimum.
IdealScattering ideal_scattering(const SystemParams& params);

struct OutputDecomposition {
    Port port = Port::c;
    RateMHz omega = 0.0;
    std::array<complex, 4> coefficients{};  // on (a_in, b_in, c_in, d_in)

    double total_power() const;
};

// Row `port` of T(omega).
OutputDecomposition output_decomposition(const SystemParams& params, Port port, RateMHz omega);

inline constexpr double kIsolationCapDb = 200.0;

struct RoutingReport {
    Direction direction = Direction::forward;
    // Primary transfer whose isolation and loss are reported:
    // forward a -> c, reverse c -> a (rows/columns 1 <-> 3 mirrored).
    Port from = Port::a;
    Port to = Port::c;
    double isolation_db = 0.0;
    double insertion_loss_db = 0.0;
    double noise_leakage_power = 0.0;    // |T_{to,b}|^2
    double added_thermal_photons = 0.0;  // noise_leakage_power * n_th
    std::array<Port, 3> circulation{};
    Port switch_target = Port::c;        // where a_in is routed
    double peak_t31 = 0.0;               // |T_{to,from}(0)|
};

// Direction is forward unless sin(g_d_phase) > 0.
Direction circulation_direction(const SystemParams& params);

RoutingReport routing_report(const SystemParams& params);

struct LossScaling {
    double scaled_t31 = 0.0;
    double efficiency = 0.0;  // sqrt(kappa_ext_a kappa_ext_c / (kappa_a kappa_c))
};

LossScaling external_loss_scaling(const SystemParams& params, double t31);

} // namespace oemi
