#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>

#include "oemi/error.hpp"

namespace oemi {

// Every rate in this library is stored as nu = rate / 2pi in MHz, and the
// probe frequency omega uses the same convention. All formulas are
// homogeneous in the rate unit, so nothing depends on the choice.
using RateMHz = double;

// Mode order is fixed everywhere: index 0..3 <-> a, b, c, d.
enum class Port : std::size_t { a = 0, b = 1, c = 2, d = 3 };

constexpr std::size_t index_of(Port p) { return static_cast<std::size_t>(p); }
char port_name(Port p);
std::optional<Port> parse_port(std::string_view s);

// forward: circulation a -> c -> d -> a, G_d phase -pi/2.
// reverse: circulation c -> a -> d -> c, G_d phase +pi/2.
enum class Direction { forward, reverse };

std::string_view direction_name(Direction d);

struct CavityParams {
    Port label = Port::a;
    RateMHz kappa = 0.0;      // total damping
    RateMHz kappa_ext = 0.0;  // coupling to the output channel

    RateMHz kappa_int() const { return kappa - kappa_ext; }

    // Cavity whose damping is entirely external.
    static CavityParams lossless(Port label, RateMHz kappa) { return {label, kappa, kappa}; }
};

struct MechanicalParams {
    RateMHz gamma_m = 0.0;
    double n_th = 0.0;
    RateMHz omega_m = 100.0;  // only used for the RWA-validity warning
};

// Gauge: g_a, g_c, g_x real and nonnegative; G_d carries the phase.
struct Couplings {
    RateMHz g_a = 0.0;
    RateMHz g_c = 0.0;
    RateMHz g_x = 0.0;
    RateMHz g_d_mag = 0.0;
    double g_d_phase = 0.0;  // radians

    std::complex<double> g_d() const { return std::polar(g_d_mag, g_d_phase); }
};

struct SystemParams {
    CavityParams cavity_a = CavityParams::lossless(Port::a, 5.0);
    CavityParams cavity_c = CavityParams::lossless(Port::c, 5.0);
    CavityParams cavity_d = CavityParams::lossless(Port::d, 5.0);
    MechanicalParams mech;
    Couplings couplings;

    friend bool operator==(const SystemParams&, const SystemParams&);
};

bool operator==(const CavityParams&, const CavityParams&);
bool operator==(const MechanicalParams&, const MechanicalParams&);
bool operator==(const Couplings&, const Couplings&);

// Throws ParameterError naming the first offending field. Requires every
// damping rate strictly positive, 0 <= kappa_ext <= kappa, real couplings
// and n_th nonnegative, labels exactly {a, c, d}.
void require_valid(const SystemParams& params);

struct DerivedRates {
    RateMHz gamma_big_a = 0.0;  // 4 G_a^2 / kappa_a
    RateMHz gamma_big_c = 0.0;
    RateMHz gamma_big_d = 0.0;
    RateMHz gamma_tilde = 0.0;  // Gamma_a + gamma_m
    // Gamma_a / (gamma_m n_th); empty means unbounded (n_th == 0).
    std::optional<double> cooperativity;
};

DerivedRates derived_rates(const SystemParams& params);

// 4 g^2 / kappa
RateMHz cooling_rate(RateMHz g, RateMHz kappa);

// Optimal G_c = sqrt((Gamma_a + gamma_m) kappa_c) / 2.
RateMHz optimal_g_c(RateMHz g_a, RateMHz kappa_a, RateMHz kappa_c, RateMHz gamma_m);

double direction_phase(Direction d);

// Completes `base` with the nonreciprocal + impedance-matching couplings:
//   g_x     = sqrt(kappa_c kappa_d) / 2
//   |g_d|   = g_c sqrt(kappa_d / kappa_c)
//   phase   = -pi/2 (forward) or +pi/2 (reverse)
// and g_c = optimal_g_c(...) when `g_c` is empty. base.couplings.g_a is kept.
SystemParams apply_nonreciprocal_conditions(SystemParams base, Direction direction,
                                            std::optional<RateMHz> g_c = std::nullopt);

struct CavityDampings {
    RateMHz kappa_a = 5.0;
    RateMHz kappa_c = 5.0;
    RateMHz kappa_d = 5.0;
};

// Lossless cavities, n_th = 0, omega_m = 100 MHz.
SystemParams nonreciprocal_configuration(RateMHz g_a, std::optional<RateMHz> g_c, CavityDampings kappas,
                                         RateMHz gamma_m, Direction direction);

// Heuristic diagnostics; never throws.
//   rwa           omega_m < 10 max(G)
//   noise_regime  gamma_m >= Gamma_a
//   cooperativity Gamma_a / (gamma_m n_th) <= 1
//   invalid       the record would be rejected by require_valid
Warnings validate(const SystemParams& params);

inline constexpr double kRwaFactor = 10.0;

} // namespace oemi
