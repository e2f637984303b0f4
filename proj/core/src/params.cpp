#include "oemi/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace oemi {

char port_name(Port p) {
    static constexpr std::array<char, 4> names{'a', 'b', 'c', 'd'};
    return names[index_of(p)];
}

std::optional<Port> parse_port(std::string_view s) {
    if (s == "a") return Port::a;
    if (s == "b") return Port::b;
    if (s == "c") return Port::c;
    if (s == "d") return Port::d;
    return std::nullopt;
}

std::string_view direction_name(Direction d) {
    return d == Direction::forward ? "forward" : "reverse";
}

bool operator==(const CavityParams& x, const CavityParams& y) {
    return x.label == y.label && x.kappa == y.kappa && x.kappa_ext == y.kappa_ext;
}

bool operator==(const MechanicalParams& x, const MechanicalParams& y) {
    return x.gamma_m == y.gamma_m && x.n_th == y.n_th && x.omega_m == y.omega_m;
}

bool operator==(const Couplings& x, const Couplings& y) {
    return x.g_a == y.g_a && x.g_c == y.g_c && x.g_x == y.g_x && x.g_d_mag == y.g_d_mag &&
           x.g_d_phase == y.g_d_phase;
}

bool operator==(const SystemParams& x, const SystemParams& y) {
    return x.cavity_a == y.cavity_a && x.cavity_c == y.cavity_c && x.cavity_d == y.cavity_d &&
           x.mech == y.mech && x.couplings == y.couplings;
}

namespace {

void require(bool ok, const std::string& field, const char* what) {
    if (!ok) throw ParameterError(field + " " + what);
}

void require_cavity(const CavityParams& cav, Port expected) {
    const std::string name(1, port_name(expected));
    require(cav.label == expected, "cavity_" + name, "has the wrong mode label");
    require(std::isfinite(cav.kappa) && cav.kappa > 0.0, "kappa_" + name, "must be a finite positive rate");
    require(std::isfinite(cav.kappa_ext) && cav.kappa_ext >= 0.0, "kappa_ext_" + name, "must be nonnegative");
    require(cav.kappa_ext <= cav.kappa, "kappa_ext_" + name, "must not exceed the total damping");
}

void require_coupling(double g, const char* name) {
    require(std::isfinite(g) && g >= 0.0, name, "must be a finite nonnegative rate");
}

} // namespace

void require_valid(const SystemParams& p) {
    require_cavity(p.cavity_a, Port::a);
    require_cavity(p.cavity_c, Port::c);
    require_cavity(p.cavity_d, Port::d);
    require(std::isfinite(p.mech.gamma_m) && p.mech.gamma_m > 0.0, "gamma_m", "must be a finite positive rate");
    require(std::isfinite(p.mech.n_th) && p.mech.n_th >= 0.0, "n_th", "must be nonnegative");
    require(std::isfinite(p.mech.omega_m) && p.mech.omega_m >= 0.0, "omega_m", "must be nonnegative");
    require_coupling(p.couplings.g_a, "g_a");
    require_coupling(p.couplings.g_c, "g_c");
    require_coupling(p.couplings.g_x, "g_x");
    require_coupling(p.couplings.g_d_mag, "g_d_mag");
    require(std::isfinite(p.couplings.g_d_phase), "g_d_phase", "must be finite");
}

RateMHz cooling_rate(RateMHz g, RateMHz kappa) { return 4.0 * g * g / kappa; }

DerivedRates derived_rates(const SystemParams& p) {
    require_valid(p);
    DerivedRates r;
    r.gamma_big_a = cooling_rate(p.couplings.g_a, p.cavity_a.kappa);
    r.gamma_big_c = cooling_rate(p.couplings.g_c, p.cavity_c.kappa);
    r.gamma_big_d = cooling_rate(p.couplings.g_d_mag, p.cavity_d.kappa);
    r.gamma_tilde = r.gamma_big_a + p.mech.gamma_m;
    if (p.mech.n_th > 0.0) r.cooperativity = r.gamma_big_a / (p.mech.gamma_m * p.mech.n_th);
    return r;
}

RateMHz optimal_g_c(RateMHz g_a, RateMHz kappa_a, RateMHz kappa_c, RateMHz gamma_m) {
    const RateMHz gamma_tilde = cooling_rate(g_a, kappa_a) + gamma_m;
    return std::sqrt(gamma_tilde * kappa_c) / 2.0;
}

double direction_phase(Direction d) {
    return d == Direction::forward ? -std::numbers::pi / 2.0 : std::numbers::pi / 2.0;
}

SystemParams apply_nonreciprocal_conditions(SystemParams p, Direction direction, std::optional<RateMHz> g_c) {
    const double ka = p.cavity_a.kappa;
    const double kc = p.cavity_c.kappa;
    const double kd = p.cavity_d.kappa;
    require(ka > 0.0 && kc > 0.0 && kd > 0.0, "kappa", "must be positive");
    require(p.mech.gamma_m > 0.0, "gamma_m", "must be positive");
    require(p.couplings.g_a >= 0.0, "g_a", "must be nonnegative");
    if (g_c) require(*g_c >= 0.0, "g_c", "must be nonnegative");

    auto& c = p.couplings;
    c.g_c = g_c ? *g_c : optimal_g_c(c.g_a, ka, kc, p.mech.gamma_m);
    c.g_x = std::sqrt(kc * kd) / 2.0;
    c.g_d_mag = c.g_c * std::sqrt(kd / kc);
    c.g_d_phase = direction_phase(direction);
    return p;
}

SystemParams nonreciprocal_configuration(RateMHz g_a, std::optional<RateMHz> g_c, CavityDampings kappas,
                                         RateMHz gamma_m, Direction direction) {
    SystemParams base;
    base.cavity_a = CavityParams::lossless(Port::a, kappas.kappa_a);
    base.cavity_c = CavityParams::lossless(Port::c, kappas.kappa_c);
    base.cavity_d = CavityParams::lossless(Port::d, kappas.kappa_d);
    base.mech.gamma_m = gamma_m;
    base.couplings.g_a = g_a;
    return apply_nonreciprocal_conditions(base, direction, g_c);
}

Warnings validate(const SystemParams& p) {
    Warnings out;
    try {
        require_valid(p);
    } catch (const ParameterError& e) {
        out.push_back({"invalid", e.what()});
        return out;
    }

    const auto& c = p.couplings;
    const double g_max = std::max({c.g_a, c.g_c, c.g_x, c.g_d_mag});
    if (p.mech.omega_m < kRwaFactor * g_max) {
        out.push_back({"rwa", "omega_m = " + std::to_string(p.mech.omega_m) +
                                  " MHz is below 10x the largest coupling (" + std::to_string(g_max) +
                                  " MHz); rotating-wave approximation is questionable"});
    }

    const DerivedRates r = derived_rates(p);
    if (p.mech.gamma_m >= r.gamma_big_a) {
        out.push_back({"noise_regime", "gamma_m >= Gamma_a: mechanical noise is not suppressed at the outputs"});
    }
    if (r.cooperativity && *r.cooperativity <= 1.0) {
        out.push_back({"cooperativity", "Gamma_a / (gamma_m n_th) = " + std::to_string(*r.cooperativity) +
                                            " <= 1: conversion is not robust against thermal noise"});
    }
    return out;
}

} // namespace oemi
