#include "oemi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace oemi {

namespace {

constexpr double kDegenerateDenominator = 1e-14;
constexpr double kExpansionLimit = 0.1;

bool close_rel(double x, double y, double tol) {
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

// Distance between two angles on the circle.
double angle_distance(double x, double y) {
    const double d = std::remainder(x - y, 2.0 * std::numbers::pi);
    return std::abs(d);
}

} // namespace

complex directionality_ratio(const SystemParams& p) {
    require_valid(p);
    const complex i{0.0, 1.0};
    const auto& c = p.couplings;
    const complex g_d = c.g_d();
    const double kd = p.cavity_d.kappa;
    const complex num = c.g_c - 2.0 * i * g_d * c.g_x / kd;
    const complex den = c.g_c - 2.0 * i * std::conj(g_d) * c.g_x / kd;
    if (std::abs(den) < kDegenerateDenominator) {
        throw NumericalError("directionality ratio is degenerate: T31 vanishes at omega = 0 (reverse isolation)");
    }
    return num / den;
}

double t31_closed_form(RateMHz g_a, RateMHz g_c, RateMHz kappa_a, RateMHz kappa_c, RateMHz gamma_m) {
    const double num = 8.0 * g_c * g_a * std::sqrt(kappa_a * kappa_c);
    const double den = 4.0 * g_a * g_a * kappa_c + 4.0 * g_c * g_c * kappa_a + kappa_a * kappa_c * gamma_m;
    return num / den;
}

Warnings check_nonreciprocal_conditions(const SystemParams& p, Direction direction, double tol) {
    Warnings w;
    const auto& c = p.couplings;
    const double kc = p.cavity_c.kappa;
    const double kd = p.cavity_d.kappa;
    if (c.g_d_mag > 0.0 && angle_distance(c.g_d_phase, direction_phase(direction)) > tol) {
        w.push_back({"phase", "G_d phase is not " + std::string(direction == Direction::forward ? "-pi/2" : "+pi/2")});
    }
    if (!close_rel(c.g_x, std::sqrt(kc * kd) / 2.0, tol)) {
        w.push_back({"g_x_matching", "G_x differs from sqrt(kappa_c kappa_d)/2"});
    }
    if (!close_rel(c.g_d_mag, c.g_c * std::sqrt(kd / kc), tol)) {
        w.push_back({"impedance_matching", "|G_d| differs from G_c sqrt(kappa_d/kappa_c)"});
    }
    return w;
}

ResonantTransmission t31_resonant(const SystemParams& p) {
    const DerivedRates r = derived_rates(p);
    ResonantTransmission out;
    const double ka = p.cavity_a.kappa;
    const double kc = p.cavity_c.kappa;
    out.t31 = t31_closed_form(p.couplings.g_a, p.couplings.g_c, ka, kc, p.mech.gamma_m);
    out.peak_t31 = std::sqrt(r.gamma_big_a / r.gamma_tilde);
    out.g_c_optimal = std::sqrt(r.gamma_tilde * kc) / 2.0;
    out.warnings = check_nonreciprocal_conditions(p, Direction::forward);
    return out;
}

IdealScattering ideal_scattering(const SystemParams& p) {
    const DerivedRates r = derived_rates(p);
    if (!(r.gamma_big_a > 0.0)) {
        throw ParameterError("g_a must be positive for the first-order circulator matrix");
    }
    IdealScattering out;
    const double e = p.mech.gamma_m / r.gamma_big_a;
    const double se = std::sqrt(e);
    const complex i{0.0, 1.0};
    out.epsilon = e;

    Matrix4C& t = out.t;
    t(0, 0) = -e;
    t(0, 1) = i * se;
    t(0, 3) = -i * (1.0 - e / 2.0);
    t(1, 0) = i * se;
    t(1, 1) = 1.0 - e;
    t(1, 3) = se;
    t(2, 0) = 1.0 - e / 2.0;
    t(2, 1) = i * se;
    t(3, 2) = i;

    if (e > kExpansionLimit) {
        out.warnings.push_back({"expansion", "gamma_m / Gamma_a = " + std::to_string(e) +
                                                 " > 0.1; first-order expansion is not reliable"});
    }
    for (auto& w : check_nonreciprocal_conditions(p, Direction::forward)) out.warnings.push_back(std::move(w));
    if (!close_rel(p.couplings.g_c, std::sqrt(r.gamma_tilde * p.cavity_c.kappa) / 2.0, 1e-9)) {
        out.warnings.push_back({"off_optimum", "G_c is not at its optimal value sqrt(gamma_tilde kappa_c)/2"});
    }
    return out;
}

double OutputDecomposition::total_power() const {
    double s = 0.0;
    for (const auto& x : coefficients) s += std::norm(x);
    return s;
}

OutputDecomposition output_decomposition(const SystemParams& p, Port port, RateMHz omega) {
    const ScatteringMatrix s = scattering_matrix(p, omega);
    OutputDecomposition out;
    out.port = port;
    out.omega = omega;
    for (std::size_t j = 0; j < 4; ++j) out.coefficients[j] = s.t(index_of(port), j);
    return out;
}

Direction circulation_direction(const SystemParams& p) {
    return std::sin(p.couplings.g_d_phase) > 0.0 ? Direction::reverse : Direction::forward;
}

RoutingReport routing_report(const SystemParams& p) {
    const ScatteringMatrix s = scattering_matrix(p, 0.0);
    RoutingReport r;
    r.direction = circulation_direction(p);
    if (r.direction == Direction::forward) {
        r.from = Port::a;
        r.to = Port::c;
        r.circulation = {Port::a, Port::c, Port::d};
        r.switch_target = Port::c;
    } else {
        r.from = Port::c;
        r.to = Port::a;
        r.circulation = {Port::c, Port::a, Port::d};
        r.switch_target = Port::d;
    }

    const double fwd = std::abs(s.at(r.to, r.from));
    const double bwd = std::abs(s.at(r.from, r.to));
    if (fwd == 0.0) {
        r.isolation_db = bwd == 0.0 ? 0.0 : -kIsolationCapDb;
    } else {
        const double floor = fwd * std::pow(10.0, -kIsolationCapDb / 20.0);
        r.isolation_db = std::clamp(20.0 * std::log10(fwd / std::max(bwd, floor)), -kIsolationCapDb, kIsolationCapDb);
    }
    r.insertion_loss_db = -20.0 * std::log10(fwd);
    r.noise_leakage_power = std::norm(s.at(r.to, Port::b));
    r.added_thermal_photons = r.noise_leakage_power * p.mech.n_th;
    r.peak_t31 = fwd;
    return r;
}

LossScaling external_loss_scaling(const SystemParams& p, double t31) {
    for (const CavityParams* cav : {&p.cavity_a, &p.cavity_c}) {
        if (!(cav->kappa > 0.0)) {
            throw ParameterError(std::string("kappa_") + port_name(cav->label) + " must be positive");
        }
        if (cav->kappa_ext < 0.0 || cav->kappa_ext > cav->kappa) {
            throw ParameterError(std::string("kappa_ext_") + port_name(cav->label) + " must lie in [0, kappa]");
        }
    }
    LossScaling out;
    out.efficiency = std::sqrt(p.cavity_a.kappa_ext * p.cavity_c.kappa_ext / (p.cavity_a.kappa * p.cavity_c.kappa));
    out.scaled_t31 = out.efficiency * t31;
    return out;
}

} // namespace oemi
