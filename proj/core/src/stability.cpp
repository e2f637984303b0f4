#include "oemi/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oemi/dynamics.hpp"

namespace oemi {

CharacteristicCoefficients characteristic_coefficients(const SystemParams& p) {
    require_valid(p);
    const double ka = p.cavity_a.kappa;
    const double kc = p.cavity_c.kappa;
    const double kd = p.cavity_d.kappa;
    const double gm = p.mech.gamma_m;
    const auto& c = p.couplings;
    const double ga2 = c.g_a * c.g_a;
    const double gc2 = c.g_c * c.g_c;
    const double gd2 = c.g_d_mag * c.g_d_mag;
    const double gx2 = c.g_x * c.g_x;

    CharacteristicCoefficients out;
    auto& s = out.s;
    s[3] = (gm + ka + kc + kd) / 2.0;
    s[2] = (ka * kc + ka * kd + kc * kd + gm * (ka + kc + kd)) / 4.0 + (ga2 + gc2 + gd2 + gx2);
    s[1] = ga2 * (kc + kd) / 2.0 + gc2 * (ka + kd) / 2.0 + gd2 * (ka + kc) / 2.0 + gx2 * (ka + gm) / 2.0 +
           (ka * kc * kd + (ka * kc + kc * kd + ka * kd) * gm) / 8.0;
    s[0] = (ga2 * kc * kd + gc2 * ka * kd + gd2 * ka * kc + gx2 * gm * ka) / 4.0 + ga2 * gx2 +
           gm * ka * kc * kd / 16.0;
    return out;
}

std::array<complex, 4> exact_characteristic_coefficients(const SystemParams& p) {
    const DynamicalMatrix dm = dynamical_matrix(p);
    const Matrix4C a = complex{0.0, -1.0} * dm.m;
    const auto c = characteristic_polynomial(a);
    return {c[0], c[1], c[2], c[3]};
}

StabilityReport routh_hurwitz(const SystemParams& p) {
    StabilityReport r;
    r.coefficients = characteristic_coefficients(p);
    const auto& s = r.coefficients.s;
    r.condition_values[0] = *std::min_element(s.begin(), s.end());
    r.condition_values[1] = s[3] * s[2] - s[1];
    r.condition_values[2] = s[3] * s[2] * s[1] - s[1] * s[1] - s[0] * s[3] * s[3];
    r.stable = std::all_of(r.condition_values.begin(), r.condition_values.end(), [](double v) { return v > 0.0; });
    r.marginal = r.stable && std::any_of(r.condition_values.begin(), r.condition_values.end(),
                                         [](double v) { return v <= kMarginalThreshold; });
    return r;
}

complex evaluate_polynomial(std::span<const complex> c, complex z) {
    complex acc{};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

namespace {

double evaluation_error_bound(std::span<const complex> c, double abs_z) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * abs_z + std::abs(c[k]);
    return 8.0 * std::numeric_limits<double>::epsilon() * acc;
}

} // namespace

RootsResult durand_kerner(std::span<const complex> coefficients, const RootFinderOptions& options) {
    if (coefficients.size() < 2) throw ParameterError("polynomial must have degree >= 1");
    const complex lead = coefficients.back();
    if (lead == complex{}) throw ParameterError("leading polynomial coefficient is zero");

    std::vector<complex> c(coefficients.begin(), coefficients.end());
    for (auto& x : c) x /= lead;
    const std::size_t n = c.size() - 1;

    // Fujiwara bound on root magnitudes sets the radius of the start circle.
    double radius = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double mag = k == n ? std::abs(c[0]) / 2.0 : std::abs(c[n - k]);
        radius = std::max(radius, std::pow(mag, 1.0 / static_cast<double>(k)));
    }
    radius = std::max(2.0 * radius, 1.0);

    RootsResult out;
    out.roots.resize(n);
    const complex seed{0.4, 0.9};
    complex power = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        out.roots[k] = radius * power / std::abs(power);
        power *= seed;
    }

    for (int it = 1; it <= options.max_iterations; ++it) {
        double worst_update = 0.0;
        bool at_floor = true;
        for (std::size_t k = 0; k < n; ++k) {
            const complex z = out.roots[k];
            const complex pz = evaluate_polynomial(c, z);
            if (std::abs(pz) > evaluation_error_bound(c, std::abs(z))) at_floor = false;
            complex denom = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) denom *= (z - out.roots[j]);
            }
            if (denom == complex{}) denom = std::numeric_limits<double>::epsilon();
            const complex delta = pz / denom;
            out.roots[k] = z - delta;
            worst_update = std::max(worst_update, std::abs(delta) / std::max(1.0, std::abs(z)));
        }
        out.iterations = it;
        if (worst_update <= options.tolerance || at_floor) return out;
    }
    throw NumericalError("Durand-Kerner iteration did not converge");
}

EigenvalueResult eigenvalues(const SystemParams& p, const RootFinderOptions& options) {
    const auto c = exact_characteristic_coefficients(p);
    const std::array<complex, 5> poly{c[0], c[1], c[2], c[3], complex{1.0}};
    RootsResult roots = durand_kerner(poly, options);
    std::sort(roots.roots.begin(), roots.roots.end(), [](complex x, complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });

    EigenvalueResult out;
    std::copy(roots.roots.begin(), roots.roots.end(), out.eigenvalues.begin());
    out.max_real_part = out.eigenvalues.back().real();
    out.iterations = roots.iterations;
    return out;
}

StabilityReport stability_report(const SystemParams& p) {
    StabilityReport r = routh_hurwitz(p);
    const EigenvalueResult e = eigenvalues(p);
    r.eigenvalues = e.eigenvalues;
    r.max_real_part = e.max_real_part;
    return r;
}

} // namespace oemi
