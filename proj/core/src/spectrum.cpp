#include "oemi/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oemi {

std::vector<double> SpectrumTable::column(Element e) const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < size(); ++k) out[k] = at(k, e);
    return out;
}

RateMHz SpectrumTable::step() const {
    if (omegas.size() < 2) return 0.0;
    return (omegas.back() - omegas.front()) / static_cast<double>(omegas.size() - 1);
}

std::vector<RateMHz> uniform_grid(RateMHz omega_min, RateMHz omega_max, std::size_t n_points) {
    if (!(std::isfinite(omega_min) && std::isfinite(omega_max) && omega_min < omega_max)) {
        throw ParameterError("frequency grid requires finite omega_min < omega_max");
    }
    if (n_points < 2) throw ParameterError("frequency grid requires at least 2 points");
    std::vector<RateMHz> grid(n_points);
    const double span = omega_max - omega_min;
    const double last = static_cast<double>(n_points - 1);
    for (std::size_t k = 0; k < n_points; ++k) {
        grid[k] = omega_min + span * (static_cast<double>(k) / last);
    }
    grid.back() = omega_max;
    return grid;
}

SpectrumTable sweep(const SystemParams& params, RateMHz omega_min, RateMHz omega_max, std::size_t n_points) {
    SpectrumTable table;
    table.omegas = uniform_grid(omega_min, omega_max, n_points);
    table.params_snapshot = params;
    table.magnitudes.resize(n_points);

    const DynamicalMatrix dm = dynamical_matrix(params);
    for (std::size_t k = 0; k < n_points; ++k) {
        const Matrix4C t = transmission(dm.m, dm.k_diag, table.omegas[k]);
        for (std::size_t i = 0; i < 16; ++i) table.magnitudes[k][i] = std::abs(t.data()[i]);
    }
    return table;
}

namespace {

double crossing(double w0, double v0, double w1, double v1, double level) {
    return w0 + (v0 - level) / (v0 - v1) * (w1 - w0);
}

} // namespace

HalfwidthResult halfwidth(const SpectrumTable& table, Element element) {
    const std::vector<double> v = table.column(element);
    const auto& w = table.omegas;
    const std::size_t n = v.size();
    if (n < 3) throw NumericalError("spectrum too short for a halfwidth");

    std::size_t c = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs(w[k]) < std::abs(w[c])) c = k;
    }
    for (;;) {
        if (c + 1 < n && v[c + 1] > v[c]) {
            ++c;
        } else if (c > 0 && v[c - 1] > v[c]) {
            --c;
        } else {
            break;
        }
    }

    HalfwidthResult out;
    out.element = element;
    out.peak_value = v[c];
    out.peak_omega = w[c];
    if (!(out.peak_value > 0.0)) {
        throw NumericalError(element.label() + " vanishes at the central grid point; no halfwidth");
    }
    const double level = out.peak_value / std::sqrt(2.0);

    std::size_t r = c;
    while (r < n && v[r] >= level) ++r;
    if (r == n) throw NumericalError("insufficient span: upper half-maximum crossing of " + element.label() + " is outside the grid");
    std::size_t l = c;
    while (v[l] >= level) {
        if (l == 0) throw NumericalError("insufficient span: lower half-maximum crossing of " + element.label() + " is outside the grid");
        --l;
    }

    const double right = crossing(w[r - 1], v[r - 1], w[r], v[r], level);
    const double left = crossing(w[l + 1], v[l + 1], w[l], v[l], level);
    out.fwhm = right - left;

    const auto& p = table.params_snapshot;
    const DerivedRates rates = derived_rates(p);
    out.predicted_scale = std::min({rates.gamma_big_a, rates.gamma_big_c, rates.gamma_big_d, p.cavity_a.kappa,
                                    p.cavity_c.kappa, p.cavity_d.kappa});
    out.ratio = out.fwhm / out.predicted_scale;
    return out;
}

SidePeaks side_peaks(const SpectrumTable& table, Element element, const SidePeakOptions& options) {
    const std::vector<double> v = table.column(element);
    const auto& w = table.omegas;
    const std::size_t n = v.size();
    const double step = table.step();

    SidePeaks out;
    const auto& p = table.params_snapshot;
    const double kappa_min = std::min({p.cavity_a.kappa, p.cavity_c.kappa, p.cavity_d.kappa});
    if (step > kappa_min / 10.0) {
        out.warnings.push_back({"resolution", "grid step " + std::to_string(step) +
                                                  " MHz is coarser than kappa_min / 10; peaks may be missed"});
    }

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(v[i] > v[i - 1] && v[i] > v[i + 1])) continue;
        if (std::abs(w[i]) <= step || v[i] <= options.min_value) continue;

        double left_min = v[i];
        for (std::size_t k = i; k-- > 0;) {
            if (v[k] > v[i]) break;
            left_min = std::min(left_min, v[k]);
        }
        double right_min = v[i];
        for (std::size_t k = i + 1; k < n; ++k) {
            if (v[k] > v[i]) break;
            right_min = std::min(right_min, v[k]);
        }
        const double prominence = v[i] - std::max(left_min, right_min);
        if (prominence >= options.min_prominence) out.peaks.push_back({w[i], v[i], prominence});
    }
    return out;
}

} // namespace oemi
