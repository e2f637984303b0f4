#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "oemi/dynamics.hpp"
#include "oemi/params.hpp"

namespace oemi {

struct SpectrumTable {
    std::vector<RateMHz> omegas;                  // strictly increasing
    std::vector<std::array<double, 16>> magnitudes;  // |T_ij(omega)|, row-major per grid point
    SystemParams params_snapshot;

    std::size_t size() const { return omegas.size(); }
    double at(std::size_t k, Element e) const {
        return magnitudes[k][static_cast<std::size_t>((e.row - 1) * 4 + (e.col - 1))];
    }
    std::vector<double> column(Element e) const;
    RateMHz step() const;
};

// Uniform grid including both endpoints.
std::vector<RateMHz> uniform_grid(RateMHz omega_min, RateMHz omega_max, std::size_t n_points);

// Throws ParameterError unless omega_min < omega_max and n_points >= 2.
SpectrumTable sweep(const SystemParams& params, RateMHz omega_min, RateMHz omega_max, std::size_t n_points);

struct HalfwidthResult {
    Element element;
    RateMHz fwhm = 0.0;
    double peak_value = 0.0;
    RateMHz peak_omega = 0.0;
    RateMHz predicted_scale = 0.0;  // min(Gamma_a, Gamma_c, Gamma_d, kappa_a, kappa_c, kappa_d)
    double ratio = 0.0;             // fwhm / predicted_scale
};

// Full width of the central peak of |T_e|^2 at half maximum, i.e. where
// |T_e| drops to peak/sqrt(2). The central peak is the local maximum
// reached by climbing from the grid point closest to omega = 0. Crossings
// are linearly interpolated. Throws NumericalError if a crossing is
// outside the grid or the element is identically zero there.
HalfwidthResult halfwidth(const SpectrumTable& table, Element element);

struct SidePeakOptions {
    double min_value = 0.1;
    double min_prominence = 0.05;
};

struct SpectralPeak {
    RateMHz omega = 0.0;
    double value = 0.0;
    double prominence = 0.0;
};

struct SidePeaks {
    std::vector<SpectralPeak> peaks;
    Warnings warnings;  // "resolution" when the grid step exceeds kappa_min / 10
};

// Strict three-point local maxima with |omega| > grid step, value above
// min_value and topographic prominence at least min_prominence.
SidePeaks side_peaks(const SpectrumTable& table, Element element, const SidePeakOptions& options = {});

} // namespace oemi
