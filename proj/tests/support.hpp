#pragma once

// Test-only fixtures, random parameter generators and independent oracles.
// Nothing here calls the elimination-based inverse in oemi/linalg.hpp.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "oemi/oemi.hpp"

namespace oemi::testing {

using cd = std::complex<double>;

// kappa = 5 for every cavity, G_a = 5, gamma_m = 0.005, G_c auto (forward).
inline SystemParams standard_forward(double n_th = 0.0) {
    SystemParams p = nonreciprocal_configuration(5.0, std::nullopt, {5.0, 5.0, 5.0}, 0.005, Direction::forward);
    p.mech.n_th = n_th;
    return p;
}

inline SystemParams forward_optimum(double g_a, double kappa = 5.0, double gamma_m = 0.005) {
    return nonreciprocal_configuration(g_a, std::nullopt, {kappa, kappa, kappa}, gamma_m, Direction::forward);
}

inline SystemParams with_couplings(double kappa, double gamma_m, double g, double phase) {
    SystemParams p;
    p.cavity_a = CavityParams::lossless(Port::a, kappa);
    p.cavity_c = CavityParams::lossless(Port::c, kappa);
    p.cavity_d = CavityParams::lossless(Port::d, kappa);
    p.mech.gamma_m = gamma_m;
    p.couplings = {g, g, g, g, phase};
    return p;
}

// Damping in (0.01, 20], coupling magnitudes in [0, 20], phase in [0, 2pi).
class ParamSampler {
public:
    explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

    double damping() { return 20.0 - uniform(0.0, 19.99); }
    double coupling() { return uniform(0.0, 20.0); }
    double phase() { return uniform(0.0, 2.0 * std::numbers::pi); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    SystemParams any() {
        SystemParams p;
        p.cavity_a = CavityParams::lossless(Port::a, damping());
        p.cavity_c = CavityParams::lossless(Port::c, damping());
        p.cavity_d = CavityParams::lossless(Port::d, damping());
        p.mech.gamma_m = damping();
        p.mech.n_th = uniform(0.0, 1e3);
        p.couplings = {coupling(), coupling(), coupling(), coupling(), phase()};
        return p;
    }

    // Random kappas, gamma_m, g_a, g_c completed by the forward conditions.
    SystemParams forward() {
        return nonreciprocal_configuration(coupling(), uniform(0.01, 20.0), {damping(), damping(), damping()},
                                           damping(), Direction::forward);
    }

private:
    std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

template <std::size_t N>
using Mat = std::array<std::array<cd, N>, N>;

template <std::size_t N>
cd det_laplace(const Mat<N>& a) {
    if constexpr (N == 1) {
        return a[0][0];
    } else {
        cd acc{};
        for (std::size_t col = 0; col < N; ++col) {
            Mat<N - 1> minor{};
            for (std::size_t i = 1; i < N; ++i) {
                std::size_t cj = 0;
                for (std::size_t j = 0; j < N; ++j) {
                    if (j == col) continue;
                    minor[i - 1][cj++] = a[i][j];
                }
            }
            const double sign = (col % 2 == 0) ? 1.0 : -1.0;
            acc += sign * a[0][col] * det_laplace<N - 1>(minor);
        }
        return acc;
    }
}

// Inverse via the adjugate (cofactor expansion); independent of pivoting.
template <std::size_t N>
Mat<N> inverse_cofactor(const Mat<N>& a) {
    const cd det = det_laplace<N>(a);
    Mat<N> inv{};
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) {
            Mat<N - 1> minor{};
            std::size_t mi = 0;
            for (std::size_t i = 0; i < N; ++i) {
                if (i == r) continue;
                std::size_t mj = 0;
                for (std::size_t j = 0; j < N; ++j) {
                    if (j == c) continue;
                    minor[mi][mj++] = a[i][j];
                }
                ++mi;
            }
            const double sign = ((r + c) % 2 == 0) ? 1.0 : -1.0;
            inv[c][r] = sign * det_laplace<N - 1>(minor) / det;
        }
    return inv;
}

// T(omega) written out directly from the model definition.
inline Mat<4> oracle_scattering(const SystemParams& p, double omega) {
    const cd i{0.0, 1.0};
    const auto& c = p.couplings;
    const cd gd = std::polar(c.g_d_mag, c.g_d_phase);
    const std::array<double, 4> k{p.cavity_a.kappa, p.mech.gamma_m, p.cavity_c.kappa, p.cavity_d.kappa};
    Mat<4> m{};
    m[0] = {-i * k[0] / 2.0, c.g_a, 0.0, 0.0};
    m[1] = {c.g_a, -i * k[1] / 2.0, c.g_c, gd};
    m[2] = {0.0, c.g_c, -i * k[2] / 2.0, c.g_x};
    m[3] = {0.0, std::conj(gd), c.g_x, -i * k[3] / 2.0};
    Mat<4> r{};
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) r[a][b] = (a == b ? omega : 0.0) - m[a][b];
    const Mat<4> g = inverse_cofactor<4>(r);
    Mat<4> t{};
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            t[a][b] = (a == b ? 1.0 : 0.0) - i * std::sqrt(k[a]) * g[a][b] * std::sqrt(k[b]);
    return t;
}

inline double oracle_t31_closed_form(double g_a, double g_c, double ka, double kc, double gm) {
    return 8.0 * g_c * g_a * std::sqrt(ka * kc) / (4.0 * g_a * g_a * kc + 4.0 * g_c * g_c * ka + ka * kc * gm);
}

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section maximization of a unimodal function on [lo, hi].
inline Extremum golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const double x = (a + b) / 2.0;
    return {x, f(x)};
}

// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = (lo + hi) / 2.0;
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2.0;
}

// FWHM of |T31|^2 around omega = 0 by bisection on the exact response,
// for spectra that are maximal at omega = 0 and symmetric enough that the
// first crossings lie within [0, limit].
inline double oracle_fwhm_t31(const SystemParams& p, double limit) {
    const double peak = std::abs(oracle_scattering(p, 0.0)[2][0]);
    const double level = peak / std::sqrt(2.0);
    auto f = [&](double w) { return std::abs(oracle_scattering(p, w)[2][0]) - level; };
    // March outward in small steps to bracket the first crossing on each side.
    auto first_crossing = [&](double dir) {
        const double step = limit / 20000.0;
        double prev = 0.0;
        for (double w = step; w <= limit; w += step) {
            if (f(dir * w) < 0.0) return bisect([&](double x) { return f(dir * x); }, prev, w);
            prev = w;
        }
        return limit;
    };
    return first_crossing(1.0) + first_crossing(-1.0);
}

} // namespace oemi::testing
