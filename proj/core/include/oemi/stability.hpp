#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oemi/linalg.hpp"
#include "oemi/params.hpp"

namespace oemi {

// Coefficients of lambda^4 + s3 lambda^3 + s2 lambda^2 + s1 lambda + s0,
// stored as s[i] = s_i.
struct CharacteristicCoefficients {
    std::array<double, 4> s{};
};

// Closed-form quartic coefficients for the eigenvalues of -iM. Only |G_d|^2
// enters, so these are phase independent.
CharacteristicCoefficients characteristic_coefficients(const SystemParams& params);

// det(lambda I + iM) computed numerically by the Leverrier-Faddeev trace
// recursion; c[i] multiplies lambda^i for i = 0..3. The real parts always
// equal the closed form. The imaginary parts are
//   Im c1 = -2 G_x Re(G_c G_d^*),  Im c0 = -kappa_a G_x Re(G_c G_d^*)
// (the b -> c -> d loop), which vanish for G_d phase +-pi/2.
std::array<complex, 4> exact_characteristic_coefficients(const SystemParams& params);

inline constexpr double kMarginalThreshold = 1e-12;

struct StabilityReport {
    CharacteristicCoefficients coefficients;
    // (min_i s_i, s3 s2 - s1, s3 s2 s1 - s1^2 - s0 s3^2)
    std::array<double, 3> condition_values{};
    bool stable = false;
    bool marginal = false;  // stable, but some condition value is <= 1e-12
    std::optional<std::array<complex, 4>> eigenvalues;
    std::optional<double> max_real_part;
};

// Routh-Hurwitz verdict on the closed-form coefficients; eigenvalue fields
// are left empty. Throws ParameterError for invalid params.
StabilityReport routh_hurwitz(const SystemParams& params);

struct RootFinderOptions {
    double tolerance = 1e-12;   // on root updates, relative to max(1, |z|)
    int max_iterations = 200;
};

struct RootsResult {
    std::vector<complex> roots;
    int iterations = 0;
};

// Durand-Kerner (Weierstrass) simultaneous iteration. `coefficients[k]`
// multiplies z^k; the leading coefficient must be nonzero. Also stops once
// every residual is at the rounding floor of the polynomial evaluation,
// which is the only way clustered roots converge. Throws NumericalError
// on non-convergence.
RootsResult durand_kerner(std::span<const complex> coefficients, const RootFinderOptions& options = {});

complex evaluate_polynomial(std::span<const complex> coefficients, complex z);

struct EigenvalueResult {
    std::array<complex, 4> eigenvalues{};
    double max_real_part = 0.0;
    int iterations = 0;
};

// Eigenvalues of -iM as the roots of its characteristic polynomial (the
// exact one, which reduces to the closed-form quartic for G_d phase
// +-pi/2), sorted by real part then imaginary part.
EigenvalueResult eigenvalues(const SystemParams& params, const RootFinderOptions& options = {});

// routh_hurwitz plus eigenvalues.
StabilityReport stability_report(const SystemParams& params);

} // namespace oemi
