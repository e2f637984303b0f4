#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "oemi/linalg.hpp"
#include "oemi/params.hpp"

namespace oemi {

// Matrix element label in the 1-based "T_31" convention: row = output
// port, col = input port, both in 1..4 (a, b, c, d).
struct Element {
    int row = 3;
    int col = 1;

    // Parses "31", "T31" or "3,1". Throws ParameterError outside 1..4.
    static Element parse(std::string_view text);
    std::string label() const;  // "T31"

    friend bool operator==(const Element&, const Element&) = default;
};

struct DynamicalMatrix {
    Matrix4C m;
    std::array<double, 4> k_diag{};  // (kappa_a, gamma_m, kappa_c, kappa_d)
};

// M of the linearized Langevin equation i dv/dt = M v + i sqrt(K) v_in with
// v = (a, b, c, d). Cavity a couples to the mechanics only.
DynamicalMatrix dynamical_matrix(const SystemParams& params);

struct ScatteringMatrix {
    RateMHz omega = 0.0;
    Matrix4C t;

    const complex& at(Port out, Port in) const { return t(index_of(out), index_of(in)); }
    const complex& at(Element e) const {
        return t(static_cast<std::size_t>(e.row - 1), static_cast<std::size_t>(e.col - 1));
    }
};

// T(omega) = I - i sqrt(K) (omega I - M)^-1 sqrt(K); v_out = T v_in.
// Throws ParameterError for invalid params and NumericalError if the
// resolvent is singular.
ScatteringMatrix scattering_matrix(const SystemParams& params, RateMHz omega);

double unitarity_residual(const ScatteringMatrix& s);

} // namespace oemi
