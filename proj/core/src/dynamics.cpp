#include "oemi/dynamics.hpp"

#include <charconv>

namespace oemi {

Element Element::parse(std::string_view text) {
    std::string_view s = text;
    if (!s.empty() && (s.front() == 'T' || s.front() == 't')) s.remove_prefix(1);
    int row = 0;
    int col = 0;
    if (s.size() == 2) {
        row = s[0] - '0';
        col = s[1] - '0';
    } else if (s.size() == 3 && s[1] == ',') {
        row = s[0] - '0';
        col = s[2] - '0';
    }
    if (row < 1 || row > 4 || col < 1 || col > 4) {
        throw ParameterError("matrix element '" + std::string(text) + "' must be two indices in 1..4, e.g. 31");
    }
    return {row, col};
}

std::string Element::label() const {
    return "T" + std::to_string(row) + std::to_string(col);
}

DynamicalMatrix dynamical_matrix(const SystemParams& p) {
    require_valid(p);
    const auto& c = p.couplings;
    const complex i{0.0, 1.0};
    const complex g_a = c.g_a;
    const complex g_c = c.g_c;
    const complex g_d = c.g_d();
    const complex g_x = c.g_x;

    DynamicalMatrix out;
    Matrix4C& m = out.m;
    m(0, 0) = -i * p.cavity_a.kappa / 2.0;
    m(1, 1) = -i * p.mech.gamma_m / 2.0;
    m(2, 2) = -i * p.cavity_c.kappa / 2.0;
    m(3, 3) = -i * p.cavity_d.kappa / 2.0;

    m(0, 1) = g_a;
    m(1, 0) = std::conj(g_a);
    m(1, 2) = g_c;
    m(2, 1) = std::conj(g_c);
    m(1, 3) = g_d;
    m(3, 1) = std::conj(g_d);
    m(2, 3) = g_x;
    m(3, 2) = g_x;

    out.k_diag = {p.cavity_a.kappa, p.mech.gamma_m, p.cavity_c.kappa, p.cavity_d.kappa};
    return out;
}

ScatteringMatrix scattering_matrix(const SystemParams& params, RateMHz omega) {
    const DynamicalMatrix dm = dynamical_matrix(params);
    return {omega, transmission(dm.m, dm.k_diag, omega)};
}

double unitarity_residual(const ScatteringMatrix& s) {
    return unitarity_residual(s.t);
}

} // namespace oemi
