#pragma once

// Fixed-size dense complex matrices for the 3- and 4-mode models.
// Everything here is header-only and allocation-free.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "oemi/error.hpp"

namespace oemi {

using complex = std::complex<double>;

template <std::size_t N>
class SquareMatrix {
public:
    static constexpr std::size_t size = N;

    constexpr SquareMatrix() = default;

    static SquareMatrix identity() {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static SquareMatrix diagonal(const std::array<complex, N>& d) {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    // Zero-based, row-major.
    complex& operator()(std::size_t row, std::size_t col) { return data_[row * N + col]; }
    const complex& operator()(std::size_t row, std::size_t col) const { return data_[row * N + col]; }

    const std::array<complex, N * N>& data() const { return data_; }

    SquareMatrix transpose() const {
        SquareMatrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    SquareMatrix adjoint() const {
        SquareMatrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    complex trace() const {
        complex t{};
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const complex aik = a(i, k);
                for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
        for (std::size_t i = 0; i < N * N; ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) {
        for (std::size_t i = 0; i < N * N; ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend SquareMatrix operator*(complex s, SquareMatrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::array<complex, N * N> data_{};
};

using Matrix3C = SquareMatrix<3>;
using Matrix4C = SquareMatrix<4>;

// Largest entrywise |a_ij - b_ij|.
template <std::size_t N>
double max_abs_difference(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

// max |(A^dagger A - I)_ij|
template <std::size_t N>
double unitarity_residual(const SquareMatrix<N>& a) {
    return max_abs_difference(a.adjoint() * a, SquareMatrix<N>::identity());
}

inline constexpr double kPivotRelativeThreshold = 1e-14;

// Inverse by Gauss-Jordan elimination with partial pivoting. Throws
// NumericalError when a pivot falls below kPivotRelativeThreshold times
// the largest initial row magnitude (row-sum norm).
template <std::size_t N>
SquareMatrix<N> inverse(const SquareMatrix<N>& a) {
    SquareMatrix<N> work = a;
    SquareMatrix<N> inv = SquareMatrix<N>::identity();

    double scale = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < N; ++j) row += std::abs(a(i, j));
        scale = std::max(scale, row);
    }
    const double threshold = kPivotRelativeThreshold * scale;

    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        double best = std::abs(work(col, col));
        for (std::size_t r = col + 1; r < N; ++r) {
            const double v = std::abs(work(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (!(best > threshold)) {
            throw NumericalError("singular matrix: pivot magnitude below relative threshold");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < N; ++j) {
                std::swap(work(col, j), work(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        const complex p = work(col, col);
        for (std::size_t j = 0; j < N; ++j) {
            work(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t r = 0; r < N; ++r) {
            if (r == col) continue;
            const complex f = work(r, col);
            if (f == complex{}) continue;
            for (std::size_t j = 0; j < N; ++j) {
                work(r, j) -= f * work(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Input-output transmission T = I - i sqrt(K) (omega I - M)^-1 sqrt(K) for a
// linear Langevin system i dv/dt = M v + i sqrt(K) v_in with
// v_out = v_in - sqrt(K) v.
template <std::size_t N>
SquareMatrix<N> transmission(const SquareMatrix<N>& m, const std::array<double, N>& k_diag, double omega) {
    SquareMatrix<N> resolvent = omega * SquareMatrix<N>::identity() - m;
    const SquareMatrix<N> g = inverse(resolvent);
    std::array<double, N> root{};
    for (std::size_t i = 0; i < N; ++i) root[i] = std::sqrt(k_diag[i]);

    SquareMatrix<N> t = SquareMatrix<N>::identity();
    const complex minus_i{0.0, -1.0};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) t(i, j) += minus_i * root[i] * g(i, j) * root[j];
    return t;
}

// Characteristic polynomial det(lambda I - A) by the Leverrier-Faddeev trace
// recursion. Returns c with c[k] the coefficient of lambda^k and c[N] = 1.
template <std::size_t N>
std::array<complex, N + 1> characteristic_polynomial(const SquareMatrix<N>& a) {
    std::array<complex, N + 1> c{};
    c[N] = 1.0;
    SquareMatrix<N> mk;  // M_0 = 0
    const SquareMatrix<N> eye = SquareMatrix<N>::identity();
    for (std::size_t k = 1; k <= N; ++k) {
        mk = a * mk + c[N - k + 1] * eye;
        c[N - k] = -(a * mk).trace() / static_cast<double>(k);
    }
    return c;
}

} // namespace oemi
