#pragma once

#include <array>
#include <cmath>

#include "rotb/operators.hpp"

namespace rotb {

namespace detail {

template <class GridT>
constexpr int dim_of() {
    return std::is_same_v<GridT, Grid2> ? 2 : 3;
}

template <class GridT>
double quad_weight(const GridT& g) {
    double w = 1.0;
    for (int d = 0; d < dim_of<GridT>(); ++d) w *= two_pi / g.n;
    return w;
}

template <class GridT>
double box_volume(const GridT&) {
    double v = 1.0;
    for (int d = 0; d < dim_of<GridT>(); ++d) v *= two_pi;
    return v;
}

}  // namespace detail

// Rectangle-rule quadrature with weight (2pi/n)^d; exact for band-limited
// integrands, so these are spectrally accurate norms.

template <class GridT>
double norm_L2(const RealFieldT<GridT>& f) {
    double s = 0.0;
    for (double x : f.v) s += x * x;
    return std::sqrt(s * detail::quad_weight(f.grid));
}

inline double norm_L2(const VectorField2& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.u1.size(); ++i) s += v.u1[i] * v.u1[i] + v.u2[i] * v.u2[i];
    return std::sqrt(s * detail::quad_weight(v.grid()));
}

inline double norm_L2(const VectorField3& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.u1.size(); ++i)
        s += v.u1[i] * v.u1[i] + v.u2[i] * v.u2[i] + v.u3[i] * v.u3[i];
    return std::sqrt(s * detail::quad_weight(v.grid()));
}

template <class GridT>
double norm_Linf(const RealFieldT<GridT>& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

inline double norm_Linf(const VectorField2& v) { return v.sup_magnitude(); }
inline double norm_Linf(const VectorField3& v) { return v.sup_magnitude(); }

// Parseval route: ||f||_L2^2 = (2pi)^d sum |f_hat_k|^2.
template <class GridT>
double norm_L2_spectral(const SpectralFieldT<GridT>& F) {
    double s = 0.0;
    for (const auto& c : F.c) s += std::norm(c);
    return std::sqrt(s * detail::box_volume(F.grid));
}

inline double inner(const VectorField2& a, const VectorField2& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.u1.size(); ++i) s += a.u1[i] * b.u1[i] + a.u2[i] * b.u2[i];
    return s * detail::quad_weight(a.grid());
}

inline double inner(const VectorField3& a, const VectorField3& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.u1.size(); ++i)
        s += a.u1[i] * b.u1[i] + a.u2[i] * b.u2[i] + a.u3[i] * b.u3[i];
    return s * detail::quad_weight(a.grid());
}

inline std::array<double, 2> mean(const VectorField2& v) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < v.u1.size(); ++i) {
        m1 += v.u1[i];
        m2 += v.u2[i];
    }
    double inv = 1.0 / static_cast<double>(v.u1.size());
    return {m1 * inv, m2 * inv};
}

inline std::array<double, 3> mean(const VectorField3& v) {
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    for (std::size_t i = 0; i < v.u1.size(); ++i) {
        m1 += v.u1[i];
        m2 += v.u2[i];
        m3 += v.u3[i];
    }
    double inv = 1.0 / static_cast<double>(v.u1.size());
    return {m1 * inv, m2 * inv, m3 * inv};
}

// ||grad u||_L2 via the spectral sum (2pi)^d sum |k|^2 |u_hat|^2 over all
// components (derivative wavenumbers, so Nyquist does not contribute).
template <class GridT>
double grad_norm_sq_spectral(const SpectralFieldT<GridT>& F) {
    const auto& g = F.grid;
    double s = 0.0;
    if constexpr (std::is_same_v<GridT, Grid2>) {
        detail::for_each_mode(g, [&](std::size_t i, int jx, int jy) {
            double kx = g.deriv_wavenumber(jx), ky = g.deriv_wavenumber(jy);
            s += (kx * kx + ky * ky) * std::norm(F.c[i]);
        });
    } else {
        detail::for_each_mode(g, [&](std::size_t i, int jx, int jy, int jz) {
            double kx = g.deriv_wavenumber(jx), ky = g.deriv_wavenumber(jy),
                   kz = g.deriv_wavenumber(jz);
            s += (kx * kx + ky * ky + kz * kz) * std::norm(F.c[i]);
        });
    }
    return s * detail::box_volume(g);
}

inline double norm_H1_seminorm(const VectorField2& v) {
    return std::sqrt(grad_norm_sq_spectral(fft_forward(v.u1)) +
                     grad_norm_sq_spectral(fft_forward(v.u2)));
}

inline double norm_H1_seminorm(const VectorField3& v) {
    return std::sqrt(grad_norm_sq_spectral(fft_forward(v.u1)) +
                     grad_norm_sq_spectral(fft_forward(v.u2)) +
                     grad_norm_sq_spectral(fft_forward(v.u3)));
}

// H^{-1} norm with the (1 + |k|^2)^{-1} weights of the paper's H^s scale
// (not |k|^{-2}; both conventions exist).  Requires a mean-free input.
namespace detail {

template <class GridT>
void accumulate_hminus1(const SpectralFieldT<GridT>& F, double& sum, double& mean_mag,
                        double& max_mag) {
    const auto& g = F.grid;
    mean_mag = std::max(mean_mag, std::abs(F.c[0]));
    if constexpr (std::is_same_v<GridT, Grid2>) {
        for_each_mode(g, [&](std::size_t i, int jx, int jy) {
            double kx = g.wavenumber(jx), ky = g.wavenumber(jy);
            double m = std::norm(F.c[i]);
            sum += m / (1.0 + kx * kx + ky * ky);
            max_mag = std::max(max_mag, m);
        });
    } else {
        for_each_mode(g, [&](std::size_t i, int jx, int jy, int jz) {
            double kx = g.wavenumber(jx), ky = g.wavenumber(jy), kz = g.wavenumber(jz);
            double m = std::norm(F.c[i]);
            sum += m / (1.0 + kx * kx + ky * ky + kz * kz);
            max_mag = std::max(max_mag, m);
        });
    }
}

template <class VecT>
double hminus1_impl(const VecT& v) {
    double sum = 0.0, mean_mag = 0.0, max_mag = 0.0;
    accumulate_hminus1(fft_forward(v.u1), sum, mean_mag, max_mag);
    accumulate_hminus1(fft_forward(v.u2), sum, mean_mag, max_mag);
    if constexpr (std::is_same_v<VecT, VectorField3>)
        accumulate_hminus1(fft_forward(v.u3), sum, mean_mag, max_mag);
    if (mean_mag > 1e-12 * (std::sqrt(max_mag) + 1e-300) && mean_mag > 1e-300)
        throw error("norm_Hminus1: input is not mean-free");
    return std::sqrt(sum * box_volume(v.grid()));
}

}  // namespace detail

inline double norm_Hminus1(const VectorField2& v) { return detail::hminus1_impl(v); }
inline double norm_Hminus1(const VectorField3& v) { return detail::hminus1_impl(v); }

}  // namespace rotb
