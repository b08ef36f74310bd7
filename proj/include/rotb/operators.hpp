#pragma once

#include <array>
#include <cmath>

#include "rotb/fft.hpp"

namespace rotb {

namespace detail {

template <class Fn>
void for_each_mode(const Grid2& g, Fn&& fn) {
    std::size_t i = 0;
    for (int jy = 0; jy < g.n; ++jy) {
        for (int jx = 0; jx < g.n; ++jx, ++i) fn(i, jx, jy);
    }
}

template <class Fn>
void for_each_mode(const Grid3& g, Fn&& fn) {
    std::size_t i = 0;
    for (int jz = 0; jz < g.n; ++jz)
        for (int jy = 0; jy < g.n; ++jy)
            for (int jx = 0; jx < g.n; ++jx, ++i) fn(i, jx, jy, jz);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Spectral differentiation (odd-ball convention: Nyquist derivative zeroed).

inline SpectralField2 deriv(const SpectralField2& F, int axis) {
    SpectralField2 D(F.grid);
    const Grid2& g = F.grid;
    detail::for_each_mode(g, [&](std::size_t i, int jx, int jy) {
        double k = g.deriv_wavenumber(axis == 0 ? jx : jy);
        D.c[i] = std::complex<double>(0.0, k) * F.c[i];
    });
    return D;
}

inline SpectralField3 deriv(const SpectralField3& F, int axis) {
    SpectralField3 D(F.grid);
    const Grid3& g = F.grid;
    detail::for_each_mode(g, [&](std::size_t i, int jx, int jy, int jz) {
        double k = g.deriv_wavenumber(axis == 0 ? jx : (axis == 1 ? jy : jz));
        D.c[i] = std::complex<double>(0.0, k) * F.c[i];
    });
    return D;
}

template <class SpectralT>
void apply_laplacian(SpectralT& F) {
    const auto& g = F.grid;
    if constexpr (std::is_same_v<SpectralT, SpectralField2>) {
        detail::for_each_mode(g, [&](std::size_t i, int jx, int jy) {
            double kx = g.deriv_wavenumber(jx), ky = g.deriv_wavenumber(jy);
            F.c[i] *= -(kx * kx + ky * ky);
        });
    } else {
        detail::for_each_mode(g, [&](std::size_t i, int jx, int jy, int jz) {
            double kx = g.deriv_wavenumber(jx), ky = g.deriv_wavenumber(jy),
                   kz = g.deriv_wavenumber(jz);
            F.c[i] *= -(kx * kx + ky * ky + kz * kz);
        });
    }
}

// ---------------------------------------------------------------------------
// Dealiasing and Galerkin projection.  The 2/3-rule mask is axiswise
// (|k_i| > floor(n/3)); P_N is radial (|k| > N), matching their distinct uses.

template <class SpectralT>
void apply_dealias_mask(SpectralT& F) {
    const auto& g = F.grid;
    const int kc = g.n / 3;
    if constexpr (std::is_same_v<SpectralT, SpectralField2>) {
        detail::for_each_mode(g, [&](std::size_t i, int jx, int jy) {
            if (std::abs(g.wavenumber(jx)) > kc || std::abs(g.wavenumber(jy)) > kc)
                F.c[i] = 0.0;
        });
    } else {
        detail::for_each_mode(g, [&](std::size_t i, int jx, int jy, int jz) {
            if (std::abs(g.wavenumber(jx)) > kc || std::abs(g.wavenumber(jy)) > kc ||
                std::abs(g.wavenumber(jz)) > kc)
                F.c[i] = 0.0;
        });
    }
}

template <class SpectralT>
SpectralT dealias_two_thirds(SpectralT F) {
    apply_dealias_mask(F);
    return F;
}

template <class SpectralT>
SpectralT project_PN(SpectralT F, double N) {
    if (N < 0.0) throw error("project_PN: N must be >= 0");
    const auto& g = F.grid;
    const double N2 = N * N;
    if constexpr (std::is_same_v<SpectralT, SpectralField2>) {
        detail::for_each_mode(g, [&](std::size_t i, int jx, int jy) {
            double kx = g.wavenumber(jx), ky = g.wavenumber(jy);
            if (kx * kx + ky * ky > N2) F.c[i] = 0.0;
        });
    } else {
        detail::for_each_mode(g, [&](std::size_t i, int jx, int jy, int jz) {
            double kx = g.wavenumber(jx), ky = g.wavenumber(jy), kz = g.wavenumber(jz);
            if (kx * kx + ky * ky + kz * kz > N2) F.c[i] = 0.0;
        });
    }
    return F;
}

// ---------------------------------------------------------------------------
// curl / div / laplacian on physical fields.

// Scalar 2D curl, omega = dx u2 - dy u1.
inline SpectralField2 curl2_hat(const SpectralField2& U1, const SpectralField2& U2) {
    SpectralField2 W(U1.grid);
    const Grid2& g = U1.grid;
    detail::for_each_mode(g, [&](std::size_t i, int jx, int jy) {
        double kx = g.deriv_wavenumber(jx), ky = g.deriv_wavenumber(jy);
        W.c[i] = std::complex<double>(0.0, kx) * U2.c[i] - std::complex<double>(0.0, ky) * U1.c[i];
    });
    return W;
}

inline RealField2 curl2(const VectorField2& v) {
    return fft_inverse(curl2_hat(fft_forward(v.u1), fft_forward(v.u2)));
}

inline std::array<SpectralField3, 3> curl3_hat(const SpectralField3& U1,
                                               const SpectralField3& U2,
                                               const SpectralField3& U3) {
    const Grid3& g = U1.grid;
    std::array<SpectralField3, 3> W{SpectralField3(g), SpectralField3(g), SpectralField3(g)};
    detail::for_each_mode(g, [&](std::size_t i, int jx, int jy, int jz) {
        std::complex<double> ikx(0.0, g.deriv_wavenumber(jx));
        std::complex<double> iky(0.0, g.deriv_wavenumber(jy));
        std::complex<double> ikz(0.0, g.deriv_wavenumber(jz));
        W[0].c[i] = iky * U3.c[i] - ikz * U2.c[i];
        W[1].c[i] = ikz * U1.c[i] - ikx * U3.c[i];
        W[2].c[i] = ikx * U2.c[i] - iky * U1.c[i];
    });
    return W;
}

inline VectorField3 curl3(const VectorField3& v) {
    auto W = curl3_hat(fft_forward(v.u1), fft_forward(v.u2), fft_forward(v.u3));
    VectorField3 out(v.grid());
    out.u1 = fft_inverse(W[0]);
    out.u2 = fft_inverse(W[1]);
    out.u3 = fft_inverse(W[2]);
    return out;
}

inline RealField2 div(const VectorField2& v) {
    auto U1 = fft_forward(v.u1), U2 = fft_forward(v.u2);
    SpectralField2 D(v.grid());
    const Grid2& g = v.grid();
    detail::for_each_mode(g, [&](std::size_t i, int jx, int jy) {
        D.c[i] = std::complex<double>(0.0, g.deriv_wavenumber(jx)) * U1.c[i] +
                 std::complex<double>(0.0, g.deriv_wavenumber(jy)) * U2.c[i];
    });
    return fft_inverse(D);
}

inline RealField3 div(const VectorField3& v) {
    auto U1 = fft_forward(v.u1), U2 = fft_forward(v.u2), U3 = fft_forward(v.u3);
    SpectralField3 D(v.grid());
    const Grid3& g = v.grid();
    detail::for_each_mode(g, [&](std::size_t i, int jx, int jy, int jz) {
        D.c[i] = std::complex<double>(0.0, g.deriv_wavenumber(jx)) * U1.c[i] +
                 std::complex<double>(0.0, g.deriv_wavenumber(jy)) * U2.c[i] +
                 std::complex<double>(0.0, g.deriv_wavenumber(jz)) * U3.c[i];
    });
    return fft_inverse(D);
}

inline VectorField2 laplacian(const VectorField2& v) {
    VectorField2 out(v.grid());
    auto U1 = fft_forward(v.u1);
    apply_laplacian(U1);
    out.u1 = fft_inverse(U1);
    auto U2 = fft_forward(v.u2);
    apply_laplacian(U2);
    out.u2 = fft_inverse(U2);
    return out;
}

inline VectorField3 laplacian(const VectorField3& v) {
    VectorField3 out(v.grid());
    auto U1 = fft_forward(v.u1);
    apply_laplacian(U1);
    out.u1 = fft_inverse(U1);
    auto U2 = fft_forward(v.u2);
    apply_laplacian(U2);
    out.u2 = fft_inverse(U2);
    auto U3 = fft_forward(v.u3);
    apply_laplacian(U3);
    out.u3 = fft_inverse(U3);
    return out;
}

inline RealField2 laplacian(const RealField2& f) {
    auto F = fft_forward(f);
    apply_laplacian(F);
    return fft_inverse(F);
}

// ---------------------------------------------------------------------------
// Lamb vector.

inline std::array<double, 3> cross(const std::array<double, 3>& a,
                                   const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// 2D Lamb vector omega * u_perp = (-omega u2, omega u1), curl spectral,
// product pointwise.  With dealias=true both factors and the product are
// truncated to the 2/3 band (Galerkin product).
inline VectorField2 lamb2(const VectorField2& v, bool dealias = false) {
    auto U1 = fft_forward(v.u1), U2 = fft_forward(v.u2);
    auto W = curl2_hat(U1, U2);
    if (dealias) {
        apply_dealias_mask(W);
        apply_dealias_mask(U1);
        apply_dealias_mask(U2);
    }
    RealField2 w = fft_inverse(W);
    RealField2 a1 = dealias ? fft_inverse(U1) : v.u1;
    RealField2 a2 = dealias ? fft_inverse(U2) : v.u2;
    VectorField2 out(v.grid());
    for (std::size_t i = 0; i < w.size(); ++i) {
        out.u1[i] = -w[i] * a2[i];
        out.u2[i] = w[i] * a1[i];
    }
    if (dealias) {
        auto L1 = fft_forward(out.u1);
        apply_dealias_mask(L1);
        out.u1 = fft_inverse(L1);
        auto L2 = fft_forward(out.u2);
        apply_dealias_mask(L2);
        out.u2 = fft_inverse(L2);
    }
    return out;
}

// 3D Lamb vector (curl v) x v.
inline VectorField3 lamb3(const VectorField3& v, bool dealias = false) {
    auto U1 = fft_forward(v.u1), U2 = fft_forward(v.u2), U3 = fft_forward(v.u3);
    auto W = curl3_hat(U1, U2, U3);
    if (dealias) {
        for (auto& Wc : W) apply_dealias_mask(Wc);
        apply_dealias_mask(U1);
        apply_dealias_mask(U2);
        apply_dealias_mask(U3);
    }
    RealField3 w1 = fft_inverse(W[0]), w2 = fft_inverse(W[1]), w3 = fft_inverse(W[2]);
    RealField3 a1 = dealias ? fft_inverse(U1) : v.u1;
    RealField3 a2 = dealias ? fft_inverse(U2) : v.u2;
    RealField3 a3 = dealias ? fft_inverse(U3) : v.u3;
    VectorField3 out(v.grid());
    for (std::size_t i = 0; i < w1.size(); ++i) {
        out.u1[i] = w2[i] * a3[i] - w3[i] * a2[i];
        out.u2[i] = w3[i] * a1[i] - w1[i] * a3[i];
        out.u3[i] = w1[i] * a2[i] - w2[i] * a1[i];
    }
    if (dealias) {
        for (RealField3* comp : {&out.u1, &out.u2, &out.u3}) {
            auto C = fft_forward(*comp);
            apply_dealias_mask(C);
            *comp = fft_inverse(C);
        }
    }
    return out;
}

// Independent route for the Lamb vector: the componentwise expansion
//   (u3 dz u1 - u3 dx u3 - u2 dx u2 + u2 dy u1,
//    u1 dx u2 - u1 dy u1 - u3 dy u3 + u3 dz u2,
//    u2 dy u3 - u2 dz u2 - u1 dz u1 + u1 dx u3)
// built from the nine spectral partials.  Used only to cross-check lamb3.
inline VectorField3 lamb3_componentwise(const VectorField3& v) {
    const Grid3& g = v.grid();
    auto U1 = fft_forward(v.u1), U2 = fft_forward(v.u2), U3 = fft_forward(v.u3);
    auto d = [&](const SpectralField3& U, int axis) { return fft_inverse(deriv(U, axis)); };
    RealField3 d1x = d(U1, 0), d1y = d(U1, 1), d1z = d(U1, 2);
    RealField3 d2x = d(U2, 0), d2y = d(U2, 1), d2z = d(U2, 2);
    RealField3 d3x = d(U3, 0), d3y = d(U3, 1), d3z = d(U3, 2);
    VectorField3 out(g);
    const auto& u1 = v.u1, &u2 = v.u2, &u3 = v.u3;
    for (std::size_t i = 0; i < g.size(); ++i) {
        out.u1[i] = u3[i] * d1z[i] - u3[i] * d3x[i] - u2[i] * d2x[i] + u2[i] * d1y[i];
        out.u2[i] = u1[i] * d2x[i] - u1[i] * d1y[i] - u3[i] * d3y[i] + u3[i] * d2z[i];
        out.u3[i] = u2[i] * d3y[i] - u2[i] * d2z[i] - u1[i] * d1z[i] + u1[i] * d3x[i];
    }
    return out;
}

}  // namespace rotb
