#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "rotb/field.hpp"

namespace rotb {
namespace detail {

// One cached FFTW plan pair per (dimension, n).  Execution always goes
// through the plan's own aligned scratch buffers, so every transform of a
// given size runs the exact same code path regardless of caller storage.
// FFTW_ESTIMATE keeps planning deterministic (FFTW_MEASURE picks algorithms
// by timing, which would make repeated runs differ in round-off).
class FftPlans {
  public:
    static FftPlans& instance() {
        static FftPlans plans;
        return plans;
    }

    struct Entry {
        fftw_plan forward = nullptr;
        fftw_plan backward = nullptr;
        fftw_complex* in = nullptr;
        fftw_complex* out = nullptr;
        std::size_t count = 0;
    };

    Entry& get(int dim, int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(dim, n);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        Entry e;
        e.count = 1;
        for (int d = 0; d < dim; ++d) e.count *= static_cast<std::size_t>(n);
        e.in = fftw_alloc_complex(e.count);
        e.out = fftw_alloc_complex(e.count);
        if (dim == 2) {
            e.forward = fftw_plan_dft_2d(n, n, e.in, e.out, FFTW_FORWARD, FFTW_ESTIMATE);
            e.backward = fftw_plan_dft_2d(n, n, e.in, e.out, FFTW_BACKWARD, FFTW_ESTIMATE);
        } else {
            e.forward = fftw_plan_dft_3d(n, n, n, e.in, e.out, FFTW_FORWARD, FFTW_ESTIMATE);
            e.backward = fftw_plan_dft_3d(n, n, n, e.in, e.out, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        return cache_.emplace(key, e).first->second;
    }

  private:
    FftPlans() = default;
    std::map<std::pair<int, int>, Entry> cache_;
    std::mutex mutex_;
};

// Sample points sit at x_j = -pi + j*dx while FFTW's DFT assumes x_j = j*dx;
// the shift contributes a factor (-1)^(k1+...+kd) per mode.  For even n the
// factor only depends on index parity, and it is real, so Hermitian symmetry
// is unaffected.
inline double shift_phase2(int jx, int jy) { return ((jx + jy) & 1) ? -1.0 : 1.0; }
inline double shift_phase3(int jx, int jy, int jz) { return ((jx + jy + jz) & 1) ? -1.0 : 1.0; }

}  // namespace detail

// Forward transform: true Fourier-series coefficients u_hat_k such that
// u(x) = sum_k u_hat_k exp(i k.x), i.e. forward divides by n^d.
inline SpectralField2 fft_forward(const RealField2& f) {
    const int n = f.grid.n;
    auto& plan = detail::FftPlans::instance().get(2, n);
    for (std::size_t i = 0; i < plan.count; ++i) {
        plan.in[i][0] = f.v[i];
        plan.in[i][1] = 0.0;
    }
    fftw_execute(plan.forward);
    SpectralField2 F(f.grid);
    const double scale = 1.0 / static_cast<double>(plan.count);
    std::size_t i = 0;
    for (int jy = 0; jy < n; ++jy)
        for (int jx = 0; jx < n; ++jx, ++i) {
            double ph = detail::shift_phase2(jx, jy) * scale;
            F.c[i] = {plan.out[i][0] * ph, plan.out[i][1] * ph};
        }
    return F;
}

inline SpectralField3 fft_forward(const RealField3& f) {
    const int n = f.grid.n;
    auto& plan = detail::FftPlans::instance().get(3, n);
    for (std::size_t i = 0; i < plan.count; ++i) {
        plan.in[i][0] = f.v[i];
        plan.in[i][1] = 0.0;
    }
    fftw_execute(plan.forward);
    SpectralField3 F(f.grid);
    const double scale = 1.0 / static_cast<double>(plan.count);
    std::size_t i = 0;
    for (int jz = 0; jz < n; ++jz)
        for (int jy = 0; jy < n; ++jy)
            for (int jx = 0; jx < n; ++jx, ++i) {
                double ph = detail::shift_phase3(jx, jy, jz) * scale;
                F.c[i] = {plan.out[i][0] * ph, plan.out[i][1] * ph};
            }
    return F;
}

namespace detail {

template <class SpectralT>
void load_backward(const SpectralT& F, fftw_complex* in) {
    const int n = F.grid.n;
    if constexpr (std::is_same_v<SpectralT, SpectralField2>) {
        std::size_t i = 0;
        for (int jy = 0; jy < n; ++jy)
            for (int jx = 0; jx < n; ++jx, ++i) {
                double ph = shift_phase2(jx, jy);
                in[i][0] = F.c[i].real() * ph;
                in[i][1] = F.c[i].imag() * ph;
            }
    } else {
        std::size_t i = 0;
        for (int jz = 0; jz < n; ++jz)
            for (int jy = 0; jy < n; ++jy)
                for (int jx = 0; jx < n; ++jx, ++i) {
                    double ph = shift_phase3(jx, jy, jz);
                    in[i][0] = F.c[i].real() * ph;
                    in[i][1] = F.c[i].imag() * ph;
                }
    }
}

}  // namespace detail

inline RealField2 fft_inverse(const SpectralField2& F) {
    auto& plan = detail::FftPlans::instance().get(2, F.grid.n);
    detail::load_backward(F, plan.in);
    fftw_execute(plan.backward);
    RealField2 f(F.grid);
    for (std::size_t i = 0; i < plan.count; ++i) f.v[i] = plan.out[i][0];
    return f;
}

inline RealField3 fft_inverse(const SpectralField3& F) {
    auto& plan = detail::FftPlans::instance().get(3, F.grid.n);
    detail::load_backward(F, plan.in);
    fftw_execute(plan.backward);
    RealField3 f(F.grid);
    for (std::size_t i = 0; i < plan.count; ++i) f.v[i] = plan.out[i][0];
    return f;
}

// Largest |imaginary part| of the complex inverse transform, relative to the
// largest |real part|.  Near zero iff the input is Hermitian-symmetric.
template <class SpectralT>
double fft_inverse_imag_residue(const SpectralT& F) {
    auto& plan = detail::FftPlans::instance().get(
        std::is_same_v<SpectralT, SpectralField2> ? 2 : 3, F.grid.n);
    detail::load_backward(F, plan.in);
    fftw_execute(plan.backward);
    double max_im = 0.0, max_re = 0.0;
    for (std::size_t i = 0; i < plan.count; ++i) {
        max_im = std::max(max_im, std::abs(plan.out[i][1]));
        max_re = std::max(max_re, std::abs(plan.out[i][0]));
    }
    return max_re > 0.0 ? max_im / max_re : max_im;
}

// Worst-case |coeff(-k) - conj(coeff(k))| over the lattice (modes whose
// mirror is not representable, i.e. with a -n/2 component, are skipped).
inline double hermitian_asymmetry(const SpectralField2& F) {
    const int n = F.grid.n;
    double worst = 0.0;
    for (int jy = 0; jy < n; ++jy)
        for (int jx = 0; jx < n; ++jx) {
            int kx = F.grid.wavenumber(jx), ky = F.grid.wavenumber(jy);
            if (kx == -n / 2 || ky == -n / 2) continue;
            int mx = kx == 0 ? 0 : n - jx;
            int my = ky == 0 ? 0 : n - jy;
            auto a = F.c[F.grid.index(jx, jy)];
            auto b = F.c[F.grid.index(mx, my)];
            worst = std::max(worst, std::abs(a - std::conj(b)));
        }
    return worst;
}

inline double hermitian_asymmetry(const SpectralField3& F) {
    const int n = F.grid.n;
    double worst = 0.0;
    for (int jz = 0; jz < n; ++jz)
        for (int jy = 0; jy < n; ++jy)
            for (int jx = 0; jx < n; ++jx) {
                int kx = F.grid.wavenumber(jx), ky = F.grid.wavenumber(jy),
                    kz = F.grid.wavenumber(jz);
                if (kx == -n / 2 || ky == -n / 2 || kz == -n / 2) continue;
                int mx = kx == 0 ? 0 : n - jx;
                int my = ky == 0 ? 0 : n - jy;
                int mz = kz == 0 ? 0 : n - jz;
                auto a = F.c[F.grid.index(jx, jy, jz)];
                auto b = F.c[F.grid.index(mx, my, mz)];
                worst = std::max(worst, std::abs(a - std::conj(b)));
            }
    return worst;
}

}  // namespace rotb
