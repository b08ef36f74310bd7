#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <new>
#include <vector>

#include "rotb/grid.hpp"

namespace rotb {

// 64-byte aligned storage so FFTW always sees identically aligned buffers
// (plan reuse requires matching alignment, and fixed alignment keeps the
// executed code path, hence the round-off, bit-reproducible).
template <class T>
struct aligned_allocator {
    using value_type = T;
    static constexpr std::size_t alignment = 64;

    aligned_allocator() = default;
    template <class U>
    aligned_allocator(const aligned_allocator<U>&) {}

    T* allocate(std::size_t count) {
        std::size_t bytes = (count * sizeof(T) + alignment - 1) / alignment * alignment;
        void* p = std::aligned_alloc(alignment, bytes);
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { std::free(p); }

    template <class U>
    bool operator==(const aligned_allocator<U>&) const { return true; }
};

using real_vec = std::vector<double, aligned_allocator<double>>;
using complex_vec = std::vector<std::complex<double>, aligned_allocator<std::complex<double>>>;

template <class GridT>
struct RealFieldT {
    GridT grid;
    real_vec v;

    RealFieldT() = default;
    explicit RealFieldT(const GridT& g) : grid(g), v(g.size(), 0.0) {}

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    std::size_t size() const { return v.size(); }

    bool finite() const {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    }
};

using RealField2 = RealFieldT<Grid2>;
using RealField3 = RealFieldT<Grid3>;

// Fourier-series coefficients over the full wavenumber lattice, FFT storage
// order.  Invariant (checked where it matters): coeff(-k) == conj(coeff(k)).
template <class GridT>
struct SpectralFieldT {
    GridT grid;
    complex_vec c;

    SpectralFieldT() = default;
    explicit SpectralFieldT(const GridT& g) : grid(g), c(g.size(), {0.0, 0.0}) {}

    std::complex<double>& operator[](std::size_t i) { return c[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return c[i]; }
    std::size_t size() const { return c.size(); }
};

using SpectralField2 = SpectralFieldT<Grid2>;
using SpectralField3 = SpectralFieldT<Grid3>;

struct VectorField2 {
    RealField2 u1, u2;

    VectorField2() = default;
    explicit VectorField2(const Grid2& g) : u1(g), u2(g) {}

    const Grid2& grid() const { return u1.grid; }
    bool finite() const { return u1.finite() && u2.finite(); }

    double magnitude_at(std::size_t i) const { return std::hypot(u1[i], u2[i]); }
    double sup_magnitude() const {
        double m = 0.0;
        for (std::size_t i = 0; i < u1.size(); ++i) {
            double a = u1[i] * u1[i] + u2[i] * u2[i];
            if (a > m) m = a;
        }
        return std::sqrt(m);
    }
};

struct VectorField3 {
    RealField3 u1, u2, u3;

    VectorField3() = default;
    explicit VectorField3(const Grid3& g) : u1(g), u2(g), u3(g) {}

    const Grid3& grid() const { return u1.grid; }
    bool finite() const { return u1.finite() && u2.finite() && u3.finite(); }

    double sup_magnitude() const {
        double m = 0.0;
        for (std::size_t i = 0; i < u1.size(); ++i) {
            double a = u1[i] * u1[i] + u2[i] * u2[i] + u3[i] * u3[i];
            if (a > m) m = a;
        }
        return std::sqrt(m);
    }
};

// Distance between two doubles in units of ulps of the larger magnitude.
inline double ulp_distance(double a, double b) {
    if (a == b) return 0.0;
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    double u = std::nexttoward(scale, std::numeric_limits<double>::infinity()) - scale;
    return std::abs(a - b) / u;
}

}  // namespace rotb
