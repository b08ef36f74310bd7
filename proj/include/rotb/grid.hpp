#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rotb {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : error {
    using error::error;
};

// Raised when a solver is handed a state that already contains NaN/Inf.
struct diverged_error : error {
    using error::error;
};

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Uniform grid on the 2pi-periodic box [-pi,pi)^d.  Sample points are
// x_j = -pi + j*dx, and Fourier indices follow FFT storage order:
// linear index j maps to wavenumber j for j < n/2 and j-n otherwise,
// so k ranges over {-n/2, ..., n/2-1} per axis.
struct Grid {
    int n = 0;

    Grid() = default;
    explicit Grid(int n_) : n(n_) {
        if (n < 8 || n % 2 != 0)
            throw config_error("grid n must be even and >= 8, got " + std::to_string(n));
    }

    double dx() const { return two_pi / n; }
    double x(int j) const { return -pi + j * dx(); }

    // FFT-order index -> signed wavenumber.
    int wavenumber(int j) const { return j < n / 2 ? j : j - n; }

    // Wavenumber used by differentiation: the Nyquist mode k = -n/2 is
    // mapped to zero (odd-ball convention) so derivatives of real fields
    // stay real.
    int deriv_wavenumber(int j) const {
        int k = wavenumber(j);
        return k == -n / 2 ? 0 : k;
    }

    bool operator==(const Grid&) const = default;
};

struct Grid2 : Grid {
    Grid2() = default;
    explicit Grid2(int n_) : Grid(n_) {}
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * n + ix;  // x fastest
    }
};

struct Grid3 : Grid {
    Grid3() = default;
    explicit Grid3(int n_) : Grid(n_) {}
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(iz) * n + iy) * n + ix;  // x fastest
    }
};

}  // namespace rotb
