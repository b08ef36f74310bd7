#pragma once

#include <cstdint>
#include <string>

#include "rotb/norms.hpp"

namespace rotb {

// SplitMix64 (Steele/Lea/Flood mixing constants).  Chosen over any
// platform RNG so that identical seeds give bit-identical forces on every
// platform; the paper's own generator stream is not reproducible outside
// its environment, so only the law (iid normal annulus coefficients) and
// the Grashof scaling are reproduced, not the paper's exact field.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on (0,1], 53-bit resolution.
    double next_uniform() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Box-Muller: one pair of uniforms -> one pair of standard normals.
    std::pair<double, double> next_normal_pair() {
        double u1 = next_uniform();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
    }
};

struct ForcingSpec {
    std::uint64_t seed = 0;
    double k_min = 0.5;
    double k_max = 2.5;
    double grashof = 20.0;
    double nu = 1e-3;
    double lambda1 = 1.0;  // smallest positive Laplacian eigenvalue on the 2pi-torus

    void validate() const {
        if (!(k_min >= 0.0 && k_min < k_max)) throw config_error("forcing: need 0 <= k_min < k_max");
        if (!(grashof > 0.0)) throw config_error("forcing: grashof must be > 0");
        if (!(nu > 0.0)) throw config_error("forcing: nu must be > 0");
    }

    double target_l2() const { return grashof * lambda1 * nu * nu; }
};

// Carries both the physical samples (what the steppers add) and the exact
// generated spectrum (authoritative for the mean-free property and the
// H^-1 / L2 norms; its k=0 coefficient is exactly zero by construction).
struct ForceField2 {
    VectorField2 field;
    ForcingSpec spec;
    std::array<SpectralField2, 2> spectrum;
};

struct ForceField3 {
    VectorField3 field;
    ForcingSpec spec;
    std::array<SpectralField3, 3> spectrum;
};

namespace detail {

// Canonical half-lattice: k strictly lexicographically positive (first
// nonzero component positive); its mirror -k is filled by conjugation, which
// both enforces exact Hermitian symmetry and skips k = 0, so the force is
// exactly mean-free.  Draw order is fixed: canonical modes in ascending
// lexicographic (k_x, k_y[, k_z]) order, components in index order, each
// coefficient consuming one Box-Muller pair (Re, Im).
inline bool lex_positive(int kx, int ky) { return kx > 0 || (kx == 0 && ky > 0); }
inline bool lex_positive(int kx, int ky, int kz) {
    return kx > 0 || (kx == 0 && (ky > 0 || (ky == 0 && kz > 0)));
}

template <class GridT, int NC>
std::array<SpectralFieldT<GridT>, NC> annulus_spectrum(const GridT& g, std::uint64_t seed,
                                                       double k_min, double k_max) {
    std::array<SpectralFieldT<GridT>, NC> F;
    for (auto& f : F) f = SpectralFieldT<GridT>(g);
    SplitMix64 rng(seed);
    const int n = g.n;
    const int half = n / 2;
    const double lo2 = k_min * k_min, hi2 = k_max * k_max;
    std::size_t drawn = 0;

    auto visit = [&](auto... ks) {
        double r2 = ((static_cast<double>(ks) * ks) + ...);
        if (r2 < lo2 || r2 > hi2 || r2 == 0.0) return;
        if (!lex_positive(ks...)) return;
        // modes with a -n/2 component have no representable mirror
        if ((((ks) == -half) || ...)) return;
        auto fft_index = [&](int k) { return k >= 0 ? k : k + n; };
        std::size_t ip, im;
        if constexpr (sizeof...(ks) == 2) {
            auto [kx, ky] = std::tuple(ks...);
            ip = g.index(fft_index(kx), fft_index(ky));
            im = g.index(fft_index(-kx), fft_index(-ky));
        } else {
            auto [kx, ky, kz] = std::tuple(ks...);
            ip = g.index(fft_index(kx), fft_index(ky), fft_index(kz));
            im = g.index(fft_index(-kx), fft_index(-ky), fft_index(-kz));
        }
        for (int c = 0; c < NC; ++c) {
            auto [re, imv] = rng.next_normal_pair();
            F[c].c[ip] = {re, imv};
            F[c].c[im] = {re, -imv};
        }
        ++drawn;
    };

    if constexpr (std::is_same_v<GridT, Grid2>) {
        for (int kx = -half; kx < half; ++kx)
            for (int ky = -half; ky < half; ++ky) visit(kx, ky);
    } else {
        for (int kx = -half; kx < half; ++kx)
            for (int ky = -half; ky < half; ++ky)
                for (int kz = -half; kz < half; ++kz) visit(kx, ky, kz);
    }

    if (drawn == 0)
        throw error("forcing: no forced modes (annulus [" + std::to_string(k_min) + ", " +
                    std::to_string(k_max) + "] misses the lattice)");
    return F;
}

template <class GridT, int NC>
void rescale_to_l2(std::array<SpectralFieldT<GridT>, NC>& F, double target) {
    double s = 0.0;
    for (const auto& f : F)
        for (const auto& c : f.c) s += std::norm(c);
    double current = std::sqrt(s * box_volume(F[0].grid));
    double scale = current > 0.0 ? target / current : 0.0;
    for (auto& f : F)
        for (auto& c : f.c) c *= scale;
}

}  // namespace detail

// Deterministic band-limited random field with prescribed L2 norm; shared by
// force generation and seeded random initial data.
inline VectorField2 random_annulus_field(const Grid2& g, std::uint64_t seed, double k_min,
                                         double k_max, double target_l2) {
    auto F = detail::annulus_spectrum<Grid2, 2>(g, seed, k_min, k_max);
    detail::rescale_to_l2<Grid2, 2>(F, target_l2);
    VectorField2 v(g);
    v.u1 = fft_inverse(F[0]);
    v.u2 = fft_inverse(F[1]);
    return v;
}

inline VectorField3 random_annulus_field(const Grid3& g, std::uint64_t seed, double k_min,
                                         double k_max, double target_l2) {
    auto F = detail::annulus_spectrum<Grid3, 3>(g, seed, k_min, k_max);
    detail::rescale_to_l2<Grid3, 3>(F, target_l2);
    VectorField3 v(g);
    v.u1 = fft_inverse(F[0]);
    v.u2 = fft_inverse(F[1]);
    v.u3 = fft_inverse(F[2]);
    return v;
}

inline ForceField2 generate(const ForcingSpec& spec, const Grid2& g) {
    spec.validate();
    auto F = detail::annulus_spectrum<Grid2, 2>(g, spec.seed, spec.k_min, spec.k_max);
    detail::rescale_to_l2<Grid2, 2>(F, spec.target_l2());
    ForceField2 out{VectorField2(g), spec, F};
    out.field.u1 = fft_inverse(F[0]);
    out.field.u2 = fft_inverse(F[1]);
    return out;
}

inline ForceField3 generate(const ForcingSpec& spec, const Grid3& g) {
    spec.validate();
    auto F = detail::annulus_spectrum<Grid3, 3>(g, spec.seed, spec.k_min, spec.k_max);
    detail::rescale_to_l2<Grid3, 3>(F, spec.target_l2());
    ForceField3 out{VectorField3(g), spec, F};
    out.field.u1 = fft_inverse(F[0]);
    out.field.u2 = fft_inverse(F[1]);
    out.field.u3 = fft_inverse(F[2]);
    return out;
}

// Spectral-side norms of a generated force (exact mean-free input).
inline double force_norm_L2(const ForceField2& f) {
    double s = 0.0;
    for (const auto& comp : f.spectrum)
        for (const auto& c : comp.c) s += std::norm(c);
    return std::sqrt(s * detail::box_volume(f.field.grid()));
}

template <class ForceT>
double force_norm_Hminus1(const ForceT& f) {
    double sum = 0.0, mean_mag = 0.0, max_mag = 0.0;
    for (const auto& comp : f.spectrum) detail::accumulate_hminus1(comp, sum, mean_mag, max_mag);
    return std::sqrt(sum * detail::box_volume(f.field.grid()));
}

}  // namespace rotb
