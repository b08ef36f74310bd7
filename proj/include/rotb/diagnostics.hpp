#pragma once

#include <optional>
#include <vector>

#include "rotb/forcing.hpp"

namespace rotb {

constexpr double record_nan = std::numeric_limits<double>::quiet_NaN();

// One time sample of the quantities every solver reports.  Entries that do
// not apply to a given run stay NaN and are omitted from that run's CSV
// schema.
struct DiagnosticsRecord {
    double t = 0.0;
    double l2 = 0.0;        // ||u||_L2
    double grad_l2 = 0.0;   // ||grad u||_L2
    double div_l2 = 0.0;    // ||div u||_L2
    double curl_l2 = 0.0;   // ||curl u||_L2 (scalar curl norm in 2D)
    double sup = 0.0;       // sup_x |u(x)|
    double mean1 = 0.0, mean2 = 0.0;
    double mean3 = record_nan;            // 3D only
    double helicity = record_nan;         // 3D only
    double f_dot_u = 0.0;                 // (f, u) at this sample
    double balance_residual = record_nan; // cumulative energy-balance residual
    double rho0_margin = record_nan;      // rho0 - ||u||^2 (damped runs)
    double rhoinf_margin = record_nan;    // rhoinf - sup|u| (damped runs)
    double kse_margin = record_nan;       // e^{lambda^2 t}||u0||^2 - ||u||^2
};

// Isotropic shell spectrum E_k = sqrt(sum_{k <= |l| < k+1} |u_hat_l|^2).
// Shells cover the whole lattice (up to floor(sqrt(d) n/2)) so that
// sum_k E_k^2 equals sum |u_hat|^2 exactly; display and the resolution
// check only use shells below the dealias cutoff.
struct SpectrumRecord {
    std::vector<double> E;
};

namespace detail {

template <class GridT>
void spectrum_accumulate(const SpectralFieldT<GridT>& F, std::vector<double>& acc) {
    const auto& g = F.grid;
    if constexpr (std::is_same_v<GridT, Grid2>) {
        for_each_mode(g, [&](std::size_t i, int jx, int jy) {
            double kx = g.wavenumber(jx), ky = g.wavenumber(jy);
            auto s = static_cast<std::size_t>(std::sqrt(kx * kx + ky * ky));
            if (s >= acc.size()) s = acc.size() - 1;
            acc[s] += std::norm(F.c[i]);
        });
    } else {
        for_each_mode(g, [&](std::size_t i, int jx, int jy, int jz) {
            double kx = g.wavenumber(jx), ky = g.wavenumber(jy), kz = g.wavenumber(jz);
            auto s = static_cast<std::size_t>(std::sqrt(kx * kx + ky * ky + kz * kz));
            if (s >= acc.size()) s = acc.size() - 1;
            acc[s] += std::norm(F.c[i]);
        });
    }
}

}  // namespace detail

inline SpectrumRecord energy_spectrum(const VectorField2& u) {
    const int n = u.grid().n;
    std::vector<double> acc(static_cast<std::size_t>(std::sqrt(2.0) * n / 2) + 2, 0.0);
    detail::spectrum_accumulate(fft_forward(u.u1), acc);
    detail::spectrum_accumulate(fft_forward(u.u2), acc);
    for (auto& e : acc) e = std::sqrt(e);
    return {std::move(acc)};
}

inline SpectrumRecord energy_spectrum(const VectorField3& u) {
    const int n = u.grid().n;
    std::vector<double> acc(static_cast<std::size_t>(std::sqrt(3.0) * n / 2) + 2, 0.0);
    detail::spectrum_accumulate(fft_forward(u.u1), acc);
    detail::spectrum_accumulate(fft_forward(u.u2), acc);
    detail::spectrum_accumulate(fft_forward(u.u3), acc);
    for (auto& e : acc) e = std::sqrt(e);
    return {std::move(acc)};
}

// max_{k_lo <= k <= k_hi} E_k / max_k E_k; the spectrum is "resolved" when
// this ratio over the top decade below the dealias cutoff is <= 1e-12.
inline double spectrum_tail_ratio(const SpectrumRecord& s, int k_lo, int k_hi) {
    double overall = 0.0;
    for (double e : s.E) overall = std::max(overall, e);
    if (overall == 0.0) return 0.0;
    double tail = 0.0;
    k_lo = std::max(k_lo, 0);
    k_hi = std::min<int>(k_hi, static_cast<int>(s.E.size()) - 1);
    for (int k = k_lo; k <= k_hi; ++k) tail = std::max(tail, s.E[static_cast<std::size_t>(k)]);
    return tail / overall;
}

inline bool spectrum_resolved(const SpectrumRecord& s, int n, double threshold = 1e-12) {
    int k_cut = n / 3;
    return spectrum_tail_ratio(s, k_cut / 10, k_cut) <= threshold;
}

// ---------------------------------------------------------------------------
// Trajectory monitors (operate on per-step diagnostics records).

// | ||u(T)||^2 + 2 nu int ||grad u||^2 - ||u0||^2 - int (f,u) | with
// trapezoidal quadrature; requires records at every step.
inline double energy_balance_residual(const std::vector<DiagnosticsRecord>& rec, double nu) {
    if (rec.size() < 2) throw error("energy_balance_residual: needs at least two samples");
    double visc = 0.0, work = 0.0;
    for (std::size_t i = 1; i < rec.size(); ++i) {
        double dt = rec[i].t - rec[i - 1].t;
        visc += 0.5 * dt * (rec[i].grad_l2 * rec[i].grad_l2 + rec[i - 1].grad_l2 * rec[i - 1].grad_l2);
        work += 0.5 * dt * (rec[i].f_dot_u + rec[i - 1].f_dot_u);
    }
    const auto& a = rec.front();
    const auto& b = rec.back();
    return std::abs(b.l2 * b.l2 + 2.0 * nu * visc - a.l2 * a.l2 - work);
}

// Worst per-step increase of sup|u| beyond the forcing allowance.  With
// damping the envelope weights are e^{-gamma dt} on the previous sup and
// (1 - e^{-gamma dt})/gamma on ||f||_Linf, reducing to sup_prev + dt ||f||
// at gamma = 0.
inline double max_principle_monitor(const std::vector<DiagnosticsRecord>& rec, double f_linf,
                                    double gamma = 0.0) {
    if (rec.size() < 2) throw error("max_principle_monitor: needs at least two samples");
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < rec.size(); ++i) {
        double dt = rec[i].t - rec[i - 1].t;
        double decay = gamma > 0.0 ? std::exp(-gamma * dt) : 1.0;
        double allowance = gamma > 0.0 ? (1.0 - decay) / gamma * f_linf : dt * f_linf;
        worst = std::max(worst, rec[i].sup - decay * rec[i - 1].sup - allowance);
    }
    return worst;
}

// Absorbing-set radii and absorption times for the damped-driven system:
//   rho0   = 5 ||f||_{H-1}^2 / (2 nu gamma)      (L2 ball, squared norm)
//   rhoinf = 3 ||f||_Linf / (2 gamma)            (sup ball)
// The absorption times follow from the Gronwall bound: the transient
// e^{-2 gamma t} R^2 has decayed below the slack ||f||^2/(2 nu gamma)
// exactly at t2(R), and analogously for the sup bound.
struct AbsorbingBounds {
    double rho0 = 0.0;
    double rhoinf = 0.0;
    double f_hm1 = 0.0;
    double f_linf = 0.0;
    double nu = 0.0, gamma = 0.0;

    double t2(double R) const {
        if (f_hm1 == 0.0) return 0.0;
        double arg = 2.0 * nu * gamma * R * R / (f_hm1 * f_hm1);
        return 1.0 / (2.0 * gamma) * std::log(std::max(1.0, arg));
    }
    double tinf(double R) const {
        if (f_linf == 0.0) return 0.0;
        double arg = 2.0 * gamma * R / f_linf;
        return 1.0 / gamma * std::log(std::max(1.0, arg));
    }
};

inline AbsorbingBounds absorbing_ball_bounds(const ForceField2& f, double nu, double gamma) {
    if (gamma <= 0.0) throw error("absorbing_ball_bounds: gamma must be > 0");
    if (nu <= 0.0) throw error("absorbing_ball_bounds: nu must be > 0");
    AbsorbingBounds b;
    b.nu = nu;
    b.gamma = gamma;
    b.f_hm1 = force_norm_Hminus1(f);
    b.f_linf = norm_Linf(f.field);
    b.rho0 = 5.0 * b.f_hm1 * b.f_hm1 / (2.0 * nu * gamma);
    b.rhoinf = 3.0 * b.f_linf / (2.0 * gamma);
    return b;
}

// ---------------------------------------------------------------------------
// Residual of the inviscid divergence dynamics
//   d_t D + (u.grad) D = |omega|^2 - |grad u|^2 + (1/2) Lap |u|^2
// with centred time difference for d_t D and spectral space terms at the
// middle snapshot.  Returns the max-norm residual.
inline double divergence_dynamics_residual(const VectorField3& prev, const VectorField3& mid,
                                           const VectorField3& next, double h) {
    const Grid3& g = mid.grid();
    auto D = [&](const VectorField3& u) { return div(u); };
    RealField3 d_prev = D(prev), d_mid = D(mid), d_next = D(next);

    auto U1 = fft_forward(mid.u1), U2 = fft_forward(mid.u2), U3 = fft_forward(mid.u3);
    auto W = curl3_hat(U1, U2, U3);
    RealField3 w1 = fft_inverse(W[0]), w2 = fft_inverse(W[1]), w3 = fft_inverse(W[2]);

    auto Dm = fft_forward(d_mid);
    RealField3 ddx = fft_inverse(deriv(Dm, 0));
    RealField3 ddy = fft_inverse(deriv(Dm, 1));
    RealField3 ddz = fft_inverse(deriv(Dm, 2));

    RealField3 grad_sq(g);
    for (int axis = 0; axis < 3; ++axis) {
        for (const auto* U : {&U1, &U2, &U3}) {
            RealField3 d = fft_inverse(deriv(*U, axis));
            for (std::size_t i = 0; i < d.size(); ++i) grad_sq[i] += d[i] * d[i];
        }
    }

    RealField3 speed_sq(g);
    for (std::size_t i = 0; i < speed_sq.size(); ++i)
        speed_sq[i] = mid.u1[i] * mid.u1[i] + mid.u2[i] * mid.u2[i] + mid.u3[i] * mid.u3[i];
    RealField3 lap_speed = [&] {
        auto S = fft_forward(speed_sq);
        apply_laplacian(S);
        return fft_inverse(S);
    }();

    double worst = 0.0;
    for (std::size_t i = 0; i < d_mid.size(); ++i) {
        double dtD = (d_next[i] - d_prev[i]) / (2.0 * h);
        double adv = mid.u1[i] * ddx[i] + mid.u2[i] * ddy[i] + mid.u3[i] * ddz[i];
        double omega_sq = w1[i] * w1[i] + w2[i] * w2[i] + w3[i] * w3[i];
        double r = dtD + adv - omega_sq + grad_sq[i] - 0.5 * lap_speed[i];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

// Recorded-only diagnostic for the complex scalar form psi_t = i psi L psi
// with L psi = dy Re(psi) + i dx Im(psi): max-norm difference between that
// expression and the vector right-hand side -omega u_perp read as a complex
// field.  Never asserted (the identity's convention is unresolved); see
// module notes.
inline double complex_form_residual(const VectorField2& u) {
    auto U1 = fft_forward(u.u1), U2 = fft_forward(u.u2);
    RealField2 dyu1 = fft_inverse(deriv(U1, 1));
    RealField2 dxu2 = fft_inverse(deriv(U2, 0));
    auto l = lamb2(u);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.u1.size(); ++i) {
        std::complex<double> psi(u.u1[i], u.u2[i]);
        std::complex<double> Lpsi(dyu1[i], dxu2[i]);
        std::complex<double> cand = std::complex<double>(0.0, 1.0) * psi * Lpsi;
        std::complex<double> rhs(-l.u1[i], -l.u2[i]);
        worst = std::max(worst, std::abs(cand - rhs));
    }
    return worst;
}

}  // namespace rotb
