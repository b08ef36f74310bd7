#pragma once

#include <string>
#include <vector>

#include "rotb/characteristics.hpp"
#include "rotb/diagnostics.hpp"

namespace rotb {

struct DtPolicy {
    enum class Kind { fixed, viscous_cfl };
    Kind kind = Kind::fixed;
    double value = 1e-3;  // dt for fixed, safety factor c for viscous_cfl

    static DtPolicy fixed(double dt) { return {Kind::fixed, dt}; }
    static DtPolicy viscous_cfl(double c) { return {Kind::viscous_cfl, c}; }
};

struct SimConfig2 {
    double nu = 0.0;
    double gamma = 0.0;
    double t_end = 1.0;
    DtPolicy dt_policy = DtPolicy::fixed(1e-3);
    bool dealias = true;
    int diag_every = 10;
    int snapshot_every = 1000;
    double guard = 1e6;
    // Optional validity guard: halt once the shell spectrum near the dealias
    // cutoff rises above tail_guard relative to the peak shell (the inviscid
    // blow-up shows up here; the pointwise-rotation update keeps max|u|
    // constant, so the amplitude guard alone cannot see it).  0 disables.
    double tail_guard = 0.0;
    bool track_rotation = false;  // accumulate theta for the representation check

    void validate() const {
        if (!(t_end > 0.0)) throw config_error("t_end must be > 0");
        if (dt_policy.kind == DtPolicy::Kind::viscous_cfl) {
            if (!(nu > 0.0)) throw config_error("viscous-CFL time step requires nu > 0");
            if (!(dt_policy.value > 0.0 && dt_policy.value <= 0.25))
                throw config_error("CFL safety factor must satisfy 0 < c <= 0.25");
        } else if (!(dt_policy.value > 0.0)) {
            throw config_error("fixed dt must be > 0");
        }
        if (nu < 0.0 || gamma < 0.0) throw config_error("nu and gamma must be >= 0");
        if (diag_every < 1 || snapshot_every < 1)
            throw config_error("diagnostics/snapshot cadence must be >= 1");
    }

    double step_size(const Grid2& g) const {
        if (dt_policy.kind == DtPolicy::Kind::fixed) return dt_policy.value;
        double dx = g.dx();
        return dt_policy.value * dx * dx / nu;
    }
};

struct Trajectory2 {
    std::vector<double> snapshot_times;
    std::vector<VectorField2> snapshots;
    std::vector<DiagnosticsRecord> records;
    bool diverged = false;
    std::string divergence_reason;
    double t_final = 0.0;
    double dt = 0.0;
    int steps_taken = 0;
    RealField2 theta_cum;  // pointwise accumulated rotation angle (if tracked)
    bool has_theta = false;

    const VectorField2& final_state() const { return snapshots.back(); }
};

namespace detail {

struct SupScan {
    double sup = 0.0;
    bool finite = true;
};

inline SupScan scan_state(const VectorField2& u) {
    SupScan s;
    for (std::size_t i = 0; i < u.u1.size(); ++i) {
        double a = u.u1[i], b = u.u2[i];
        if (!std::isfinite(a) || !std::isfinite(b)) {
            s.finite = false;
            return s;
        }
        s.sup = std::max(s.sup, a * a + b * b);
    }
    s.sup = std::sqrt(s.sup);
    return s;
}

}  // namespace detail

// One step of the rotation scheme
//   u^{n+1} = R(dt w^n) [ u^n + dt (nu Lap u^n - gamma u^n + f) ],
//   R(th)   = [[cos th, sin th], [-sin th, cos th]],
// with w^n the spectral curl of u^n (dealiased when enabled) and the
// Laplacian restricted to the dealias band (the explicit heat update is
// unstable at CFL factors above 1/pi^2 on the untruncated corner modes).
// The rotation itself is applied pointwise with no further truncation, which
// is what makes the update an exact pointwise isometry in the inviscid case.
inline VectorField2 step_viscous(const VectorField2& u, double dt, double nu, double gamma,
                                 const VectorField2* f, bool dealias = true,
                                 RealField2* theta_step = nullptr) {
    if (!(dt > 0.0)) throw error("step: dt must be > 0");
    auto scan = detail::scan_state(u);
    if (!scan.finite) throw diverged_error("step: non-finite state");

    auto U1 = fft_forward(u.u1);
    auto U2 = fft_forward(u.u2);
    auto W = curl2_hat(U1, U2);
    if (dealias) apply_dealias_mask(W);
    RealField2 omega = fft_inverse(W);

    const Grid2& g = u.grid();
    VectorField2 bracket(g);
    bool trivial_bracket = nu == 0.0 && gamma == 0.0 && f == nullptr;
    if (trivial_bracket) {
        bracket = u;
    } else {
        RealField2 lap1(g), lap2(g);
        if (nu > 0.0) {
            apply_laplacian(U1);
            apply_laplacian(U2);
            if (dealias) {
                apply_dealias_mask(U1);
                apply_dealias_mask(U2);
            }
            lap1 = fft_inverse(U1);
            lap2 = fft_inverse(U2);
        }
        for (std::size_t i = 0; i < u.u1.size(); ++i) {
            double f1 = f ? f->u1[i] : 0.0;
            double f2 = f ? f->u2[i] : 0.0;
            bracket.u1[i] = u.u1[i] + dt * (nu * lap1[i] - gamma * u.u1[i] + f1);
            bracket.u2[i] = u.u2[i] + dt * (nu * lap2[i] - gamma * u.u2[i] + f2);
        }
    }

    VectorField2 out(g);
    for (std::size_t i = 0; i < u.u1.size(); ++i) {
        double th = dt * omega[i];
        double c = std::cos(th), s = std::sin(th);
        out.u1[i] = c * bracket.u1[i] + s * bracket.u2[i];
        out.u2[i] = -s * bracket.u1[i] + c * bracket.u2[i];
        if (theta_step) theta_step->v[i] = th;
    }
    return out;
}

inline VectorField2 step_inviscid(const VectorField2& u, double dt, bool dealias = true,
                                  RealField2* theta_step = nullptr) {
    return step_viscous(u, dt, 0.0, 0.0, nullptr, dealias, theta_step);
}

namespace detail {

inline DiagnosticsRecord diag_sample2(const VectorField2& u, double t, const VectorField2* f) {
    DiagnosticsRecord r;
    r.t = t;
    auto U1 = fft_forward(u.u1);
    auto U2 = fft_forward(u.u2);
    r.l2 = std::sqrt([&] {
        double s = 0.0;
        for (const auto& c : U1.c) s += std::norm(c);
        for (const auto& c : U2.c) s += std::norm(c);
        return s * box_volume(u.grid());
    }());
    r.grad_l2 = std::sqrt(grad_norm_sq_spectral(U1) + grad_norm_sq_spectral(U2));
    const Grid2& g = u.grid();
    double div_sq = 0.0, curl_sq = 0.0;
    for_each_mode(g, [&](std::size_t i, int jx, int jy) {
        double kx = g.deriv_wavenumber(jx), ky = g.deriv_wavenumber(jy);
        std::complex<double> dv = std::complex<double>(0.0, kx) * U1.c[i] +
                                  std::complex<double>(0.0, ky) * U2.c[i];
        std::complex<double> cw = std::complex<double>(0.0, kx) * U2.c[i] -
                                  std::complex<double>(0.0, ky) * U1.c[i];
        div_sq += std::norm(dv);
        curl_sq += std::norm(cw);
    });
    r.div_l2 = std::sqrt(div_sq * box_volume(g));
    r.curl_l2 = std::sqrt(curl_sq * box_volume(g));
    r.sup = u.sup_magnitude();
    auto m = mean(u);
    r.mean1 = m[0];
    r.mean2 = m[1];
    r.f_dot_u = f ? inner(*f, u) : 0.0;
    return r;
}

}  // namespace detail

// Advances u0 to t_end, recording diagnostics and snapshots on their
// cadences (plus the initial and final states).  Halts with the diverged
// flag if max|u| exceeds the guard, any non-finite value appears, or the
// optional spectral-tail guard trips; the last good state is kept.
inline Trajectory2 simulate(const VectorField2& u0, const SimConfig2& cfg,
                            const ForceField2* force = nullptr) {
    cfg.validate();
    const Grid2& g = u0.grid();
    const VectorField2* f = force ? &force->field : nullptr;
    if (f && f->grid().n != g.n) throw config_error("force grid does not match state grid");

    Trajectory2 traj;
    double dt_max = cfg.step_size(g);
    int steps = static_cast<int>(std::ceil(cfg.t_end / dt_max - 1e-12));
    steps = std::max(steps, 1);
    double dt = cfg.dt_policy.kind == DtPolicy::Kind::viscous_cfl
                    ? cfg.t_end / steps  // shrink to land exactly on t_end, still CFL-compliant
                    : dt_max;
    traj.dt = dt;

    std::optional<AbsorbingBounds> bounds;
    if (cfg.gamma > 0.0 && cfg.nu > 0.0 && force)
        bounds = absorbing_ball_bounds(*force, cfg.nu, cfg.gamma);

    if (cfg.track_rotation) {
        traj.theta_cum = RealField2(g);
        traj.has_theta = true;
    }

    double t = 0.0;
    VectorField2 u = u0;
    const double u0_l2 = norm_L2(u0);

    double visc_trap = 0.0, work_trap = 0.0;
    double prev_grad_sq = 0.0, prev_fdotu = 0.0;
    bool accumulate_balance = cfg.diag_every == 1;

    auto record_diag = [&](const VectorField2& state, double time, bool initial) {
        DiagnosticsRecord r = detail::diag_sample2(state, time, f);
        if (accumulate_balance) {
            if (!initial) {
                double dtr = time - traj.records.back().t;
                visc_trap += 0.5 * dtr * (prev_grad_sq + r.grad_l2 * r.grad_l2);
                work_trap += 0.5 * dtr * (prev_fdotu + r.f_dot_u);
            }
            prev_grad_sq = r.grad_l2 * r.grad_l2;
            prev_fdotu = r.f_dot_u;
            r.balance_residual = r.l2 * r.l2 + 2.0 * cfg.nu * visc_trap - u0_l2 * u0_l2 - work_trap;
        }
        if (bounds) {
            r.rho0_margin = bounds->rho0 - r.l2 * r.l2;
            r.rhoinf_margin = bounds->rhoinf - r.sup;
        }
        traj.records.push_back(r);
    };

    auto push_snapshot = [&](const VectorField2& state, double time) {
        traj.snapshot_times.push_back(time);
        traj.snapshots.push_back(state);
    };

    record_diag(u, 0.0, true);
    push_snapshot(u, 0.0);

    const int k_cut = g.n / 3;
    RealField2 theta_step;
    if (traj.has_theta) theta_step = RealField2(g);
    for (int n = 0; n < steps; ++n) {
        VectorField2 next = step_viscous(u, dt, cfg.nu, cfg.gamma, f, cfg.dealias,
                                         traj.has_theta ? &theta_step : nullptr);
        double t_next = (n + 1) * dt;

        auto scan = detail::scan_state(next);
        if (!scan.finite || scan.sup > cfg.guard) {
            traj.diverged = true;
            traj.divergence_reason = !scan.finite ? "non-finite value" : "amplitude guard";
            break;  // keep u (the last good state)
        }

        if (traj.has_theta)
            for (std::size_t i = 0; i < theta_step.size(); ++i)
                traj.theta_cum[i] += theta_step[i];
        u = std::move(next);
        t = t_next;
        bool last = n + 1 == steps;

        bool diag_due = ((n + 1) % cfg.diag_every == 0) || last;
        if (diag_due) record_diag(u, t, false);
        if ((n + 1) % cfg.snapshot_every == 0 && !last) push_snapshot(u, t);

        if (cfg.tail_guard > 0.0 && diag_due) {
            auto spec = energy_spectrum(u);
            if (spectrum_tail_ratio(spec, k_cut - std::max(1, k_cut / 10), k_cut) >
                cfg.tail_guard) {
                traj.diverged = true;
                traj.divergence_reason = "spectral-tail guard";
                break;
            }
        }
    }

    traj.t_final = t;
    traj.steps_taken = static_cast<int>(std::round(t / dt));
    if (traj.snapshot_times.empty() || traj.snapshot_times.back() != t) push_snapshot(u, t);
    if (traj.records.empty() || traj.records.back().t != t) record_diag(u, t, false);
    return traj;
}

// Residual of the telescoped rotation representation: the inviscid stepper
// is u^N = R(sum dt w^n) u^0 pointwise, so applying R(theta_cum) to u0 must
// reproduce the final state to round-off.
inline double rotation_representation_check(const VectorField2& u0, double t,
                                            const Trajectory2& traj) {
    if (!traj.has_theta) throw error("rotation_representation_check: trajectory lacks theta");
    if (std::abs(t - traj.t_final) > 1e-12 * std::max(1.0, traj.t_final))
        throw error("rotation_representation_check: t does not match the trajectory end");
    const VectorField2& ut = traj.final_state();
    double worst = 0.0;
    for (std::size_t i = 0; i < u0.u1.size(); ++i) {
        double th = traj.theta_cum[i];
        double c = std::cos(th), s = std::sin(th);
        double r1 = c * u0.u1[i] + s * u0.u2[i];
        double r2 = -s * u0.u1[i] + c * u0.u2[i];
        worst = std::max({worst, std::abs(r1 - ut.u1[i]), std::abs(r2 - ut.u2[i])});
    }
    return worst;
}

// L-infinity distance between a trajectory snapshot at time t and an
// analytic oracle (x, t) -> (u1, u2) evaluated along grid rows.
template <class Oracle>
double compare_solver_vs_oracle(const Trajectory2& traj, const Oracle& oracle, double t) {
    std::size_t idx = traj.snapshots.size();
    for (std::size_t i = 0; i < traj.snapshot_times.size(); ++i) {
        if (std::abs(traj.snapshot_times[i] - t) <= 0.5 * traj.dt + 1e-12) {
            idx = i;
            break;
        }
    }
    if (idx == traj.snapshots.size())
        throw error("compare_solver_vs_oracle: no snapshot near t = " + std::to_string(t));
    const VectorField2& u = traj.snapshots[idx];
    const Grid2& g = u.grid();
    double worst = 0.0;
    for (int ix = 0; ix < g.n; ++ix) {
        auto uv = oracle(g.x(ix), traj.snapshot_times[idx]);
        for (int iy = 0; iy < g.n; ++iy) {
            std::size_t i = g.index(ix, iy);
            worst = std::max({worst, std::abs(u.u1[i] - uv[0]), std::abs(u.u2[i] - uv[1])});
        }
    }
    return worst;
}

// The x-only initial data of the 2D blow-up family, extended along y.
inline VectorField2 blowup2d_initial(const Grid2& g) {
    VectorField2 u(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            std::size_t i = g.index(ix, iy);
            u.u1[i] = std::cos(g.x(ix));
            u.u2[i] = std::sin(g.x(ix));
        }
    return u;
}

}  // namespace rotb
