#pragma once

#include <functional>
#include <limits>

#include "rotb/grid.hpp"

namespace rotb {

struct post_shock_error : error {
    using error::error;
};

// A 2pi-periodic smooth scalar profile with its derivative.  Consistency of
// the supplied derivative is checked against central differences at setup.
struct Profile1D {
    std::function<double(double)> f;
    std::function<double(double)> df;

    Profile1D(std::function<double(double)> f_, std::function<double(double)> df_)
        : f(std::move(f_)), df(std::move(df_)) {
        const int samples = 64;
        const double h = 1e-6;
        double scale = 1.0;
        for (int i = 0; i < samples; ++i) {
            double x = -pi + two_pi * i / samples;
            scale = std::max(scale, std::abs(f(x)));
        }
        for (int i = 0; i < samples; ++i) {
            double x = -pi + two_pi * i / samples;
            if (std::abs(f(x + two_pi) - f(x)) > 1e-10 * scale)
                throw error("Profile1D: profile is not 2pi-periodic");
            double fd = (f(x + h) - f(x - h)) / (2.0 * h);
            if (std::abs(fd - df(x)) > 1e-6 * std::max(1.0, scale))
                throw error("Profile1D: derivative inconsistent with profile");
        }
    }
};

// First fold time of the characteristic map x = xi + u0(xi) t, i.e.
// t* = -1 / min u0'.  Dense sampling plus golden-section refinement around
// the sampled minimizer.
inline double shock_time(const Profile1D& u0) {
    const int samples = 10000;
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < samples; ++i) {
        double x = -pi + two_pi * i / samples;
        double d = u0.df(x);
        if (d < best) {
            best = d;
            best_i = i;
        }
    }
    double a = -pi + two_pi * (best_i - 1) / samples;
    double b = -pi + two_pi * (best_i + 1) / samples;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    while (b - a > 1e-12) {
        if (u0.df(c) < u0.df(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    double dmin = std::min(best, u0.df(0.5 * (a + b)));
    if (dmin >= 0.0) return std::numeric_limits<double>::infinity();
    return -1.0 / dmin;
}

// Inverts the characteristic map for u_t + u u_x = 0: finds xi with
// x = xi + u0(xi) t, returns u = u0(xi).  Monotone pre-shock, so bisection
// on [x - t max u0, x - t min u0] is safe; a few Newton steps polish the
// root to round-off.
class CharacteristicSolver {
  public:
    explicit CharacteristicSolver(Profile1D u0) : u0_(std::move(u0)) {
        tstar_ = shock_time(u0_);
        const int samples = 4096;
        for (int i = 0; i < samples; ++i) {
            double v = u0_.f(-pi + two_pi * i / samples);
            umin_ = std::min(umin_, v);
            umax_ = std::max(umax_, v);
        }
    }

    double shock_t() const { return tstar_; }

    double xi(double x, double t) const {
        if (!(t < tstar_))
            throw post_shock_error("post-shock query: t = " + std::to_string(t) +
                                   " >= t* = " + std::to_string(tstar_));
        if (t == 0.0) return x;
        double lo = x - t * umax_, hi = x - t * umin_;
        auto residual = [&](double s) { return s + u0_.f(s) * t - x; };
        // bracket is guaranteed: residual(lo) <= 0 <= residual(hi)
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            double mid = 0.5 * (lo + hi);
            (residual(mid) < 0.0 ? lo : hi) = mid;
        }
        double s = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) {
            double denom = 1.0 + u0_.df(s) * t;
            if (denom <= 0.0) break;
            s -= residual(s) / denom;
        }
        return s;
    }

    double value(double x, double t) const { return u0_.f(xi(x, t)); }

  private:
    Profile1D u0_;
    double tstar_;
    double umin_ = std::numeric_limits<double>::infinity();
    double umax_ = -std::numeric_limits<double>::infinity();
};

inline double burgers_characteristics(const Profile1D& u0, double x, double t) {
    return CharacteristicSolver(u0).value(x, t);
}

// The 2D blow-up family: u0 = cos, v0 = sin; u solves Burgers, v rides the
// same characteristics, and u^2 + v^2 = 1 exactly by construction.
class BlowupFamily2D {
  public:
    BlowupFamily2D()
        : solver_(Profile1D([](double x) { return std::cos(x); },
                            [](double x) { return -std::sin(x); })) {}

    std::array<double, 2> operator()(double x, double t) const {
        double s = solver_.xi(x, t);
        return {std::cos(s), std::sin(s)};
    }

    double shock_t() const { return solver_.shock_t(); }

  private:
    CharacteristicSolver solver_;
};

inline std::array<double, 2> family2d(double x, double t) {
    static const BlowupFamily2D fam;
    return fam(x, t);
}

// The 3D family u = (v, v, w): v solves Burgers from v0, w is carried along
// the same characteristics on the branch w = sign * sqrt(2(v0^2-v^2)+w0^2).
// Requires 2 v0^2 + w0^2 constant in space (validated) and w0 bounded away
// from zero with sign matching the branch.
class BlowupFamily3D {
  public:
    BlowupFamily3D(Profile1D v0, Profile1D w0, int sign)
        : v0_(v0), w0_(std::move(w0)), sign_(sign), solver_(std::move(v0)) {
        if (sign_ != 1 && sign_ != -1) throw error("BlowupFamily3D: sign must be +-1");
        const int samples = 2048;
        double c0 = conserved_at(-pi);
        for (int i = 0; i < samples; ++i) {
            double x = -pi + two_pi * i / samples;
            if (std::abs(conserved_at(x) - c0) > 1e-12 * std::max(1.0, std::abs(c0)))
                throw error("BlowupFamily3D: 2 v0^2 + w0^2 is not constant in space");
            double w = w0_.f(x);
            if (sign_ * w <= 0.0)
                throw error("BlowupFamily3D: w0 must be bounded away from zero on the branch sign");
        }
    }

    std::array<double, 3> operator()(double x, double t) const {
        double s = solver_.xi(x, t);
        double v = v0_.f(s);
        double radicand = 2.0 * (v0_.f(s) * v0_.f(s) - v * v) + w0_.f(s) * w0_.f(s);
        if (radicand < 0.0) throw error("BlowupFamily3D: negative radicand");
        double w = sign_ * std::sqrt(radicand);
        return {v, v, w};
    }

    double shock_t() const { return solver_.shock_t(); }

  private:
    double conserved_at(double x) const {
        double v = v0_.f(x), w = w0_.f(x);
        return 2.0 * v * v + w * w;
    }

    Profile1D v0_, w0_;
    int sign_;
    CharacteristicSolver solver_;
};

inline std::array<double, 3> family3d(double x, double t, const BlowupFamily3D& fam) {
    return fam(x, t);
}

}  // namespace rotb
