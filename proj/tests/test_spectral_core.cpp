#include <catch2/catch_amalgamated.hpp>

#include "rotb/forcing.hpp"
#include "rotb/norms.hpp"
#include "rotb/operators.hpp"

using namespace rotb;

namespace {

RealField2 sample2(const Grid2& g, double (*f)(double, double)) {
    RealField2 out(g);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) out.v[g.index(ix, iy)] = f(g.x(ix), g.x(iy));
    return out;
}

RealField3 sample3(const Grid3& g, double (*f)(double, double, double)) {
    RealField3 out(g);
    for (int iz = 0; iz < g.n; ++iz)
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix)
                out.v[g.index(ix, iy, iz)] = f(g.x(ix), g.x(iy), g.x(iz));
    return out;
}

double max_abs_diff(const RealField2& a, const RealField2& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs_diff(const RealField3& a, const RealField3& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const RealField2& a) {
    double m = 0.0;
    for (double x : a.v) m = std::max(m, std::abs(x));
    return m;
}

double max_abs(const VectorField3& v) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.u1.size(); ++i) {
        m = std::max(m, std::abs(v.u1[i]));
        m = std::max(m, std::abs(v.u2[i]));
        m = std::max(m, std::abs(v.u3[i]));
    }
    return m;
}

}  // namespace

TEST_CASE("fft of constant field") {
    Grid2 g(16);
    RealField2 f(g);
    for (auto& x : f.v) x = 3.25;
    auto F = fft_forward(f);
    CHECK(F.c[0] == std::complex<double>(3.25, 0.0));
    for (std::size_t i = 1; i < F.size(); ++i) CHECK(std::abs(F.c[i]) < 1e-14);
}

TEST_CASE("fft of cos x has coefficients 1/2 at k = (+-1, 0)") {
    Grid2 g(16);
    auto f = sample2(g, [](double x, double) { return std::cos(x); });
    auto F = fft_forward(f);
    for (int jy = 0; jy < g.n; ++jy)
        for (int jx = 0; jx < g.n; ++jx) {
            int kx = g.wavenumber(jx), ky = g.wavenumber(jy);
            auto c = F.c[g.index(jx, jy)];
            if (std::abs(kx) == 1 && ky == 0) {
                CHECK(std::abs(c.real() - 0.5) < 1e-14);
                CHECK(std::abs(c.imag()) < 1e-14);
            } else {
                CHECK(std::abs(c) < 1e-14);
            }
        }
}

TEST_CASE("random field round-trips through fft") {
    Grid2 g(32);
    SplitMix64 rng(7);
    RealField2 f(g);
    for (auto& x : f.v) x = rng.next_uniform() - 0.5;
    auto back = fft_inverse(fft_forward(f));
    double scale = max_abs(f);
    CHECK(max_abs_diff(f, back) <= 1e-13 * scale);

    Grid3 g3(16);
    RealField3 f3(g3);
    for (auto& x : f3.v) x = rng.next_uniform() - 0.5;
    auto back3 = fft_inverse(fft_forward(f3));
    CHECK(max_abs_diff(f3, back3) <= 1e-13);
}

TEST_CASE("spectral derivative of single modes") {
    Grid2 g(32);
    auto f = sample2(g, [](double x, double) { return std::sin(x); });
    auto dfdx = fft_inverse(deriv(fft_forward(f), 0));
    auto expect = sample2(g, [](double x, double) { return std::cos(x); });
    CHECK(max_abs_diff(dfdx, expect) <= 1e-12);

    RealField2 c(g);
    for (auto& x : c.v) x = 2.0;
    auto dc = fft_inverse(deriv(fft_forward(c), 0));
    CHECK(max_abs(dc) <= 1e-14);

    auto f2 = sample2(g, [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y); });
    auto d2 = fft_inverse(deriv(fft_forward(f2), 1));
    auto expect2 =
        sample2(g, [](double x, double y) { return -2.0 * std::sin(3 * x) * std::sin(2 * y); });
    CHECK(max_abs_diff(d2, expect2) <= 1e-12);
}

TEST_CASE("derivative zeroes the Nyquist mode") {
    Grid2 g(8);
    SpectralField2 F(g);
    F.c[g.index(g.n / 2, 0)] = {1.0, 0.0};  // k_x = -n/2
    auto D = deriv(F, 0);
    for (const auto& c : D.c) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("curl2 analytic examples") {
    Grid2 g(32);
    VectorField2 v(g);
    v.u1 = sample2(g, [](double, double y) { return -std::sin(y); });
    v.u2 = sample2(g, [](double x, double) { return std::sin(x); });
    auto w = curl2(v);
    auto expect = sample2(g, [](double x, double y) { return std::cos(x) + std::cos(y); });
    CHECK(max_abs_diff(w, expect) <= 1e-12);

    // gradient field: curl vanishes
    VectorField2 grad(g);
    grad.u1 = sample2(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
    grad.u2 = sample2(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
    CHECK(max_abs(curl2(grad)) <= 1e-12);

    VectorField2 zero(g);
    CHECK(max_abs(curl2(zero)) == 0.0);
}

TEST_CASE("curl3, div, laplacian") {
    Grid3 g(16);
    VectorField3 v(g);
    v.u1 = sample3(g, [](double, double y, double) { return std::sin(y); });
    v.u3 = sample3(g, [](double x, double, double) { return std::sin(x); });
    auto w = curl3(v);
    auto e2 = sample3(g, [](double x, double, double) { return -std::cos(x); });
    auto e3 = sample3(g, [](double, double y, double) { return -std::cos(y); });
    CHECK(max_abs_diff(w.u2, e2) <= 1e-12);
    CHECK(max_abs_diff(w.u3, e3) <= 1e-12);
    double m1 = 0.0;
    for (double x : w.u1.v) m1 = std::max(m1, std::abs(x));
    CHECK(m1 <= 1e-12);

    // div of curl vanishes
    VectorField3 a(g);
    a.u1 = sample3(g, [](double x, double y, double z) { return std::sin(x + y) * std::cos(z); });
    a.u2 = sample3(g, [](double x, double, double z) { return std::cos(2 * x) * std::sin(z); });
    a.u3 = sample3(g, [](double, double y, double) { return std::sin(3 * y); });
    auto ca = curl3(a);
    auto d = div(ca);
    double md = 0.0;
    for (double x : d.v) md = std::max(md, std::abs(x));
    CHECK(md <= 1e-12);

    // laplacian eigenfunction
    VectorField3 ef(g);
    ef.u1 = sample3(g, [](double x, double, double) { return std::cos(2 * x); });
    auto lap = laplacian(ef);
    auto el = sample3(g, [](double x, double, double) { return -4.0 * std::cos(2 * x); });
    CHECK(max_abs_diff(lap.u1, el) <= 1e-11);
}

TEST_CASE("lamb3 pointwise formula for u=(y,0,x) with supplied curl is exact") {
    // non-periodic check of the cross product alone
    for (double x : {-2.0, -0.5, 0.0, 1.25}) {
        for (double y : {-1.0, 0.75, 2.5}) {
            std::array<double, 3> omega{0.0, -1.0, -1.0};
            std::array<double, 3> u{y, 0.0, x};
            auto l = cross(omega, u);
            CHECK(l[0] == -x);
            CHECK(l[1] == -y);
            CHECK(l[2] == y);
        }
    }
}

TEST_CASE("lamb3 periodic example (sin y, 0, sin x)") {
    Grid3 g(32);
    VectorField3 v(g);
    v.u1 = sample3(g, [](double, double y, double) { return std::sin(y); });
    v.u3 = sample3(g, [](double x, double, double) { return std::sin(x); });
    auto l = lamb3(v);
    auto e1 = sample3(g, [](double x, double, double) { return -std::sin(x) * std::cos(x); });
    auto e2 = sample3(g, [](double, double y, double) { return -std::sin(y) * std::cos(y); });
    auto e3 = sample3(g, [](double x, double y, double) { return std::sin(y) * std::cos(x); });
    CHECK(max_abs_diff(l.u1, e1) <= 1e-11);
    CHECK(max_abs_diff(l.u2, e2) <= 1e-11);
    CHECK(max_abs_diff(l.u3, e3) <= 1e-11);
}

TEST_CASE("lamb3 vanishes on an ABC Beltrami field") {
    Grid3 g(32);
    const double A = 1.0, B = 1.0, C = 1.0;
    VectorField3 u(g);
    for (int iz = 0; iz < g.n; ++iz)
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                double x = g.x(ix), y = g.x(iy), z = g.x(iz);
                std::size_t i = g.index(ix, iy, iz);
                u.u1[i] = A * std::sin(z) + C * std::cos(y);
                u.u2[i] = B * std::sin(x) + A * std::cos(z);
                u.u3[i] = C * std::sin(y) + B * std::cos(x);
            }
    CHECK(max_abs(lamb3(u)) <= 1e-11);
}

TEST_CASE("lamb2 examples") {
    Grid2 g(32);

    // irrotational input -> zero
    VectorField2 grad(g);
    grad.u1 = sample2(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
    grad.u2 = sample2(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
    auto lg = lamb2(grad);
    CHECK(std::max(max_abs(lg.u1), max_abs(lg.u2)) <= 1e-12);

    VectorField2 v(g);
    v.u1 = sample2(g, [](double, double y) { return -std::sin(y); });
    v.u2 = sample2(g, [](double x, double) { return std::sin(x); });
    auto l = lamb2(v);
    auto e1 = sample2(
        g, [](double x, double y) { return (std::cos(x) + std::cos(y)) * (-std::sin(x)); });
    auto e2 = sample2(
        g, [](double x, double y) { return (std::cos(x) + std::cos(y)) * (-std::sin(y)); });
    CHECK(max_abs_diff(l.u1, e1) <= 1e-11);
    CHECK(max_abs_diff(l.u2, e2) <= 1e-11);

    // pointwise orthogonality lamb2(v) . v = 0
    auto w = curl2(v);
    for (std::size_t i = 0; i < v.u1.size(); ++i) {
        double dot = l.u1[i] * v.u1[i] + l.u2[i] * v.u2[i];
        double bound = 1e-13 * (v.u1[i] * v.u1[i] + v.u2[i] * v.u2[i]) * std::abs(w[i]) + 1e-300;
        CHECK(std::abs(dot) <= bound);
    }
}

TEST_CASE("dealias mask thresholds at n=12") {
    Grid2 g(12);
    SpectralField2 F(g);
    for (auto& c : F.c) c = {1.0, 0.0};
    auto D = dealias_two_thirds(F);
    for (int jy = 0; jy < g.n; ++jy)
        for (int jx = 0; jx < g.n; ++jx) {
            int kx = g.wavenumber(jx), ky = g.wavenumber(jy);
            bool keep = std::abs(kx) <= 4 && std::abs(ky) <= 4;
            CHECK(D.c[g.index(jx, jy)] == std::complex<double>(keep ? 1.0 : 0.0, 0.0));
        }
    // idempotence
    auto DD = dealias_two_thirds(D);
    for (std::size_t i = 0; i < D.size(); ++i) CHECK(DD.c[i] == D.c[i]);
}

TEST_CASE("project_PN radial projection") {
    Grid2 g(16);
    SplitMix64 rng(3);
    RealField2 f(g);
    for (auto& x : f.v) x = rng.next_uniform() - 0.5;
    auto F = fft_forward(f);

    auto id = project_PN(F, 100.0);
    for (std::size_t i = 0; i < F.size(); ++i) CHECK(id.c[i] == F.c[i]);

    auto mean_only = project_PN(F, 0.0);
    CHECK(mean_only.c[0] == F.c[0]);
    for (std::size_t i = 1; i < F.size(); ++i) CHECK(mean_only.c[i] == std::complex<double>(0.0));

    CHECK(norm_L2_spectral(project_PN(F, 3.0)) <= norm_L2_spectral(F) + 1e-15);
}

TEST_CASE("Parseval identity between quadrature and spectral sums") {
    Grid2 g(32);
    SplitMix64 rng(11);
    RealField2 f(g);
    for (auto& x : f.v) x = rng.next_uniform() - 0.5;
    double phys = norm_L2(f);
    double spec = norm_L2_spectral(fft_forward(f));
    CHECK(std::abs(phys - spec) <= 1e-12 * phys);

    Grid3 g3(16);
    RealField3 f3(g3);
    for (auto& x : f3.v) x = rng.next_uniform() - 0.5;
    CHECK(std::abs(norm_L2(f3) - norm_L2_spectral(fft_forward(f3))) <= 1e-12 * norm_L2(f3));
}

TEST_CASE("operators preserve Hermitian symmetry") {
    Grid2 g(24);
    auto v = random_annulus_field(g, 5, 0.5, 6.5, 1.0);
    auto F = fft_forward(v.u1);
    CHECK(hermitian_asymmetry(F) <= 1e-13);
    CHECK(hermitian_asymmetry(deriv(F, 0)) <= 1e-13);
    CHECK(hermitian_asymmetry(dealias_two_thirds(F)) <= 1e-13);
    CHECK(hermitian_asymmetry(project_PN(F, 4.0)) <= 1e-13);
    auto L = F;
    apply_laplacian(L);
    CHECK(hermitian_asymmetry(L) <= 1e-11);
    CHECK(fft_inverse_imag_residue(F) <= 1e-13);
}

TEST_CASE("L2-orthogonality of the Lamb term for random smooth fields") {
    Grid2 g2(64);
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto v = random_annulus_field(g2, s, 0.5, 8.5, 1.0 + 0.3 * s);
        auto l = lamb2(v);
        double rel = std::abs(inner(l, v)) / (norm_L2(v) * norm_L2(l) + 1e-300);
        CHECK(rel <= 1e-12);
    }
    Grid3 g3(16);
    for (std::uint64_t s = 0; s < 3; ++s) {
        auto v = random_annulus_field(g3, s, 0.5, 4.5, 1.0);
        auto l = lamb3(v);
        double rel = std::abs(inner(l, v)) / (norm_L2(v) * norm_L2(l) + 1e-300);
        CHECK(rel <= 1e-12);
    }
}

TEST_CASE("lamb3 agrees with the independent componentwise expansion") {
    Grid3 g(16);
    auto v = random_annulus_field(g, 9, 0.5, 4.5, 2.0);
    auto a = lamb3(v);
    auto b = lamb3_componentwise(v);
    double m = 0.0;
    for (std::size_t i = 0; i < a.u1.size(); ++i) {
        m = std::max(m, std::abs(a.u1[i] - b.u1[i]));
        m = std::max(m, std::abs(a.u2[i] - b.u2[i]));
        m = std::max(m, std::abs(a.u3[i] - b.u3[i]));
    }
    CHECK(m <= 1e-12);
}
