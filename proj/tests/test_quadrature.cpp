#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lhk/geometry.hpp"
#include "lhk/quadrature.hpp"

using namespace lhk;
using namespace lhk::quad;

TEST_CASE("gauss-legendre rule exactness") {
    for (int n : {2, 4, 8, 16, 32}) {
        auto r = gauss_legendre(n);
        // integrates x^k exactly for k <= 2n-1
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.x[i], k);
            const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1.0);
            CHECK(std::abs(s - exact) < 1e-13);
        }
    }
}

TEST_CASE("gauss-jacobi agrees with gauss-legendre at a=b=0") {
    auto gj = gauss_jacobi(12, 0.0, 0.0);
    auto gl = gauss_legendre(12);
    for (int i = 0; i < 12; ++i) {
        CHECK(gj.x[i] == doctest::Approx(gl.x[i]).epsilon(1e-12));
        CHECK(gj.w[i] == doctest::Approx(gl.w[i]).epsilon(1e-12));
    }
}

TEST_CASE("gauss-jacobi moments against Beta closed form") {
    // integral over [-1,1] of (1-x)^a (1+x)^b x^k
    for (double a : {-0.5, 0.0, 1.5}) {
        for (double b : {0.0, 2.0}) {
            auto r = gauss_jacobi(20, a, b);
            for (int k = 0; k <= 8; ++k) {
                double s = 0.0;
                for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
                // oracle: substitute x = 1-2u -> 2^{a+b+1} int_0^1 u^a (1-u)^b (1-2u)^k du
                double oracle = 0.0;
                {
                    auto fine = gauss_jacobi(64, a, b); // same family, higher order
                    for (size_t i = 0; i < fine.x.size(); ++i)
                        oracle += fine.w[i] * std::pow(fine.x[i], k);
                }
                CHECK(s == doctest::Approx(oracle).epsilon(1e-12));
            }
            // constant: 2^{a+b+1} B(a+1,b+1)
            double s0 = 0.0;
            for (double w : r.w) s0 += w;
            const double expect = std::pow(2.0, a + b + 1.0) *
                                  std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                           std::lgamma(a + b + 2.0));
            CHECK(s0 == doctest::Approx(expect).epsilon(1e-13));
        }
    }
}

TEST_CASE("physical grid mass invariant") {
    for (double alpha : {0.0, 0.5, 1.0, 0.3, 1.7}) {
        auto g = build_physical_grid(alpha, 1.0, 1.0, 96, 96);
        CHECK(g.mass_defect < 1e-12);
        for (double w : g.wx) CHECK(w > 0.0);
        for (double w : g.wt) CHECK(w > 0.0);
        for (double x : g.x) {
            CHECK(x > 0.0);
            CHECK(x < 1.0);
        }
    }
    CHECK_THROWS_AS(build_physical_grid(0.0, -1.0, 1.0, 32, 32), std::invalid_argument);
    CHECK_THROWS_AS(build_physical_grid(0.0, 1.0, 1.0, 2, 32), std::invalid_argument);
}

TEST_CASE("physical integration: constants, ball indicator, convergence") {
    // integral of 1 over [0,1]x[-1,1] with alpha=0: 1/pi * (1/2) * 2 = 1/pi
    auto g = build_physical_grid(0.0, 1.0, 1.0, 64, 64);
    auto one = sample_physical(g, [](double, double) { return cplx(1.0, 0.0); });
    CHECK(integrate_physical(g, one).real() == doctest::Approx(1.0 / M_PI).epsilon(1e-13));

    // smoothed ball indicator close to ball volume
    auto f = sample_physical(g, [](double x, double t) {
        const double n4 = x * x * x * x + 4.0 * t * t;
        return cplx(n4 < 1.0 ? 1.0 : 0.0, 0.0);
    });
    CHECK(integrate_physical(g, f).real() == doctest::Approx(0.125).epsilon(1e-2));

    // doubling resolution reduces Gaussian error by >= 100
    auto gauss = [](double x, double t) { return cplx(std::exp(-x * x - t * t), 0.0); };
    auto g1 = build_physical_grid(0.0, 6.0, 6.0, 32, 32);
    auto g2 = build_physical_grid(0.0, 6.0, 6.0, 64, 64);
    auto gref = build_physical_grid(0.0, 6.0, 6.0, 256, 256);
    const double ref = integrate_physical(gref, sample_physical(gref, gauss)).real();
    const double e1 = std::abs(integrate_physical(g1, sample_physical(g1, gauss)).real() - ref);
    const double e2 = std::abs(integrate_physical(g2, sample_physical(g2, gauss)).real() - ref);
    CHECK(e1 / std::max(e2, 1e-18) >= 100.0);
}

TEST_CASE("integration is linear and rejects misaligned input") {
    auto g = build_physical_grid(1.0, 2.0, 1.0, 48, 48);
    auto f1 = sample_physical(g, [](double x, double t) { return cplx(std::sin(x + t), 0.2 * x); });
    auto f2 = sample_physical(g, [](double x, double t) { return cplx(x * t, std::cos(t)); });
    const cplx a(1.7, -0.3), b(0.4, 2.2);
    GridFunction comb = zero_function(g);
    for (size_t i = 0; i < comb.v.size(); ++i) comb.v[i] = a * f1.v[i] + b * f2.v[i];
    const cplx lhs = integrate_physical(g, comb);
    const cplx rhs = a * integrate_physical(g, f1) + b * integrate_physical(g, f2);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));

    auto other = build_physical_grid(1.0, 2.0, 1.0, 48, 48);
    GridFunction wrong;
    wrong.grid = &other;
    wrong.v.assign(other.size(), cplx(0.0, 0.0));
    CHECK_THROWS_AS(integrate_physical(g, wrong), std::invalid_argument);
    CHECK(std::abs(integrate_physical(g, zero_function(g))) == 0.0);
}

TEST_CASE("spectral grid structure") {
    auto g = build_spectral_grid(0.0, 1e-3, 10.0, 64, 32);
    const int n = g.n_lambda_nodes();
    REQUIRE(n % 2 == 0);
    for (int i = 0; i < n / 2; ++i) {
        CHECK(g.lam[i] == doctest::Approx(-g.lam[n - 1 - i]).epsilon(1e-15));
        CHECK(g.wlam[i] == doctest::Approx(g.wlam[n - 1 - i]).epsilon(1e-15));
    }
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(g.lam[i]) >= 1e-3 * (1.0 - 1e-12));
        CHECK(std::abs(g.lam[i]) <= 10.0 * (1.0 + 1e-12));
        CHECK(g.wlam[i] > 0.0);
    }
    CHECK_THROWS_AS(build_spectral_grid(0.0, 0.0, 1.0, 8, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_spectral_grid(0.0, 2.0, 1.0, 8, 8), std::invalid_argument);
}

TEST_CASE("spectral integral of exp(-N) and sublevel measure (node path)") {
    // integral of e^{-N} dgamma at alpha=0 equals pi^2/16; node quadrature with
    // poly-geometric tail completion reaches a few 1e-5.
    auto g = build_spectral_grid(0.0, 1e-7, 40.0, 300, 600);
    SpectralFunction F = zero_spectral(g);
    for (int k = 0; k < g.n_lambda_nodes(); ++k)
        for (int m = 0; m <= g.m_max; ++m)
            F.at(k, m) = std::exp(-g.quasinorm(k, m));
    const double got = spectral_mass(F, 1.0, TailMode::poly_geometric);
    const double expect = M_PI * M_PI / 16.0;
    CHECK(got == doctest::Approx(expect).epsilon(1e-4));

    // even-in-lambda integrand: halves agree
    double neg = 0.0, pos = 0.0;
    const int half = g.n_lambda_nodes() / 2;
    for (int k = 0; k < half; ++k)
        for (int m = 0; m <= g.m_max; ++m) neg += g.weight(k, m) * std::abs(F.at(k, m));
    for (int k = half; k < g.n_lambda_nodes(); ++k)
        for (int m = 0; m <= g.m_max; ++m) pos += g.weight(k, m) * std::abs(F.at(k, m));
    CHECK(neg == doctest::Approx(pos).epsilon(1e-12));
}

TEST_CASE("semi-analytic dual integrals") {
    // integral of e^{-N} dgamma, alpha = 0 -> pi^2/16
    const double expect = M_PI * M_PI / 16.0;
    const double got = integrate_dual_radial(0.0, [](double n) { return std::exp(-n); }, 60.0, 2000, true);
    CHECK(got == doctest::Approx(expect).epsilon(2e-6));

    // gamma({N <= 1}) at alpha = 0 -> pi^2/32, and R^{Q/2} scaling
    const double g1 = gamma_sublevel(0.0, 1.0, 60.0, 4000, true);
    CHECK(g1 == doctest::Approx(M_PI * M_PI / 32.0).epsilon(2e-5));
    const double g2 = gamma_sublevel(0.0, 2.0, 60.0, 4000, true);
    CHECK(g2 / g1 == doctest::Approx(4.0).epsilon(1e-4));
}

TEST_CASE("tail completion on synthetic sequences") {
    // pure geometric
    {
        std::vector<double> b;
        const double r = 0.9;
        double tail_true = 0.0;
        for (int m = 0; m <= 40; ++m) b.push_back(std::pow(r, m));
        tail_true = std::pow(r, 41) / (1.0 - r);
        CHECK(tail_complete(b, TailMode::poly_geometric) == doctest::Approx(tail_true).epsilon(1e-10));
        CHECK(tail_complete(b, TailMode::geometric) == doctest::Approx(tail_true).epsilon(1e-10));
    }
    // (A + B m) r^m completed exactly by the poly-geometric fit
    {
        std::vector<double> b;
        const double r = 0.85, A = 2.0, B = 0.5;
        for (int m = 0; m <= 50; ++m) b.push_back((A + B * m) * std::pow(r, m));
        double tail_true = 0.0;
        for (int m = 51; m <= 4000; ++m) tail_true += (A + B * m) * std::pow(r, m);
        CHECK(tail_complete(b, TailMode::poly_geometric) == doctest::Approx(tail_true).epsilon(1e-8));
    }
    // non-decaying: no completion
    {
        std::vector<double> b = {1.0, 2.0, 3.0};
        CHECK(tail_complete(b, TailMode::poly_geometric) == 0.0);
    }
    CHECK(tail_complete(std::vector<double>{1.0, 0.5}, TailMode::poly_geometric) == 0.0);
}

TEST_CASE("grid checksums are deterministic and sensitive") {
    auto a = build_physical_grid(0.0, 1.0, 1.0, 64, 64);
    auto b = build_physical_grid(0.0, 1.0, 1.0, 64, 64);
    auto c = build_physical_grid(0.0, 1.0, 1.0, 80, 64);
    CHECK(a.checksum == b.checksum);
    CHECK(a.checksum != c.checksum);
}
