#include <cmath>
#include <random>

#include "doctest.h"
#include "lhk/geometry.hpp"
#include "lhk/specfun.hpp"

using namespace lhk;
using namespace lhk::specfun;

namespace {

// Independent oracle: explicit series L^a_m(x) = sum_k binom(m+a, m-k) (-x)^k / k!
// The alternating series cancels catastrophically in double for larger x, so
// the terms are generated by the exact ratio recursion in quad precision:
//   term_{k+1} = term_k * (-(x)) (m-k) / ((k+1)(alpha+k+1)), term_0 = binom(m+a, m).
double laguerre_series(double alpha, int m, double x) {
    __float128 term = lhk::specfun::laguerre_at_zero(alpha, m);
    __float128 s = term;
    for (int k = 0; k < m; ++k) {
        term *= -static_cast<__float128>(x) * (m - k) /
                ((static_cast<__float128>(k) + 1.0q) * (static_cast<__float128>(alpha) + k + 1.0q));
        s += term;
    }
    return static_cast<double>(s);
}

// Richardson-extrapolated central finite difference for d^n/dlambda^n character.
cplx fd_dlambda(const Params& par, DPoint d, const HPoint& p, int order, double h) {
    auto phi = [&](double lam) { return character(par, DPoint{lam, d.m}, p); };
    auto stencil = [&](double hh) -> cplx {
        switch (order) {
            case 1: return (phi(d.lambda + hh) - phi(d.lambda - hh)) / (2.0 * hh);
            case 2:
                return (phi(d.lambda + hh) - 2.0 * phi(d.lambda) + phi(d.lambda - hh)) / (hh * hh);
            case 3:
                return (phi(d.lambda + 2 * hh) - 2.0 * phi(d.lambda + hh) + 2.0 * phi(d.lambda - hh) -
                        phi(d.lambda - 2 * hh)) /
                       (2.0 * hh * hh * hh);
            default: throw std::runtime_error("fd order unsupported");
        }
    };
    const cplx a = stencil(h), b = stencil(h / 2.0);
    return (4.0 * b - a) / 3.0; // kills the O(h^2) term
}

} // namespace

TEST_CASE("laguerre_poly basic values") {
    CHECK(laguerre_poly(2.5, 0, 7.3) == 1.0);
    CHECK(laguerre_poly(1.0, 1, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    // alpha=1, m=2, x=2 -> series oracle gives -1
    CHECK(laguerre_poly(1.0, 2, 2.0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(laguerre_series(1.0, 2, 2.0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("laguerre_poly matches the series oracle, m<=30, x in [0,50]") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> ux(0.0, 50.0);
    std::uniform_real_distribution<double> ua(0.0, 3.0);
    std::uniform_int_distribution<int> um(0, 30);
    for (int trial = 0; trial < 4000; ++trial) {
        const double alpha = ua(rng);
        const int m = um(rng);
        const double x = ux(rng);
        const double rec = laguerre_poly(alpha, m, x);
        const double ser = laguerre_series(alpha, m, x);
        const double scale = std::max({std::abs(rec), std::abs(ser), 1e-30});
        CHECK(std::abs(rec - ser) / scale < 1e-10);
    }
}

TEST_CASE("laguerre_at_zero") {
    CHECK(laguerre_at_zero(0.0, 17) == 1.0);
    // Gamma(4)/(Gamma(3) Gamma(2)) = 6/2 = 3
    CHECK(laguerre_at_zero(1.0, 2) == doctest::Approx(3.0).epsilon(1e-15));
    // exact fallback equals the log-gamma path
    for (int m = 0; m <= 20; ++m)
        CHECK(laguerre_at_zero(2.0, m) ==
              doctest::Approx(std::exp(laguerre_at_zero_log(2.0, m))).epsilon(1e-12));
    // asymptotics: L^a_m(0) ~ m^a / Gamma(a+1)
    const double a = 2.0;
    for (int m : {100000, 400000}) {
        const double ratio = std::exp(laguerre_at_zero_log(a, m)) / (std::pow(m, a) / std::tgamma(a + 1.0));
        CHECK(ratio == doctest::Approx(1.0).epsilon(5e-5 * 100000.0 / m + 5e-5));
    }
}

TEST_CASE("laguerre_fn bounds and closed forms") {
    CHECK(laguerre_fn(0.7, 9, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(laguerre_fn(0.0, 1, 2.0) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-14));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ua(0.0, 4.0);
    std::uniform_real_distribution<double> uu(0.0, 600.0);
    std::uniform_int_distribution<int> um(0, 256);
    for (int trial = 0; trial < 100000; ++trial) {
        const double v = laguerre_fn(ua(rng), um(rng), uu(rng));
        CHECK(std::abs(v) <= 1.0 + 1e-12);
    }
}

TEST_CASE("laguerre_fn_all_m consistent with single-m") {
    std::vector<double> all(65);
    laguerre_fn_all_m(1.3, 17.0, 64, all);
    for (int m : {0, 1, 5, 33, 64})
        CHECK(all[m] == doctest::Approx(laguerre_fn(1.3, m, 17.0)).epsilon(1e-13));
}

TEST_CASE("character basic identities") {
    Params par(1.0);
    // x=0: phi = e^{i lambda t}
    cplx c = character(par, {3.0, 5}, {0.0, 0.7});
    CHECK(c.real() == doctest::Approx(std::cos(2.1)).epsilon(1e-15));
    CHECK(c.imag() == doctest::Approx(std::sin(2.1)).epsilon(1e-15));
    // m=0: phi = e^{-|lambda| x^2/2} at t=0
    Params par0(0.0);
    cplx c2 = character(par0, {1.0, 0}, {2.0, 0.0});
    CHECK(c2.real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(c2.imag() == 0.0);
    // conjugate symmetry in t
    cplx a = character(par, {-1.0, 3}, {1.5, 0.2});
    cplx b = character(par, {-1.0, 3}, {1.5, -0.2});
    CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-15));
    CHECK(a.imag() == doctest::Approx(-b.imag()).epsilon(1e-15));
    // |phi| <= 1 sweep
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ur(0.0, 3.0), ut(-3.0, 3.0), ul(-5.0, 5.0);
    std::uniform_int_distribution<int> um(0, 64);
    for (int trial = 0; trial < 20000; ++trial) {
        double lam = ul(rng);
        if (lam == 0.0) lam = 0.5;
        const cplx v = character(Params(ur(rng)), {lam, um(rng)}, {ur(rng), ut(rng)});
        CHECK(std::abs(v) <= 1.0 + 1e-12);
    }
}

TEST_CASE("character_dlambda: order 0, x=0 closed form, FD agreement") {
    Params par(0.5);
    CHECK(character_dlambda(par, {1.2, 3}, {0.9, -0.4}, 0) ==
          character(par, {1.2, 3}, {0.9, -0.4}));

    // x=0: d^I/dlambda^I e^{i lambda t} = (it)^I e^{i lambda t}
    for (int order : {1, 2, 3}) {
        const double t = 0.8, lam = 1.7;
        cplx expect = std::polar(1.0, lam * t);
        for (int c = 0; c < order; ++c) expect *= cplx(0.0, t);
        const cplx got = character_dlambda(par, {lam, 4}, {0.0, t}, order);
        CHECK(std::abs(got - expect) < 1e-13);
    }

    // finite-difference oracle on smooth regions
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ux(0.2, 1.6), ut(-1.0, 1.0), ul(0.5, 2.5);
    std::uniform_int_distribution<int> um(1, 8);
    for (int trial = 0; trial < 60; ++trial) {
        Params p(trial % 2 == 0 ? 0.0 : 1.0);
        DPoint d{ul(rng), um(rng)};
        HPoint pt{ux(rng), ut(rng)};
        for (int order : {1, 2}) {
            const cplx exact = character_dlambda(p, d, pt, order);
            const cplx fd = fd_dlambda(p, d, pt, order, 1e-3);
            CHECK(std::abs(exact - fd) / std::max(1e-10, std::abs(exact)) < 1e-6);
        }
    }
    // spec example point, order 2
    Params p0(0.0);
    const cplx exact = character_dlambda(p0, {0.8, 4}, {1.1, 0.3}, 2);
    const cplx fd = fd_dlambda(p0, {0.8, 4}, {1.1, 0.3}, 2, 1e-3);
    CHECK(std::abs(exact - fd) / std::abs(exact) < 1e-6);

    CHECK_THROWS_AS(character_dlambda(par, {1.0, 2}, {1.0, 0.0}, 9), std::invalid_argument);
}

TEST_CASE("character_taylor coefficients") {
    Params par(0.0);
    DPoint d{1.3, 6};
    auto tab = character_taylor(par, d, 4);
    CHECK(tab.at(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(tab.at(0, 0).imag()) < 1e-15);
    CHECK(tab.at(0, 1).real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(tab.at(0, 1).imag() == doctest::Approx(d.lambda).epsilon(1e-14));
    // odd-k rows vanish identically
    for (int l = 0; l + 1 <= 4; ++l) CHECK(std::abs(tab.at(1, l)) == 0.0);
    for (int l = 0; l + 3 <= 4; ++l) CHECK(std::abs(tab.at(3, l)) == 0.0);
    // alpha=0: w_{2,0} = -|lambda| (2m+1)/2 = -N(lambda,m)/4
    const double expect = -std::abs(d.lambda) * (2.0 * d.m + 1.0) / 2.0;
    CHECK(tab.at(2, 0).real() == doctest::Approx(expect).epsilon(1e-13));
    const double quasi = geometry::dual_quasinorm(par, d);
    CHECK(tab.at(2, 0).real() == doctest::Approx(-quasi / 4.0).epsilon(1e-13));
}

TEST_CASE("character_taylor remainder has graded-degree slope >= s+1") {
    Params par(0.0);
    DPoint d{1.1, 3};
    for (int s : {2, 3, 4}) {
        auto tab = character_taylor(par, d, s);
        // sample directions, scale (x,t) = (eps x0, eps^2 t0)
        const double dirs[4][2] = {{1.0, 0.3}, {0.6, -0.8}, {0.2, 1.0}, {1.0, 0.0}};
        std::vector<double> eps, rem;
        for (double e = 1e-1; e >= 1e-3; e /= 2.0) {
            double mx = 0.0;
            for (auto& dir : dirs) {
                const double x = e * dir[0], t = e * e * dir[1];
                const cplx r = character(par, d, {x, t}) - tab.eval(x, t);
                mx = std::max(mx, std::abs(r));
            }
            eps.push_back(std::log(e));
            rem.push_back(std::log(std::max(mx, 1e-300)));
        }
        // least squares slope
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(eps.size());
        for (int i = 0; i < n; ++i) {
            sx += eps[i];
            sy += rem[i];
            sxx += eps[i] * eps[i];
            sxy += eps[i] * rem[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(slope >= s + 1 - 0.1);
    }
}
