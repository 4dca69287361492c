#include <cmath>

#include "doctest.h"
#include "lhk/profiles.hpp"
#include "lhk/quadrature.hpp"
#include "lhk/transform.hpp"

using namespace lhk;
using namespace lhk::quad;
using namespace lhk::transform;

namespace {

// closed form for the alpha=0 Gaussian e^{-x^2-t^2}:
//   fhat(lambda,m) = e^{-lambda^2/4} (1-|l|/2)^m / (2 sqrt(pi) (1+|l|/2)^{m+1})
cplx gaussian_hat0(double lambda, int m) {
    const double al = std::abs(lambda);
    const double val = std::exp(-lambda * lambda / 4.0) * std::pow(1.0 - al / 2.0, m) /
                       (2.0 * std::sqrt(M_PI) * std::pow(1.0 + al / 2.0, m + 1));
    return cplx(val, 0.0);
}

struct Setup {
    PhysPtr phys_ptr;
    SpecPtr spec_ptr;
    GridFunction f;
    const PhysicalGrid& phys;
    const SpectralGrid& spec;
};

Setup gaussian_setup(double alpha, int nx = 200, int nl = 200) {
    auto phys = make_physical_grid(alpha, 5.5, 5.5, nx, nx);
    auto spec = make_spectral_grid(alpha, 1e-7, 12.0, nl, 128);
    auto f = profiles::sample(profiles::gaussian_profile(alpha), *phys);
    return Setup{phys, spec, std::move(f), *phys, *spec};
}

} // namespace

TEST_CASE("forward of zero is zero; linearity") {
    auto g = build_physical_grid(0.0, 2.0, 2.0, 48, 48);
    auto sg = build_spectral_grid(0.0, 1e-3, 6.0, 32, 16);
    auto z = zero_function(g);
    auto Z = forward(g, sg, z);
    for (const cplx& v : Z.v) CHECK(std::abs(v) == 0.0);

    auto f1 = sample_physical(g, [](double x, double t) { return cplx(std::exp(-x - t * t), 0.0); });
    auto f2 = sample_physical(g, [](double x, double t) { return cplx(x, t); });
    const cplx a(0.7, -1.1), b(2.0, 0.3);
    GridFunction comb = zero_function(g);
    for (size_t i = 0; i < comb.v.size(); ++i) comb.v[i] = a * f1.v[i] + b * f2.v[i];
    auto F1 = forward(g, sg, f1), F2 = forward(g, sg, f2), FC = forward(g, sg, comb);
    double worst = 0.0;
    for (size_t i = 0; i < FC.v.size(); ++i) {
        const cplx expect = a * F1.v[i] + b * F2.v[i];
        worst = std::max(worst, std::abs(FC.v[i] - expect) / std::max(1.0, std::abs(expect)));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("golden value: alpha=0 gaussian at lambda=2") {
    auto s = gaussian_setup(0.0);
    const double expect = std::exp(-1.0) / (4.0 * std::sqrt(M_PI)); // 0.051887007...
    const cplx got = forward_at(s.phys, s.f, {2.0, 0});
    CHECK(std::abs(got.real() - expect) < 1e-10);
    CHECK(std::abs(got.imag()) < 1e-14);
    for (int m = 1; m <= 10; ++m) CHECK(std::abs(forward_at(s.phys, s.f, {2.0, m})) < 1e-10);

    // closed form across other dual points (Laplace-identity oracle)
    for (double lam : {0.25, 0.8, -1.3, 3.0}) {
        for (int m : {0, 1, 4, 17}) {
            const cplx want = gaussian_hat0(lam, m);
            const cplx have = forward_at(s.phys, s.f, {lam, m});
            CHECK(std::abs(have - want) < 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("forward on the grid matches pointwise forward") {
    auto s = gaussian_setup(0.0, 96, 48);
    auto F = forward(s.phys, s.spec, s.f);
    for (int k : {0, 17, s.spec.n_lambda_nodes() / 2, s.spec.n_lambda_nodes() - 1}) {
        for (int m : {0, 3, 128}) {
            const cplx want = forward_at(s.phys, s.f, {s.spec.lam[k], m});
            CHECK(std::abs(F.at(k, m) - want) < 1e-12);
        }
    }
}

TEST_CASE("plancherel defect with m-tail completion") {
    for (double alpha : {0.0, 1.0}) {
        auto s = gaussian_setup(alpha);
        auto F = forward(s.phys, s.spec, s.f);
        CAPTURE(alpha);
        // the (A+Bm)r^m completion is exact for the Gaussian at integer alpha
        CHECK(plancherel_defect(s.phys, s.f, F, TailMode::poly_geometric) < 1e-6);
        CHECK(plancherel_defect(s.phys, s.f, F, TailMode::radial) < 1e-6);
        // without completion the truncation floor dominates
        const double raw = plancherel_defect(s.phys, s.f, F, TailMode::none);
        CHECK(raw > 1e-5);

        const double margin = riemann_lebesgue_margin(s.phys, s.f, F);
        CHECK(margin >= -1e-8);
    }
    // bump profile, both alphas: the m-sequences are still flat at m_max for
    // small lambda, which only the radial completion handles
    for (double alpha : {0.0, 1.0}) {
        auto phys = build_physical_grid(alpha, 1.0, 0.5, 200, 200);
        auto spec = build_spectral_grid(alpha, 1e-7, 60.0, 260, 128);
        auto f = profiles::sample(profiles::bump_profile(alpha, 4, 1.0), phys);
        auto F = forward(phys, spec, f);
        CAPTURE(alpha);
        CHECK(plancherel_defect(phys, f, F, TailMode::radial) < 1e-4);
        CHECK(riemann_lebesgue_margin(phys, f, F) >= -1e-8);
    }
}

TEST_CASE("zero function: defect 0 by convention") {
    auto g = build_physical_grid(0.0, 1.0, 1.0, 32, 32);
    auto sg = build_spectral_grid(0.0, 1e-3, 4.0, 16, 8);
    auto z = zero_function(g);
    auto Z = forward(g, sg, z);
    CHECK(plancherel_defect(g, z, Z) == 0.0);
}

TEST_CASE("dilation covariance (f_delta)^(lambda,m) = fhat(delta^2 lambda, m)") {
    auto phys = build_physical_grid(0.0, 13.0, 26.0, 288, 416);
    auto f = profiles::sample(profiles::gaussian_profile(0.0), phys);
    for (double delta : {0.5, 2.0}) {
        auto fd = profiles::sample(profiles::dilate_profile(profiles::gaussian_profile(0.0), delta), phys);
        for (double lam : {0.4, 1.0}) {
            for (int m : {0, 2, 7}) {
                const cplx lhs = forward_at(phys, fd, {lam, m});
                const cplx rhs = forward_at(phys, f, {delta * delta * lam, m});
                CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-6);
            }
        }
    }
    // delta = 4 stretches t by 16: a dedicated wide grid
    auto wide = build_physical_grid(0.0, 26.0, 100.0, 320, 1024);
    auto fw = profiles::sample(profiles::gaussian_profile(0.0), wide);
    auto f4 = profiles::sample(profiles::dilate_profile(profiles::gaussian_profile(0.0), 4.0), wide);
    for (double lam : {0.05, 0.2}) {
        for (int m : {0, 3}) {
            const cplx lhs = forward_at(wide, f4, {lam, m});
            const cplx rhs = forward_at(wide, fw, {16.0 * lam, m});
            CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-5);
        }
    }
}

TEST_CASE("spectral derivative: order 0 equals forward, FD oracle, atom-free finiteness") {
    auto s = gaussian_setup(0.0, 128, 64);
    auto F0 = forward(s.phys, s.spec, s.f);
    auto D0 = spectral_derivative(s.phys, s.spec, s.f, 0);
    for (size_t i = 0; i < F0.v.size(); ++i) CHECK(std::abs(F0.v[i] - D0.v[i]) < 1e-14);

    // Richardson central differences of forward_at in lambda
    for (double lam : {0.7, 1.9, -1.2}) {
        for (int m : {0, 3, 9}) {
            for (int order : {1, 2}) {
                auto eval = [&](double l) { return forward_at(s.phys, s.f, {l, m}); };
                const double h = 2e-3;
                cplx fd;
                if (order == 1) {
                    const cplx a = (eval(lam + h) - eval(lam - h)) / (2.0 * h);
                    const cplx b = (eval(lam + h / 2) - eval(lam - h / 2)) / h;
                    fd = (4.0 * b - a) / 3.0;
                } else {
                    const cplx a = (eval(lam + h) - 2.0 * eval(lam) + eval(lam - h)) / (h * h);
                    const cplx b =
                        (eval(lam + h / 2) - 2.0 * eval(lam) + eval(lam - h / 2)) / (h * h / 4.0);
                    fd = (4.0 * b - a) / 3.0;
                }
                const cplx exact = spectral_derivative_at(s.phys, s.f, {lam, m}, order);
                // absolute floor: at dual points where fhat is ~1e-14 the FD
                // stencil differences sit at the quadrature noise level
                CHECK(std::abs(exact - fd) < 1e-5 * std::abs(exact) + 1e-9);
            }
        }
    }

    // grid variant consistent with pointwise variant
    auto D1 = spectral_derivative(s.phys, s.spec, s.f, 1);
    for (int k : {3, s.spec.n_lambda_nodes() / 2 + 5}) {
        for (int m : {0, 11}) {
            const cplx want = spectral_derivative_at(s.phys, s.f, {s.spec.lam[k], m}, 1);
            CHECK(std::abs(D1.at(k, m) - want) < 1e-12 + 1e-10 * std::abs(want));
        }
    }

    CHECK_THROWS_AS(spectral_derivative(s.phys, s.spec, s.f, 9), std::invalid_argument);
}

TEST_CASE("laguerre spectral action and eigenrelation") {
    auto sg = build_spectral_grid(0.0, 1e-3, 4.0, 16, 8);
    SpectralFunction F = zero_spectral(sg);
    for (size_t i = 0; i < F.v.size(); ++i) F.v[i] = cplx(0.3 + static_cast<double>(i % 7), 0.1);
    auto once = apply_laguerre_spectral(F);
    auto twice = apply_laguerre_spectral(once);
    for (int k = 0; k < sg.n_lambda_nodes(); ++k)
        for (int m = 0; m <= sg.m_max; ++m) {
            const double n = sg.quasinorm(k, m);
            CHECK(std::abs(twice.at(k, m) - n * n * F.at(k, m)) < 1e-12 * n * n);
        }

    for (double alpha : {0.0, 1.0}) {
        auto s = gaussian_setup(alpha, 200, 160);
        const double defect = eigenrelation_defect(s.phys, s.spec, profiles::gaussian_profile(alpha));
        CAPTURE(alpha);
        CHECK(defect < 1e-4);
    }
    // no analytic derivatives registered -> error
    auto s0 = gaussian_setup(0.0, 48, 16);
    CHECK_THROWS_AS(eigenrelation_defect(s0.phys, s0.spec, profiles::polybump_profile(0.0, 1, 0, 4, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("round trip: documented truncation floor on the gaussian") {
    // The dual grid misses the m > m_max near-origin mass of a profile with
    // nonzero integral, so the gaussian round trip carries a few-percent L2
    // floor. It must still be stable and bounded.
    auto s = gaussian_setup(0.0, 128, 128);
    auto F = forward(s.phys, s.spec, s.f);
    auto back = inverse(s.spec, s.phys, F);
    double num = 0.0, den = 0.0;
    GridFunction diff = zero_function(s.phys);
    for (size_t i = 0; i < diff.v.size(); ++i) diff.v[i] = back.v[i] - s.f.v[i];
    num = lp_norm_physical(s.phys, diff, 2.0);
    den = lp_norm_physical(s.phys, s.f, 2.0);
    CHECK(num / den < 0.1);

    // inverse of the zero spectral function is zero
    auto Z = zero_spectral(s.spec);
    auto z = inverse(s.spec, s.phys, Z);
    for (const cplx& v : z.v) CHECK(std::abs(v) == 0.0);
}
