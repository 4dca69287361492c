#include <cmath>
#include <limits>

#include "doctest.h"
#include "lhk/atoms.hpp"
#include "lhk/geometry.hpp"
#include "lhk/profiles.hpp"

using namespace lhk;
using namespace lhk::atoms;

TEST_CASE("atom spec admissibility") {
    const double Q = 4.0;
    CHECK_NOTHROW((AtomSpec{1.0, 2.0, 0, 1.0}).validate(Q));
    CHECK_NOTHROW((AtomSpec{2.0 / 3.0, 2.0, 2, 1.0}).validate(Q));
    CHECK_THROWS_AS((AtomSpec{2.0 / 3.0, 2.0, 1, 1.0}).validate(Q), std::invalid_argument); // s < 2
    CHECK_THROWS_AS((AtomSpec{1.5, 2.0, 0, 1.0}).validate(Q), std::invalid_argument);       // p > 1
    CHECK_THROWS_AS((AtomSpec{1.0, 1.0, 0, 1.0}).validate(Q), std::invalid_argument);       // p == q
    CHECK_THROWS_AS((AtomSpec{1.0, 2.0, 0, -1.0}).validate(Q), std::invalid_argument);
}

TEST_CASE("built atoms satisfy all three conditions") {
    for (double alpha : {0.0, 1.0}) {
        for (double p : {1.0, 2.0 / 3.0}) {
            const int smin = static_cast<int>(std::floor((2.0 * alpha + 4.0) * (1.0 / p - 1.0)));
            for (double r : {0.25, 1.0, 4.0}) {
                AtomSpec spec{p, 2.0, smin, r};
                auto seed = profiles::bump_profile(alpha, 6, r);
                Atom a = make_atom(seed, spec, alpha);
                CAPTURE(alpha);
                CAPTURE(p);
                CAPTURE(r);
                CHECK(a.size_ratio == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(a.max_moment_rel < 1e-10);
                CHECK(a.p_norm <= 1.0 + 1e-8);
                CHECK(a.gram_cond < 1e6);

                AtomValidation v = validate_atom(a);
                CHECK(v.pass);
                CHECK(v.support_leakage < 1e-12);
                CHECK(std::abs(v.size_ratio - 1.0) < 1e-8);
                CHECK(v.max_moment_rel < 1e-10);
                CHECK(v.p_norm <= 1.0 + 1e-8);
            }
        }
    }
}

TEST_CASE("moment-free correctly-sized profile is returned unchanged") {
    AtomSpec spec{1.0, 2.0, 1, 1.0};
    auto seed = profiles::bump_profile(0.0, 6, 1.0);
    Atom a = make_atom(seed, spec, 0.0);
    // feed the built atom back as a seed: the projection has nothing to remove
    profiles::Profile again;
    again.name = "atom";
    again.alpha = 0.0;
    again.value = a.eval;
    Atom b = make_atom(again, spec, 0.0);
    double worst = 0.0;
    for (size_t i = 0; i < a.values.v.size(); ++i)
        worst = std::max(worst, std::abs(a.values.v[i] - b.values.v[i]));
    CHECK(worst < 1e-12 * a.linf);
}

TEST_CASE("validation flags violations") {
    AtomSpec spec{1.0, 2.0, 0, 1.0};
    auto seed = profiles::bump_profile(0.0, 6, 1.0);
    Atom a = make_atom(seed, spec, 0.0);

    // scaled by 2: size ratio 2, fail
    Atom doubled = atom_from_function(
        [ev = a.eval](double x, double t) { return 2.0 * ev(x, t); }, spec, 0.0);
    CHECK(doubled.size_ratio == doctest::Approx(2.0).epsilon(1e-10));
    AtomValidation vd = validate_atom(doubled);
    CHECK_FALSE(vd.pass);
    CHECK(vd.size_ratio > 1.5);

    // a plain bump on the ball: nonzero mean, moment failure
    Atom flat = atom_from_function(
        [val = profiles::bump_profile(0.0, 6, 1.0).value](double x, double t) {
            return 0.1 * val(x, t);
        },
        spec, 0.0);
    AtomValidation vf = validate_atom(flat);
    CHECK_FALSE(vf.pass);
    CHECK(vf.max_moment_rel > 1e-3);
}

TEST_CASE("degenerate seed: projection annihilates") {
    AtomSpec spec{1.0, 2.0, 0, 1.0};
    // the seed equals the bump used for moment-killing, so the projection
    // removes it entirely
    auto chi = profiles::bump_profile(0.0, 8, 1.0);
    CHECK_THROWS_AS(make_atom(chi, spec, 0.0), std::runtime_error);
}

TEST_CASE("dilation closure: dilated and renormalized atoms validate") {
    AtomSpec spec{1.0, 2.0, 1, 1.0};
    Atom a = make_atom(profiles::bump_profile(0.0, 6, 1.0), spec, 0.0);
    for (double delta : {0.5, 2.0}) {
        AtomSpec dspec{1.0, 2.0, 1, delta};
        Atom raw = atom_from_function(
            [ev = a.eval, delta](double x, double t) {
                return ev(x / delta, t / (delta * delta));
            },
            dspec, 0.0);
        const double fix = dspec.size_bound(0.0) / raw.q_norm;
        Atom ad = atom_from_function(
            [ev = a.eval, delta, fix](double x, double t) {
                return fix * ev(x / delta, t / (delta * delta));
            },
            dspec, 0.0);
        AtomValidation v = validate_atom(ad);
        CAPTURE(delta);
        CHECK(v.pass);
    }
}

TEST_CASE("molecule norm: built atoms, zero, homogeneity, radius stability") {
    AtomSpec spec{1.0, 2.0, 0, 1.0};
    const double eps = 0.5;

    double lo = 1e300, hi = 0.0;
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        AtomSpec sp{1.0, 2.0, 0, r};
        Atom a = make_atom(profiles::bump_profile(0.0, 6, r), sp, 0.0);
        MoleculeReport rep = molecule_norm(*a.grid, a.values, sp.p, sp.q, sp.s, eps);
        CHECK(std::isfinite(rep.molecule_norm));
        CHECK(rep.molecule_norm > 0.0);
        lo = std::min(lo, rep.molecule_norm);
        hi = std::max(hi, rep.molecule_norm);
    }
    // uniformity of the molecular norm across the radius sweep
    CHECK(hi / lo < 2.0);

    Atom a = make_atom(profiles::bump_profile(0.0, 6, 1.0), spec, 0.0);
    MoleculeReport rep = molecule_norm(*a.grid, a.values, 1.0, 2.0, 0, eps);
    CHECK(rep.a / rep.b > 0.0);
    CHECK(rep.a / rep.b < 1.0);

    // zero function
    auto z = quad::zero_function(*a.grid);
    MoleculeReport rz = molecule_norm(*a.grid, z, 1.0, 2.0, 0, eps);
    CHECK(rz.molecule_norm == 0.0);

    // 1-homogeneity
    quad::GridFunction twice = a.values;
    for (auto& v : twice.v) v *= 2.0;
    MoleculeReport r2 = molecule_norm(*a.grid, twice, 1.0, 2.0, 0, eps);
    CHECK(r2.molecule_norm == doctest::Approx(2.0 * rep.molecule_norm).epsilon(1e-12));

    // nonadmissible eps
    CHECK_THROWS_AS(molecule_norm(*a.grid, a.values, 1.0, 2.0, 0, 0.0), std::invalid_argument);
}

TEST_CASE("atomic combinations: proxy norm and Lp bounds") {
    AtomSpec spec{0.5, 2.0, 4, 1.0};
    Atom a1 = make_atom(profiles::bump_profile(0.0, 6, 1.0), spec, 0.0);
    AtomSpec spec2 = spec;
    spec2.r = 0.5;
    Atom a2 = make_atom(profiles::bump_profile(0.0, 6, 0.5), spec2, 0.0);

    // single atom, beta = 1: proxy 1
    auto single = atomic_combination({{cplx(1.0, 0.0), &a1}}, 0.5);
    CHECK(single.proxy_norm == doctest::Approx(1.0).epsilon(1e-14));

    // two atoms, beta = (1,1), p = 1/2: proxy (1+1)^2 = 4
    auto two = atomic_combination({{cplx(1.0, 0.0), &a1}, {cplx(1.0, 0.0), &a2}}, 0.5);
    CHECK(two.proxy_norm == doctest::Approx(4.0).epsilon(1e-14));

    // p-triangle inequality: ||sum beta a||_p <= proxy for spec-normalized atoms
    const double p = 2.0 / 3.0;
    std::vector<Atom> sweep;
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        AtomSpec sp{p, 2.0, 2, r};
        sweep.push_back(make_atom(profiles::bump_profile(0.0, 6, r), sp, 0.0));
    }
    std::vector<std::pair<cplx, const Atom*>> terms;
    for (const auto& at : sweep) terms.push_back({cplx(1.0, 0.0), &at});
    auto comb = atomic_combination(terms, p, 280, 280);
    CHECK(comb.measured_lp <= comb.proxy_norm * (1.0 + 1e-6));

    // the C_Q^{1/p} form holds for q = infinity atoms normalized to r^{-Q/p}
    // (the sub-saturated normalization the remark chain uses)
    const double pinf = 1.0;
    std::vector<Atom> inf_atoms;
    const double CQ = geometry::ball_volume_constant(Params(0.0));
    for (double r : {0.5, 1.0, 2.0}) {
        AtomSpec sp{pinf, std::numeric_limits<double>::infinity(), 0, r};
        Atom base = make_atom(profiles::bump_profile(0.0, 6, r), sp, 0.0);
        const double shrink = std::pow(CQ, 1.0 / pinf); // r^{-Q/p} = C_Q^{1/p} * bound
        inf_atoms.push_back(atom_from_function(
            [ev = base.eval, shrink](double x, double t) { return shrink * ev(x, t); }, sp, 0.0));
    }
    std::vector<std::pair<cplx, const Atom*>> iterms;
    for (const auto& at : inf_atoms) iterms.push_back({cplx(1.0, 0.0), &at});
    auto icomb = atomic_combination(iterms, pinf, 280, 280);
    CHECK(icomb.measured_lp <= icomb.cq_bound * (1.0 + 1e-6));

    CHECK_THROWS_AS(atomic_combination({}, 0.5), std::invalid_argument);
}
