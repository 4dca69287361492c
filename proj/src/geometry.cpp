#include "lhk/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lhk::geometry {

double homogeneous_norm(const HPoint& p) {
    check_hpoint(p);
    const double x2 = p.x * p.x;
    return std::pow(x2 * x2 + 4.0 * p.t * p.t, 0.25);
}

double dual_quasinorm(const Params& par, const DPoint& d) {
    check_dpoint(d);
    return 4.0 * std::abs(d.lambda) * (d.m + 0.5 * (par.alpha + 1.0));
}

static double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double ball_volume_constant(const Params& par) {
    const double lb = log_beta(0.5 * (par.alpha + 1.0), 1.5);
    return std::exp(lb - std::lgamma(par.alpha + 1.0)) / (4.0 * M_PI);
}

double ball_volume(const Params& par, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("ball_volume: r must be > 0");
    return ball_volume_constant(par) * std::pow(r, par.Q());
}

PolySpace monomial_basis(int s) {
    if (s < 0) throw std::invalid_argument("monomial_basis: s must be >= 0");
    PolySpace sp;
    sp.s = s;
    for (int i0 = 0; 2 * i0 <= s; ++i0)
        for (int i1 = 0; i1 + 2 * i0 <= s; ++i1) sp.basis.push_back({i1, i0});
    std::sort(sp.basis.begin(), sp.basis.end(), [](const MultiIndex& a, const MultiIndex& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.i1 < b.i1;
    });
    return sp;
}

} // namespace lhk::geometry
