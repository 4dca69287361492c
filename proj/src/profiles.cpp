#include "lhk/profiles.hpp"

#include <cmath>

namespace lhk::profiles {

Profile gaussian_profile(double alpha) {
    Profile p;
    p.name = "gaussian";
    p.alpha = alpha;
    p.value = [](double x, double t) { return cplx(std::exp(-x * x - t * t), 0.0); };
    p.laguerre = [alpha](double x, double t) {
        const double f = std::exp(-x * x - t * t);
        return cplx((2.0 * x * x * (1.0 + 2.0 * t * t) - 4.0 * (alpha + 1.0)) * f, 0.0);
    };
    p.x_extent = 6.0;
    p.t_extent = 6.0;
    return p;
}

Profile bump_profile(double alpha, int k, double r) {
    if (k < 2) throw std::invalid_argument("bump_profile: k must be >= 2");
    if (!(r > 0.0)) throw std::invalid_argument("bump_profile: r must be > 0");
    Profile p;
    p.name = "bump_" + std::to_string(k);
    p.alpha = alpha;
    const double r4 = r * r * r * r;
    p.value = [r4, k](double x, double t) {
        const double w = 1.0 - (x * x * x * x + 4.0 * t * t) / r4;
        return cplx(w > 0.0 ? std::pow(w, k) : 0.0, 0.0);
    };
    p.laguerre = [r4, k, alpha](double x, double t) {
        const double n4 = x * x * x * x + 4.0 * t * t;
        const double w = 1.0 - n4 / r4;
        if (w <= 0.0) return cplx(0.0, 0.0);
        const double x2 = x * x;
        const double a = 16.0 * k * (k - 1) * x2 * n4 / (r4 * r4) * std::pow(w, k - 2);
        const double b = 8.0 * (3.0 + alpha) * x2 / r4 * k * std::pow(w, k - 1);
        return cplx(a - b, 0.0);
    };
    p.x_extent = r;
    p.t_extent = 0.5 * r * r;
    return p;
}

Profile polybump_profile(double alpha, int i1, int i0, int k, double r) {
    Profile base = bump_profile(alpha, k, r);
    Profile p;
    p.name = "polybump";
    p.alpha = alpha;
    auto bv = base.value;
    p.value = [bv, i1, i0](double x, double t) {
        return bv(x, t) * std::pow(x, i1) * std::pow(t, i0);
    };
    p.x_extent = r;
    p.t_extent = 0.5 * r * r;
    return p;
}

Profile dilate_profile(const Profile& f, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("dilate_profile: delta must be > 0");
    Profile p;
    p.name = f.name + "_dilated";
    p.alpha = f.alpha;
    const double Q = 2.0 * f.alpha + 4.0;
    const double scale = std::pow(delta, -Q);
    auto v = f.value;
    p.value = [v, delta, scale](double x, double t) {
        return scale * v(x / delta, t / (delta * delta));
    };
    if (f.laguerre) {
        auto L = f.laguerre;
        // L_a is (-2)-homogeneous under the dilation
        p.laguerre = [L, delta, scale](double x, double t) {
            return scale / (delta * delta) * L(x / delta, t / (delta * delta));
        };
    }
    p.x_extent = f.x_extent * delta;
    p.t_extent = f.t_extent * delta * delta;
    return p;
}

Profile make_profile(double alpha, const std::string& name, double r, int k, int i1, int i0) {
    if (name == "gaussian") return gaussian_profile(alpha);
    if (name == "bump_4") return bump_profile(alpha, 4, r);
    if (name == "bump_6") return bump_profile(alpha, 6, r);
    if (name == "bump_8") return bump_profile(alpha, 8, r);
    if (name == "bump_k") return bump_profile(alpha, k, r);
    if (name == "polybump") return polybump_profile(alpha, i1, i0, k, r);
    throw std::invalid_argument("make_profile: unknown profile '" + name + "'");
}

quad::GridFunction sample(const Profile& f, const quad::PhysicalGrid& g) {
    return quad::sample_physical(g, f.value);
}

} // namespace lhk::profiles
