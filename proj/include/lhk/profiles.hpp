#pragma once

#include <functional>
#include <string>

#include "lhk/quadrature.hpp"
#include "lhk/types.hpp"

namespace lhk::profiles {

/// A catalog profile: analytic values and, where registered, the analytic
/// action of the Laguerre operator L_a f = f_xx + (2a+1)/x f_x + x^2 f_tt.
struct Profile {
    std::string name;
    double alpha = 0.0;
    std::function<cplx(double, double)> value;
    std::function<cplx(double, double)> laguerre; // empty when not registered
    double x_extent = 1.0; // mass beyond is negligible for grid sizing
    double t_extent = 1.0;

    bool has_laguerre() const { return static_cast<bool>(laguerre); }
};

/// e^{-x^2 - t^2}
Profile gaussian_profile(double alpha);

/// ((1 - (N(x,t)/r)^4)_+)^k; k >= 2 keeps L_a f continuous, catalog uses k >= 4.
Profile bump_profile(double alpha, int k, double r);

/// x^{i1} t^{i0} * bump_k (no registered Laguerre action).
Profile polybump_profile(double alpha, int i1, int i0, int k, double r);

/// f_delta(x,t) = delta^{-Q} f(x/delta, t/delta^2).
Profile dilate_profile(const Profile& f, double delta);

/// Catalog lookup by name: "gaussian", "bump_4", "bump_6", "polybump".
Profile make_profile(double alpha, const std::string& name, double r = 1.0, int k = 4,
                     int i1 = 1, int i0 = 0);

quad::GridFunction sample(const Profile& f, const quad::PhysicalGrid& g);

} // namespace lhk::profiles
