#pragma once

#include <functional>

#include "lhk/quadrature.hpp"
#include "lhk/types.hpp"

namespace lhk::hyperops {

using quad::GridFunction;
using quad::PhysicalGrid;

/// Pointwise evaluator for functions that must be sampled off-grid
/// (translation and convolution displace arguments).
using Evaluator = std::function<cplx(double, double)>;

/// Quadrature rule for the generalized translation:
///   alpha > 0: Gauss-Jacobi in u = r^2 with weight (1-u)^{alpha-1} times the
///              equispaced circle rule in theta (weights normalized so the
///              rule integrates constants to 1 exactly);
///   alpha = 0: the circle rule at r = 1.
struct TranslationRule {
    double alpha = 0.0;
    std::vector<double> r;  // r-nodes (empty means the alpha = 0 circle rule, r = 1)
    std::vector<double> wr; // r-weights, sum to 1
    int n_theta = 0;        // theta_j = 2 pi j / n_theta, weight 1/n_theta each

    double total_weight() const;
};

TranslationRule build_translation_rule(double alpha, int n_r, int n_theta);

/// T^(alpha)_{(x,t)} f (y,s): average of f over the hypergroup product orbit.
/// Exact (no quadrature) at the identity (x,t) = e.
cplx translate_point(const TranslationRule& rule, const HPoint& xt, const Evaluator& f,
                     const HPoint& ys);

/// Translate sampled on a whole grid.
GridFunction translate(const TranslationRule& rule, const HPoint& xt, const Evaluator& f,
                       const PhysicalGrid& out);

/// Hypergroup convolution (f *_alpha g)(x,t) =
/// integral T_{(y,-s)} f (x,t) g(y,s) dm_alpha(y,s), evaluated on `out`.
/// Sources are restricted to grid nodes where |g| > source_cutoff * max|g|.
GridFunction convolve(const TranslationRule& rule, const PhysicalGrid& out, const Evaluator& f,
                      const Evaluator& g, double source_cutoff = 0.0);

/// f_delta(x,t) = delta^{-Q} f(x/delta, t/delta^2) sampled on the grid.
GridFunction dilate_function(double delta, const Evaluator& f, const PhysicalGrid& out);

/// Cubic tensor-Lagrange interpolant of a grid function; 0 outside the grid
/// domain (supports are assumed inside the grid).
Evaluator evaluator_from_grid(const PhysicalGrid& g, const GridFunction& f);

} // namespace lhk::hyperops
