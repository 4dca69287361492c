#pragma once

#include <vector>

#include "lhk/types.hpp"

namespace lhk::geometry {

/// Homogeneous norm N(x,t) = (x^4 + 4 t^2)^{1/4}.
double homogeneous_norm(const HPoint& p);

/// Quasi-norm on the dual, N(lambda,m) = 4 |lambda| (m + (alpha+1)/2).
double dual_quasinorm(const Params& par, const DPoint& d);

/// Volume constant C_Q = B((alpha+1)/2, 3/2) / (4 pi Gamma(alpha+1)),
/// so that m_alpha(B(e,r)) = C_Q r^Q.
double ball_volume_constant(const Params& par);

/// m_alpha(B(e,r)) = C_Q r^Q, r > 0.
double ball_volume(const Params& par, double r);

/// Multi-index I = (i1, i0): power of x and of t. d(I) = i1 + 2*i0.
struct MultiIndex {
    int i1 = 0;
    int i0 = 0;
    int degree() const { return i1 + 2 * i0; }
};

/// Monomials of homogeneous degree <= s, sorted by (d(I), i1).
struct PolySpace {
    int s = 0;
    std::vector<MultiIndex> basis;
};

PolySpace monomial_basis(int s);

} // namespace lhk::geometry
