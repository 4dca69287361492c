#pragma once

#include <span>
#include <vector>

#include "lhk/types.hpp"

namespace lhk::specfun {

/// Highest lambda-derivative order supported by character_dlambda.
inline constexpr int kMaxDerivOrder = 8;

/// Laguerre polynomial L^alpha_m(x) by the upward three-term recurrence
/// (m+1) L_{m+1} = (2m+1+alpha-x) L_m - (m+alpha) L_{m-1}.
double laguerre_poly(double alpha, int m, double x);

/// log L^alpha_m(0) = lgamma(m+alpha+1) - lgamma(m+1) - lgamma(alpha+1).
double laguerre_at_zero_log(double alpha, int m);

/// L^alpha_m(0) = Gamma(m+alpha+1)/(Gamma(m+1) Gamma(alpha+1)).
/// Exact integer arithmetic when alpha is a nonnegative integer and m <= 20.
double laguerre_at_zero(double alpha, int m);

/// Laguerre function L^alpha_m(u) scaled: e^{-u/2} L^alpha_m(u) / L^alpha_m(0).
/// Lies in [-1, 1] for u >= 0. The recurrence runs on the e^{-u/2}-scaled
/// values so no intermediate overflows for large u.
double laguerre_fn(double alpha, int m, double u);

/// S_m = e^{-u/2} L^alpha_m(u) for m = 0..m_max (out.size() >= m_max+1).
void scaled_laguerre_all_m(double alpha, double u, int m_max, std::span<double> out);

/// Laguerre functions for all m = 0..m_max at once.
void laguerre_fn_all_m(double alpha, double u, int m_max, std::span<double> out);

/// d^j/du^j of the Laguerre function, for j = 0..jmax and m = 0..m_max.
/// out is row-major [j][m] with stride m_max+1.
/// Uses d^n/dz^n L^a_m = (-1)^n L^{a+n}_{m-n} and Leibniz on e^{-u/2} L.
void laguerre_fn_derivs_all_m(double alpha, int jmax, double u, int m_max,
                              std::span<double> out);

/// Character phi^alpha_{(lambda,m)}(x,t) = e^{i lambda t} L^alpha_m(|lambda| x^2)-scaled.
cplx character(const Params& par, const DPoint& d, const HPoint& p);

/// order-th lambda-derivative of the character, closed form (Leibniz over the
/// e^{i lambda t} factor and the radial Laguerre-function part).
/// Throws std::invalid_argument for order > kMaxDerivOrder.
cplx character_dlambda(const Params& par, const DPoint& d, const HPoint& p, int order);

/// Taylor coefficients w_{k,l} of the character at the origin of K,
/// phi(x,t) = sum_{k+l<=s} w_{k,l} x^k t^l + R(x,t). Odd-k entries are 0.
struct TaylorTable {
    int s = 0;
    std::vector<cplx> w; // (s+1)x(s+1), index k*(s+1)+l, entries with k+l<=s

    cplx at(int k, int l) const { return w[static_cast<size_t>(k) * (s + 1) + l]; }
    cplx eval(double x, double t) const;
};

TaylorTable character_taylor(const Params& par, const DPoint& d, int s);

} // namespace lhk::specfun
