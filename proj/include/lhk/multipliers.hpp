#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lhk/quadrature.hpp"
#include "lhk/transform.hpp"
#include "lhk/types.hpp"

namespace lhk::multipliers {

using quad::GridFunction;
using quad::PhysicalGrid;
using quad::SpectralFunction;
using quad::SpectralGrid;

/// A spectral multiplier M(lambda, m) with lambda-derivative access.
/// Radial multipliers M = f(N(lambda,m)) carry analytic derivatives through
/// d^k/dlambda^k M = f^(k)(N) (c_m sign(lambda))^k with c_m = N/|lambda|.
struct MultiplierSpec {
    std::string name;
    double alpha = 0.0;
    std::function<cplx(double, int)> value;          // (lambda, m)
    std::function<cplx(double, int, int)> deriv;     // (lambda, m, k); may be empty
    int max_analytic_order = 0;
    bool fd_fallback = true;

    bool has_analytic(int k) const { return k == 0 || (deriv && k <= max_analytic_order); }
    /// k-th lambda-derivative, analytic when registered, else a 5-point
    /// central stencil with h = 1e-3 |lambda| (order capped at 4).
    cplx derivative(double lambda, int m, int k) const;
};

/// Catalog kinds: "constant" (M = s), "fractional_L" (N^{is}),
/// "fractional_IplusL" ((1+N)^{is}), "radial_one_over_one_plus" (1/(1+N)),
/// "laplace_one" (phi = 1: 1/N), "laplace_exp" (phi = e^{-s}: 1/(1+N)).
MultiplierSpec build_multiplier(double alpha, const std::string& kind, double s = 1.0);

/// M = f(N) with registered derivatives of f (df[k-1] is f^(k)).
MultiplierSpec radial_multiplier(double alpha, const std::string& name,
                                 const std::function<double(double)>& f,
                                 const std::vector<std::function<double(double)>>& df);

/// M = f(N) with f(r) = integral_0^inf e^{-r s} phi(s) ds by graded quadrature.
MultiplierSpec laplace_multiplier(double alpha, const std::string& name,
                                  const std::function<double(double)>& phi);

SpectralFunction sample_multiplier(const MultiplierSpec& M, const SpectralGrid& g);
SpectralFunction sample_derivative(const MultiplierSpec& M, const SpectralGrid& g, int k);

/// T_M f = inverse(M * forward(f)).
GridFunction apply_multiplier(const MultiplierSpec& M, const PhysicalGrid& phys,
                              const SpectralGrid& spec, const GridFunction& f);

struct ShellRow {
    double R = 0.0;
    double integral = 0.0;   // shell integral of |D^k M|^2 dgamma within coverage
    double normalized = 0.0; // integral / R^exponent
    double coverage = 0.0;   // covered fraction of the full shell measure
    bool empty = false;
};

struct ConditionReport {
    std::string condition; // "mihlin" or "hormander"
    std::string multiplier;
    int order = 0; // lambda-derivative order k; graded degree d(I) = 2k
    int dI = 0;
    double sup_defect = 0.0;          // mihlin: sup over grid of N^{d/2} |D^k M|
    std::vector<double> per_m_sup;    // mihlin, indexed by m
    std::vector<ShellRow> shells;     // hormander, sorted by R
    double fitted_slope = 0.0;        // log-log slope of shell integral vs R
    double normalization_exponent = 0.0;
};

/// Mihlin condition: reports sup and per-m sup of N^{d(I)/2} |D^I M| on the
/// grid, with d(I) = 2k for a pure lambda-derivative of order k.
ConditionReport mihlin_defect(const MultiplierSpec& M, int order, const SpectralGrid& g);

/// Deterministic serializations of a condition report (17-digit floats).
std::string condition_to_json(const ConditionReport& rep);
std::string condition_to_csv(const ConditionReport& rep);

/// Hormander condition: per dyadic R, the shell integral
/// int_{R/2 <= N <= R} |D^I M|^2 dgamma via per-m exact lambda-intervals
/// intersected with the grid coverage (local Gauss rules; no indicator noise).
/// The normalization exponent defaults to Q - d(I); a nan override keeps it.
ConditionReport hormander_defect(const MultiplierSpec& M, int order,
                                 const std::vector<double>& Rs, const SpectralGrid& g,
                                 double exponent_override = std::numeric_limits<double>::quiet_NaN());

} // namespace lhk::multipliers
