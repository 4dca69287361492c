#pragma once

#include "lhk/profiles.hpp"
#include "lhk/quadrature.hpp"
#include "lhk/types.hpp"

namespace lhk::transform {

using quad::GridFunction;
using quad::PhysicalGrid;
using quad::SpectralFunction;
using quad::SpectralGrid;
using quad::TailMode;

/// fhat(lambda,m) = integral phi^alpha_{(-lambda,m)}(x,t) f(x,t) dm_alpha,
/// by direct weighted summation (two-stage, exploiting the tensor kernel).
SpectralFunction forward(const PhysicalGrid& phys, const SpectralGrid& spec,
                         const GridFunction& f);

/// Pointwise transform at an arbitrary dual point.
cplx forward_at(const PhysicalGrid& phys, const GridFunction& f, const DPoint& d);

/// g_check(x,t) = integral phi^alpha_{(lambda,m)}(x,t) g dgamma over the grid.
GridFunction inverse(const SpectralGrid& spec, const PhysicalGrid& phys,
                     const SpectralFunction& F);

/// D^I_lambda fhat, computed by differentiating the kernel under the integral.
SpectralFunction spectral_derivative(const PhysicalGrid& phys, const SpectralGrid& spec,
                                     const GridFunction& f, int order);

cplx spectral_derivative_at(const PhysicalGrid& phys, const GridFunction& f, const DPoint& d,
                            int order);

/// Pointwise multiplication by -N(lambda,m): the spectral action of L_alpha.
SpectralFunction apply_laguerre_spectral(const SpectralFunction& F);

/// | ||f||_2 - ||fhat||_2 | / ||f||_2 (0 for the zero function). The spectral
/// norm uses the m-tail completion mode given.
double plancherel_defect(const PhysicalGrid& phys, const GridFunction& f,
                         const SpectralFunction& fhat, TailMode mode = TailMode::poly_geometric);

/// ||f||_1 - sup |fhat| over the grid; Riemann-Lebesgue requires >= -tol.
double riemann_lebesgue_margin(const PhysicalGrid& phys, const GridFunction& f,
                               const SpectralFunction& fhat);

/// || (L_a f)^ + N fhat ||_2 / || N fhat ||_2 on the spectral grid, for a
/// catalog profile with a registered analytic Laguerre action.
double eigenrelation_defect(const PhysicalGrid& phys, const SpectralGrid& spec,
                            const profiles::Profile& f);

struct TransformPair {
    const PhysicalGrid* phys = nullptr;
    const SpectralGrid* spec = nullptr;
    GridFunction f;
    SpectralFunction fhat;
};

TransformPair make_pair(const PhysicalGrid& phys, const SpectralGrid& spec,
                        const GridFunction& f);

} // namespace lhk::transform
