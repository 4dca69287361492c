#pragma once

#include <cstdint>
#include <memory>
#include <functional>
#include <span>
#include <vector>

#include "lhk/types.hpp"

namespace lhk::quad {

/// Nodes and weights of a 1-D rule on [-1, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1,1],
/// a, b > -1 (Golub-Welsch).
GaussRule gauss_jacobi(int n, double a, double b);

/// Tensor quadrature grid on [0,X] x [-T,T] carrying dm_alpha.
/// x-weights fold in x^{2*alpha+1} / (pi Gamma(alpha+1)); t-weights are plain.
/// Composite 16-point Gauss-Legendre panels; the first x-panel is subdivided
/// geometrically toward 0 when x^{2*alpha+1} is not a polynomial, so that
/// sum of weights = m_alpha([0,X]x[-T,T]) at the 1e-12 level.
struct PhysicalGrid {
    double alpha = 0.0;
    double X = 1.0;
    double T = 1.0;
    std::vector<double> x, wx; // wx includes the density
    std::vector<double> t, wt;

    int nx() const { return static_cast<int>(x.size()); }
    int nt() const { return static_cast<int>(t.size()); }
    size_t size() const { return x.size() * t.size(); }
    size_t index(int i, int j) const { return static_cast<size_t>(i) * t.size() + j; }
    double weight(int i, int j) const { return wx[i] * wt[j]; }

    double mass = 0.0;        // sum of all weights
    double exact_mass = 0.0;  // m_alpha([0,X]x[-T,T]) closed form
    double mass_defect = 0.0; // relative defect of the two
    std::uint64_t checksum = 0;
};

PhysicalGrid build_physical_grid(double alpha, double X, double T, int nx, int nt);

/// Heap-allocated grids with stable addresses, for structs that own a grid
/// together with functions sampled on it.
using PhysPtr = std::shared_ptr<const PhysicalGrid>;

/// Truncated grid on the dual: symmetric +-lambda composite Gauss-Legendre
/// panels (4 nodes each) laid out geometrically from lambda_min to
/// lambda_max, m = 0..m_max. wlam folds in |lambda|^{alpha+1}; Lm0[m] carries
/// L^alpha_m(0). n_lambda is the panel count per half-line.
struct SpectralGrid {
    double alpha = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    int m_max = 0;
    std::vector<double> lam, wlam; // signed nodes, negative half then positive half
    std::vector<double> Lm0;

    int n_lambda_nodes() const { return static_cast<int>(lam.size()); }
    size_t size() const { return lam.size() * (m_max + 1); }
    size_t index(int k, int m) const { return static_cast<size_t>(k) * (m_max + 1) + m; }
    double weight(int k, int m) const { return wlam[k] * Lm0[m]; }
    double quasinorm(int k, int m) const {
        return 4.0 * std::abs(lam[k]) * (m + 0.5 * (alpha + 1.0));
    }

    std::uint64_t checksum = 0;
};

SpectralGrid build_spectral_grid(double alpha, double lambda_min, double lambda_max,
                                 int n_lambda, int m_max);

using SpecPtr = std::shared_ptr<const SpectralGrid>;

PhysPtr make_physical_grid(double alpha, double X, double T, int nx, int nt);
SpecPtr make_spectral_grid(double alpha, double lambda_min, double lambda_max, int n_lambda,
                           int m_max);

/// Complex samples aligned with a grid.
struct GridFunction {
    const PhysicalGrid* grid = nullptr;
    std::vector<cplx> v;

    cplx& at(int i, int j) { return v[grid->index(i, j)]; }
    const cplx& at(int i, int j) const { return v[grid->index(i, j)]; }
};

struct SpectralFunction {
    const SpectralGrid* grid = nullptr;
    std::vector<cplx> v;

    cplx& at(int k, int m) { return v[grid->index(k, m)]; }
    const cplx& at(int k, int m) const { return v[grid->index(k, m)]; }
};

GridFunction zero_function(const PhysicalGrid& g);
SpectralFunction zero_spectral(const SpectralGrid& g);

GridFunction sample_physical(const PhysicalGrid& g, const std::function<cplx(double, double)>& f);

/// Compensated (Kahan) weighted sums with a fixed traversal order; results do
/// not depend on the thread count.
cplx integrate_physical(const PhysicalGrid& g, const GridFunction& f);
cplx integrate_spectral(const SpectralGrid& g, const SpectralFunction& F);

/// (integral of |f|^p dm_alpha)^{1/p}; p = infinity -> max over nodes.
double lp_norm_physical(const PhysicalGrid& g, const GridFunction& f, double p);

/// How the m-sum of a spectral integral handles the m > m_max tail.
///   none           truncated sum over the grid only
///   geometric      per-lambda geometric extrapolation from the last ratio
///   poly_geometric per-lambda (A + B m) r^m fit (exact for Gaussian profiles)
///   radial         reconstructs the small-lambda limit profile Phi(N) from
///                  the transform values along the top-m coverage edge
///                  (Richardson-corrected in lambda using a second m-line) and
///                  integrates it over the uncovered (lambda, m) region; this
///                  is the robust choice for compactly supported profiles
///                  whose m-sequences are still flat at m_max for small lambda
enum class TailMode { none, geometric, poly_geometric, radial };

/// integral of |F|^p * w(N(lambda,m)) dgamma over the grid, with optional
/// per-lambda completion of the truncated m-sum.
double spectral_mass(const SpectralFunction& F, double p, TailMode mode,
                     const std::function<double(double)>& weight_of_quasinorm = nullptr);

/// sup over grid nodes of |F|.
double spectral_sup(const SpectralFunction& F);

/// Semi-analytic integral of h(N(lambda,m)) dgamma over |lambda| <= lambda_max,
/// with the m-sum taken to m_sum_max and (optionally) completed by a
/// continuous-m Euler-Maclaurin tail using real-m L^alpha_m(0).
double integrate_dual_radial(double alpha, const std::function<double(double)>& h,
                             double lambda_max, int m_sum_max, bool m_tail);

/// gamma_alpha({N <= R}) with |lambda| <= lambda_max coverage; per-m lambda
/// integrals in closed form plus continuous-m tail.
double gamma_sublevel(double alpha, double R, double lambda_max, int m_sum_max, bool m_tail);

/// Geometric/poly-geometric completion of sum_{m > M} b_m from the last three
/// terms of a nonnegative sequence; returns 0 when the sequence does not
/// qualify (non-decaying, noise floor, ...).
double tail_complete(std::span<const double> b, TailMode mode);

std::uint64_t fnv1a64(const void* data, size_t nbytes, std::uint64_t seed = 1469598103934665603ull);

} // namespace lhk::quad

namespace lhk::geometry {
struct PolySpace; // fwd
/// Moments of f against the monomials of the space, via the grid quadrature.
std::vector<cplx> moment_vector(const quad::PhysicalGrid& g, const quad::GridFunction& f,
                                const PolySpace& space);
} // namespace lhk::geometry
