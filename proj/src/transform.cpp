#include "lhk/transform.hpp"

#include <cmath>

#include "lhk/specfun.hpp"

namespace lhk::transform {

namespace {

void check_aligned(const PhysicalGrid& g, const GridFunction& f) {
    if (f.grid != &g || f.v.size() != g.size())
        throw std::invalid_argument("transform: grid function is not aligned with the grid");
}

void check_aligned(const SpectralGrid& g, const SpectralFunction& F) {
    if (F.grid != &g || F.v.size() != g.size())
        throw std::invalid_argument("transform: spectral function is not aligned with the grid");
}

// stage 1 of the forward transform: G[k][i] = sum_j wt_j (-it_j)^c e^{-i lam_k t_j} f(i,j)
std::vector<cplx> t_moments(const PhysicalGrid& phys, const SpectralGrid& spec,
                            const GridFunction& f, int c) {
    const int nx = phys.nx(), nt = phys.nt(), nl = spec.n_lambda_nodes();
    std::vector<cplx> G(static_cast<size_t>(nl) * nx);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < nl; ++k) {
        std::vector<cplx> E(nt);
        for (int j = 0; j < nt; ++j) {
            cplx e = std::polar(phys.wt[j], -spec.lam[k] * phys.t[j]);
            for (int q = 0; q < c; ++q) e *= cplx(0.0, -phys.t[j]);
            E[j] = e;
        }
        for (int i = 0; i < nx; ++i) {
            cplx acc(0.0, 0.0);
            const cplx* row = &f.v[phys.index(i, 0)];
            for (int j = 0; j < nt; ++j) acc += E[j] * row[j];
            G[static_cast<size_t>(k) * nx + i] = acc;
        }
    }
    return G;
}

} // namespace

SpectralFunction forward(const PhysicalGrid& phys, const SpectralGrid& spec,
                         const GridFunction& f) {
    check_aligned(phys, f);
    const int nx = phys.nx(), nl = spec.n_lambda_nodes(), mm = spec.m_max;
    const std::vector<cplx> G = t_moments(phys, spec, f, 0);

    std::vector<double> invLm0(mm + 1);
    for (int m = 0; m <= mm; ++m) invLm0[m] = 1.0 / spec.Lm0[m];

    SpectralFunction out = quad::zero_spectral(spec);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < nl; ++k) {
        const double alam = std::abs(spec.lam[k]);
        std::vector<double> S(mm + 1);
        cplx* dst = &out.v[spec.index(k, 0)];
        for (int i = 0; i < nx; ++i) {
            const double u = alam * phys.x[i] * phys.x[i];
            specfun::scaled_laguerre_all_m(spec.alpha, u, mm, S);
            const cplx gi = G[static_cast<size_t>(k) * nx + i] * phys.wx[i];
            for (int m = 0; m <= mm; ++m) dst[m] += gi * (S[m] * invLm0[m]);
        }
    }
    return out;
}

cplx forward_at(const PhysicalGrid& phys, const GridFunction& f, const DPoint& d) {
    check_aligned(phys, f);
    check_dpoint(d);
    const int nx = phys.nx(), nt = phys.nt();
    cplx acc(0.0, 0.0);
    for (int i = 0; i < nx; ++i) {
        cplx ti(0.0, 0.0);
        const cplx* row = &f.v[phys.index(i, 0)];
        for (int j = 0; j < nt; ++j)
            ti += std::polar(phys.wt[j], -d.lambda * phys.t[j]) * row[j];
        const double u = std::abs(d.lambda) * phys.x[i] * phys.x[i];
        acc += ti * phys.wx[i] * specfun::laguerre_fn(phys.alpha, d.m, u);
    }
    return acc;
}

GridFunction inverse(const SpectralGrid& spec, const PhysicalGrid& phys,
                     const SpectralFunction& F) {
    check_aligned(spec, F);
    const int nx = phys.nx(), nt = phys.nt(), nl = spec.n_lambda_nodes(), mm = spec.m_max;

    // H[i][k] = sum_m Lm0[m] * Lfn_m(|lam_k| x_i^2) * F(k,m); note
    // Lm0 * Lfn = e^{-u/2} L_m(u), the scaled recurrence value itself.
    std::vector<cplx> H(static_cast<size_t>(nx) * nl);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < nl; ++k) {
        const double alam = std::abs(spec.lam[k]);
        std::vector<double> S(mm + 1);
        const cplx* src = &F.v[spec.index(k, 0)];
        for (int i = 0; i < nx; ++i) {
            const double u = alam * phys.x[i] * phys.x[i];
            specfun::scaled_laguerre_all_m(spec.alpha, u, mm, S);
            cplx acc(0.0, 0.0);
            for (int m = 0; m <= mm; ++m) acc += src[m] * S[m];
            H[static_cast<size_t>(i) * nl + k] = acc;
        }
    }

    GridFunction out = quad::zero_function(phys);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < nt; ++j) {
        std::vector<cplx> E(nl);
        for (int k = 0; k < nl; ++k) E[k] = std::polar(spec.wlam[k], spec.lam[k] * phys.t[j]);
        for (int i = 0; i < nx; ++i) {
            cplx acc(0.0, 0.0);
            const cplx* hi = &H[static_cast<size_t>(i) * nl];
            for (int k = 0; k < nl; ++k) acc += E[k] * hi[k];
            out.v[phys.index(i, j)] = acc;
        }
    }
    return out;
}

SpectralFunction spectral_derivative(const PhysicalGrid& phys, const SpectralGrid& spec,
                                     const GridFunction& f, int order) {
    check_aligned(phys, f);
    if (order < 0 || order > specfun::kMaxDerivOrder)
        throw std::invalid_argument("spectral_derivative: order out of range (max 8)");
    if (order == 0) return forward(phys, spec, f);

    const int nx = phys.nx(), nl = spec.n_lambda_nodes(), mm = spec.m_max;
    std::vector<std::vector<cplx>> G(order + 1);
    for (int c = 0; c <= order; ++c) G[c] = t_moments(phys, spec, f, c);

    std::vector<double> invLm0(mm + 1);
    for (int m = 0; m <= mm; ++m) invLm0[m] = 1.0 / spec.Lm0[m];

    double binom[specfun::kMaxDerivOrder + 1] = {};
    binom[0] = 1.0;
    for (int j = 1; j <= order; ++j) binom[j] = binom[j - 1] * (order - j + 1) / j;

    SpectralFunction out = quad::zero_spectral(spec);
    const size_t stride = static_cast<size_t>(mm) + 1;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < nl; ++k) {
        const double alam = std::abs(spec.lam[k]);
        const double sig = (spec.lam[k] > 0.0) ? 1.0 : -1.0;
        std::vector<double> S(static_cast<size_t>(order + 1) * stride);
        cplx* dst = &out.v[spec.index(k, 0)];
        for (int i = 0; i < nx; ++i) {
            const double u = alam * phys.x[i] * phys.x[i];
            for (int c = 0; c <= order; ++c)
                specfun::scaled_laguerre_all_m(spec.alpha + c, u, mm,
                                               std::span<double>(&S[c * stride], stride));
            const double sx2 = sig * phys.x[i] * phys.x[i];
            double x2j = 1.0;
            for (int j = 0; j <= order; ++j) {
                const cplx gi = G[order - j][static_cast<size_t>(k) * nx + i] *
                                (phys.wx[i] * binom[j] * x2j);
                // g_m^{(j)} = sum_{c<=min(j,m)} binom(j,c)(-1)^c (-1/2)^{j-c} S_c[m-c] / Lm0[m]
                double bc = 1.0;
                for (int c = 0; c <= j; ++c) {
                    if (c > 0) bc = bc * (j - c + 1) / c;
                    const double sign = (c % 2 == 0) ? 1.0 : -1.0;
                    double hp = 1.0;
                    for (int q = 0; q < j - c; ++q) hp *= -0.5;
                    const double coef = bc * sign * hp;
                    for (int m = c; m <= mm; ++m)
                        dst[m] += gi * (coef * S[c * stride + (m - c)] * invLm0[m]);
                }
                x2j *= sx2;
            }
        }
    }
    return out;
}

cplx spectral_derivative_at(const PhysicalGrid& phys, const GridFunction& f, const DPoint& d,
                            int order) {
    check_aligned(phys, f);
    check_dpoint(d);
    if (order < 0 || order > specfun::kMaxDerivOrder)
        throw std::invalid_argument("spectral_derivative_at: order out of range (max 8)");
    const int nx = phys.nx(), nt = phys.nt();
    const double sig = (d.lambda > 0.0) ? 1.0 : -1.0;
    const size_t stride = static_cast<size_t>(d.m) + 1;
    std::vector<double> g(static_cast<size_t>(order + 1) * stride);
    std::vector<cplx> tm(order + 1);
    cplx acc(0.0, 0.0);
    for (int i = 0; i < nx; ++i) {
        for (int c = 0; c <= order; ++c) tm[c] = cplx(0.0, 0.0);
        const cplx* row = &f.v[phys.index(i, 0)];
        for (int j = 0; j < nt; ++j) {
            cplx e = std::polar(phys.wt[j], -d.lambda * phys.t[j]) * row[j];
            for (int c = 0; c <= order; ++c) {
                tm[c] += e;
                e *= cplx(0.0, -phys.t[j]);
            }
        }
        const double u = std::abs(d.lambda) * phys.x[i] * phys.x[i];
        specfun::laguerre_fn_derivs_all_m(phys.alpha, order, u, d.m, g);
        double binom = 1.0, x2j = 1.0;
        const double sx2 = sig * phys.x[i] * phys.x[i];
        for (int j = 0; j <= order; ++j) {
            if (j > 0) binom = binom * (order - j + 1) / j;
            acc += phys.wx[i] * binom * x2j * g[static_cast<size_t>(j) * stride + d.m] *
                   tm[order - j];
            x2j *= sx2;
        }
    }
    return acc;
}

SpectralFunction apply_laguerre_spectral(const SpectralFunction& F) {
    const SpectralGrid& g = *F.grid;
    SpectralFunction out = F;
    for (int k = 0; k < g.n_lambda_nodes(); ++k)
        for (int m = 0; m <= g.m_max; ++m) out.at(k, m) *= -g.quasinorm(k, m);
    return out;
}

double plancherel_defect(const PhysicalGrid& phys, const GridFunction& f,
                         const SpectralFunction& fhat, TailMode mode) {
    const double nf = quad::lp_norm_physical(phys, f, 2.0);
    if (nf == 0.0) return 0.0;
    const double nF = std::sqrt(quad::spectral_mass(fhat, 2.0, mode));
    return std::abs(nf - nF) / nf;
}

double riemann_lebesgue_margin(const PhysicalGrid& phys, const GridFunction& f,
                               const SpectralFunction& fhat) {
    return quad::lp_norm_physical(phys, f, 1.0) - quad::spectral_sup(fhat);
}

double eigenrelation_defect(const PhysicalGrid& phys, const SpectralGrid& spec,
                            const profiles::Profile& f) {
    if (!f.has_laguerre())
        throw std::invalid_argument("eigenrelation_defect: profile '" + f.name +
                                    "' has no analytic Laguerre action registered");
    GridFunction fv = profiles::sample(f, phys);
    GridFunction Lf = quad::sample_physical(phys, f.laguerre);
    SpectralFunction Fhat = forward(phys, spec, fv);
    SpectralFunction LFhat = forward(phys, spec, Lf);
    SpectralFunction diff = quad::zero_spectral(spec);
    SpectralFunction nref = quad::zero_spectral(spec);
    for (int k = 0; k < spec.n_lambda_nodes(); ++k) {
        for (int m = 0; m <= spec.m_max; ++m) {
            const double n = spec.quasinorm(k, m);
            nref.at(k, m) = n * Fhat.at(k, m);
            diff.at(k, m) = LFhat.at(k, m) + nref.at(k, m);
        }
    }
    const double den = std::sqrt(quad::spectral_mass(nref, 2.0, TailMode::none));
    if (den == 0.0) return 0.0;
    return std::sqrt(quad::spectral_mass(diff, 2.0, TailMode::none)) / den;
}

TransformPair make_pair(const PhysicalGrid& phys, const SpectralGrid& spec,
                        const GridFunction& f) {
    TransformPair p;
    p.phys = &phys;
    p.spec = &spec;
    p.f = f;
    p.fhat = forward(phys, spec, f);
    return p;
}

} // namespace lhk::transform
