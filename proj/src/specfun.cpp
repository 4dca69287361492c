#include "lhk/specfun.hpp"

#include <cmath>
#include <cstdint>

namespace lhk::specfun {

double laguerre_poly(double alpha, int m, double x) {
    if (m < 0) throw std::invalid_argument("laguerre_poly: m must be >= 0");
    if (m == 0) return 1.0;
    double lm1 = 1.0;              // L_0
    double l = 1.0 + alpha - x;    // L_1
    for (int k = 1; k < m; ++k) {
        double lp = ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp;
    }
    return l;
}

double laguerre_at_zero_log(double alpha, int m) {
    if (m < 0) throw std::invalid_argument("laguerre_at_zero_log: m must be >= 0");
    return std::lgamma(m + alpha + 1.0) - std::lgamma(m + 1.0) - std::lgamma(alpha + 1.0);
}

double laguerre_at_zero(double alpha, int m) {
    if (m < 0) throw std::invalid_argument("laguerre_at_zero: m must be >= 0");
    const double ai = std::round(alpha);
    if (alpha == ai && ai >= 0.0 && m <= 20) {
        // binom(m+alpha, m) exactly
        std::uint64_t num = 1, den = 1;
        const int a = static_cast<int>(ai);
        for (int k = 1; k <= a; ++k) {
            num *= static_cast<std::uint64_t>(m + k);
            den *= static_cast<std::uint64_t>(k);
        }
        return static_cast<double>(num) / static_cast<double>(den);
    }
    return std::exp(laguerre_at_zero_log(alpha, m));
}

void scaled_laguerre_all_m(double alpha, double u, int m_max, std::span<double> out) {
    if (m_max < 0) throw std::invalid_argument("scaled_laguerre_all_m: m_max must be >= 0");
    if (out.size() < static_cast<size_t>(m_max) + 1)
        throw std::invalid_argument("scaled_laguerre_all_m: output span too small");
    const double e = std::exp(-0.5 * u);
    out[0] = e;
    if (m_max == 0) return;
    out[1] = (1.0 + alpha - u) * e;
    for (int k = 1; k < m_max; ++k) {
        out[k + 1] = ((2.0 * k + 1.0 + alpha - u) * out[k] - (k + alpha) * out[k - 1]) / (k + 1.0);
    }
}

double laguerre_fn(double alpha, int m, double u) {
    if (u < 0.0) throw std::invalid_argument("laguerre_fn: u must be >= 0");
    double v0 = std::exp(-0.5 * u);
    if (m == 0) return v0;
    double v1 = (1.0 + alpha - u) * v0;
    for (int k = 1; k < m; ++k) {
        double vp = ((2.0 * k + 1.0 + alpha - u) * v1 - (k + alpha) * v0) / (k + 1.0);
        v0 = v1;
        v1 = vp;
    }
    return v1 / laguerre_at_zero(alpha, m);
}

void laguerre_fn_all_m(double alpha, double u, int m_max, std::span<double> out) {
    scaled_laguerre_all_m(alpha, u, m_max, out);
    for (int m = 0; m <= m_max; ++m) out[m] /= laguerre_at_zero(alpha, m);
}

void laguerre_fn_derivs_all_m(double alpha, int jmax, double u, int m_max,
                              std::span<double> out) {
    if (jmax < 0 || jmax > kMaxDerivOrder)
        throw std::invalid_argument("laguerre_fn_derivs_all_m: bad jmax");
    const size_t stride = static_cast<size_t>(m_max) + 1;
    if (out.size() < stride * (jmax + 1))
        throw std::invalid_argument("laguerre_fn_derivs_all_m: output span too small");

    // S[i][n] = e^{-u/2} L^{alpha+i}_n(u), needed for i = 0..jmax
    std::vector<double> S(static_cast<size_t>(jmax + 1) * stride);
    for (int i = 0; i <= jmax; ++i)
        scaled_laguerre_all_m(alpha + i, u, m_max, std::span<double>(&S[i * stride], stride));

    // binomials up to jmax
    double binom[kMaxDerivOrder + 1][kMaxDerivOrder + 1] = {};
    for (int j = 0; j <= jmax; ++j) {
        binom[j][0] = 1.0;
        for (int i = 1; i <= j; ++i) binom[j][i] = binom[j - 1][i - 1] + (i <= j - 1 ? binom[j - 1][i] : 0.0);
    }

    std::vector<double> lz(stride);
    for (int m = 0; m <= m_max; ++m) lz[m] = laguerre_at_zero(alpha, m);

    // d^j/du^j [e^{-u/2} L^a_m(u)] = sum_i binom(j,i) (-1)^i L^{a+i}_{m-i} * (-1/2)^{j-i} e^{-u/2}
    for (int j = 0; j <= jmax; ++j) {
        for (int m = 0; m <= m_max; ++m) {
            double acc = 0.0;
            const int itop = std::min(j, m);
            for (int i = 0; i <= itop; ++i) {
                const double sign = (i % 2 == 0) ? 1.0 : -1.0;
                double halfpow = 1.0;
                for (int c = 0; c < j - i; ++c) halfpow *= -0.5;
                acc += binom[j][i] * sign * halfpow * S[static_cast<size_t>(i) * stride + (m - i)];
            }
            out[static_cast<size_t>(j) * stride + m] = acc / lz[m];
        }
    }
}

cplx character(const Params& par, const DPoint& d, const HPoint& p) {
    check_dpoint(d);
    check_hpoint(p);
    const double u = std::abs(d.lambda) * p.x * p.x;
    return std::polar(laguerre_fn(par.alpha, d.m, u), d.lambda * p.t);
}

cplx character_dlambda(const Params& par, const DPoint& d, const HPoint& p, int order) {
    check_dpoint(d);
    check_hpoint(p);
    if (order < 0 || order > kMaxDerivOrder)
        throw std::invalid_argument("character_dlambda: order out of range (max 8)");
    if (order == 0) return character(par, d, p);

    const double sig = (d.lambda > 0.0) ? 1.0 : -1.0;
    const double u = std::abs(d.lambda) * p.x * p.x;
    const size_t stride = static_cast<size_t>(d.m) + 1;
    std::vector<double> g(static_cast<size_t>(order + 1) * stride);
    laguerre_fn_derivs_all_m(par.alpha, order, u, d.m, g);

    // Leibniz over e^{i lambda t} * Lfn(|lambda| x^2):
    //   d^I phi = sum_j binom(I,j) (it)^{I-j} e^{i lambda t} (sig x^2)^j g_m^{(j)}(u)
    double binom = 1.0;
    const cplx it(0.0, p.t);
    const double sx2 = sig * p.x * p.x;
    cplx acc(0.0, 0.0);
    double xpow = 1.0;
    for (int j = 0; j <= order; ++j) {
        if (j > 0) binom = binom * (order - j + 1) / j;
        cplx itp = 1.0;
        for (int c = 0; c < order - j; ++c) itp *= it;
        acc += binom * itp * xpow * g[static_cast<size_t>(j) * stride + d.m];
        xpow *= sx2;
    }
    return acc * std::polar(1.0, d.lambda * p.t);
}

cplx TaylorTable::eval(double x, double t) const {
    cplx acc(0.0, 0.0);
    double xp = 1.0;
    for (int k = 0; k <= s; ++k) {
        double tp = 1.0;
        for (int l = 0; l + k <= s; ++l) {
            acc += at(k, l) * xp * tp;
            tp *= t;
        }
        xp *= x;
    }
    return acc;
}

TaylorTable character_taylor(const Params& par, const DPoint& d, int s) {
    check_dpoint(d);
    if (s < 0 || s > 2 * kMaxDerivOrder)
        throw std::invalid_argument("character_taylor: s out of range");
    TaylorTable tab;
    tab.s = s;
    tab.w.assign(static_cast<size_t>(s + 1) * (s + 1), cplx(0.0, 0.0));

    const int nmax = s / 2;
    const size_t stride = static_cast<size_t>(d.m) + 1;
    std::vector<double> g(static_cast<size_t>(nmax + 1) * stride);
    laguerre_fn_derivs_all_m(par.alpha, nmax, 0.0, d.m, g);

    const double alam = std::abs(d.lambda);
    const cplx ilam(0.0, d.lambda);
    // w_{2n,l} = (i lambda)^l |lambda|^n g^{(n)}(0) / (n! l!)
    for (int n = 0; 2 * n <= s; ++n) {
        double nfact = 1.0;
        for (int c = 2; c <= n; ++c) nfact *= c;
        double lampow = std::pow(alam, n);
        const double gn = g[static_cast<size_t>(n) * stride + d.m];
        cplx ilpow = 1.0;
        double lfact = 1.0;
        for (int l = 0; 2 * n + l <= s; ++l) {
            if (l > 0) {
                ilpow *= ilam;
                lfact *= l;
            }
            tab.w[static_cast<size_t>(2 * n) * (s + 1) + l] = ilpow * (lampow * gn / (nfact * lfact));
        }
    }
    return tab;
}

} // namespace lhk::specfun
