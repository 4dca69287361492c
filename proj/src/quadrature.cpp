#include "lhk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <numeric>

#include "lhk/geometry.hpp"
#include "lhk/specfun.hpp"

namespace lhk::quad {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            if (n == 1) { p1 = z; }
            for (int k = 1; k < n; ++k) {
                double p2 = ((2.0 * k + 1.0) * z * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            pp = n * (z * p1 - p0) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

// Symmetric tridiagonal QL with implicit shifts, tracking only the first
// component of each eigenvector (Golub-Welsch needs nothing more).
static void tridiag_eigen_first(std::vector<double>& d, std::vector<double>& e,
                                std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    z.assign(n, 0.0);
    if (n == 0) return;
    z[0] = 1.0;
    if (n == 1) return;
    e.resize(n, 0.0); // e[0..n-2] subdiagonal, e[n-1] scratch

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-292 + std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (++iter == 60) throw std::runtime_error("tridiag_eigen: no convergence");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double rr = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(rr, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    rr = std::hypot(f, g);
                    e[i + 1] = rr;
                    if (rr == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / rr;
                    c = g / rr;
                    g = d[i + 1] - p;
                    rr = (d[i] - g) * s + 2.0 * c * b;
                    p = s * rr;
                    d[i + 1] = g + p;
                    g = c * rr - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (rr == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    // sort ascending, carrying z
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n), zs(n);
    for (int i = 0; i < n; ++i) {
        ds[i] = d[idx[i]];
        zs[i] = z[idx[i]];
    }
    d = std::move(ds);
    z = std::move(zs);
}

GaussRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be >= 1");
    if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: need a,b > -1");
    std::vector<double> diag(n), sub(n, 0.0);
    const double ab = a + b;
    diag[0] = (b - a) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        diag[k] = (b * b - a * a) / den;
        const double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
        const double den2 = (2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0);
        sub[k - 1] = std::sqrt(num / den2);
    }
    std::vector<double> z;
    tridiag_eigen_first(diag, sub, z);
    const double log_mu0 = (ab + 1.0) * std::numbers::ln2_v<double> + std::lgamma(a + 1.0) +
                           std::lgamma(b + 1.0) - std::lgamma(ab + 2.0);
    const double mu0 = std::exp(log_mu0);
    GaussRule r;
    r.x = std::move(diag);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) r.w[i] = mu0 * z[i] * z[i];
    return r;
}

std::uint64_t fnv1a64(const void* data, size_t nbytes, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (size_t i = 0; i < nbytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

static std::uint64_t checksum_doubles(std::uint64_t h, std::span<const double> v) {
    return fnv1a64(v.data(), v.size() * sizeof(double), h);
}

static bool is_nonneg_integer(double v) {
    return v >= 0.0 && std::abs(v - std::round(v)) < 1e-12;
}

/// Appends a GL panel mapped to [lo, hi], with density x^{2a+1}/(pi Gamma(a+1))
/// folded in when `density` is set.
static void append_panel(const GaussRule& gl, double lo, double hi, bool density, double alpha,
                         std::vector<double>& xs, std::vector<double>& ws) {
    const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    const double norm = density ? 1.0 / (M_PI * std::tgamma(alpha + 1.0)) : 1.0;
    for (size_t i = 0; i < gl.x.size(); ++i) {
        const double xi = c + h * gl.x[i];
        double w = h * gl.w[i] * norm;
        if (density) w *= std::pow(xi, 2.0 * alpha + 1.0);
        xs.push_back(xi);
        ws.push_back(w);
    }
}

PhysicalGrid build_physical_grid(double alpha, double X, double T, int nx, int nt) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("build_physical_grid: alpha must be >= 0");
    if (!(X > 0.0) || !(T > 0.0)) throw std::invalid_argument("build_physical_grid: X,T must be > 0");
    if (nx < 4 || nt < 4) throw std::invalid_argument("build_physical_grid: nx,nt must be >= 4");

    PhysicalGrid g;
    g.alpha = alpha;
    g.X = X;
    g.T = T;
    const GaussRule gl = gauss_legendre(16);

    const int px = std::max(1, (nx + 8) / 16);
    const double hx = X / px;
    // When x^{2alpha+1} is not a polynomial, grade the first panel toward 0 so
    // the folded weight still integrates to machine accuracy.
    if (is_nonneg_integer(2.0 * alpha + 1.0)) {
        for (int p = 0; p < px; ++p) append_panel(gl, p * hx, (p + 1) * hx, true, alpha, g.x, g.wx);
    } else {
        const int levels = 26;
        double lo = hx * std::pow(0.5, levels);
        append_panel(gl, 0.0, lo, true, alpha, g.x, g.wx);
        for (int j = levels; j >= 1; --j) {
            const double hi = hx * std::pow(0.5, j - 1);
            append_panel(gl, lo, hi, true, alpha, g.x, g.wx);
            lo = hi;
        }
        for (int p = 1; p < px; ++p) append_panel(gl, p * hx, (p + 1) * hx, true, alpha, g.x, g.wx);
    }

    const int pt = std::max(1, (nt + 8) / 16);
    const double ht = 2.0 * T / pt;
    for (int p = 0; p < pt; ++p) append_panel(gl, -T + p * ht, -T + (p + 1) * ht, false, alpha, g.t, g.wt);

    double sx = 0.0, cx = 0.0;
    for (double w : g.wx) {
        double y = w - cx, s2 = sx + y;
        cx = (s2 - sx) - y;
        sx = s2;
    }
    double st = 0.0;
    for (double w : g.wt) st += w;
    g.mass = sx * st;
    g.exact_mass = std::pow(X, 2.0 * alpha + 2.0) / ((2.0 * alpha + 2.0) * M_PI * std::tgamma(alpha + 1.0)) * 2.0 * T;
    g.mass_defect = std::abs(g.mass - g.exact_mass) / g.exact_mass;

    std::uint64_t h = fnv1a64(&alpha, sizeof alpha);
    h = checksum_doubles(h, g.x);
    h = checksum_doubles(h, g.wx);
    h = checksum_doubles(h, g.t);
    h = checksum_doubles(h, g.wt);
    g.checksum = h;
    return g;
}

SpectralGrid build_spectral_grid(double alpha, double lambda_min, double lambda_max,
                                 int n_lambda, int m_max) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("build_spectral_grid: alpha must be >= 0");
    if (!(0.0 < lambda_min && lambda_min < lambda_max))
        throw std::invalid_argument("build_spectral_grid: need 0 < lambda_min < lambda_max");
    if (n_lambda < 1 || m_max < 0)
        throw std::invalid_argument("build_spectral_grid: bad n_lambda or m_max");

    SpectralGrid g;
    g.alpha = alpha;
    g.lambda_min = lambda_min;
    g.lambda_max = lambda_max;
    g.m_max = m_max;

    const GaussRule gl = gauss_legendre(4);
    std::vector<double> lp, wp;
    const double rho = std::pow(lambda_max / lambda_min, 1.0 / n_lambda);
    double lo = lambda_min;
    for (int p = 0; p < n_lambda; ++p) {
        const double hi = (p == n_lambda - 1) ? lambda_max : lo * rho;
        const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
        for (size_t i = 0; i < gl.x.size(); ++i) {
            const double l = c + h * gl.x[i];
            lp.push_back(l);
            wp.push_back(h * gl.w[i] * std::pow(l, alpha + 1.0));
        }
        lo = hi;
    }
    const int np = static_cast<int>(lp.size());
    g.lam.resize(2 * np);
    g.wlam.resize(2 * np);
    for (int i = 0; i < np; ++i) { // negative half, descending |lambda|
        g.lam[i] = -lp[np - 1 - i];
        g.wlam[i] = wp[np - 1 - i];
    }
    for (int i = 0; i < np; ++i) {
        g.lam[np + i] = lp[i];
        g.wlam[np + i] = wp[i];
    }
    g.Lm0.resize(m_max + 1);
    for (int m = 0; m <= m_max; ++m) g.Lm0[m] = specfun::laguerre_at_zero(alpha, m);

    std::uint64_t h = fnv1a64(&alpha, sizeof alpha);
    h = checksum_doubles(h, g.lam);
    h = checksum_doubles(h, g.wlam);
    h = checksum_doubles(h, g.Lm0);
    g.checksum = h;
    return g;
}

PhysPtr make_physical_grid(double alpha, double X, double T, int nx, int nt) {
    return std::make_shared<const PhysicalGrid>(build_physical_grid(alpha, X, T, nx, nt));
}

SpecPtr make_spectral_grid(double alpha, double lambda_min, double lambda_max, int n_lambda,
                           int m_max) {
    return std::make_shared<const SpectralGrid>(
        build_spectral_grid(alpha, lambda_min, lambda_max, n_lambda, m_max));
}

GridFunction zero_function(const PhysicalGrid& g) {
    GridFunction f;
    f.grid = &g;
    f.v.assign(g.size(), cplx(0.0, 0.0));
    return f;
}

SpectralFunction zero_spectral(const SpectralGrid& g) {
    SpectralFunction F;
    F.grid = &g;
    F.v.assign(g.size(), cplx(0.0, 0.0));
    return F;
}

GridFunction sample_physical(const PhysicalGrid& g, const std::function<cplx(double, double)>& f) {
    GridFunction out = zero_function(g);
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.nt(); ++j) out.at(i, j) = f(g.x[i], g.t[j]);
    return out;
}

static void check_aligned(const PhysicalGrid& g, const GridFunction& f) {
    if (f.grid != &g || f.v.size() != g.size())
        throw std::invalid_argument("grid function is not aligned with the grid");
}

static void check_aligned(const SpectralGrid& g, const SpectralFunction& F) {
    if (F.grid != &g || F.v.size() != g.size())
        throw std::invalid_argument("spectral function is not aligned with the grid");
}

cplx integrate_physical(const PhysicalGrid& g, const GridFunction& f) {
    check_aligned(g, f);
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.nt(); ++j) {
            const double w = g.wx[i] * g.wt[j];
            const cplx val = f.v[g.index(i, j)];
            double yr = w * val.real() - cr, s2 = sr + yr;
            cr = (s2 - sr) - yr;
            sr = s2;
            double yi = w * val.imag() - ci, t2 = si + yi;
            ci = (t2 - si) - yi;
            si = t2;
        }
    }
    return {sr, si};
}

cplx integrate_spectral(const SpectralGrid& g, const SpectralFunction& F) {
    check_aligned(g, F);
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    const int nl = g.n_lambda_nodes();
    for (int k = 0; k < nl; ++k) {
        for (int m = 0; m <= g.m_max; ++m) {
            const double w = g.wlam[k] * g.Lm0[m];
            const cplx val = F.v[g.index(k, m)];
            double yr = w * val.real() - cr, s2 = sr + yr;
            cr = (s2 - sr) - yr;
            sr = s2;
            double yi = w * val.imag() - ci, t2 = si + yi;
            ci = (t2 - si) - yi;
            si = t2;
        }
    }
    return {sr, si};
}

double lp_norm_physical(const PhysicalGrid& g, const GridFunction& f, double p) {
    check_aligned(g, f);
    if (std::isinf(p)) {
        double mx = 0.0;
        for (const cplx& v : f.v) mx = std::max(mx, std::abs(v));
        return mx;
    }
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm_physical: p must be > 0 or inf");
    double s = 0.0, c = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.nt(); ++j) {
            const double w = g.wx[i] * g.wt[j];
            const double a = std::abs(f.v[g.index(i, j)]);
            const double y = w * std::pow(a, p) - c, s2 = s + y;
            c = (s2 - s) - y;
            s = s2;
        }
    }
    return std::pow(s, 1.0 / p);
}

double tail_complete(std::span<const double> b, TailMode mode) {
    if (mode == TailMode::none || b.size() < 3) return 0.0;
    const size_t M = b.size() - 1;
    const double bM = b[M], bM1 = b[M - 1], bM2 = b[M - 2];
    if (!(bM > 0.0) || !(bM1 > 0.0) || !(bM2 > 0.0)) return 0.0;
    const double v = bM / bM1, u = bM1 / bM2;
    if (!(v > 0.0) || !(u > 0.0)) return 0.0;
    const double cap = 1.0 - 1e-12; // near lambda->0 the true ratio approaches 1
    auto geometric = [&](double r) {
        if (!(r > 0.0) || !(r < 1.0)) return 0.0; // divergent model: no completion
        r = std::min(r, cap);
        return bM * r / (1.0 - r);
    };
    if (mode == TailMode::geometric) return geometric(v);
    // poly_geometric: fit b_m = B (c + m) r^m from the last three terms. The
    // sequence may still be increasing at M (polynomial factor dominating);
    // the fitted tail converges as long as r < 1.
    const double one_minus = 1.0 - v / u;
    if (!(one_minus > 1e-12)) return geometric(v);
    const double w = 1.0 / std::sqrt(one_minus); // = c + M - 1
    if (!(w > 1.0) || !std::isfinite(w)) return geometric(v);
    const double r = v * w / (w + 1.0);
    if (!(r > 0.0) || !(r < 1.0)) return geometric(v);
    const double rc = std::min(r, cap);
    const double cM = w + 1.0; // c + M
    return bM * (rc / (1.0 - rc)) * (1.0 + 1.0 / ((1.0 - rc) * cM));
}

namespace {

// Radial limit profile |F|^p sampled along an m-line of the coverage: the
// values at nodes (k, mline) as a function of s = N(lambda_k, mline), with the
// two signed lambda sides averaged. s is ascending (positive-lambda half).
struct RadialLine {
    std::vector<double> s, phi;

    // log-linear interpolation; 0 outside or at dead samples
    double operator()(double q) const {
        if (s.empty() || q < s.front() || q > s.back()) return 0.0;
        const auto it = std::lower_bound(s.begin(), s.end(), q);
        size_t hi = static_cast<size_t>(it - s.begin());
        if (hi == 0) return phi[0];
        const size_t lo = hi - 1;
        const double pl = phi[lo], ph = phi[hi];
        if (!(pl > 0.0) || !(ph > 0.0)) return 0.5 * (pl + ph);
        const double w = (q - s[lo]) / (s[hi] - s[lo]);
        return std::exp((1.0 - w) * std::log(pl) + w * std::log(ph));
    }
};

RadialLine radial_line(const SpectralFunction& F, double p, int mline,
                       const std::function<double(double)>& wq) {
    const SpectralGrid& g = *F.grid;
    const int nl = g.n_lambda_nodes(), half = nl / 2;
    RadialLine L;
    L.s.reserve(half);
    L.phi.reserve(half);
    (void)wq;
    for (int k = half; k < nl; ++k) { // positive side ascending
        const int kneg = nl - 1 - k;
        const double val = 0.5 * (std::pow(std::abs(F.v[g.index(k, mline)]), p) +
                                  std::pow(std::abs(F.v[g.index(kneg, mline)]), p));
        L.s.push_back(g.quasinorm(k, mline));
        L.phi.push_back(val);
    }
    return L;
}

double lm0_real(double alpha, double m) {
    if (alpha == 0.0) return 1.0;
    if (alpha == 1.0) return m + 1.0;
    return std::exp(std::lgamma(m + alpha + 1.0) - std::lgamma(m + 1.0) -
                    std::lgamma(alpha + 1.0));
}

} // namespace

double spectral_mass(const SpectralFunction& F, double p, TailMode mode,
                     const std::function<double(double)>& weight_of_quasinorm) {
    const SpectralGrid& g = *F.grid;
    check_aligned(g, F);
    if (!(p > 0.0)) throw std::invalid_argument("spectral_mass: p must be > 0");
    const int nl = g.n_lambda_nodes(), mm = g.m_max;

    // radial completion: limit profile from the top-m edge, first-order
    // Richardson in lambda against a second m-line
    RadialLine line1, line2;
    double ratioR = 2.0;
    int m2 = 0;
    if (mode == TailMode::radial) {
        m2 = std::max(mm / 2, 1);
        line1 = radial_line(F, p, mm, weight_of_quasinorm);
        line2 = radial_line(F, p, m2, weight_of_quasinorm);
        const double c0 = 0.5 * (g.alpha + 1.0);
        ratioR = (mm + c0) / (m2 + c0); // lambda2/lambda1 at equal s
    }
    // First-order Richardson toward lambda -> 0, in linear space: log-space
    // extrapolation is unstable near the zeros of oscillatory transforms
    // (atoms), where the two lines can differ by orders of magnitude.
    auto phi_limit = [&](double q) {
        const double p1 = line1(q);
        if (!(p1 > 0.0)) return 0.0;
        const double p2 = line2(q);
        if (!(p2 > 0.0)) return p1;
        const double ext = p1 + (p1 - p2) / (ratioR - 1.0);
        return std::max(0.0, ext);
    };
    // cache ln Phi on the top-edge s grid; -inf marks dead samples
    std::vector<double> lphi;
    if (mode == TailMode::radial) {
        lphi.resize(line1.s.size());
        for (size_t i = 0; i < line1.s.size(); ++i) {
            const double v = phi_limit(line1.s[i]);
            lphi[i] = v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
        }
    }
    static const GaussRule seg_gl = gauss_legendre(4);

    double s = 0.0, c = 0.0;
    std::vector<double> b(mm + 1);
    const double c0 = 0.5 * (g.alpha + 1.0);
    for (int k = 0; k < nl; ++k) {
        for (int m = 0; m <= mm; ++m) {
            double val = std::pow(std::abs(F.v[g.index(k, m)]), p) * g.Lm0[m];
            if (weight_of_quasinorm) val *= weight_of_quasinorm(g.quasinorm(k, m));
            b[m] = val;
        }
        double rowsum = 0.0, rc = 0.0;
        for (int m = 0; m <= mm; ++m) {
            const double y = b[m] - rc, s2 = rowsum + y;
            rc = (s2 - rowsum) - y;
            rowsum = s2;
        }
        double tail = 0.0;
        if (mode == TailMode::radial) {
            // tail = (1/(4|lam|)) * int_{s_k}^{s_end} Lm0(s/(4|lam|) - c0) w(s) Phi(s) ds
            // integrated segment-by-segment against the log-linear Phi cache
            const double al = std::abs(g.lam[k]);
            const double sk = 4.0 * al * (mm + 0.5 + c0);
            const auto& sv = line1.s;
            if (!sv.empty() && sk < sv.back()) {
                double acc = 0.0;
                size_t seg = static_cast<size_t>(
                    std::upper_bound(sv.begin(), sv.end(), sk) - sv.begin());
                if (seg == 0) seg = 1;
                for (; seg < sv.size(); ++seg) {
                    const double sa = std::max(sv[seg - 1], sk), sb = sv[seg];
                    if (!(sb > sa)) continue;
                    const double la = lphi[seg - 1], lb = lphi[seg];
                    if (!std::isfinite(la) || !std::isfinite(lb)) continue;
                    const double inv = 1.0 / (sv[seg] - sv[seg - 1]);
                    const double cc = 0.5 * (sb + sa), hh = 0.5 * (sb - sa);
                    for (size_t q = 0; q < seg_gl.x.size(); ++q) {
                        const double sq = cc + hh * seg_gl.x[q];
                        const double tfrac = (sq - sv[seg - 1]) * inv;
                        double f = std::exp(la + tfrac * (lb - la)) *
                                   lm0_real(g.alpha, sq / (4.0 * al) - c0);
                        if (weight_of_quasinorm) f *= weight_of_quasinorm(sq);
                        acc += hh * seg_gl.w[q] * f;
                    }
                }
                tail = acc / (4.0 * al);
            }
        } else {
            // ignore completion when the last terms are at the noise floor
            double bmax = 0.0;
            for (int m = 0; m <= mm; ++m) bmax = std::max(bmax, b[m]);
            if (b[mm] > 1e-280 && b[mm] > 1e-15 * bmax) tail = tail_complete(b, mode);
        }
        const double y = g.wlam[k] * (rowsum + tail) - c, s2 = s + y;
        c = (s2 - s) - y;
        s = s2;
    }
    return s;
}

double spectral_sup(const SpectralFunction& F) {
    double mx = 0.0;
    for (const cplx& v : F.v) mx = std::max(mx, std::abs(v));
    return mx;
}

// log L^alpha_m(0) for real m (continuous-m extension used by tails)
static double lm0_log_real(double alpha, double m) {
    return std::lgamma(m + alpha + 1.0) - std::lgamma(m + 1.0) - std::lgamma(alpha + 1.0);
}

// integral_{M0}^inf g(m) dm via m = M0/s; the dual-measure tails behave like
// m^{-2} so the mapped integrand is smooth on (0,1].
static double continuous_m_tail(const std::function<double(double)>& g_of_m, double M0) {
    static const GaussRule gt = gauss_legendre(16);
    double ts = 0.0;
    const int panels = 8;
    for (int p = 0; p < panels; ++p) {
        const double lo = static_cast<double>(p) / panels, hi = static_cast<double>(p + 1) / panels;
        const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
        for (size_t i = 0; i < gt.x.size(); ++i) {
            const double sVar = c + h * gt.x[i];
            if (sVar <= 0.0) continue;
            const double m = M0 / sVar;
            ts += h * gt.w[i] * g_of_m(m) * M0 / (sVar * sVar);
        }
    }
    return ts;
}

double integrate_dual_radial(double alpha, const std::function<double(double)>& h,
                             double lambda_max, int m_sum_max, bool m_tail) {
    if (!(lambda_max > 0.0) || m_sum_max < 0)
        throw std::invalid_argument("integrate_dual_radial: bad arguments");
    const GaussRule gl = gauss_legendre(16);
    // graded lambda panels toward 0 capture kernels varying on the 1/c_m scale
    const int levels = 42;
    auto lam_integral = [&](double cm) {
        double s = 0.0;
        double lo = lambda_max * std::pow(0.5, levels);
        // stub [0, lo]: integrand <= h(cm*lo) * lo^{alpha+2}/(alpha+2), negligible
        for (int j = levels; j >= 0; --j) {
            const double hi = (j == 0) ? lambda_max : lambda_max * std::pow(0.5, j - 1);
            const double cc = 0.5 * (hi + lo), hh = 0.5 * (hi - lo);
            for (size_t i = 0; i < gl.x.size(); ++i) {
                const double l = cc + hh * gl.x[i];
                s += hh * gl.w[i] * h(cm * l) * std::pow(l, alpha + 1.0);
            }
            if (j == 0) break;
            lo = hi;
        }
        return 2.0 * s; // both signs of lambda
    };
    auto g_of_m = [&](double m) {
        const double cm = 4.0 * (m + 0.5 * (alpha + 1.0));
        return std::exp(lm0_log_real(alpha, m)) * lam_integral(cm);
    };
    double s = 0.0, c = 0.0;
    for (int m = 0; m <= m_sum_max; ++m) {
        const double y = g_of_m(m) - c, s2 = s + y;
        c = (s2 - s) - y;
        s = s2;
    }
    if (m_tail) s += continuous_m_tail(g_of_m, m_sum_max + 0.5);
    return s;
}

double gamma_sublevel(double alpha, double R, double lambda_max, int m_sum_max, bool m_tail) {
    if (!(R > 0.0)) throw std::invalid_argument("gamma_sublevel: R must be > 0");
    auto g_of_m = [&](double m) {
        const double cm = 4.0 * (m + 0.5 * (alpha + 1.0));
        const double cut = std::min(R / cm, lambda_max);
        return std::exp(lm0_log_real(alpha, m)) * 2.0 * std::pow(cut, alpha + 2.0) / (alpha + 2.0);
    };
    double s = 0.0, c = 0.0;
    for (int m = 0; m <= m_sum_max; ++m) {
        const double y = g_of_m(m) - c, s2 = s + y;
        c = (s2 - s) - y;
        s = s2;
    }
    if (m_tail) s += continuous_m_tail(g_of_m, m_sum_max + 0.5);
    return s;
}

} // namespace lhk::quad

namespace lhk::geometry {

std::vector<cplx> moment_vector(const quad::PhysicalGrid& g, const quad::GridFunction& f,
                                const PolySpace& space) {
    if (f.grid != &g || f.v.size() != g.size())
        throw std::invalid_argument("moment_vector: grid function is not aligned with the grid");
    std::vector<cplx> out;
    out.reserve(space.basis.size());
    for (const MultiIndex& I : space.basis) {
        double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
        for (int i = 0; i < g.nx(); ++i) {
            const double xp = std::pow(g.x[i], I.i1);
            for (int j = 0; j < g.nt(); ++j) {
                const double w = g.wx[i] * g.wt[j] * xp * std::pow(g.t[j], I.i0);
                const cplx val = f.v[g.index(i, j)];
                double yr = w * val.real() - cr, s2 = sr + yr;
                cr = (s2 - sr) - yr;
                sr = s2;
                double yi = w * val.imag() - ci, t2 = si + yi;
                ci = (t2 - si) - yi;
                si = t2;
            }
        }
        out.emplace_back(sr, si);
    }
    return out;
}

} // namespace lhk::geometry
