#include "lhk/hyperops.hpp"

#include <algorithm>
#include <cmath>

namespace lhk::hyperops {

double TranslationRule::total_weight() const {
    if (r.empty()) return 1.0;
    double s = 0.0;
    for (double w : wr) s += w;
    return s;
}

TranslationRule build_translation_rule(double alpha, int n_r, int n_theta) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("build_translation_rule: alpha must be >= 0");
    if (n_theta < 4) throw std::invalid_argument("build_translation_rule: n_theta must be >= 4");
    TranslationRule rule;
    rule.alpha = alpha;
    rule.n_theta = n_theta;
    if (alpha == 0.0) return rule; // circle rule at r = 1

    if (n_r < 2) throw std::invalid_argument("build_translation_rule: n_r must be >= 2");
    // u = r^2 on (0,1) with weight (1-u)^{alpha-1}; Jacobi (a = alpha-1, b = 0)
    quad::GaussRule gj = quad::gauss_jacobi(n_r, alpha - 1.0, 0.0);
    rule.r.resize(n_r);
    rule.wr.resize(n_r);
    const double scale = alpha * std::pow(2.0, -alpha);
    for (int i = 0; i < n_r; ++i) {
        const double u = 0.5 * (gj.x[i] + 1.0);
        rule.r[i] = std::sqrt(u);
        rule.wr[i] = scale * gj.w[i]; // sums to 1
    }
    return rule;
}

cplx translate_point(const TranslationRule& rule, const HPoint& xt, const Evaluator& f,
                     const HPoint& ys) {
    check_hpoint(xt);
    check_hpoint(ys);
    const double x = xt.x, t = xt.t, y = ys.x, s = ys.t;
    if (x == 0.0) return f(y, t + s); // identity element (t = 0) and central translations
    if (y == 0.0) return f(x, t + s);

    const double x2y2 = x * x + y * y, xy = x * y;
    const double wth = 1.0 / rule.n_theta;
    cplx acc(0.0, 0.0);
    if (rule.r.empty()) { // alpha = 0
        for (int j = 0; j < rule.n_theta; ++j) {
            const double th = 2.0 * M_PI * j / rule.n_theta;
            const double xi = std::sqrt(std::max(0.0, x2y2 + 2.0 * xy * std::cos(th)));
            acc += wth * f(xi, t + s + xy * std::sin(th));
        }
        return acc;
    }
    for (size_t i = 0; i < rule.r.size(); ++i) {
        const double rr = rule.r[i];
        cplx inner(0.0, 0.0);
        for (int j = 0; j < rule.n_theta; ++j) {
            const double th = 2.0 * M_PI * j / rule.n_theta;
            const double xi = std::sqrt(std::max(0.0, x2y2 + 2.0 * xy * rr * std::cos(th)));
            inner += f(xi, t + s + xy * rr * std::sin(th));
        }
        acc += rule.wr[i] * wth * inner;
    }
    return acc;
}

GridFunction translate(const TranslationRule& rule, const HPoint& xt, const Evaluator& f,
                       const PhysicalGrid& out) {
    GridFunction g = quad::zero_function(out);
    const int nx = out.nx(), nt = out.nt();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nt; ++j)
            g.v[out.index(i, j)] = translate_point(rule, xt, f, {out.x[i], out.t[j]});
    return g;
}

GridFunction convolve(const TranslationRule& rule, const PhysicalGrid& grid, const Evaluator& f,
                      const Evaluator& g, double source_cutoff) {
    const int nx = grid.nx(), nt = grid.nt();

    // sample g on the source grid and mask negligible sources
    std::vector<cplx> gv(grid.size());
    double gmax = 0.0;
    for (int l = 0; l < nx; ++l)
        for (int q = 0; q < nt; ++q) {
            gv[grid.index(l, q)] = g(grid.x[l], grid.t[q]);
            gmax = std::max(gmax, std::abs(gv[grid.index(l, q)]));
        }
    const double cut = source_cutoff * gmax;
    std::vector<std::vector<int>> src_s(nx);
    for (int l = 0; l < nx; ++l)
        for (int q = 0; q < nt; ++q)
            if (std::abs(gv[grid.index(l, q)]) > cut) src_s[l].push_back(q);

    // effective (r, theta) node set, alpha = 0 collapsing to r = 1
    std::vector<double> rs, ws;
    if (rule.r.empty()) {
        rs.push_back(1.0);
        ws.push_back(1.0 / rule.n_theta);
    } else {
        for (size_t i = 0; i < rule.r.size(); ++i) {
            rs.push_back(rule.r[i]);
            ws.push_back(rule.wr[i] / rule.n_theta);
        }
    }

    GridFunction out = quad::zero_function(grid);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < nx; ++i) {
        const double x = grid.x[i];
        cplx* orow = &out.v[grid.index(i, 0)];
        for (int l = 0; l < nx; ++l) {
            if (src_s[l].empty()) continue;
            const double y = grid.x[l];
            const double wy = grid.wx[l];
            const double x2y2 = x * x + y * y, xy = x * y;
            for (size_t ri = 0; ri < rs.size(); ++ri) {
                const double rr = rs[ri];
                for (int j = 0; j < rule.n_theta; ++j) {
                    const double th = 2.0 * M_PI * j / rule.n_theta;
                    const double xi = std::sqrt(std::max(0.0, x2y2 + 2.0 * xy * rr * std::cos(th)));
                    const double c = xy * rr * std::sin(th);
                    const double wall = wy * ws[ri];
                    // T_{(y,-s)} f (x,t): the center displaces by t - s + c
                    for (int jt = 0; jt < nt; ++jt) {
                        cplx acc(0.0, 0.0);
                        for (int q : src_s[l]) {
                            acc += grid.wt[q] * gv[grid.index(l, q)] *
                                   f(xi, grid.t[jt] - grid.t[q] + c);
                        }
                        orow[jt] += wall * acc;
                    }
                }
            }
        }
    }
    return out;
}

GridFunction dilate_function(double delta, const Evaluator& f, const PhysicalGrid& out) {
    if (!(delta > 0.0)) throw std::invalid_argument("dilate_function: delta must be > 0");
    const double Q = 2.0 * out.alpha + 4.0;
    const double scale = std::pow(delta, -Q);
    return quad::sample_physical(out, [&](double x, double t) {
        return scale * f(x / delta, t / (delta * delta));
    });
}

namespace {

// 4-point Lagrange stencil along a sorted axis; clamped at the ends
int stencil_start(const std::vector<double>& ax, double q) {
    const auto it = std::upper_bound(ax.begin(), ax.end(), q);
    int hi = static_cast<int>(it - ax.begin());
    int s = hi - 2;
    s = std::clamp(s, 0, static_cast<int>(ax.size()) - 4);
    return s;
}

void lagrange4(const std::vector<double>& ax, int s, double q, double* w) {
    for (int a = 0; a < 4; ++a) {
        double num = 1.0, den = 1.0;
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            num *= q - ax[s + b];
            den *= ax[s + a] - ax[s + b];
        }
        w[a] = num / den;
    }
}

} // namespace

Evaluator evaluator_from_grid(const PhysicalGrid& g, const GridFunction& f) {
    if (f.grid != &g || f.v.size() != g.size())
        throw std::invalid_argument("evaluator_from_grid: misaligned grid function");
    if (g.nx() < 4 || g.nt() < 4)
        throw std::invalid_argument("evaluator_from_grid: grid too small for cubic stencils");
    auto xs = g.x;
    auto ts = g.t;
    auto vals = f.v;
    const double X = g.X, T = g.T;
    const int nt = g.nt();
    return [xs = std::move(xs), ts = std::move(ts), vals = std::move(vals), X, T,
            nt](double x, double t) -> cplx {
        if (x < 0.0 || x > X || t < -T || t > T) return cplx(0.0, 0.0);
        double wx[4], wt[4];
        const int sx = stencil_start(xs, x);
        const int st = stencil_start(ts, t);
        lagrange4(xs, sx, x, wx);
        lagrange4(ts, st, t, wt);
        cplx acc(0.0, 0.0);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                acc += wx[a] * wt[b] * vals[static_cast<size_t>(sx + a) * nt + (st + b)];
        return acc;
    };
}

} // namespace lhk::hyperops
