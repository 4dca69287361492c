#include "lhk/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lhk::atoms {

using geometry::MultiIndex;
using geometry::PolySpace;

bool AtomSpec::q_is_inf() const { return std::isinf(q); }

void AtomSpec::validate(double Q) const {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("AtomSpec: need 0 < p <= 1");
    if (!(q >= 1.0)) throw std::invalid_argument("AtomSpec: need q >= 1");
    if (p == q) throw std::invalid_argument("AtomSpec: need p != q");
    const int smin = static_cast<int>(std::floor(Q * (1.0 / p - 1.0)));
    if (s < smin) throw std::invalid_argument("AtomSpec: s below floor(Q(1/p-1))");
    if (!(r > 0.0)) throw std::invalid_argument("AtomSpec: r must be > 0");
}

double AtomSpec::size_bound(double alpha) const {
    const double vol = geometry::ball_volume(Params(alpha), r);
    const double expo = (q_is_inf() ? 0.0 : 1.0 / q) - 1.0 / p;
    return std::pow(vol, expo);
}

namespace {

double lq_norm(const quad::PhysicalGrid& g, const quad::GridFunction& f, double q) {
    return quad::lp_norm_physical(g, f, q);
}

// Cholesky solve for the small SPD Gram system
std::vector<double> spd_solve(std::vector<double> A, std::vector<double> b, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = A[i * n + j];
            for (int k = 0; k < j; ++k) s -= A[i * n + k] * A[j * n + k];
            if (i == j) {
                if (!(s > 0.0)) throw std::runtime_error("gram matrix not positive definite");
                A[i * n + i] = std::sqrt(s);
            } else {
                A[i * n + j] = s / A[j * n + j];
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= A[i * n + k] * b[k];
        b[i] = s / A[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= A[k * n + i] * b[k];
        b[i] = s / A[i * n + i];
    }
    return b;
}

// Jacobi eigenvalue sweep for the condition number of a small symmetric matrix
double symmetric_cond(std::vector<double> A, int n) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += A[i * n + j] * A[i * n + j];
        if (off < 1e-28) break;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double apq = A[i * n + j];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = 0.5 * (A[j * n + j] - A[i * n + i]) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double aik = A[i * n + k], ajk = A[j * n + k];
                    A[i * n + k] = c * aik - s * ajk;
                    A[j * n + k] = s * aik + c * ajk;
                }
                for (int k = 0; k < n; ++k) {
                    const double aki = A[k * n + i], akj = A[k * n + j];
                    A[k * n + i] = c * aki - s * akj;
                    A[k * n + j] = s * aki + c * akj;
                }
            }
        }
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int i = 0; i < n; ++i) {
        lo = std::min(lo, std::abs(A[i * n + i]));
        hi = std::max(hi, std::abs(A[i * n + i]));
    }
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

// radius-normalized monomial (x/r)^{i1} (t/(r^2/2))^{i0}
double norm_monomial(const MultiIndex& I, double x, double t, double r) {
    return std::pow(x / r, I.i1) * std::pow(t / (0.5 * r * r), I.i0);
}

void measure(Atom& a) {
    const auto& g = *a.grid;
    a.q_norm = lq_norm(g, a.values, a.spec.q);
    a.size_ratio = a.q_norm / a.spec.size_bound(a.alpha);
    a.p_norm = lq_norm(g, a.values, a.spec.p);
    a.l1_norm = lq_norm(g, a.values, 1.0);
    a.linf = lq_norm(g, a.values, std::numeric_limits<double>::infinity());
    a.exceptional = a.linf <= 1.0;
    const PolySpace ps = geometry::monomial_basis(a.spec.s);
    a.moments = geometry::moment_vector(g, a.values, ps);
    a.max_moment_rel = 0.0;
    for (const cplx& m : a.moments)
        a.max_moment_rel = std::max(a.max_moment_rel, std::abs(m) / a.l1_norm);
}

} // namespace

Atom make_atom(const profiles::Profile& seed, const AtomSpec& spec, double alpha, int nx, int nt,
               double gram_cond_limit) {
    spec.validate(2.0 * alpha + 4.0);
    Atom a;
    a.spec = spec;
    a.alpha = alpha;
    a.grid = quad::make_physical_grid(alpha, spec.r, 0.5 * spec.r * spec.r, nx, nt);
    const auto& g = *a.grid;

    const PolySpace ps = geometry::monomial_basis(spec.s);
    const int n = static_cast<int>(ps.basis.size());
    const double r = spec.r;
    profiles::Profile chi = profiles::bump_profile(alpha, 8, r);

    // Gram of radius-normalized monomials under chi dm, and seed moments
    std::vector<double> G(static_cast<size_t>(n) * n, 0.0);
    std::vector<double> mu(n, 0.0);
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.nt(); ++j) {
            const double x = g.x[i], t = g.t[j];
            const double w = g.weight(i, j);
            const double cv = chi.value(x, t).real();
            const double sv = seed.value(x, t).real();
            for (int bi = 0; bi < n; ++bi) {
                const double mi = norm_monomial(ps.basis[bi], x, t, r);
                mu[bi] += w * sv * mi;
                for (int bj = 0; bj <= bi; ++bj)
                    G[static_cast<size_t>(bi) * n + bj] +=
                        w * cv * mi * norm_monomial(ps.basis[bj], x, t, r);
            }
        }
    }
    for (int bi = 0; bi < n; ++bi)
        for (int bj = bi + 1; bj < n; ++bj)
            G[static_cast<size_t>(bi) * n + bj] = G[static_cast<size_t>(bj) * n + bi];

    a.gram_cond = symmetric_cond(G, n);
    if (a.gram_cond > gram_cond_limit)
        throw std::runtime_error("make_atom: gram matrix condition exceeds limit");
    const std::vector<double> coef = spd_solve(G, mu, n);

    auto basis = ps.basis;
    auto seedv = seed.value;
    auto chiv = chi.value;
    hyperops::Evaluator raw = [seedv, chiv, basis, coef, r](double x, double t) -> cplx {
        double corr = 0.0;
        for (size_t b = 0; b < basis.size(); ++b)
            corr += coef[b] * norm_monomial(basis[b], x, t, r);
        return seedv(x, t) - corr * chiv(x, t);
    };

    quad::GridFunction rawv = quad::sample_physical(g, raw);
    const double raw_q = lq_norm(g, rawv, spec.q);
    const double seed_q = lq_norm(g, profiles::sample(seed, g), spec.q);
    if (!(raw_q > 1e-10 * seed_q))
        throw std::runtime_error("make_atom: projection annihilates the seed profile");

    const double scale = spec.size_bound(alpha) / raw_q;
    a.eval = [raw, scale](double x, double t) { return scale * raw(x, t); };
    a.values = quad::zero_function(*a.grid);
    for (size_t i = 0; i < rawv.v.size(); ++i) a.values.v[i] = scale * rawv.v[i];
    measure(a);
    return a;
}

Atom atom_from_function(const hyperops::Evaluator& f, const AtomSpec& spec, double alpha, int nx,
                        int nt) {
    spec.validate(2.0 * alpha + 4.0);
    Atom a;
    a.spec = spec;
    a.alpha = alpha;
    a.grid = quad::make_physical_grid(alpha, spec.r, 0.5 * spec.r * spec.r, nx, nt);
    a.eval = f;
    a.values = quad::sample_physical(*a.grid, f);
    measure(a);
    return a;
}

AtomValidation validate_atom(const Atom& a) {
    AtomValidation v;
    // finer, differently-paneled grid that also covers a margin outside the
    // ball so support leakage is measured rather than assumed
    const double r = a.spec.r;
    const int nx = a.grid->nx() * 3 / 2 + 24, nt = a.grid->nt() * 3 / 2 + 24;
    quad::PhysicalGrid fine =
        quad::build_physical_grid(a.alpha, 1.25 * r, 0.5 * 1.25 * 1.25 * r * r, nx, nt);
    quad::GridFunction av = quad::sample_physical(fine, a.eval);

    double l1 = quad::lp_norm_physical(fine, av, 1.0);
    double leak = 0.0;
    for (int i = 0; i < fine.nx(); ++i)
        for (int j = 0; j < fine.nt(); ++j)
            if (geometry::homogeneous_norm({fine.x[i], fine.t[j]}) >= r)
                leak += fine.weight(i, j) * std::abs(av.v[fine.index(i, j)]);
    v.support_leakage = l1 > 0.0 ? leak / l1 : 0.0;

    v.size_ratio = quad::lp_norm_physical(fine, av, a.spec.q) / a.spec.size_bound(a.alpha);
    v.p_norm = quad::lp_norm_physical(fine, av, a.spec.p);
    v.exceptional =
        quad::lp_norm_physical(fine, av, std::numeric_limits<double>::infinity()) <= 1.0;

    const PolySpace ps = geometry::monomial_basis(a.spec.s);
    const std::vector<cplx> mom = geometry::moment_vector(fine, av, ps);
    v.max_moment_rel = 0.0;
    for (const cplx& m : mom) v.max_moment_rel = std::max(v.max_moment_rel, std::abs(m) / l1);

    v.pass = v.support_leakage < v.leak_tol && v.size_ratio <= 1.0 + v.size_tol &&
             v.max_moment_rel < v.moment_tol;
    return v;
}

MoleculeReport molecule_norm(const quad::PhysicalGrid& g, const quad::GridFunction& M, double p,
                             double q, int s, double eps) {
    const double Q = 2.0 * g.alpha + 4.0;
    if (!(eps > std::max(static_cast<double>(s) / Q, 1.0 / p - 1.0)))
        throw std::invalid_argument("molecule_norm: eps must exceed max(s/Q, 1/p-1)");
    MoleculeReport rep;
    rep.p = p;
    rep.q = q;
    rep.s = s;
    rep.eps = eps;
    rep.a = 1.0 - 1.0 / p + eps;
    rep.b = 1.0 - (std::isinf(q) ? 0.0 : 1.0 / q) + eps;

    rep.q_norm = quad::lp_norm_physical(g, M, q);
    quad::GridFunction weighted = quad::zero_function(g);
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.nt(); ++j) {
            const double nw = std::pow(geometry::homogeneous_norm({g.x[i], g.t[j]}), Q * rep.b);
            weighted.v[g.index(i, j)] = M.v[g.index(i, j)] * nw;
        }
    }
    rep.weighted_q_norm = quad::lp_norm_physical(g, weighted, q);
    const double ab = rep.a / rep.b;
    rep.molecule_norm = std::pow(rep.q_norm, ab) * std::pow(rep.weighted_q_norm, 1.0 - ab);

    const PolySpace ps = geometry::monomial_basis(s);
    rep.moments = geometry::moment_vector(g, M, ps);
    const double l1 = quad::lp_norm_physical(g, M, 1.0);
    rep.max_moment_rel = 0.0;
    for (const cplx& m : rep.moments)
        if (l1 > 0.0) rep.max_moment_rel = std::max(rep.max_moment_rel, std::abs(m) / l1);
    return rep;
}

AtomicCombination atomic_combination(const std::vector<std::pair<cplx, const Atom*>>& terms,
                                     double p, int nx, int nt) {
    if (terms.empty()) throw std::invalid_argument("atomic_combination: empty term list");
    const double alpha = terms.front().second->alpha;
    double X = 0.0, T = 0.0;
    for (const auto& [beta, atom] : terms) {
        if (atom->alpha != alpha)
            throw std::invalid_argument("atomic_combination: mixed alpha across atoms");
        X = std::max(X, atom->grid->X);
        T = std::max(T, atom->grid->T);
    }
    AtomicCombination comb;
    comb.grid = quad::make_physical_grid(alpha, X, T, nx, nt);
    const auto& cg = *comb.grid;
    comb.values = quad::zero_function(cg);
    double proxy_p = 0.0;
    for (const auto& [beta, atom] : terms) {
        comb.beta.push_back(beta);
        comb.beta_l1 += std::abs(beta);
        proxy_p += std::pow(std::abs(beta), p);
        for (int i = 0; i < cg.nx(); ++i)
            for (int j = 0; j < cg.nt(); ++j)
                comb.values.v[cg.index(i, j)] += beta * atom->eval(cg.x[i], cg.t[j]);
    }
    comb.proxy_norm = std::pow(proxy_p, 1.0 / p);
    comb.measured_lp = quad::lp_norm_physical(cg, comb.values, p);
    comb.cq_bound =
        std::pow(geometry::ball_volume_constant(Params(alpha)), 1.0 / p) * comb.proxy_norm;
    return comb;
}

} // namespace lhk::atoms
