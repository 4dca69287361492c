#include "lhk/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lhk/geometry.hpp"
#include "lhk/hyperops.hpp"
#include "lhk/multipliers.hpp"
#include "lhk/profiles.hpp"
#include "lhk/specfun.hpp"
#include "lhk/transform.hpp"
#include "lhk/version.hpp"

namespace lhk::harness {

using namespace lhk::quad;
namespace tf = lhk::transform;

void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("LHK_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) omp_set_num_threads(std::min(cap, omp_get_max_threads()));
    }
#endif
}

namespace {

std::string dtos(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

EstimateReport new_report(const Config& cfg, const std::string& suite) {
    EstimateReport r;
    r.suite = suite;
    r.version = kVersion;
    r.config_digest = config_digest(cfg);
    r.params = {{"alpha", dtos(cfg.alpha)},
                {"nx", std::to_string(cfg.grid.nx)},
                {"nt", std::to_string(cfg.grid.nt)},
                {"n_lambda", std::to_string(cfg.grid.n_lambda)},
                {"m_max", std::to_string(cfg.grid.m_max)}};
    r.warnings = cfg.warnings;
    return r;
}

double lsq_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
    const int n = static_cast<int>(lx.size());
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct SweepStat {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    bool finite = true;

    void feed(double v) {
        if (!std::isfinite(v)) finite = false;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double stability() const { return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity(); }
};

} // namespace

quad::SpecPtr atom_spectral_grid(const Config& cfg, double r) {
    const auto& a = cfg.atoms;
    return make_spectral_grid(cfg.alpha, a.lambda_min_scale / (r * r), a.lambda_max_scale / (r * r),
                              a.n_lambda, a.m_max);
}

atoms::Atom build_suite_atom(const Config& cfg, double p, int s, double r) {
    atoms::AtomSpec spec{p, cfg.atoms.q, s, r};
    return atoms::make_atom(profiles::bump_profile(cfg.alpha, 6, r), spec, cfg.alpha, cfg.atoms.nx,
                            cfg.atoms.nt);
}

// ---------------------------------------------------------------------------
// core suite

EstimateReport verify_core(const Config& cfg) {
    EstimateReport rep = new_report(cfg, "core");
    const double alpha = cfg.alpha;
    const Params par(alpha);

    auto phys = make_physical_grid(alpha, cfg.grid.X, cfg.grid.T, cfg.grid.nx, cfg.grid.nt);
    auto spec = make_spectral_grid(alpha, cfg.grid.lambda_min, cfg.grid.lambda_max,
                                   cfg.grid.n_lambda, cfg.grid.m_max);
    rep.grid_checksum = phys->checksum ^ spec->checksum;

    for (const std::string& name : cfg.profiles) {
        profiles::Profile prof = profiles::make_profile(alpha, name);
        // compactly supported profiles get support-fitted boxes and a spectral
        // range scaled to their frequency content; the node counts stay at the
        // configured defaults
        const bool compact = prof.x_extent < 0.5 * cfg.grid.X;
        auto pphys = compact ? make_physical_grid(alpha, prof.x_extent, prof.t_extent,
                                                  cfg.grid.nx, cfg.grid.nt)
                             : phys;
        auto pspec = compact
                         ? make_spectral_grid(alpha, cfg.grid.lambda_min,
                                              60.0 / (prof.x_extent * prof.x_extent),
                                              cfg.grid.n_lambda, cfg.grid.m_max)
                         : spec;
        GridFunction f = profiles::sample(prof, *pphys);
        SpectralFunction F = tf::forward(*pphys, *pspec, f);

        const double ptol = (name == "gaussian") ? cfg.tol.plancherel_gaussian
                                                 : cfg.tol.plancherel_bump;
        const double pd = tf::plancherel_defect(*pphys, f, F, TailMode::radial);
        rep.add_pass_fail("plancherel_defect[" + name + "]", pd, 0.0, ptol, pd < ptol,
                          "m-tail: radial completion");

        const double margin = tf::riemann_lebesgue_margin(*pphys, f, F);
        rep.add_pass_fail("riemann_lebesgue_margin[" + name + "]", margin, 0.0,
                          cfg.tol.riemann_lebesgue, margin >= -cfg.tol.riemann_lebesgue,
                          "||f||_1 - sup|fhat| >= -tol");

        if (prof.has_laguerre()) {
            const double ed = tf::eigenrelation_defect(*pphys, *pspec, prof);
            if (name == "gaussian")
                rep.add_pass_fail("eigenrelation_defect[" + name + "]", ed, 0.0,
                                  cfg.tol.eigenrelation, ed < cfg.tol.eigenrelation);
            else
                rep.add_measured("eigenrelation_defect[" + name + "]", ed,
                                 "toleranced on the gaussian profile");
        } else {
            rep.add_measured("eigenrelation_defect[" + name + "]",
                             std::numeric_limits<double>::quiet_NaN(),
                             "no analytic derivatives registered");
        }

        // dilation covariance on a wide dedicated grid; the delta = 1/2
        // dilate concentrates in t, so the t-resolution is driven up
        {
            const double X2 = prof.x_extent * 2.2, T2 = prof.t_extent * 4.2;
            const int nt2 = std::max({static_cast<int>(8.0 * 4.1 * T2 / M_PI) + 16, 1024});
            auto wide = make_physical_grid(alpha, X2, T2, std::max(cfg.grid.nx, 320), nt2);
            GridFunction fw = profiles::sample(prof, *wide);
            double worst = 0.0;
            for (double delta : {0.5, 2.0}) {
                GridFunction fd =
                    profiles::sample(profiles::dilate_profile(prof, delta), *wide);
                for (double lam : {0.4, 1.0}) {
                    for (int m : {0, 2, 5}) {
                        const cplx lhs = tf::forward_at(*wide, fd, {lam, m});
                        const cplx rhs = tf::forward_at(*wide, fw, {delta * delta * lam, m});
                        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
                    }
                }
            }
            rep.add_pass_fail("dilation_covariance[" + name + "]", worst, 0.0,
                              cfg.tol.dilation_covariance, worst < cfg.tol.dilation_covariance,
                              "delta in {1/2, 2}");
        }
    }

    // golden transform value (alpha = 0 closed form)
    if (alpha == 0.0) {
        profiles::Profile g0 = profiles::gaussian_profile(0.0);
        GridFunction f = profiles::sample(g0, *phys);
        const double golden = std::exp(-1.0) / (4.0 * std::sqrt(M_PI));
        const cplx got = tf::forward_at(*phys, f, {2.0, 0});
        // fine-grid confirmation before trusting the frozen value
        auto fine = make_physical_grid(0.0, cfg.grid.X, cfg.grid.T, cfg.grid.nx * 3 / 2,
                                       cfg.grid.nt * 3 / 2);
        const cplx got_fine = tf::forward_at(*fine, profiles::sample(g0, *fine), {2.0, 0});
        const bool confirmed = std::abs(got_fine.real() - golden) < cfg.tol.golden_value &&
                               std::abs(got - got_fine) < 1e-9;
        rep.add_pass_fail("golden_fhat_2_0", got.real(), golden, cfg.tol.golden_value,
                          std::abs(got.real() - golden) < cfg.tol.golden_value && confirmed,
                          "fine-grid confirmed");
        double worstm = 0.0;
        for (int m = 1; m <= 10; ++m)
            worstm = std::max(worstm, std::abs(tf::forward_at(*phys, f, {2.0, m})));
        rep.add_pass_fail("golden_fhat_2_m_1_10", worstm, 0.0, cfg.tol.golden_higher_m,
                          worstm < cfg.tol.golden_higher_m);
    }

    // measures
    {
        const double cf = geometry::ball_volume(par, 1.0);
        if (alpha == 0.0)
            rep.add_pass_fail("ball_volume_closed_form", cf, 0.125, cfg.tol.ball_closed_form,
                              std::abs(cf - 0.125) < cfg.tol.ball_closed_form);
        else
            rep.add_measured("ball_volume_closed_form", cf);
        // indicator quadrature cross-check
        auto bg = build_physical_grid(alpha, 1.0, 0.5, 640, 640);
        auto ind = sample_physical(bg, [](double x, double t) {
            return cplx((x * x * x * x + 4.0 * t * t) < 1.0 ? 1.0 : 0.0, 0.0);
        });
        const double bq = integrate_physical(bg, ind).real();
        rep.add_pass_fail("ball_volume_quadrature", bq, cf, cfg.tol.ball_quadrature,
                          std::abs(bq - cf) / cf < cfg.tol.ball_quadrature);

        const double em = integrate_dual_radial(
            alpha, [](double n) { return std::exp(-n); }, 60.0, 2000, true);
        const double sub1 = gamma_sublevel(alpha, 1.0, 60.0, 4000, true);
        const double sub2 = gamma_sublevel(alpha, 2.0, 60.0, 4000, true);
        if (alpha == 0.0) {
            rep.add_pass_fail("spectral_exp_quasinorm", em, M_PI * M_PI / 16.0,
                              cfg.tol.spectral_measure,
                              std::abs(em - M_PI * M_PI / 16.0) / (M_PI * M_PI / 16.0) <
                                  cfg.tol.spectral_measure);
            rep.add_pass_fail("gamma_sublevel_1", sub1, M_PI * M_PI / 32.0,
                              cfg.tol.spectral_measure,
                              std::abs(sub1 - M_PI * M_PI / 32.0) / (M_PI * M_PI / 32.0) <
                                  cfg.tol.spectral_measure);
        } else {
            rep.add_measured("spectral_exp_quasinorm", em);
            rep.add_measured("gamma_sublevel_1", sub1);
        }
        const double scaling = sub2 / sub1;
        const double expect = std::pow(2.0, 0.5 * par.Q());
        rep.add_pass_fail("gamma_sublevel_scaling", scaling, expect, 1e-6,
                          std::abs(scaling - expect) / expect < 1e-6, "R^{Q/2} growth");
    }

    // hypergroup structure
    {
        auto rule = hyperops::build_translation_rule(alpha, 32, 128);
        profiles::Profile g = profiles::gaussian_profile(alpha);
        double idmax = 0.0;
        for (double y : {0.0, 0.7, 1.9}) {
            for (double s : {-1.1, 0.4}) {
                const cplx tv = hyperops::translate_point(rule, {0.0, 0.0}, g.value, {y, s});
                idmax = std::max(idmax, std::abs(tv - g.value(y, s)));
            }
        }
        rep.add_pass_fail("translation_identity_exact", idmax, 0.0, 0.0, idmax == 0.0,
                          "T at e bypasses quadrature");

        std::mt19937 rng(20240811);
        std::uniform_real_distribution<double> uxy(0.1, 2.5), ut(-2.0, 2.0), ul(0.25, 4.0);
        std::uniform_int_distribution<int> um(0, 12), usign(0, 1);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const double lam = ul(rng) * (usign(rng) ? 1.0 : -1.0);
            const int m = um(rng);
            const HPoint a{uxy(rng), ut(rng)}, b{uxy(rng), ut(rng)};
            auto chi = [&](double x, double t) {
                return specfun::character(par, {lam, m}, {x, t});
            };
            const cplx lhs = hyperops::translate_point(rule, a, chi, b);
            const cplx rhs = specfun::character(par, {lam, m}, a) *
                             specfun::character(par, {lam, m}, b);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1e-12, std::abs(rhs)));
        }
        rep.add_pass_fail("character_multiplicativity", worst, 0.0, cfg.tol.multiplicativity,
                          worst < cfg.tol.multiplicativity, "100 random samples");
    }

    // convolution theorem on its dedicated coarse block
    {
        auto cgrid = make_physical_grid(alpha, cfg.conv.X, cfg.conv.T, cfg.conv.nx, cfg.conv.nt);
        auto cspec = make_spectral_grid(alpha, cfg.conv.lambda_min, cfg.conv.lambda_max,
                                        cfg.conv.n_lambda, cfg.conv.m_max);
        auto rule = hyperops::build_translation_rule(alpha, cfg.conv.n_r, cfg.conv.n_theta);
        profiles::Profile f = profiles::gaussian_profile(alpha);
        profiles::Profile g = profiles::bump_profile(alpha, 4, 1.0);
        GridFunction conv = hyperops::convolve(rule, *cgrid, f.value, g.value, 1e-14);
        SpectralFunction chat = tf::forward(*cgrid, *cspec, conv);
        SpectralFunction fhat = tf::forward(*cgrid, *cspec, profiles::sample(f, *cgrid));
        SpectralFunction ghat = tf::forward(*cgrid, *cspec, profiles::sample(g, *cgrid));
        SpectralFunction diff = zero_spectral(*cspec);
        SpectralFunction prodv = zero_spectral(*cspec);
        for (size_t i = 0; i < diff.v.size(); ++i) {
            prodv.v[i] = fhat.v[i] * ghat.v[i];
            diff.v[i] = chat.v[i] - prodv.v[i];
        }
        const double relerr = std::sqrt(spectral_mass(diff, 2.0, TailMode::none)) /
                              std::sqrt(spectral_mass(prodv, 2.0, TailMode::none));
        rep.add_pass_fail("convolution_theorem", relerr, 0.0, cfg.tol.convolution,
                          relerr < cfg.tol.convolution, "gaussian * bump_4");
    }

    return rep;
}

// ---------------------------------------------------------------------------
// hp suite

EstimateReport verify_hp(const Config& cfg) {
    EstimateReport rep = new_report(cfg, "hp");
    const double alpha = cfg.alpha;
    const Params par(alpha);
    const double Q = par.Q();

    // character-derivative growth ratios (measured; the second form keeps
    // the complex character in the denominator and is never asserted)
    {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> ux(0.2, 2.0), ut(-1.5, 1.5), ul(0.4, 3.0);
        std::uniform_int_distribution<int> um(2, 24);
        double worst_abs = 0.0, worst_rel_phi = 0.0;
        for (int trial = 0; trial < 60; ++trial) {
            const DPoint d{ul(rng), um(rng)};
            const HPoint pt{ux(rng), ut(rng)};
            for (int I : {1, 2}) {
                const double nb = std::pow(geometry::homogeneous_norm(pt), 2.0 * I);
                const double dv = std::abs(specfun::character_dlambda(par, d, pt, I));
                worst_abs = std::max(worst_abs, dv / nb);
                const double phiv = std::abs(specfun::character(par, d, pt));
                if (phiv > 1e-8) worst_rel_phi = std::max(worst_rel_phi, dv / (nb * phiv));
            }
        }
        rep.add_measured("character_derivative_ratio", worst_abs,
                         "sup |d^I phi| / N(x,t)^{2I}, I in {1,2}");
        rep.add_measured("character_derivative_ratio_phi", worst_rel_phi,
                         "sup |d^I phi| / (N^{2I} |phi|); reported only");
    }

    for (double p : cfg.atoms.p_values) {
        const int smin = static_cast<int>(std::floor(Q * (1.0 / p - 1.0)));
        const int s = smin + cfg.atoms.s_extra;
        const double d = 2.0 * p / (2.0 - p);
        const double eps = std::max(static_cast<double>(s) / Q, 1.0 / p - 1.0) + 0.5;
        const std::string tag = "[p=" + dtos(p) + "]";

        SweepStat moleStat, l45Stat, paleyStat;
        std::vector<SweepStat> l44Stat(std::min(s, 2) + 1);
        double worst_moment = 0.0, worst_size = 0.0, worst_leak = 0.0, worst_pnorm = 0.0;
        bool all_valid = true, origin_monotone = true;
        double worst_slope = std::numeric_limits<double>::infinity();

        std::vector<atoms::Atom> sweep;
        for (double r : cfg.atoms.radii) sweep.push_back(build_suite_atom(cfg, p, s, r));

        for (size_t ai = 0; ai < sweep.size(); ++ai) {
            const atoms::Atom& a = sweep[ai];
            const atoms::AtomValidation v = atoms::validate_atom(a);
            all_valid = all_valid && v.pass;
            worst_moment = std::max(worst_moment, v.max_moment_rel);
            worst_size = std::max(worst_size, std::abs(v.size_ratio - 1.0));
            worst_leak = std::max(worst_leak, v.support_leakage);
            worst_pnorm = std::max(worst_pnorm, v.p_norm - 1.0);

            moleStat.feed(
                atoms::molecule_norm(*a.grid, a.values, p, a.spec.q, s, eps).molecule_norm);

            auto sg = atom_spectral_grid(cfg, a.spec.r);
            SpectralFunction F = tf::forward(*a.grid, *sg, a.values);
            const double na2 = lp_norm_physical(*a.grid, a.values, 2.0);

            // growth exponent of |fhat| in the quasi-norm
            const double expo = 0.5 * Q * (1.0 / p - 1.0);
            double sup45 = 0.0;
            for (int k = 0; k < sg->n_lambda_nodes(); ++k)
                for (int m = 0; m <= sg->m_max; ++m)
                    sup45 = std::max(sup45, std::abs(F.at(k, m)) *
                                                std::pow(sg->quasinorm(k, m), -expo));
            l45Stat.feed(sup45);

            // near-origin decay: the growth ratio at the 5 smallest |lambda|
            // nodes (m = 0) decreases toward lambda -> 0
            {
                const int half = sg->n_lambda_nodes() / 2;
                std::vector<double> ratios; // ascending lambda
                for (int k = half; k < half + 5; ++k)
                    ratios.push_back(std::abs(F.at(k, 0)) *
                                     std::pow(sg->quasinorm(k, 0), -expo));
                double scale = 0.0;
                for (double v2 : ratios) scale = std::max(scale, v2);
                const double floor2 = cfg.tol.origin_noise_floor * std::max(1.0, scale);
                for (size_t i = 1; i < ratios.size(); ++i) {
                    if (ratios[i] > floor2 && ratios[i] < ratios[i - 1] * (1.0 - 1e-10))
                        origin_monotone = false;
                }
            }

            // near-origin log-log slope of sup_m |fhat| vs N
            {
                const double nmin = sg->quasinorm(sg->n_lambda_nodes() / 2, 0);
                const int nbins = 12;
                std::vector<double> sup(nbins, 0.0);
                const double lo = std::log(nmin), hi = std::log(nmin * 100.0);
                for (int k = 0; k < sg->n_lambda_nodes(); ++k) {
                    for (int m = 0; m <= sg->m_max; ++m) {
                        const double ln = std::log(sg->quasinorm(k, m));
                        if (ln < lo || ln >= hi) continue;
                        const int b = static_cast<int>((ln - lo) / (hi - lo) * nbins);
                        sup[b] = std::max(sup[b], std::abs(F.at(k, m)));
                    }
                }
                std::vector<double> lx, ly;
                for (int b = 0; b < nbins; ++b)
                    if (sup[b] > 0.0) {
                        lx.push_back(lo + (b + 0.5) * (hi - lo) / nbins);
                        ly.push_back(std::log(sup[b]));
                    }
                worst_slope = std::min(worst_slope, lsq_slope(lx, ly));
            }

            // derivative growth metrics for orders I <= min(s, 2)
            const double a2expo = d * ((s + 1.0) / Q + 0.5) - 1.0;
            for (int I = 0; I <= std::min(s, 2); ++I) {
                SpectralFunction D = (I == 0) ? F : tf::spectral_derivative(*a.grid, *sg, a.values, I);
                double sup = 0.0;
                for (int k = 0; k < sg->n_lambda_nodes(); ++k)
                    for (int m = 0; m <= sg->m_max; ++m)
                        sup = std::max(sup, std::abs(D.at(k, m)) *
                                                std::pow(sg->quasinorm(k, m),
                                                         -0.5 * (s - 2.0 * I + 1.0)));
                l44Stat[I].feed(sup * std::pow(na2, a2expo));
                // L^{q'} norms of |D fhat|^2, q' in {1, 2, inf}
                if (ai == 0 || ai + 1 == sweep.size()) {
                    const double b1 = spectral_mass(D, 2.0, TailMode::radial);
                    const double b2 = std::sqrt(spectral_mass(D, 4.0, TailMode::radial));
                    double bi = 0.0;
                    for (const cplx& vv : D.v) bi = std::max(bi, std::norm(vv));
                    const auto ref = [&](double qprime) {
                        const double invq = 1.0 - 1.0 / qprime;
                        return std::pow(na2, 2.0 - d * (2.0 * (2.0 * I) / Q + invq));
                    };
                    rep.add_measured("derivative_sq_norm[I=" + std::to_string(I) + ",q'=1,r=" +
                                         dtos(a.spec.r) + "]" + tag,
                                     b1 / ref(1.0), "|D fhat|^2 L1 over reference");
                    rep.add_measured("derivative_sq_norm[I=" + std::to_string(I) + ",q'=2,r=" +
                                         dtos(a.spec.r) + "]" + tag,
                                     b2 / ref(2.0));
                    rep.add_measured("derivative_sq_norm[I=" + std::to_string(I) + ",q'=inf,r=" +
                                         dtos(a.spec.r) + "]" + tag,
                                     bi / std::pow(na2, 2.0 - d * (2.0 * (2.0 * I) / Q + 1.0)));
                }
            }

            // Paley integral against the proxy norm (single atom: proxy = 1)
            const double wexp = -0.5 * Q * (2.0 - p);
            const double paley = spectral_mass(F, p, TailMode::radial, [wexp](double n) {
                return std::pow(n, wexp);
            });
            paleyStat.feed(paley);
        }

        rep.add_pass_fail("atoms_validate" + tag, all_valid ? 1.0 : 0.0, 1.0, 0.0, all_valid,
                          "all radii");
        rep.add_pass_fail("atom_max_moment" + tag, worst_moment, 0.0, cfg.tol.atom_moment,
                          worst_moment < cfg.tol.atom_moment);
        rep.add_pass_fail("atom_size_ratio_dev" + tag, worst_size, 0.0, cfg.tol.atom_size,
                          worst_size < cfg.tol.atom_size);
        rep.add_pass_fail("atom_support_leak" + tag, worst_leak, 0.0, cfg.tol.atom_leak,
                          worst_leak < cfg.tol.atom_leak);
        rep.add_pass_fail("atom_p_norm_excess" + tag, worst_pnorm, 0.0, cfg.tol.atom_pnorm,
                          worst_pnorm < cfg.tol.atom_pnorm);
        rep.add_pass_fail("molecule_norm_stability" + tag, moleStat.stability(), 1.0,
                          cfg.tol.molecule_stability,
                          moleStat.finite && moleStat.stability() < cfg.tol.molecule_stability,
                          "sup/inf over radius sweep");
        rep.add_pass_fail("transform_growth_stability" + tag, l45Stat.stability(), 1.0,
                          cfg.tol.hp_ratio_stability,
                          l45Stat.finite && l45Stat.stability() < cfg.tol.hp_ratio_stability);
        rep.add_measured("transform_growth_sup" + tag, l45Stat.hi);
        for (int I = 0; I < static_cast<int>(l44Stat.size()); ++I) {
            rep.add_measured("derivative_growth_sup[I=" + std::to_string(I) + "]" + tag,
                             l44Stat[I].hi);
            rep.add_measured("derivative_growth_stability[I=" + std::to_string(I) + "]" + tag,
                             l44Stat[I].stability());
        }
        rep.add_pass_fail("origin_decay_monotone" + tag, origin_monotone ? 1.0 : 0.0, 1.0, 0.0,
                          origin_monotone, "5 smallest |lambda| nodes, m = 0");
        rep.add_pass_fail("origin_decay_slope" + tag, worst_slope,
                          0.5 * Q * (1.0 / p - 1.0), cfg.tol.origin_slope_slack,
                          worst_slope >= 0.5 * Q * (1.0 / p - 1.0) - cfg.tol.origin_slope_slack,
                          "log-log slope of sup_m |fhat| vs N near origin");
        rep.add_pass_fail("paley_stability" + tag, paleyStat.stability(), 1.0,
                          cfg.tol.paley_stability,
                          paleyStat.finite && paleyStat.stability() < cfg.tol.paley_stability,
                          "integral |fhat|^p N^{-Q(2-p)/2} dgamma vs proxy^p = 1");
        rep.add_measured("paley_value" + tag, paleyStat.hi);

        // growth bound for a finite atomic combination, and the weak-type set measures
        {
            const double rmin = *std::min_element(cfg.atoms.radii.begin(), cfg.atoms.radii.end());
            const double rmax = *std::max_element(cfg.atoms.radii.begin(), cfg.atoms.radii.end());
            auto common = make_spectral_grid(
                alpha, cfg.atoms.lambda_min_scale / (rmax * rmax),
                cfg.atoms.lambda_max_scale / (rmin * rmin), cfg.atoms.n_lambda * 2, cfg.atoms.m_max);
            SpectralFunction sum = zero_spectral(*common);
            double proxy_p = 0.0;
            for (const atoms::Atom& a : sweep) {
                SpectralFunction Fa = tf::forward(*a.grid, *common, a.values);
                for (size_t i = 0; i < sum.v.size(); ++i) sum.v[i] += Fa.v[i];
                proxy_p += 1.0;
            }
            const double proxy = std::pow(proxy_p, 1.0 / p);
            const double expo = 0.5 * Q * (1.0 / p - 1.0);
            double sup = 0.0;
            for (int k = 0; k < common->n_lambda_nodes(); ++k)
                for (int m = 0; m <= common->m_max; ++m)
                    sup = std::max(sup, std::abs(sum.at(k, m)) *
                                            std::pow(common->quasinorm(k, m), -expo));
            rep.add_measured("combination_growth_ratio" + tag, sup / proxy,
                             "sup |F(f)| N^{-(Q/2)(1/p-1)} / proxy");

            // weak type: E_beta = { N^{(Q/2)(1-2/p)} |F(f)| >= beta }
            const double wexp = 0.5 * Q * (1.0 - 2.0 / p);
            double supwt = 0.0;
            for (int bi = 0; bi < 12; ++bi) {
                const double beta = proxy * std::pow(10.0, -2.0 + 4.0 * bi / 11.0);
                double meas = 0.0;
                for (int k = 0; k < common->n_lambda_nodes(); ++k)
                    for (int m = 0; m <= common->m_max; ++m) {
                        const double n = common->quasinorm(k, m);
                        if (std::pow(n, wexp) * std::abs(sum.at(k, m)) >= beta)
                            meas += common->weight(k, m);
                    }
                supwt = std::max(supwt, meas * std::pow(beta, p) / proxy_p);
            }
            rep.add_pass_fail("weak_type_sup" + tag, supwt, 0.0, cfg.tol.weak_type_bound,
                              std::isfinite(supwt) && supwt < cfg.tol.weak_type_bound,
                              "sup over 12-point beta grid of gamma(E_beta) beta^p / proxy^p");
        }
    }

    // Pitt inequality on the gaussian (p = 3/2)
    {
        auto phys = make_physical_grid(alpha, cfg.grid.X, cfg.grid.T, cfg.grid.nx, cfg.grid.nt);
        auto spec = make_spectral_grid(alpha, cfg.grid.lambda_min, cfg.grid.lambda_max,
                                       cfg.grid.n_lambda, cfg.grid.m_max);
        rep.grid_checksum = phys->checksum ^ spec->checksum;
        GridFunction f = profiles::sample(profiles::gaussian_profile(alpha), *phys);
        SpectralFunction F = tf::forward(*phys, *spec, f);
        const double p = 1.5;
        const double wexp = -0.5 * Q * (2.0 - p);
        const double pitt = spectral_mass(F, p, TailMode::radial, [wexp](double n) {
            return std::pow(n, wexp);
        });
        const double fnorm = std::pow(lp_norm_physical(*phys, f, p), p);
        rep.add_pass_fail("pitt_integral_finite", pitt, 0.0, 0.0,
                          std::isfinite(pitt) && pitt > 0.0, "p = 3/2 on the gaussian");
        rep.add_measured("pitt_ratio", pitt / fnorm,
                         "integral / ||f||_p^p; constant has no paper value");
    }

    return rep;
}

// ---------------------------------------------------------------------------
// multiplier suite

EstimateReport verify_multiplier(const Config& cfg) {
    EstimateReport rep = new_report(cfg, "multiplier");
    const double alpha = cfg.alpha;
    const Params par(alpha);
    const double Q = par.Q();
    const auto& mc = cfg.multiplier;

    const double p = mc.atom_p;
    if (!(mc.tau > Q * (1.0 / p - 0.5)))
        throw std::invalid_argument("multiplier suite: tau must exceed Q(1/p - 1/2)");
    if (mc.tau % 2 != 0)
        rep.warnings.push_back("tau is odd; the theorem statement takes tau even");
    const int s_atom = mc.tau - 1;
    const int s_mole = static_cast<int>(std::floor(Q * (1.0 / p - 1.0)));
    const double eps = static_cast<double>(mc.tau) / Q - 0.5;

    auto shell_grid = build_spectral_grid(alpha, mc.shell_lambda_min, mc.shell_lambda_max,
                                          mc.shell_n_lambda, mc.shell_m_max);

    // atoms of the radius sweep, built once
    std::vector<atoms::Atom> sweep;
    for (double r : mc.radii) sweep.push_back(build_suite_atom(cfg, p, s_atom, r));

    for (const std::string& name : mc.names) {
        multipliers::MultiplierSpec M = multipliers::build_multiplier(alpha, name, mc.s_param);
        const std::string tag = "[" + name + "]";

        // Mihlin defects for derivative orders 2k = d(I) <= tau
        for (int k = 0; 2 * k <= std::min(mc.tau, 4); ++k) {
            auto mrep = multipliers::mihlin_defect(M, k, shell_grid);
            if (name == "fractional_IplusL" && k == 0) {
                rep.add_pass_fail("mihlin_order0" + tag, mrep.sup_defect, 1.0,
                                  cfg.tol.mihlin_constant,
                                  std::abs(mrep.sup_defect - 1.0) < cfg.tol.mihlin_constant,
                                  "|M| = 1 exactly");
            } else {
                rep.add_measured("mihlin_order" + std::to_string(k) + tag, mrep.sup_defect,
                                 "sup N^{d(I)/2} |D^I M|, d(I) = 2k; per-m table in CSV");
            }
        }
        // Hormander shells
        for (int k = 0; 2 * k <= std::min(mc.tau, 4); ++k) {
            auto hrep = multipliers::hormander_defect(M, k, mc.shells, shell_grid);
            double supnorm = 0.0;
            bool anyempty = false;
            for (const auto& row : hrep.shells) {
                supnorm = std::max(supnorm, row.normalized);
                anyempty = anyempty || row.empty;
            }
            rep.add_measured("hormander_sup_norm[k=" + std::to_string(k) + "]" + tag, supnorm,
                             "shell integral / R^{Q-d(I)}" +
                                 std::string(anyempty ? "; some shells empty" : ""));
            if (name == "constant" && k == 0) {
                const double slope_ref = 0.5 * Q; // 2.0 at alpha = 0
                rep.add_pass_fail(
                    "hormander_slope" + tag, hrep.fitted_slope, slope_ref,
                    cfg.tol.hormander_slope,
                    std::abs(hrep.fitted_slope - slope_ref) < cfg.tol.hormander_slope,
                    "measured shell growth R^{Q/2}; the Q-d(I) normalization above "
                    "does not match it and is reported, not corrected");
            } else {
                rep.add_measured("hormander_slope[k=" + std::to_string(k) + "]" + tag,
                                 hrep.fitted_slope);
            }
        }

        // molecular norms of T_M a over the radius sweep
        SweepStat tmaStat;
        double identity_ratio = std::numeric_limits<double>::quiet_NaN();
        double unimodular_worst = 0.0;
        for (const atoms::Atom& a : sweep) {
            auto sg = atom_spectral_grid(cfg, a.spec.r);
            auto big = make_physical_grid(alpha, 4.0 * a.spec.r, 8.0 * a.spec.r * a.spec.r,
                                          cfg.grid.nx, cfg.grid.nt);
            GridFunction av = sample_physical(*big, a.eval);
            GridFunction tma = multipliers::apply_multiplier(M, *big, *sg, av);
            auto mrep = atoms::molecule_norm(*big, tma, p, 2.0, s_mole, eps);
            tmaStat.feed(mrep.molecule_norm);

            if (name == "constant" && a.spec.r == 1.0) {
                // compare on the atom's support box: the 4r box weights the
                // dual-truncation reconstruction junk by N^{Qb} where the
                // atom itself contributes nothing
                GridFunction back = multipliers::apply_multiplier(M, *a.grid, *sg, a.values);
                auto num = atoms::molecule_norm(*a.grid, back, p, 2.0, s_mole, eps);
                auto den = atoms::molecule_norm(*a.grid, a.values, p, 2.0, s_mole, eps);
                identity_ratio = num.molecule_norm / den.molecule_norm;
                auto base4 = atoms::molecule_norm(*big, av, p, 2.0, s_mole, eps);
                rep.add_measured("identity_molecule_ratio_4r",
                                 mrep.molecule_norm / base4.molecule_norm,
                                 "same ratio on the 4r box; the N^{Qb} weight amplifies "
                                 "the dual-truncation junk outside the support");
            }
            if (name == "fractional_L" || name == "fractional_IplusL") {
                SpectralFunction F = tf::forward(*a.grid, *sg, a.values);
                for (int k = 0; k < sg->n_lambda_nodes(); ++k)
                    for (int m = 0; m <= sg->m_max; ++m) F.at(k, m) *= M.value(sg->lam[k], m);
                const double n_spec = std::sqrt(spectral_mass(F, 2.0, TailMode::radial));
                const double n_phys = lp_norm_physical(*a.grid, a.values, 2.0);
                unimodular_worst = std::max(unimodular_worst, std::abs(n_spec / n_phys - 1.0));
            }
            // truncation indicator: |T_M a| mass near the 4r box edge
            double edge = 0.0, total = 0.0;
            for (int i = 0; i < big->nx(); ++i)
                for (int j = 0; j < big->nt(); ++j) {
                    const double w = big->weight(i, j) * std::abs(tma.at(i, j));
                    total += w;
                    if (geometry::homogeneous_norm({big->x[i], big->t[j]}) > 3.5 * a.spec.r)
                        edge += w;
                }
            rep.add_measured("tma_edge_mass[r=" + dtos(a.spec.r) + "]" + tag,
                             total > 0.0 ? edge / total : 0.0,
                             "|T_M a| L1 mass beyond 3.5r on the 4r box");
        }
        rep.add_pass_fail("tma_molecule_finite" + tag, tmaStat.finite ? 1.0 : 0.0, 1.0, 0.0,
                          tmaStat.finite && tmaStat.hi > 0.0);
        rep.add_measured("tma_molecule_stability" + tag, tmaStat.stability(),
                         "sup/inf of molecular norms over the radius sweep");
        if (name == "constant")
            rep.add_pass_fail("identity_molecule_ratio", identity_ratio, 1.0,
                              cfg.tol.identity_molecule,
                              std::abs(identity_ratio - 1.0) < cfg.tol.identity_molecule,
                              "molecular norm of T_1 a over that of a");
        if (name == "fractional_L" || name == "fractional_IplusL")
            rep.add_pass_fail("unimodular_isometry" + tag, unimodular_worst, 0.0,
                              cfg.tol.unimodular_isometry,
                              unimodular_worst < cfg.tol.unimodular_isometry,
                              "| ||M fhat||_2 / ||a||_2 - 1 | via Plancherel with m-tail "
                              "completion");

        // vanishing-moment transfer: D^I(M fhat) at the smallest |lambda| nodes
        {
            const atoms::Atom& a = sweep.size() > 2 ? sweep[2] : sweep.front();
            auto sg = atom_spectral_grid(cfg, a.spec.r);
            const int half = sg->n_lambda_nodes() / 2;
            const int imax = static_cast<int>(std::floor(Q * (1.0 / p - 1.0))) / 2 + 1;
            bool decreasing = true;
            for (int I = 0; I <= imax; ++I) {
                std::vector<double> vals;
                for (int node = 2; node >= 0; --node) { // decreasing lambda
                    const double lam = sg->lam[half + node];
                    // Leibniz: D^I (M fhat) = sum binom D^{I'} fhat D^{I-I'} M
                    cplx acc(0.0, 0.0);
                    double binom = 1.0;
                    for (int i2 = 0; i2 <= I; ++i2) {
                        if (i2 > 0) binom = binom * (I - i2 + 1) / i2;
                        acc += binom *
                               tf::spectral_derivative_at(*a.grid, a.values, {lam, 0}, i2) *
                               M.derivative(lam, 0, I - i2);
                    }
                    vals.push_back(std::abs(acc));
                }
                for (size_t i = 1; i < vals.size(); ++i)
                    if (vals[i - 1] > 1e-9 && vals[i] > vals[i - 1] * (1.0 + 1e-9))
                        decreasing = false;
                rep.add_measured("vanishing_moment[I=" + std::to_string(I) + "]" + tag,
                                 vals.back(), "|D^I(M fhat)| at the smallest grid |lambda|");
            }
            rep.add_pass_fail("vanishing_moment_decreasing" + tag, decreasing ? 1.0 : 0.0, 1.0,
                              0.0, decreasing,
                              "|D^I(M fhat)| decreases toward lambda -> 0");
        }
    }

    rep.grid_checksum = shell_grid.checksum;
    return rep;
}

std::vector<EstimateReport> verify_all(const Config& cfg) {
    std::vector<EstimateReport> out;
    for (const std::string& s : cfg.suites) {
        if (s == "core" || s == "all") out.push_back(verify_core(cfg));
        if (s == "hp" || s == "all") out.push_back(verify_hp(cfg));
        if (s == "multiplier" || s == "all") out.push_back(verify_multiplier(cfg));
    }
    return out;
}

} // namespace lhk::harness
