#include "lhk/multipliers.hpp"

#include <algorithm>
#include <cmath>

#include "lhk/geometry.hpp"

namespace lhk::multipliers {

namespace {

double cm_of(double alpha, int m) { return 4.0 * (m + 0.5 * (alpha + 1.0)); }

// prod_{j=0}^{k-1} (is - j)
cplx falling_is(double s, int k) {
    cplx acc(1.0, 0.0);
    for (int j = 0; j < k; ++j) acc *= cplx(-static_cast<double>(j), s);
    return acc;
}

// Radial chain rule: d^k/dlambda^k f(c_m |lambda|) = f^(k)(N) (c_m sigma)^k
MultiplierSpec radial_from(double alpha, std::string name,
                           std::function<cplx(double)> f,
                           std::function<cplx(double, int)> fk, int max_order) {
    MultiplierSpec M;
    M.name = std::move(name);
    M.alpha = alpha;
    M.max_analytic_order = max_order;
    M.value = [alpha, f](double lambda, int m) { return f(cm_of(alpha, m) * std::abs(lambda)); };
    M.deriv = [alpha, fk](double lambda, int m, int k) {
        const double cm = cm_of(alpha, m);
        const double sig = lambda > 0.0 ? 1.0 : -1.0;
        return fk(cm * std::abs(lambda), k) * std::pow(cm * sig, k);
    };
    return M;
}

} // namespace

cplx MultiplierSpec::derivative(double lambda, int m, int k) const {
    if (k == 0) return value(lambda, m);
    if (deriv && k <= max_analytic_order) return deriv(lambda, m, k);
    if (!fd_fallback)
        throw std::invalid_argument("multiplier '" + name + "': derivative order " +
                                    std::to_string(k) + " unavailable");
    if (k > 4)
        throw std::invalid_argument("multiplier '" + name +
                                    "': finite-difference fallback capped at order 4");
    const double h = 1e-3 * std::abs(lambda);
    auto g = [&](double l) { return value(l, m); };
    switch (k) {
        case 1: return (-g(lambda + 2 * h) + 8.0 * g(lambda + h) - 8.0 * g(lambda - h) + g(lambda - 2 * h)) / (12.0 * h);
        case 2: return (-g(lambda + 2 * h) + 16.0 * g(lambda + h) - 30.0 * g(lambda) + 16.0 * g(lambda - h) - g(lambda - 2 * h)) / (12.0 * h * h);
        case 3: return (g(lambda + 2 * h) - 2.0 * g(lambda + h) + 2.0 * g(lambda - h) - g(lambda - 2 * h)) / (2.0 * h * h * h);
        default: return (g(lambda + 2 * h) - 4.0 * g(lambda + h) + 6.0 * g(lambda) - 4.0 * g(lambda - h) + g(lambda - 2 * h)) / (h * h * h * h);
    }
}

MultiplierSpec build_multiplier(double alpha, const std::string& kind, double s) {
    if (kind == "constant") {
        MultiplierSpec M;
        M.name = "constant";
        M.alpha = alpha;
        M.max_analytic_order = 8;
        M.value = [s](double, int) { return cplx(s, 0.0); };
        M.deriv = [](double, int, int) { return cplx(0.0, 0.0); };
        return M;
    }
    if (kind == "fractional_L") {
        // N^{is} = e^{is ln N}
        auto f = [s](double r) { return std::polar(1.0, s * std::log(r)); };
        auto fk = [s](double r, int k) {
            return falling_is(s, k) * std::polar(std::pow(r, -k), s * std::log(r));
        };
        return radial_from(alpha, "fractional_L", f, fk, 8);
    }
    if (kind == "fractional_IplusL") {
        auto f = [s](double r) { return std::polar(1.0, s * std::log1p(r)); };
        auto fk = [s](double r, int k) {
            return falling_is(s, k) * std::polar(std::pow(1.0 + r, -k), s * std::log1p(r));
        };
        return radial_from(alpha, "fractional_IplusL", f, fk, 8);
    }
    if (kind == "radial_one_over_one_plus") {
        auto f = [](double r) { return cplx(1.0 / (1.0 + r), 0.0); };
        auto fk = [](double r, int k) {
            double fact = 1.0;
            for (int j = 2; j <= k; ++j) fact *= j;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            return cplx(sign * fact * std::pow(1.0 + r, -k - 1.0), 0.0);
        };
        return radial_from(alpha, "radial_one_over_one_plus", f, fk, 8);
    }
    if (kind == "radial_f_of_N") // catalog instance: f(r) = 1/(1+r)
        return build_multiplier(alpha, "radial_one_over_one_plus", s);
    if (kind == "laplace_one")
        return laplace_multiplier(alpha, "laplace_one", [](double) { return 1.0; });
    if (kind == "laplace_exp" || kind == "laplace_of_phi") // catalog instance: phi = e^{-u}
        return laplace_multiplier(alpha, "laplace_exp", [](double u) { return std::exp(-u); });
    throw std::invalid_argument("build_multiplier: unknown kind '" + kind + "'");
}

MultiplierSpec radial_multiplier(double alpha, const std::string& name,
                                 const std::function<double(double)>& f,
                                 const std::vector<std::function<double(double)>>& df) {
    auto fv = [f](double r) { return cplx(f(r), 0.0); };
    auto fk = [df, name](double r, int k) {
        if (k < 1 || k > static_cast<int>(df.size()))
            throw std::invalid_argument("radial multiplier '" + name + "': derivative order " +
                                        std::to_string(k) + " not registered");
        return cplx(df[k - 1](r), 0.0);
    };
    return radial_from(alpha, name, fv, fk, static_cast<int>(df.size()));
}

MultiplierSpec laplace_multiplier(double alpha, const std::string& name,
                                  const std::function<double(double)>& phi) {
    // f^(k)(r) = int_0^inf (-u)^k e^{-r u} phi(u) du over the e^{-ru} decay span
    auto fk_real = [phi](double r, int k) {
        static const quad::GaussRule gl = quad::gauss_legendre(16);
        const double span = 45.0 / r; // e^{-45} below double noise for bounded phi
        const int panels = 16;
        double acc = 0.0;
        for (int j = 0; j < panels; ++j) {
            const double lo = span * j / panels, hi = span * (j + 1) / panels;
            const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
            for (size_t i = 0; i < gl.x.size(); ++i) {
                const double u = c + h * gl.x[i];
                double t = std::exp(-r * u) * phi(u);
                for (int q = 0; q < k; ++q) t *= -u;
                acc += h * gl.w[i] * t;
            }
        }
        return acc;
    };
    auto f = [fk_real](double r) { return cplx(fk_real(r, 0), 0.0); };
    auto fk = [fk_real](double r, int k) { return cplx(fk_real(r, k), 0.0); };
    return radial_from(alpha, name, f, fk, 8);
}

SpectralFunction sample_multiplier(const MultiplierSpec& M, const SpectralGrid& g) {
    SpectralFunction F = quad::zero_spectral(g);
    for (int k = 0; k < g.n_lambda_nodes(); ++k)
        for (int m = 0; m <= g.m_max; ++m) F.at(k, m) = M.value(g.lam[k], m);
    return F;
}

SpectralFunction sample_derivative(const MultiplierSpec& M, const SpectralGrid& g, int k) {
    SpectralFunction F = quad::zero_spectral(g);
    for (int kk = 0; kk < g.n_lambda_nodes(); ++kk)
        for (int m = 0; m <= g.m_max; ++m) F.at(kk, m) = M.derivative(g.lam[kk], m, k);
    return F;
}

GridFunction apply_multiplier(const MultiplierSpec& M, const PhysicalGrid& phys,
                              const SpectralGrid& spec, const GridFunction& f) {
    SpectralFunction F = transform::forward(phys, spec, f);
    for (int k = 0; k < spec.n_lambda_nodes(); ++k)
        for (int m = 0; m <= spec.m_max; ++m) F.at(k, m) *= M.value(spec.lam[k], m);
    return transform::inverse(spec, phys, F);
}

namespace {

std::string f17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string condition_to_json(const ConditionReport& rep) {
    std::string o = "{\n";
    o += "  \"condition\": \"" + rep.condition + "\",\n";
    o += "  \"multiplier\": \"" + rep.multiplier + "\",\n";
    o += "  \"order\": " + std::to_string(rep.order) + ",\n";
    o += "  \"dI\": " + std::to_string(rep.dI) + ",\n";
    o += "  \"sup_defect\": " + f17(rep.sup_defect) + ",\n";
    o += "  \"fitted_slope\": " + f17(rep.fitted_slope) + ",\n";
    o += "  \"normalization_exponent\": " + f17(rep.normalization_exponent) + ",\n";
    o += "  \"per_m_sup\": [";
    for (size_t i = 0; i < rep.per_m_sup.size(); ++i) {
        if (i) o += ", ";
        o += f17(rep.per_m_sup[i]);
    }
    o += "],\n  \"shells\": [\n";
    for (size_t i = 0; i < rep.shells.size(); ++i) {
        const ShellRow& r = rep.shells[i];
        o += "    {\"R\": " + f17(r.R) + ", \"integral\": " + f17(r.integral) +
             ", \"normalized\": " + f17(r.normalized) + ", \"coverage\": " + f17(r.coverage) +
             ", \"empty\": " + (r.empty ? "true" : "false") + "}";
        if (i + 1 < rep.shells.size()) o += ",";
        o += "\n";
    }
    o += "  ]\n}\n";
    return o;
}

std::string condition_to_csv(const ConditionReport& rep) {
    std::string o;
    if (rep.condition == "hormander") {
        o = "R,integral,normalized,coverage,empty\n";
        for (const ShellRow& r : rep.shells)
            o += f17(r.R) + "," + f17(r.integral) + "," + f17(r.normalized) + "," +
                 f17(r.coverage) + "," + (r.empty ? "1" : "0") + "\n";
    } else {
        o = "m,sup_defect\n";
        for (size_t m = 0; m < rep.per_m_sup.size(); ++m)
            o += std::to_string(m) + "," + f17(rep.per_m_sup[m]) + "\n";
    }
    return o;
}

ConditionReport mihlin_defect(const MultiplierSpec& M, int order, const SpectralGrid& g) {
    ConditionReport rep;
    rep.condition = "mihlin";
    rep.multiplier = M.name;
    rep.order = order;
    rep.dI = 2 * order;
    rep.per_m_sup.assign(g.m_max + 1, 0.0);
    for (int k = 0; k < g.n_lambda_nodes(); ++k) {
        for (int m = 0; m <= g.m_max; ++m) {
            const double n = g.quasinorm(k, m);
            const double d = std::pow(n, 0.5 * rep.dI) * std::abs(M.derivative(g.lam[k], m, order));
            rep.per_m_sup[m] = std::max(rep.per_m_sup[m], d);
        }
    }
    rep.sup_defect = *std::max_element(rep.per_m_sup.begin(), rep.per_m_sup.end());
    return rep;
}

ConditionReport hormander_defect(const MultiplierSpec& M, int order, const std::vector<double>& Rs,
                                 const SpectralGrid& g, double exponent_override) {
    ConditionReport rep;
    rep.condition = "hormander";
    rep.multiplier = M.name;
    rep.order = order;
    rep.dI = 2 * order;
    const double Q = 2.0 * g.alpha + 4.0;
    rep.normalization_exponent =
        std::isnan(exponent_override) ? Q - rep.dI : exponent_override;

    static const quad::GaussRule gl = quad::gauss_legendre(16);
    std::vector<double> Rsorted = Rs;
    std::sort(Rsorted.begin(), Rsorted.end());
    for (double R : Rsorted) {
        ShellRow row;
        row.R = R;
        double acc = 0.0;
        bool any = false;
        for (int m = 0; m <= g.m_max; ++m) {
            const double cm = cm_of(g.alpha, m);
            const double a = std::max(R / (2.0 * cm), g.lambda_min);
            const double b = std::min(R / cm, g.lambda_max);
            if (!(b > a)) continue;
            any = true;
            const double c = 0.5 * (b + a), h = 0.5 * (b - a);
            double seg = 0.0;
            for (size_t i = 0; i < gl.x.size(); ++i) {
                const double l = c + h * gl.x[i];
                const double wpow = std::pow(l, g.alpha + 1.0);
                const double dp = std::norm(M.derivative(l, m, order));
                const double dn = std::norm(M.derivative(-l, m, order));
                seg += h * gl.w[i] * wpow * (dp + dn);
            }
            acc += g.Lm0[m] * seg;
        }
        row.integral = acc;
        row.empty = !any;
        row.normalized = acc / std::pow(R, rep.normalization_exponent);
        // coverage: measure of the covered shell over the full shell measure
        const double full = quad::gamma_sublevel(g.alpha, R, 1e9, 4096, true) -
                            quad::gamma_sublevel(g.alpha, 0.5 * R, 1e9, 4096, true);
        double covered = 0.0;
        for (int m = 0; m <= g.m_max; ++m) {
            const double cm = cm_of(g.alpha, m);
            const double a = std::max(R / (2.0 * cm), g.lambda_min);
            const double b = std::min(R / cm, g.lambda_max);
            if (!(b > a)) continue;
            covered += g.Lm0[m] * 2.0 *
                       (std::pow(b, g.alpha + 2.0) - std::pow(a, g.alpha + 2.0)) / (g.alpha + 2.0);
        }
        row.coverage = full > 0.0 ? covered / full : 0.0;
        rep.shells.push_back(row);
    }
    // slope of log(integral) vs log(R) on well-covered, nonzero shells
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const ShellRow& row : rep.shells) {
        if (row.empty || !(row.integral > 0.0) || row.coverage < 0.95) continue;
        const double lx = std::log(row.R), ly = std::log(row.integral);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    rep.fitted_slope = (n >= 2) ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    return rep;
}

} // namespace lhk::multipliers
