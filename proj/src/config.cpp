#include "lhk/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lhk/quadrature.hpp"

namespace lhk::harness {

using nlohmann::json;

void Config::validate() {
    warnings.clear();
    if (!(alpha >= 0.0)) throw std::invalid_argument("config: alpha must be >= 0");
    if (!(grid.X > 0.0) || !(grid.T > 0.0)) throw std::invalid_argument("config: X,T must be > 0");
    if (grid.nx < 4 || grid.nt < 4) throw std::invalid_argument("config: nx,nt must be >= 4");
    if (!(grid.lambda_min > 0.0) || !(grid.lambda_max > grid.lambda_min))
        throw std::invalid_argument("config: need 0 < lambda_min < lambda_max");
    if (grid.n_lambda < 1 || grid.m_max < 0)
        throw std::invalid_argument("config: n_lambda, m_max must be positive");
    if (format != "json" && format != "csv")
        throw std::invalid_argument("config: format must be json or csv");
    for (const auto& s : suites)
        if (s != "core" && s != "hp" && s != "multiplier" && s != "all")
            throw std::invalid_argument("config: unknown suite '" + s + "'");
    // oscillation rule: e^{i lambda t} needs nt >= 8 lambda_max T / pi
    const double need = 8.0 * grid.lambda_max * grid.T / M_PI;
    if (grid.nt < need) {
        std::ostringstream os;
        os << "oscillation: nt = " << grid.nt << " below 8*lambda_max*T/pi = " << need
           << "; raise nt or lower lambda_max";
        warnings.push_back(os.str());
    }
}

namespace {

template <typename T>
void get_to(const json& j, const char* key, T& out) {
    if (j.contains(key)) j.at(key).get_to(out);
}

} // namespace

Config parse_config(const std::string& text) {
    json j = json::parse(text);
    Config c;
    get_to(j, "alpha", c.alpha);
    if (j.contains("grid")) {
        const json& g = j["grid"];
        get_to(g, "X", c.grid.X);
        get_to(g, "T", c.grid.T);
        get_to(g, "nx", c.grid.nx);
        get_to(g, "nt", c.grid.nt);
        get_to(g, "lambda_min", c.grid.lambda_min);
        get_to(g, "lambda_max", c.grid.lambda_max);
        get_to(g, "n_lambda", c.grid.n_lambda);
        get_to(g, "m_max", c.grid.m_max);
    }
    if (j.contains("conv")) {
        const json& g = j["conv"];
        get_to(g, "X", c.conv.X);
        get_to(g, "T", c.conv.T);
        get_to(g, "nx", c.conv.nx);
        get_to(g, "nt", c.conv.nt);
        get_to(g, "n_r", c.conv.n_r);
        get_to(g, "n_theta", c.conv.n_theta);
        get_to(g, "lambda_min", c.conv.lambda_min);
        get_to(g, "lambda_max", c.conv.lambda_max);
        get_to(g, "n_lambda", c.conv.n_lambda);
        get_to(g, "m_max", c.conv.m_max);
    }
    if (j.contains("atoms")) {
        const json& g = j["atoms"];
        get_to(g, "p_values", c.atoms.p_values);
        get_to(g, "q", c.atoms.q);
        get_to(g, "s_extra", c.atoms.s_extra);
        get_to(g, "radii", c.atoms.radii);
        get_to(g, "nx", c.atoms.nx);
        get_to(g, "nt", c.atoms.nt);
        get_to(g, "lambda_min_scale", c.atoms.lambda_min_scale);
        get_to(g, "lambda_max_scale", c.atoms.lambda_max_scale);
        get_to(g, "n_lambda", c.atoms.n_lambda);
        get_to(g, "m_max", c.atoms.m_max);
    }
    if (j.contains("multiplier")) {
        const json& g = j["multiplier"];
        get_to(g, "names", c.multiplier.names);
        get_to(g, "s_param", c.multiplier.s_param);
        get_to(g, "tau", c.multiplier.tau);
        get_to(g, "atom_p", c.multiplier.atom_p);
        get_to(g, "atom_radius", c.multiplier.atom_radius);
        get_to(g, "radii", c.multiplier.radii);
        get_to(g, "shells", c.multiplier.shells);
        get_to(g, "shell_lambda_min", c.multiplier.shell_lambda_min);
        get_to(g, "shell_lambda_max", c.multiplier.shell_lambda_max);
        get_to(g, "shell_n_lambda", c.multiplier.shell_n_lambda);
        get_to(g, "shell_m_max", c.multiplier.shell_m_max);
    }
    if (j.contains("tolerances")) {
        const json& g = j["tolerances"];
        get_to(g, "plancherel_gaussian", c.tol.plancherel_gaussian);
        get_to(g, "plancherel_bump", c.tol.plancherel_bump);
        get_to(g, "riemann_lebesgue", c.tol.riemann_lebesgue);
        get_to(g, "golden_value", c.tol.golden_value);
        get_to(g, "eigenrelation", c.tol.eigenrelation);
        get_to(g, "convolution", c.tol.convolution);
        get_to(g, "dilation_covariance", c.tol.dilation_covariance);
        get_to(g, "multiplicativity", c.tol.multiplicativity);
        get_to(g, "weak_type_bound", c.tol.weak_type_bound);
        get_to(g, "plancherel_bump", c.tol.plancherel_bump);
        get_to(g, "riemann_lebesgue", c.tol.riemann_lebesgue);
        get_to(g, "ball_closed_form", c.tol.ball_closed_form);
        get_to(g, "ball_quadrature", c.tol.ball_quadrature);
        get_to(g, "spectral_measure", c.tol.spectral_measure);
        get_to(g, "atom_moment", c.tol.atom_moment);
        get_to(g, "atom_size", c.tol.atom_size);
        get_to(g, "atom_leak", c.tol.atom_leak);
        get_to(g, "atom_pnorm", c.tol.atom_pnorm);
        get_to(g, "molecule_stability", c.tol.molecule_stability);
        get_to(g, "hp_ratio_stability", c.tol.hp_ratio_stability);
        get_to(g, "paley_stability", c.tol.paley_stability);
        get_to(g, "origin_noise_floor", c.tol.origin_noise_floor);
        get_to(g, "origin_slope_slack", c.tol.origin_slope_slack);
        get_to(g, "identity_molecule", c.tol.identity_molecule);
        get_to(g, "unimodular_isometry", c.tol.unimodular_isometry);
        get_to(g, "mihlin_constant", c.tol.mihlin_constant);
        get_to(g, "hormander_slope", c.tol.hormander_slope);
        get_to(g, "golden_value", c.tol.golden_value);
        get_to(g, "golden_higher_m", c.tol.golden_higher_m);
    }
    get_to(j, "profiles", c.profiles);
    get_to(j, "suites", c.suites);
    if (j.contains("output")) {
        get_to(j["output"], "dir", c.out_dir);
        get_to(j["output"], "format", c.format);
    }
    c.validate();
    return c;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_digest(const Config& c) {
    std::ostringstream os;
    os.precision(17);
    os << c.alpha << '|' << c.grid.X << ',' << c.grid.T << ',' << c.grid.nx << ',' << c.grid.nt
       << ',' << c.grid.lambda_min << ',' << c.grid.lambda_max << ',' << c.grid.n_lambda << ','
       << c.grid.m_max;
    for (const auto& p : c.profiles) os << '|' << p;
    const std::string s = os.str();
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(quad::fnv1a64(s.data(), s.size())));
    return buf;
}

} // namespace lhk::harness
