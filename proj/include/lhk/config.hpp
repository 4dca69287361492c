#pragma once

#include <string>
#include <vector>

namespace lhk::harness {

struct GridConfig {
    double X = 5.5, T = 5.5;
    int nx = 200, nt = 200;
    double lambda_min = 1e-7, lambda_max = 12.0;
    int n_lambda = 400; // panels per half-line
    int m_max = 128;
};

/// Dedicated coarse block for the convolution metric (direct hypergroup
/// convolution is quartic in the grid size).
struct ConvConfig {
    double X = 6.5, T = 6.5;
    int nx = 56, nt = 56;
    int n_r = 16, n_theta = 48;
    double lambda_min = 1e-3, lambda_max = 3.0;
    int n_lambda = 40, m_max = 32;
};

/// Atom family for the hp suite: per-radius grids scale covariantly
/// (lambda range ~ 1/r^2, box ~ r).
struct AtomConfig {
    std::vector<double> p_values = {1.0, 2.0 / 3.0};
    double q = 2.0;
    int s_extra = 0; // added to the minimal admissible s
    std::vector<double> radii = {0.25, 0.5, 1.0, 2.0, 4.0};
    int nx = 256, nt = 160;
    double lambda_min_scale = 1e-4, lambda_max_scale = 30.0; // divided by r^2
    int n_lambda = 200;
    int m_max = 128;
};

struct MultiplierConfig {
    std::vector<std::string> names = {"constant", "fractional_L", "fractional_IplusL",
                                      "radial_one_over_one_plus"};
    double s_param = 1.0;
    int tau = 4; // needs tau > Q(1/p - 1/2); the proof uses (p, 2, tau-1)-atoms
    double atom_p = 1.0;
    double atom_radius = 1.0;
    std::vector<double> radii = {0.25, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> shells = {0.25, 0.5, 1.0, 2.0, 4.0};
    double shell_lambda_min = 5e-3, shell_lambda_max = 20.0;
    int shell_n_lambda = 120, shell_m_max = 256;
};

struct ToleranceConfig {
    double plancherel_gaussian = 1e-6;
    double plancherel_bump = 1e-4;
    double riemann_lebesgue = 1e-8;
    double golden_value = 1e-5;
    double golden_higher_m = 1e-6;
    double eigenrelation = 1e-4;
    double ball_closed_form = 1e-10;
    double ball_quadrature = 1e-3;
    double spectral_measure = 1e-4;
    double multiplicativity = 1e-6;
    double convolution = 1e-3;
    double dilation_covariance = 1e-5;
    double atom_moment = 1e-10;
    double atom_size = 1e-8;
    double atom_leak = 1e-12;
    double atom_pnorm = 1e-8;
    double molecule_stability = 2.0;
    double hp_ratio_stability = 2.0;
    double paley_stability = 2.0;
    double weak_type_bound = 3.0;
    double origin_noise_floor = 1e-8;
    double origin_slope_slack = 0.1;
    double identity_molecule = 1e-3;
    double unimodular_isometry = 1e-4;
    double mihlin_constant = 1e-12;
    double hormander_slope = 0.05;
};

struct Config {
    double alpha = 0.0;
    GridConfig grid;
    ConvConfig conv;
    AtomConfig atoms;
    MultiplierConfig multiplier;
    ToleranceConfig tol;
    std::vector<std::string> profiles = {"gaussian", "bump_4"};
    std::vector<std::string> suites = {"core", "hp", "multiplier"};
    std::string out_dir = "out";
    std::string format = "json";
    std::vector<std::string> warnings; // filled by validate()

    void validate();
};

/// Parses a JSON config document; absent fields keep their defaults.
Config parse_config(const std::string& json_text);
Config load_config_file(const std::string& path);
std::string config_digest(const Config& cfg);

} // namespace lhk::harness
