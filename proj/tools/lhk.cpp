#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lhk/atoms.hpp"
#include "lhk/hyperops.hpp"
#include "lhk/multipliers.hpp"
#include "lhk/profiles.hpp"
#include "lhk/report.hpp"
#include "lhk/suites.hpp"
#include "lhk/transform.hpp"
#include "lhk/version.hpp"

namespace fs = std::filesystem;
using namespace lhk;
using nlohmann::json;

namespace {

harness::Config load_or_default(const std::string& path) {
    if (path.empty()) {
        harness::Config c;
        c.validate();
        return c;
    }
    return harness::load_config_file(path);
}

int run_verify(const std::string& which, const std::string& cfg_path, std::string out_dir,
               std::string format) {
    harness::Config cfg = load_or_default(cfg_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!format.empty()) cfg.format = format;
    cfg.suites = {which};
    fs::create_directories(cfg.out_dir);

    for (const std::string& w : cfg.warnings) std::cerr << "warning: " << w << "\n";

    const auto reports = harness::verify_all(cfg);

    // condition tables for the catalog multipliers (cheap: analytic sampling)
    for (const auto& rep : reports) {
        if (rep.suite != "multiplier") continue;
        auto shell_grid = quad::build_spectral_grid(
            cfg.alpha, cfg.multiplier.shell_lambda_min, cfg.multiplier.shell_lambda_max,
            cfg.multiplier.shell_n_lambda, cfg.multiplier.shell_m_max);
        for (const std::string& name : cfg.multiplier.names) {
            auto M = multipliers::build_multiplier(cfg.alpha, name, cfg.multiplier.s_param);
            for (int k = 0; 2 * k <= std::min(cfg.multiplier.tau, 4); ++k) {
                auto mih = multipliers::mihlin_defect(M, k, shell_grid);
                auto hor = multipliers::hormander_defect(M, k, cfg.multiplier.shells, shell_grid);
                const std::string base =
                    cfg.out_dir + "/condition_" + name + "_k" + std::to_string(k);
                if (cfg.format == "csv") {
                    harness::write_text_file(base + "_mihlin.csv",
                                             multipliers::condition_to_csv(mih));
                    harness::write_text_file(base + "_hormander.csv",
                                             multipliers::condition_to_csv(hor));
                } else {
                    harness::write_text_file(base + "_mihlin.json",
                                             multipliers::condition_to_json(mih));
                    harness::write_text_file(base + "_hormander.json",
                                             multipliers::condition_to_json(hor));
                }
            }
        }
    }

    bool ok = true;
    for (const auto& rep : reports) {
        const std::string ext = cfg.format == "csv" ? ".csv" : ".json";
        const std::string path = cfg.out_dir + "/report_" + rep.suite + ext;
        harness::emit_report(rep, cfg.format, path);
        for (const auto& m : rep.metrics) {
            if (m.status == "fail") {
                std::cout << rep.suite << ": FAIL " << m.name << " = " << harness::fmt17(m.value)
                          << "\n";
                ok = false;
            }
        }
        std::cout << rep.suite << ": " << (rep.all_pass() ? "all toleranced metrics pass"
                                                          : "failures present")
                  << " (" << rep.metrics.size() << " metrics) -> " << path << "\n";
    }
    return ok ? 0 : 1;
}

int run_atom_make(const std::string& cfg_path, std::string out_dir) {
    harness::Config cfg = load_or_default(cfg_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    fs::create_directories(cfg.out_dir);
    const double Q = 2.0 * cfg.alpha + 4.0;
    for (double p : cfg.atoms.p_values) {
        const int s =
            static_cast<int>(std::floor(Q * (1.0 / p - 1.0))) + cfg.atoms.s_extra;
        for (double r : cfg.atoms.radii) {
            atoms::Atom a = harness::build_suite_atom(cfg, p, s, r);
            std::ostringstream base;
            base << cfg.out_dir << "/atom_p" << p << "_r" << r;
            harness::write_text_file(base.str() + ".csv", harness::grid_to_csv(a.values));
            json meta;
            meta["alpha"] = cfg.alpha;
            meta["p"] = a.spec.p;
            meta["q"] = a.spec.q;
            meta["s"] = a.spec.s;
            meta["r"] = a.spec.r;
            meta["nx"] = a.grid->nx();
            meta["nt"] = a.grid->nt();
            meta["q_norm"] = a.q_norm;
            meta["size_ratio"] = a.size_ratio;
            meta["p_norm"] = a.p_norm;
            meta["max_moment_rel"] = a.max_moment_rel;
            meta["gram_cond"] = a.gram_cond;
            meta["exceptional"] = a.exceptional;
            harness::write_text_file(base.str() + ".json", meta.dump(2) + "\n");
            std::cout << "wrote " << base.str() << ".csv (+.json)\n";
        }
    }
    return 0;
}

int run_atom_validate(const std::string& csv_path, const std::string& meta_path) {
    std::ifstream meta_in(meta_path);
    if (!meta_in) {
        std::cerr << "cannot open sidecar: " << meta_path << "\n";
        return 2;
    }
    json meta = json::parse(meta_in);
    const double alpha = meta.at("alpha");
    atoms::AtomSpec spec{meta.at("p"), meta.at("q"), meta.at("s"), meta.at("r")};
    const int nx = meta.at("nx"), nt = meta.at("nt");

    auto grid = quad::make_physical_grid(alpha, spec.r, 0.5 * spec.r * spec.r, nx, nt);
    std::ifstream in(csv_path);
    if (!in) {
        std::cerr << "cannot open atom csv: " << csv_path << "\n";
        return 2;
    }
    std::string line;
    std::getline(in, line); // header
    quad::GridFunction vals = quad::zero_function(*grid);
    size_t idx = 0;
    while (std::getline(in, line) && idx < vals.v.size()) {
        double x, t, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &t, &re, &im) == 4)
            vals.v[idx++] = cplx(re, im);
    }
    if (idx != vals.v.size()) {
        std::cerr << "atom csv does not match the sidecar grid (" << idx << " of "
                  << vals.v.size() << " values)\n";
        return 2;
    }
    auto ev = hyperops::evaluator_from_grid(*grid, vals);
    atoms::Atom a = atoms::atom_from_function(ev, spec, alpha, nx, nt);
    atoms::AtomValidation v = atoms::validate_atom(a);
    // an interpolated atom cannot hit the analytic floors; these are the
    // cubic-interpolation roundtrip tolerances
    const double interp_moment_tol = 1e-4;
    const bool pass = v.support_leakage < 1e-6 && v.size_ratio <= 1.0 + 1e-4 &&
                      v.max_moment_rel < interp_moment_tol;
    std::cout << "support_leakage = " << harness::fmt17(v.support_leakage) << "\n"
              << "size_ratio      = " << harness::fmt17(v.size_ratio) << "\n"
              << "max_moment_rel  = " << harness::fmt17(v.max_moment_rel)
              << "  (interpolated-data tolerance " << interp_moment_tol << ")\n"
              << "p_norm          = " << harness::fmt17(v.p_norm) << "\n"
              << "exceptional     = " << (v.exceptional ? "yes" : "no") << "\n"
              << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int run_transform(const std::string& profile, const std::string& cfg_path,
                  const std::string& out_path) {
    harness::Config cfg = load_or_default(cfg_path);
    auto phys = quad::make_physical_grid(cfg.alpha, cfg.grid.X, cfg.grid.T, cfg.grid.nx,
                                         cfg.grid.nt);
    auto spec = quad::make_spectral_grid(cfg.alpha, cfg.grid.lambda_min, cfg.grid.lambda_max,
                                         cfg.grid.n_lambda, cfg.grid.m_max);
    auto prof = profiles::make_profile(cfg.alpha, profile);
    auto F = transform::forward(*phys, *spec, profiles::sample(prof, *phys));
    harness::write_text_file(out_path, harness::spectral_to_csv(F));
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_multiplier_apply(const std::string& name, const std::string& params_json,
                         const std::string& cfg_path, const std::string& profile,
                         std::string out_dir) {
    harness::Config cfg = load_or_default(cfg_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    fs::create_directories(cfg.out_dir);
    double s = cfg.multiplier.s_param;
    if (!params_json.empty()) {
        json pj = json::parse(params_json);
        if (pj.contains("s")) s = pj["s"];
    }
    auto M = multipliers::build_multiplier(cfg.alpha, name, s);
    auto phys = quad::make_physical_grid(cfg.alpha, cfg.grid.X, cfg.grid.T, cfg.grid.nx,
                                         cfg.grid.nt);
    auto spec = quad::make_spectral_grid(cfg.alpha, cfg.grid.lambda_min, cfg.grid.lambda_max,
                                         cfg.grid.n_lambda, cfg.grid.m_max);
    auto prof = profiles::make_profile(cfg.alpha, profile);
    auto f = profiles::sample(prof, *phys);
    auto out = multipliers::apply_multiplier(M, *phys, *spec, f);
    const std::string path = cfg.out_dir + "/tm_" + name + "_" + profile + ".csv";
    harness::write_text_file(path, harness::grid_to_csv(out));
    const double rin = quad::lp_norm_physical(*phys, f, 2.0);
    const double rout = quad::lp_norm_physical(*phys, out, 2.0);
    std::cout << "wrote " << path << "\n"
              << "L2 in = " << harness::fmt17(rin) << ", L2 out = " << harness::fmt17(rout)
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    harness::apply_thread_cap();
    CLI::App app{"Fourier-Laguerre analysis on the Laguerre hypergroup: transforms, atoms, "
                 "multipliers and the estimate-verification suites"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string cfg_path, out_dir, format, which, profile = "gaussian";
    std::string atom_csv, atom_meta, mult_name, mult_params, out_path = "fhat.csv";

    CLI::App* verify = app.add_subcommand("verify", "run estimate-verification suites");
    verify->add_option("suite", which, "core|hp|multiplier|all")->required();
    verify->add_option("--config", cfg_path, "JSON config path");
    verify->add_option("--out", out_dir, "output directory");
    verify->add_option("--format", format, "json|csv");

    CLI::App* atom = app.add_subcommand("atom", "build or validate atoms");
    CLI::App* amake = atom->add_subcommand("make", "build the configured atom family");
    amake->add_option("--config", cfg_path, "JSON config path");
    amake->add_option("--out", out_dir, "output directory");
    CLI::App* avalid = atom->add_subcommand("validate", "validate an atom CSV + sidecar");
    avalid->add_option("--atom", atom_csv, "atom CSV path")->required();
    avalid->add_option("--meta", atom_meta, "sidecar JSON path")->required();

    CLI::App* trans = app.add_subcommand("transform", "forward transform of a catalog profile");
    trans->add_option("--profile", profile, "catalog profile name");
    trans->add_option("--config", cfg_path, "JSON config path");
    trans->add_option("--out", out_path, "output CSV path");

    CLI::App* mult = app.add_subcommand("multiplier", "multiplier operations");
    CLI::App* mapply = mult->add_subcommand("apply", "apply T_M to a profile");
    mapply->add_option("--name", mult_name, "multiplier catalog name")->required();
    mapply->add_option("--params", mult_params, "JSON parameters, e.g. {\"s\":2.0}");
    mapply->add_option("--config", cfg_path, "JSON config path");
    mapply->add_option("--profile", profile, "catalog profile name");
    mapply->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            if (which != "core" && which != "hp" && which != "multiplier" && which != "all") {
                std::cerr << "unknown suite '" << which << "'\n";
                return 2;
            }
            return run_verify(which, cfg_path, out_dir, format);
        }
        if (atom->parsed()) {
            if (amake->parsed()) return run_atom_make(cfg_path, out_dir);
            if (avalid->parsed()) return run_atom_validate(atom_csv, atom_meta);
        }
        if (trans->parsed()) return run_transform(profile, cfg_path, out_path);
        if (mult->parsed() && mapply->parsed())
            return run_multiplier_apply(mult_name, mult_params, cfg_path, profile, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "no subcommand action taken\n";
    return 2;
}
