// tfhx: Thomas-Fermi / Hartree-exchange energies for large atoms and 2D dots,
// plus the universal correlation constants and reference-data fits.
//
// Exit codes: 0 success, 2 validation error, 3 numerical non-convergence,
// 4 I/O error.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tfhx/atom_energy.hpp"
#include "tfhx/common.hpp"
#include "tfhx/constants.hpp"
#include "tfhx/dataset.hpp"
#include "tfhx/dot_energy.hpp"
#include "tfhx/profile_io.hpp"
#include "tfhx/report.hpp"
#include "tfhx/tf_atom.hpp"
#include "tfhx/tf_dot.hpp"

namespace {

using tfhx::format_g17;

struct Config {
    std::uint64_t seed = 1;
    double tol = 1e-8;
    std::uint64_t mc_samples = 2000000;
    std::size_t atom_grid_n = 2000;
    double atom_rmin = 1e-6;
    double atom_rmax = 1e4;
    std::size_t dot_grid_n = 1200;
    double dot_mixing = 0.3;

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw tfhx::IoError("config: cannot open " + path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                if (line.find_first_not_of(" \t\r") != std::string::npos)
                    throw std::invalid_argument("config: expected key = value at line " +
                                                std::to_string(lineno));
                continue;
            }
            auto trim = [](std::string s) {
                auto a = s.find_first_not_of(" \t\r");
                auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            std::string k = trim(line.substr(0, eq));
            std::string v = trim(line.substr(eq + 1));
            set(k, v, lineno);
        }
    }

    void set(const std::string& k, const std::string& v, std::size_t lineno) {
        try {
            if (k == "seed") seed = std::stoull(v);
            else if (k == "tol") tol = std::stod(v);
            else if (k == "mc_samples") mc_samples = std::stoull(v);
            else if (k == "atom.grid_n") atom_grid_n = std::stoul(v);
            else if (k == "atom.rmin") atom_rmin = std::stod(v);
            else if (k == "atom.rmax") atom_rmax = std::stod(v);
            else if (k == "dot.grid_n") dot_grid_n = std::stoul(v);
            else if (k == "dot.mixing") dot_mixing = std::stod(v);
            else throw std::invalid_argument("config: unknown key '" + k + "' at line " +
                                             std::to_string(lineno));
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad value for '" + k + "' at line " +
                                        std::to_string(lineno));
        }
    }

    void print() const {
        std::printf("seed = %llu\n", static_cast<unsigned long long>(seed));
        std::printf("tol = %s\n", format_g17(tol).c_str());
        std::printf("mc_samples = %llu\n", static_cast<unsigned long long>(mc_samples));
        std::printf("atom.grid_n = %zu\n", atom_grid_n);
        std::printf("atom.rmin = %s\n", format_g17(atom_rmin).c_str());
        std::printf("atom.rmax = %s\n", format_g17(atom_rmax).c_str());
        std::printf("dot.grid_n = %zu\n", dot_grid_n);
        std::printf("dot.mixing = %s\n", format_g17(dot_mixing).c_str());
    }
};

tfhx::QuadratureSpec make_spec(const Config& cfg) {
    tfhx::QuadratureSpec s;
    s.rel_tol = 1e-9;
    s.abs_tol = 1e-12;
    s.max_evals = 400000;
    s.mc_samples = cfg.mc_samples;
    s.seed = cfg.seed;
    return s;
}

tfhx::ConfinementSpec parse_potential(const std::string& text) {
    if (text == "r^2") return tfhx::ConfinementSpec::power_law(2.0);
    if (text == "r^4") return tfhx::ConfinementSpec::power_law(4.0);
    if (text.rfind("r^p:", 0) == 0) return tfhx::ConfinementSpec::power_law(std::stod(text.substr(4)));
    if (text.rfind("file:", 0) == 0) {
        std::string path = text.substr(5);
        std::ifstream in(path);
        if (!in) throw tfhx::IoError("potential: cannot open " + path);
        std::vector<double> r, v;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ss(line);
            std::string a, b;
            if (!std::getline(ss, a, ',') || !std::getline(ss, b))
                throw std::invalid_argument("potential: expected r,V at line " +
                                            std::to_string(lineno));
            r.push_back(std::stod(a));
            v.push_back(std::stod(b));
        }
        return tfhx::ConfinementSpec::tabulated(std::move(r), std::move(v), "file:" + path);
    }
    throw std::invalid_argument("potential: expected r^2 | r^4 | r^p:<p> | file:<csv>");
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::fputs(content.c_str(), stdout);
        return;
    }
    tfhx::write_text_file(out_path, content);
}

tfhx::ProfileDump atom_profile_dump(const tfhx::TFAtomSolution& sol) {
    tfhx::ProfileDump d;
    d.meta["d"] = "3";
    d.meta["q"] = format_g17(sol.q);
    d.meta["mu_global"] = format_g17(sol.mu_global);
    d.meta["residual"] = format_g17(sol.residual);
    d.meta["grid_size"] = std::to_string(sol.grid.size());
    d.r = sol.grid.nodes;
    d.mu_plus = sol.mu_plus;
    d.mu_plus_prime = sol.mu_plus_prime;
    return d;
}

tfhx::ProfileDump dot_profile_dump(const tfhx::TFDotSolution& sol) {
    tfhx::ProfileDump d;
    d.meta["d"] = "2";
    d.meta["confinement"] = sol.confinement.description;
    d.meta["mu_global"] = format_g17(sol.mu_global);
    d.meta["residual"] = format_g17(sol.residual);
    d.meta["support_radius"] = format_g17(sol.support_radius);
    d.meta["grid_size"] = std::to_string(sol.grid.size());
    d.r = sol.grid.nodes;
    d.mu_plus = sol.mu_plus;
    d.mu_plus_prime.assign(sol.grid.size(), 0.0);
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        double r = sol.grid.nodes[i];
        d.mu_plus_prime[i] = (r < sol.support_radius) ? sol.mu_spline.derivative(r) : 0.0;
    }
    return d;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thomas-Fermi / Hartree-exchange energies for atoms and quantum dots"};
    app.require_subcommand(0, 1);

    Config cfg;
    std::string config_path;
    bool show_config = false;
    std::string out_path;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_flag("--show-config", show_config, "print the resolved configuration and exit");

    // global knobs; CLI values override the config file
    std::optional<std::uint64_t> seed_opt;
    std::optional<double> tol_opt;
    app.add_option("--seed", seed_opt, "Monte Carlo master seed");
    app.add_option("--tol", tol_opt, "solver tolerance");
    app.add_option("--out", out_path, "output path (default: stdout)");

    // tf atom / tf dot
    auto* tf = app.add_subcommand("tf", "Thomas-Fermi solvers");
    auto* tf_atom_cmd = tf->add_subcommand("atom", "solve the atomic TF problem");
    double q = 1.0;
    tf_atom_cmd->add_option("--q", q, "ionization ratio N/Z in (0,1]");
    auto* tf_dot_cmd = tf->add_subcommand("dot", "solve the 2D dot TF problem");
    std::string potential = "r^2";
    tf_dot_cmd->add_option("--potential", potential, "r^2 | r^4 | r^p:<p> | file:<csv>");

    // constants
    auto* constants_cmd = app.add_subcommand("constants", "universal constants report");
    bool verify = false;
    constants_cmd->add_flag("--verify", verify, "full-budget verification run");
    constants_cmd->add_subcommand("verify", "alias of --verify")->callback([&] { verify = true; });

    // atom corr / atom hx
    auto* atom_cmd = app.add_subcommand("atom", "atomic energy pieces");
    auto* atom_corr_cmd = atom_cmd->add_subcommand("corr", "correlation breakdown");
    double corr_n = 10.0, corr_z = 10.0, x_unknown = 0.0;
    atom_corr_cmd->add_option("--n-electrons", corr_n, "electron count N");
    atom_corr_cmd->add_option("--z", corr_z, "proton count Z");
    atom_corr_cmd->add_option("--x-unknown", x_unknown, "value for the uncomputed constant x");
    auto* atom_hx_cmd = atom_cmd->add_subcommand("hx", "smooth HX expansion");
    double hx_n = 10.0;
    std::optional<double> c4, c3, c0;
    atom_hx_cmd->add_option("--n-electrons", hx_n, "electron count N");
    atom_hx_cmd->add_option("--c4", c4, "optional N^{4/3} coefficient");
    atom_hx_cmd->add_option("--c3", c3, "optional N coefficient");
    atom_hx_cmd->add_option("--c0", c0, "optional N ln N coefficient");

    // dot energy
    auto* dot_cmd = app.add_subcommand("dot", "quantum dot energies");
    auto* dot_energy_cmd = dot_cmd->add_subcommand("energy", "full smooth HX + correlation breakdown");
    std::string dot_potential = "r^2";
    double dot_n = 100.0;
    dot_energy_cmd->add_option("--potential", dot_potential, "r^2 | r^4 | r^p:<p> | file:<csv>");
    dot_energy_cmd->add_option("--n", dot_n, "electron count N");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "offset fit against reference correlation data");
    std::string fit_data;
    std::string fit_convention = "per-lnN";
    double fit_slope = 0.062;
    std::string plot_data_path;
    fit_cmd->add_option("--data", fit_data, "correlation CSV (n,label,e_corr_hartree,source)")
        ->required();
    fit_cmd->add_option("--convention", fit_convention, "per-lnN | per-lnN13");
    fit_cmd->add_option("--slope", fit_slope, "fixed theory slope");
    fit_cmd->add_option("--plot-data", plot_data_path, "write n,model,data CSV here");

    // global flags remain usable after any subcommand
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (auto* sub : a->get_subcommands({})) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);

        if (!config_path.empty()) cfg.load_file(config_path);
        if (seed_opt) cfg.seed = *seed_opt;
        if (tol_opt) cfg.tol = *tol_opt;
        if (show_config) {
            cfg.print();
            return 0;
        }

        if (tf_atom_cmd->parsed()) {
            auto grid = tfhx::RadialGrid::logarithmic(cfg.atom_rmin, cfg.atom_rmax, cfg.atom_grid_n);
            auto sol = tfhx::solve_tf_atom(q, grid, cfg.tol);
            tfhx::write_profile_csv(out_path.empty() ? "tf_atom_profile.csv" : out_path,
                                    atom_profile_dump(sol));
            auto ctx = tfhx::ScalingContext::atom(1.0, q);
            auto e = tfhx::tf_energy(sol, ctx, cfg.tol);
            std::printf("q = %s  mu = %s  residual = %s  E_tf/Z^{7/3} = %s hartree\n",
                        format_g17(q).c_str(), format_g17(sol.mu_global).c_str(),
                        format_g17(sol.residual).c_str(), format_g17(e.hartree).c_str());
            return 0;
        }
        if (tf_dot_cmd->parsed()) {
            auto conf = parse_potential(potential);
            tfhx::DotSolverOptions opts;
            opts.grid_n = cfg.dot_grid_n;
            opts.mixing = cfg.dot_mixing;
            auto sol = tfhx::solve_tf_dot_radial(conf, std::max(cfg.tol, 1e-7), opts);
            tfhx::write_profile_csv(out_path.empty() ? "tf_dot_profile.csv" : out_path,
                                    dot_profile_dump(sol));
            std::printf("potential = %s  mu = %s  R = %s  residual = %s\n",
                        conf.description.c_str(), format_g17(sol.mu_global).c_str(),
                        format_g17(sol.support_radius).c_str(),
                        format_g17(sol.residual).c_str());
            return 0;
        }
        if (constants_cmd->parsed()) {
            auto spec = make_spec(cfg);
            if (verify) spec.mc_samples = std::max<std::uint64_t>(spec.mc_samples, 20000000);
            auto reports = tfhx::all_constants(spec, verify);
            emit(out_path, tfhx::constants_to_json(reports, spec.seed).dump(2) + "\n");
            return 0;
        }
        if (atom_corr_cmd->parsed()) {
            if (corr_n != corr_z)
                throw std::invalid_argument("atom corr: the correlation chain needs N = Z");
            auto grid = tfhx::RadialGrid::logarithmic(cfg.atom_rmin, cfg.atom_rmax, cfg.atom_grid_n);
            auto sol = tfhx::solve_tf_atom(1.0, grid, cfg.tol);
            auto spec = make_spec(cfg);
            auto b = tfhx::atom_correlation(corr_n, corr_z, x_unknown, sol, spec);
            emit(out_path, tfhx::atom_correlation_to_json(b).dump(2) + "\n");
            return 0;
        }
        if (atom_hx_cmd->parsed()) {
            tfhx::AtomSmoothHX hx;
            hx.c4 = c4;
            hx.c3 = c3;
            hx.c0 = c0;
            emit(out_path, tfhx::atom_hx_to_json(hx, hx_n).dump(2) + "\n");
            return 0;
        }
        if (dot_energy_cmd->parsed()) {
            auto conf = parse_potential(dot_potential);
            auto spec = make_spec(cfg);
            auto b = tfhx::dot_total_energy(dot_n, conf, spec, std::max(cfg.tol, 1e-7));
            emit(out_path, tfhx::dot_energy_to_json(b).dump(2) + "\n");
            return 0;
        }
        if (fit_cmd->parsed()) {
            auto data = tfhx::load_correlation_csv(fit_data);
            tfhx::SlopeConvention conv;
            if (fit_convention == "per-lnN")
                conv = tfhx::SlopeConvention::per_lnN;
            else if (fit_convention == "per-lnN13")
                conv = tfhx::SlopeConvention::per_lnN13;
            else
                throw std::invalid_argument("fit: convention must be per-lnN or per-lnN13");
            auto fit = tfhx::fit_offset(data, conv, fit_slope);
            if (!plot_data_path.empty())
                tfhx::write_text_file(plot_data_path, tfhx::fit_plot_csv(fit, data));
            auto out = tfhx::fit_to_json(fit, data);
            // which reference family the offset belongs to is ambiguous, so
            // each source is also fitted on its own when it has enough rows
            for (const char* source : {"exp", "ext-hf"}) {
                tfhx::CorrelationDataset sub;
                for (const auto& r : data.records)
                    if (r.source == source) sub.records.push_back(r);
                if (sub.records.size() >= 3) {
                    auto f = tfhx::fit_offset(sub, conv, fit_slope);
                    out["by_source"][source] = {{"c_prime", f.c_prime},
                                                {"max_rel_dev_n_ge_10", f.max_rel_dev_n_ge_10},
                                                {"records", sub.records.size()}};
                }
            }
            emit(out_path, out.dump(2) + "\n");
            return 0;
        }
        std::puts(app.help().c_str());
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const tfhx::NonConvergence& e) {
        std::fprintf(stderr, "non-convergence: %s\n", e.what());
        return 3;
    } catch (const tfhx::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
