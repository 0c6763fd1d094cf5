// Command-line front end: parameter validation, coefficient tables,
// photon-number distributions, moment/g2 sweeps, eigenstate cross-checks,
// and pump/process planning. Every run is driven by one JSON config file
// and emits deterministic CSV/JSON artifacts.
//
// Exit codes: 0 success, 1 computational failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hempss/canonical.hpp"
#include "hempss/fock.hpp"
#include "hempss/hamiltonian.hpp"
#include "hempss/oracle.hpp"
#include "hempss/processes.hpp"
#include "hempss/serialize.hpp"
#include "hempss/states.hpp"
#include "hempss/statistics.hpp"
#include "json.hpp"

namespace {

using hempss::cd;
using nlohmann::json;

constexpr int kExitSuccess = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

// Thrown for malformed configs; mapped to the usage exit code.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;      // 0 = leave config value
    double tol = 0.0;     // 0 = leave config value
    bool json_output = false;
};

json load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw usage_error("config file is empty: " + path);
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw usage_error("config is not valid JSON: " + std::string(e.what()));
    }
}

cd parse_complex(const json& j, const char* what) {
    if (j.is_number()) return cd(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2) return cd(j[0].get<double>(), j[1].get<double>());
    throw usage_error(std::string(what) + " must be a number or [re, im]");
}

hempss::CanonicalParams params_from_config(const json& config) {
    if (!config.contains("params")) throw usage_error("config is missing \"params\"");
    return hempss::params_from_json(config.at("params"));
}

hempss::QuadratureConfig quadrature_from_config(const json& config, const CommonOptions& opt) {
    hempss::QuadratureConfig q;
    if (config.contains("quadrature")) {
        const json& jq = config.at("quadrature");
        if (jq.contains("points_per_axis")) q.points_per_axis = jq.at("points_per_axis").get<int>();
        if (jq.contains("half_extent")) q.half_extent = jq.at("half_extent").get<double>();
        if (jq.contains("threads")) q.threads = jq.at("threads").get<int>();
        if (jq.contains("convergence_rel_tol"))
            q.convergence_rel_tol = jq.at("convergence_rel_tol").get<double>();
        if (jq.contains("rule")) {
            const std::string rule = jq.at("rule").get<std::string>();
            if (rule == "gauss") {
                q.rule = hempss::QuadratureRule::GaussLegendre;
            } else if (rule == "trapezoid") {
                q.rule = hempss::QuadratureRule::Trapezoid;
            } else {
                throw usage_error("quadrature rule must be \"gauss\" or \"trapezoid\"");
            }
        }
    }
    if (opt.threads > 0) q.threads = opt.threads;
    if (opt.tol > 0.0) q.convergence_rel_tol = opt.tol;
    q.check();
    return q;
}

std::filesystem::path resolve_out(const CommonOptions& opt, const std::string& filename) {
    std::filesystem::create_directories(opt.out_dir);
    return std::filesystem::path(opt.out_dir) / filename;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing output file: " + path.string());
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

std::string sanitize_csv_field(std::string text) {
    std::replace(text.begin(), text.end(), ',', ';');
    std::replace(text.begin(), text.end(), '\n', ' ');
    std::replace(text.begin(), text.end(), '\r', ' ');
    return text;
}

std::string param_csv_header() {
    return "r,phi,gamma_mod,chi_mod,delta1,delta2,theta1,theta2,"
           "re_beta1,im_beta1,re_beta2,im_beta2";
}

std::string param_csv_row(const hempss::CanonicalParams& p, cd beta1, cd beta2) {
    using hempss::format_sig12;
    std::string row;
    for (double v : {p.r, p.phi, p.gamma_mod, p.chi_mod, p.delta1, p.delta2, p.theta1, p.theta2,
                     beta1.real(), beta1.imag(), beta2.real(), beta2.imag()}) {
        if (!row.empty()) row += ',';
        row += format_sig12(v);
    }
    return row;
}

std::string branch_name(std::optional<hempss::CanonicalBranch> branch) {
    if (!branch.has_value()) return "none";
    return *branch == hempss::CanonicalBranch::DeltaZero_ThetaPi ? "DeltaZero_ThetaPi"
                                                                 : "DeltaPi_ThetaZero";
}

// Shared setup for the distribution commands.
struct PndRun {
    hempss::CanonicalParams params;
    cd beta1;
    cd beta2;
    int n_max;
    hempss::QuadratureConfig quadrature;
    hempss::PNDGrid grid;
};

PndRun run_pnd(const json& config, const CommonOptions& opt) {
    PndRun run{params_from_config(config),
               parse_complex(config.value("beta1", json(0.0)), "beta1"),
               parse_complex(config.value("beta2", json(0.0)), "beta2"),
               0,
               quadrature_from_config(config, opt),
               {}};
    run.n_max = config.contains("n_max")
                    ? config.at("n_max").get<int>()
                    : hempss::cutoff_heuristic(run.params, run.beta1, run.beta2);
    const hempss::WaveParams w = hempss::normalize(
        hempss::wave_params(run.params, run.beta1, run.beta2), run.quadrature);
    run.grid = hempss::pnd(w, run.params, run.n_max, run.quadrature);
    return run;
}

// --- subcommand handlers ----------------------------------------------------

int cmd_validate(const json& config, const CommonOptions& opt) {
    const auto p = params_from_config(config);
    const double tol = opt.tol > 0.0 ? opt.tol : config.value("tolerance", 1e-9);
    const auto report = hempss::validate(p, tol);
    if (opt.json_output) {
        json j{{"pass", report.pass},
               {"branch", branch_name(report.branch)},
               {"linear_residual", report.linear_residual},
               {"amplitude_residual", report.amplitude_residual},
               {"constraint_residual", report.constraint_residual},
               {"imaginary_residual", report.imaginary_residual}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "canonical: " << (report.pass ? "yes" : "no") << "\n"
                  << "branch: " << branch_name(report.branch) << "\n"
                  << "linear_residual: " << hempss::format_sig12(report.linear_residual) << "\n"
                  << "amplitude_residual: " << hempss::format_sig12(report.amplitude_residual)
                  << "\n"
                  << "constraint_residual: " << hempss::format_sig12(report.constraint_residual)
                  << "\n"
                  << "imaginary_residual: " << hempss::format_sig12(report.imaginary_residual)
                  << "\n";
    }
    return report.pass ? kExitSuccess : kExitComputation;
}

int cmd_coeffs(const json& config, const CommonOptions& opt) {
    const auto p = params_from_config(config);
    const auto coeffs = hempss::generic_coefficients(p);
    const json j = hempss::coefficients_to_json(coeffs);
    const auto path = resolve_out(opt, "coeffs.json");
    write_json_file(path, j);
    std::cout << "wrote " << path.string() << "\n";
    return kExitSuccess;
}

int cmd_pnd(const json& config, const CommonOptions& opt) {
    const PndRun run = run_pnd(config, opt);
    const auto path = resolve_out(opt, "pnd.csv");
    write_text_file(path, hempss::pnd_to_csv(run.grid));
    std::cout << "wrote " << path.string() << " (n_max " << run.grid.n_max << ", mass "
              << hempss::format_sig12(run.grid.total_mass) << ")\n";
    return kExitSuccess;
}

int cmd_moments(const json& config, const CommonOptions& opt) {
    const PndRun run = run_pnd(config, opt);
    const auto m = hempss::moments(run.grid);
    std::string csv = param_csv_header() + ",mean_n1,mean_n2,mean_n1n2,g2\n";
    csv += param_csv_row(run.params, run.beta1, run.beta2);
    for (double v : {m.mean_n1, m.mean_n2, m.mean_n1n2, m.g2_cross}) {
        csv += ',';
        csv += hempss::format_sig12(v);
    }
    csv += '\n';
    const auto path = resolve_out(opt, "moments.csv");
    write_text_file(path, csv);
    std::cout << "wrote " << path.string() << "\n";
    return kExitSuccess;
}

int cmd_g2(const json& config, const CommonOptions& opt) {
    const PndRun run = run_pnd(config, opt);
    const auto m = hempss::moments(run.grid);
    std::string csv = param_csv_header() + ",g2\n";
    csv += param_csv_row(run.params, run.beta1, run.beta2);
    csv += ',';
    csv += hempss::format_sig12(m.g2_cross);
    csv += '\n';
    const auto path = resolve_out(opt, "g2.csv");
    write_text_file(path, csv);
    std::cout << "g2 " << hempss::format_sig12(m.g2_cross) << "\n";
    return kExitSuccess;
}

int cmd_sweep_gamma(const json& config, const CommonOptions& opt) {
    const auto p = params_from_config(config);
    const cd beta1 = parse_complex(config.value("beta1", json(0.0)), "beta1");
    const cd beta2 = parse_complex(config.value("beta2", json(0.0)), "beta2");
    const auto q = quadrature_from_config(config, opt);
    if (!config.contains("gamma_values")) throw usage_error("config is missing \"gamma_values\"");
    const auto gammas = config.at("gamma_values").get<std::vector<double>>();

    const auto rows = hempss::sweep_gamma(p, beta1, beta2, gammas, q);
    std::string csv = "gamma_mod,mean_n1,mean_n2,mean_n1n2,g2,ok,message\n";
    for (const auto& row : rows) {
        csv += hempss::format_sig12(row.gamma_mod);
        for (double v : {row.moments.mean_n1, row.moments.mean_n2, row.moments.mean_n1n2,
                         row.moments.g2_cross}) {
            csv += ',';
            csv += hempss::format_sig12(v);
        }
        csv += row.ok ? ",1," : ",0,";
        csv += sanitize_csv_field(row.message);
        csv += '\n';
    }
    const auto path = resolve_out(opt, "sweep_gamma.csv");
    write_text_file(path, csv);
    std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
    return kExitSuccess;
}

int cmd_sweep_theta(const json& config, const CommonOptions& opt) {
    const auto p = params_from_config(config);
    const cd beta1 = parse_complex(config.value("beta1", json(0.0)), "beta1");
    const cd beta2 = parse_complex(config.value("beta2", json(0.0)), "beta2");
    const auto q = quadrature_from_config(config, opt);
    if (!config.contains("theta1_values") || !config.contains("theta2_values")) {
        throw usage_error("config is missing \"theta1_values\"/\"theta2_values\"");
    }
    const auto t1 = config.at("theta1_values").get<std::vector<double>>();
    const auto t2 = config.at("theta2_values").get<std::vector<double>>();

    const auto rows = hempss::sweep_theta(p, beta1, beta2, t1, t2, q);
    std::string csv = "theta1,theta2,mean_n1,mean_n2,mean_n1n2,g2,ok,message\n";
    for (const auto& row : rows) {
        csv += hempss::format_sig12(row.theta1);
        csv += ',';
        csv += hempss::format_sig12(row.theta2);
        for (double v : {row.moments.mean_n1, row.moments.mean_n2, row.moments.mean_n1n2,
                         row.moments.g2_cross}) {
            csv += ',';
            csv += hempss::format_sig12(v);
        }
        csv += row.ok ? ",1," : ",0,";
        csv += sanitize_csv_field(row.message);
        csv += '\n';
    }
    const auto path = resolve_out(opt, "sweep_theta.csv");
    write_text_file(path, csv);
    std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
    return kExitSuccess;
}

int cmd_state_eval(const json& config, const CommonOptions& opt) {
    const auto p = params_from_config(config);
    const cd beta1 = parse_complex(config.value("beta1", json(0.0)), "beta1");
    const cd beta2 = parse_complex(config.value("beta2", json(0.0)), "beta2");
    const auto q = quadrature_from_config(config, opt);
    const std::string representation = config.value("representation", std::string("heterodyne"));
    const double lo = config.value("min", -2.0);
    const double hi = config.value("max", 2.0);
    const int points = config.value("points", 21);
    if (points < 2 || !(hi > lo)) throw usage_error("state-eval grid needs points >= 2, max > min");

    const auto w = hempss::normalize(hempss::wave_params(p, beta1, beta2), q);
    const double step = (hi - lo) / (points - 1);
    std::string csv;
    if (representation == "heterodyne") {
        csv = "z1,z2,re_psi,im_psi\n";
        for (int i = 0; i < points; ++i) {
            for (int k = 0; k < points; ++k) {
                const double z1 = lo + step * i;
                const double z2 = lo + step * k;
                const cd psi = hempss::eval_entangled_wavefunction(w, {cd(z1, z2)});
                csv += hempss::format_sig12(z1);
                csv += ',';
                csv += hempss::format_sig12(z2);
                csv += ',';
                csv += hempss::format_sig12(psi.real());
                csv += ',';
                csv += hempss::format_sig12(psi.imag());
                csv += '\n';
            }
        }
    } else if (representation == "coordinate") {
        csv = "x1,x2,re_psi,im_psi\n";
        for (int i = 0; i < points; ++i) {
            for (int k = 0; k < points; ++k) {
                const double x1 = lo + step * i;
                const double x2 = lo + step * k;
                const cd psi = hempss::eval_coordinate_wavefunction(w, p, x1, x2, q);
                csv += hempss::format_sig12(x1);
                csv += ',';
                csv += hempss::format_sig12(x2);
                csv += ',';
                csv += hempss::format_sig12(psi.real());
                csv += ',';
                csv += hempss::format_sig12(psi.imag());
                csv += '\n';
            }
        }
    } else {
        throw usage_error("representation must be \"heterodyne\" or \"coordinate\"");
    }
    const auto path = resolve_out(opt, "state.csv");
    write_text_file(path, csv);
    std::cout << "wrote " << path.string() << "\n";
    return kExitSuccess;
}

int cmd_oracle_check(const json& config, const CommonOptions& opt) {
    const auto p = params_from_config(config);
    const cd beta1 = parse_complex(config.value("beta1", json(1.0)), "beta1");
    const cd beta2 = parse_complex(config.value("beta2", json(1.0)), "beta2");
    const int cutoff = config.value("cutoff", 40);
    const int n_max = config.value("n_max", 12);
    const double residual_threshold = config.value("residual_threshold", 1e-4);
    const double tolerance = opt.tol > 0.0 ? opt.tol : config.value("tolerance", 1e-6);
    const std::string route = config.value("route", std::string("joint"));
    auto q = quadrature_from_config(config, opt);

    hempss::OracleResult oracle =
        route == "construction"
            ? hempss::unitary_construction(p, beta1, beta2, hempss::FockCutoff(cutoff, cutoff),
                                           residual_threshold)
            : hempss::joint_eigenstate(p, beta1, beta2, hempss::FockCutoff(cutoff, cutoff),
                                       residual_threshold);

    const auto w = hempss::normalize(hempss::wave_params(p, beta1, beta2), q);
    const int grid_n_max = std::max(n_max, hempss::cutoff_heuristic(p, beta1, beta2));
    const auto grid = hempss::pnd(w, p, grid_n_max, q);
    const auto oracle_grid = hempss::pnd_of_state(oracle.state);

    double max_diff = 0.0;
    const int shared = std::min({n_max, grid.n_max, oracle_grid.n_max});
    for (int n1 = 0; n1 <= shared; ++n1) {
        for (int n2 = 0; n2 <= shared; ++n2) {
            max_diff = std::max(max_diff, std::abs(grid.at(n1, n2) - oracle_grid.at(n1, n2)));
        }
    }

    write_json_file(resolve_out(opt, "oracle.json"), hempss::oracle_to_json(oracle));
    std::cout << "route: " << (route == "construction" ? "unitary_construction" : "joint_eigen")
              << "\n"
              << "residual1: " << hempss::format_sig12(oracle.residual1) << "\n"
              << "residual2: " << hempss::format_sig12(oracle.residual2) << "\n"
              << "grid_mass: " << hempss::format_sig12(grid.total_mass) << "\n"
              << "compared_up_to_n: " << shared << "\n"
              << "max_abs_diff: " << hempss::format_sig12(max_diff) << "\n"
              << "tolerance: " << hempss::format_sig12(tolerance) << "\n"
              << "pass: " << (max_diff <= tolerance ? "yes" : "no") << "\n";
    return max_diff <= tolerance ? kExitSuccess : kExitComputation;
}

int cmd_design_pumps(const json& config, const CommonOptions& opt) {
    if (!config.contains("omega1") || !config.contains("omega2")) {
        throw usage_error("config is missing \"omega1\"/\"omega2\"");
    }
    const double w1 = config.at("omega1").get<double>();
    const double w2 = config.at("omega2").get<double>();
    const std::string kind = config.value("design", std::string("four_photon"));
    std::vector<double> fractions;
    if (config.contains("fractions")) fractions = config.at("fractions").get<std::vector<double>>();

    hempss::PumpDesign design;
    if (kind == "four_photon") {
        design = hempss::pump_design_four_photon(w1, w2, fractions);
    } else if (kind == "hempss") {
        design = hempss::pump_design_hempss(w1, w2, fractions);
    } else {
        throw usage_error("design must be \"four_photon\" or \"hempss\"");
    }
    const auto path = resolve_out(opt, "pumps.json");
    write_json_file(path, hempss::design_to_json(design));
    for (const auto& c : design.constraints) {
        std::cout << "pair (" << c.first_index << "," << c.second_index
                  << ") sum " << hempss::format_sig12(c.sum) << " fraction "
                  << hempss::format_sig12(c.fraction) << "\n";
    }
    std::cout << "wrote " << path.string() << "\n";
    return kExitSuccess;
}

int cmd_enumerate_terms(const json& config, const CommonOptions& opt) {
    if (!config.contains("omega1") || !config.contains("omega2")) {
        throw usage_error("config is missing \"omega1\"/\"omega2\"");
    }
    const double w1 = config.at("omega1").get<double>();
    const double w2 = config.at("omega2").get<double>();
    std::vector<int> orders;
    if (config.contains("orders")) {
        orders = config.at("orders").get<std::vector<int>>();
    } else {
        orders.push_back(config.value("order", 3));
    }
    std::vector<hempss::Pump> pumps;
    if (config.contains("pumps")) {
        const json& jp = config.at("pumps");
        // Accept either a bare pump array or a whole pump-design document.
        pumps = hempss::pumps_from_json(jp.is_object() && jp.contains("pumps") ? jp.at("pumps")
                                                                               : jp);
    } else if (config.contains("design")) {
        const std::string kind = config.at("design").get<std::string>();
        std::vector<double> fractions;
        if (config.contains("fractions"))
            fractions = config.at("fractions").get<std::vector<double>>();
        if (kind == "four_photon") {
            pumps = hempss::pump_design_four_photon(w1, w2, fractions).pumps;
        } else if (kind == "hempss") {
            pumps = hempss::pump_design_hempss(w1, w2, fractions).pumps;
        } else {
            throw usage_error("design must be \"four_photon\" or \"hempss\"");
        }
    }
    const int max_exp = config.value("max_mode_exponent", 3);
    const bool include_kerr = config.value("include_kerr", true);
    const double tol = opt.tol > 0.0 ? opt.tol : config.value("tolerance", 0.0);

    std::vector<hempss::ProcessTerm> all;
    for (int order : orders) {
        auto part = hempss::enumerate_terms(order, w1, w2, pumps, max_exp, tol, include_kerr);
        all.insert(all.end(), part.begin(), part.end());
    }
    const auto path = resolve_out(opt, "terms.json");
    write_json_file(path, hempss::terms_to_json(all));
    std::cout << "wrote " << path.string() << " (" << all.size() << " terms)\n";
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-mode entangled-state toolbox"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the global flags after the subcommand name

    CommonOptions opt;
    app.add_option("--config", opt.config_path, "path to the JSON config document")
        ->required(false);
    app.add_option("--out", opt.out_dir, "output directory (default: current directory)");
    app.add_option("--threads", opt.threads, "worker threads for quadrature");
    app.add_option("--tol", opt.tol, "tolerance override (context-dependent)");
    app.add_flag("--json", opt.json_output, "emit JSON instead of text where supported");

    // Subcommand names only; all inputs arrive via the config document.
    const std::vector<std::pair<std::string, int (*)(const json&, const CommonOptions&)>>
        commands = {
            {"validate", cmd_validate},
            {"coeffs", cmd_coeffs},
            {"pnd", cmd_pnd},
            {"moments", cmd_moments},
            {"g2", cmd_g2},
            {"sweep-gamma", cmd_sweep_gamma},
            {"sweep-theta", cmd_sweep_theta},
            {"state-eval", cmd_state_eval},
            {"oracle-check", cmd_oracle_check},
            {"design-pumps", cmd_design_pumps},
            {"enumerate-terms", cmd_enumerate_terms},
        };
    for (const auto& [name, handler] : commands) {
        app.add_subcommand(name, "")->parse_complete_callback([]() {});
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (opt.config_path.empty()) throw usage_error("--config <path> is required");
        const json config = load_config(opt.config_path);
        for (const auto& [name, handler] : commands) {
            if (app.got_subcommand(name)) return handler(config, opt);
        }
        throw usage_error("no subcommand selected");
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
}
