// tfspec: eigenvalues of the linearized Thomas-Fermi cloud in the
// hydrodynamic limit.  Subcommands trace the matching determinant's
// eigenvalue branch, run brute-force operator oracles, export eigenfunction
// profiles, and run the acceptance suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "tfspec/acceptance.hpp"
#include "tfspec/analysis.hpp"
#include "tfspec/io.hpp"
#include "tfspec/matching.hpp"
#include "tfspec/operators.hpp"

namespace {

constexpr const char* k_version = "0.1.0";

struct OutputOptions {
    std::string out_path;
    std::string format = "csv";
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--out", opts.out_path, "Write the data table to this path");
    cmd->add_option("--format", opts.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

// Data payloads are emitted with 17 significant digits so identical configs
// produce byte-identical files.
void emit(const OutputOptions& opts, const tfspec::CsvTable& table, const nlohmann::json& meta) {
    if (opts.out_path.empty()) return;
    if (opts.format == "csv") {
        tfspec::write_file(opts.out_path, tfspec::to_csv(table));
        return;
    }
    nlohmann::json doc;
    doc["version"] = k_version;
    doc["config"] = meta;
    doc["columns"] = table.header;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) rows.push_back(row);
    doc["rows"] = rows;
    tfspec::write_file(opts.out_path, doc.dump(2) + "\n");
}

tfspec::CsvTable sweep_table(const tfspec::SweepResult& sweep) {
    tfspec::CsvTable t;
    t.header = {"eps", "gamma", "deviation", "a_ratio", "excluded"};
    for (const tfspec::SweepRow& r : sweep.rows)
        t.rows.push_back({tfspec::format_g17(r.eps), tfspec::format_g17(r.gamma),
                          tfspec::format_g17(r.deviation), tfspec::format_g17(r.a_ratio),
                          r.excluded ? "1" : "0"});
    return t;
}

void print_fit(const char* label, const tfspec::PowerFit& f) {
    std::cout << label << ": slope=" << tfspec::format_g17(f.slope)
              << " intercept=" << tfspec::format_g17(f.intercept)
              << " r2=" << tfspec::format_g17(f.r_squared) << " points=" << f.n_points << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral solver for the Bogoliubov linearization of the Thomas-Fermi cloud"};
    app.set_version_flag("--version", k_version);
    app.set_config("--config", "", "Read defaults from a TOML/INI config file (flags override)");
    app.require_subcommand(1);

    // spectrum -------------------------------------------------------------
    double eps = 1e-4;
    int n_target = 1;
    int n_grid = 200;
    bool with_oracle = false;
    OutputOptions spectrum_out;
    CLI::App* spectrum = app.add_subcommand("spectrum", "Locate one eigenvalue at a fixed eps");
    spectrum->add_option("--eps", eps, "Interface thickness parameter")
        ->check(CLI::PositiveNumber)->capture_default_str();
    spectrum->add_option("--target", n_target, "Target index n (odd: gamma_n = 2n(n+1))")
        ->check(CLI::PositiveNumber)->capture_default_str();
    spectrum->add_option("--n-grid", n_grid, "Inner grid size")->check(CLI::Range(50, 100000))
        ->capture_default_str();
    spectrum->add_flag("--oracle", with_oracle,
                       "Also run the Cholesky-pencil oracle at the same eps");
    add_output_options(spectrum, spectrum_out);

    // sweep ----------------------------------------------------------------
    double eps_min = 1e-6, eps_max = 1e-4;
    int points = 20;
    int sweep_target = 1;
    int sweep_grid = 200;
    OutputOptions sweep_out;
    CLI::App* sweep = app.add_subcommand("sweep", "Trace gamma(eps) and fit the power law");
    sweep->add_option("--target", sweep_target, "Target index n (odd)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--eps-min", eps_min, "Smallest eps")
        ->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--eps-max", eps_max, "Largest eps")
        ->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--points", points, "Number of log-spaced eps points")
        ->check(CLI::Range(1, 1000))->capture_default_str();
    sweep->add_option("--n-grid", sweep_grid, "Inner grid size")
        ->check(CLI::Range(50, 100000))->capture_default_str();
    add_output_options(sweep, sweep_out);

    // eigenfunction ----------------------------------------------------------
    double ef_eps = 1e-4;
    int ef_target = 1;
    int ef_grid = 200;
    double x_max = 1.5;
    std::string ef_norm = "sup";
    OutputOptions ef_out;
    CLI::App* eigen = app.add_subcommand("eigenfunction", "Export eigenfunction samples (x, w)");
    eigen->add_option("--eps", ef_eps, "Interface thickness parameter")
        ->check(CLI::PositiveNumber)->capture_default_str();
    eigen->add_option("--target", ef_target, "Target index n (odd)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    eigen->add_option("--n-grid", ef_grid, "Inner grid size")
        ->check(CLI::Range(50, 100000))->capture_default_str();
    eigen->add_option("--x-max", x_max, "Sample the exterior up to this |x|")
        ->capture_default_str();
    eigen->add_option("--normalization", ef_norm, "sup or l2")
        ->check(CLI::IsMember({"sup", "l2"}))->capture_default_str();
    add_output_options(eigen, ef_out);

    // operator-norms ---------------------------------------------------------
    std::string kind_str = "lambda1-plus";
    double on_min = 1e-3, on_max = 1e-2;
    int on_points = 5;
    OutputOptions on_out;
    CLI::App* norms = app.add_subcommand("operator-norms",
                                         "Scaling sweeps of resolvent norms / eigenvalues");
    norms->add_option("--kind", kind_str,
                      "inv-minus | inv-plus | composed | lambda1-minus | lambda1-plus | "
                      "lambda1-absx")
        ->check(CLI::IsMember({"inv-minus", "inv-plus", "composed", "lambda1-minus",
                               "lambda1-plus", "lambda1-absx"}))
        ->capture_default_str();
    norms->add_option("--eps-min", on_min, "Smallest eps")->capture_default_str();
    norms->add_option("--eps-max", on_max, "Largest eps")->capture_default_str();
    norms->add_option("--points", on_points, "Number of log-spaced eps points")
        ->capture_default_str();
    add_output_options(norms, on_out);

    // self-adjoint -----------------------------------------------------------
    double sa_eps = 1e-5;
    int sa_m = 1;
    CLI::App* selfadj = app.add_subcommand("self-adjoint",
                                           "Transcendental eigenvalue of L_- (even modes)");
    selfadj->add_option("--eps", sa_eps, "Interface thickness parameter")
        ->check(CLI::PositiveNumber)->capture_default_str();
    selfadj->add_option("--m", sa_m, "Mode index (lambda near pi^2 (2m-1)^2 / 4)")
        ->check(CLI::Range(1, 20))->capture_default_str();

    // validate ---------------------------------------------------------------
    app.add_subcommand("validate", "Run the acceptance suite (one line per criterion)");

    // Exit statuses: 0 success, 1 computation failure, 2 usage error.
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (spectrum->parsed()) {
            tfspec::MatchResult r = tfspec::find_eigenvalue(eps, n_target, n_grid);
            double target = tfspec::gamma_n(n_target);
            std::cout << "gamma=" << tfspec::format_g17(r.gamma)
                      << " deviation=" << tfspec::format_g17(std::fabs(r.gamma - target))
                      << " det_residual=" << tfspec::format_g17(r.det_residual)
                      << " a_ratio=" << tfspec::format_g17(r.a_ratio) << "\n";
            if (with_oracle) {
                int m = tfspec::detail::resolved_panels(eps, 2.5);
                double oracle = tfspec::generalized_gamma_spectrum(eps, 2.5, m, 1)[0];
                std::cout << "oracle_gamma=" << tfspec::format_g17(oracle)
                          << " (pencil eps^2 L+ L-, m=" << m << ")\n";
            }
            tfspec::CsvTable t;
            t.header = {"eps", "gamma", "deviation", "a_ratio", "excluded"};
            t.rows.push_back({tfspec::format_g17(eps), tfspec::format_g17(r.gamma),
                              tfspec::format_g17(std::fabs(r.gamma - target)),
                              tfspec::format_g17(r.a_ratio), "0"});
            emit(spectrum_out, t,
                 {{"command", "spectrum"}, {"eps", eps}, {"target", n_target},
                  {"n_grid", n_grid}});
        } else if (sweep->parsed()) {
            auto eps_values = tfspec::log_spaced(eps_min, eps_max, points);
            tfspec::SweepResult res = tfspec::sweep_eigenvalue(sweep_target, eps_values, sweep_grid);
            emit(sweep_out, sweep_table(res),
                 {{"command", "sweep"}, {"target", sweep_target}, {"eps_min", eps_min},
                  {"eps_max", eps_max}, {"points", points}, {"n_grid", sweep_grid}});
            try {
                print_fit("deviation fit", tfspec::power_fit(res));
                print_fit("a_ratio fit", tfspec::amplitude_ratio_fit(res));
            } catch (const tfspec::fit_error& fe) {
                std::cout << "fit: unavailable (" << fe.what() << ")\n";
            }
        } else if (eigen->parsed()) {
            tfspec::MatchResult r = tfspec::find_eigenvalue(ef_eps, ef_target, ef_grid);
            tfspec::InnerBasis basis = tfspec::solve_inner_basis(ef_eps, r.gamma, ef_grid);
            tfspec::EigenfunctionProfile prof = tfspec::assemble_eigenfunction(
                r, basis, x_max,
                ef_norm == "l2" ? tfspec::Normalization::l2_one : tfspec::Normalization::sup_one);
            tfspec::CsvTable t;
            t.header = {"x", "w"};
            for (size_t i = 0; i < prof.xs.size(); ++i)
                t.rows.push_back({tfspec::format_g17(prof.xs[i]), tfspec::format_g17(prof.ws[i])});
            emit(ef_out, t,
                 {{"command", "eigenfunction"}, {"eps", ef_eps}, {"target", ef_target},
                  {"n_grid", ef_grid}, {"x_max", x_max}, {"normalization", ef_norm}});
            std::cout << "gamma=" << tfspec::format_g17(r.gamma) << " samples=" << prof.xs.size()
                      << "\n";
        } else if (norms->parsed()) {
            tfspec::ScalingKind kind;
            if (kind_str == "inv-minus") kind = tfspec::ScalingKind::inv_minus;
            else if (kind_str == "inv-plus") kind = tfspec::ScalingKind::inv_plus;
            else if (kind_str == "composed") kind = tfspec::ScalingKind::composed;
            else if (kind_str == "lambda1-minus") kind = tfspec::ScalingKind::lambda1_minus;
            else if (kind_str == "lambda1-plus") kind = tfspec::ScalingKind::lambda1_plus;
            else kind = tfspec::ScalingKind::lambda1_absx;
            tfspec::ScalingSweep sw =
                tfspec::scaling_sweep(kind, tfspec::log_spaced(on_min, on_max, on_points));
            tfspec::CsvTable t;
            t.header = {"eps", "value", "excluded"};
            for (const tfspec::ScalingRow& r : sw.rows)
                t.rows.push_back({tfspec::format_g17(r.eps), tfspec::format_g17(r.value),
                                  r.excluded ? "1" : "0"});
            emit(on_out, t,
                 {{"command", "operator-norms"}, {"kind", kind_str}, {"eps_min", on_min},
                  {"eps_max", on_max}, {"points", on_points}});
            if (sw.fit.n_points >= 3)
                print_fit("fit", sw.fit);
            else
                std::cout << "fit: unavailable (fewer than 3 usable rows)\n";
            for (const tfspec::ScalingRow& r : sw.rows)
                if (r.excluded)
                    std::cout << "excluded eps=" << tfspec::format_g17(r.eps) << ": " << r.note
                              << "\n";
        } else if (selfadj->parsed()) {
            tfspec::SelfAdjointResult r = tfspec::self_adjoint_eigenvalue(sa_eps, sa_m);
            std::cout << "lambda=" << tfspec::format_g17(r.lambda)
                      << " delta_ratio=" << tfspec::format_g17(r.delta_ratio) << "\n";
        } else { // validate
            bool ok = tfspec::run_acceptance(std::cout);
            return ok ? EXIT_SUCCESS : EXIT_FAILURE;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
