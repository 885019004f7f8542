// Command-line front end: minimal pulsating-wave speeds, principal
// eigenvalues, dispersion curves, Cauchy simulations, and batch sweeps for
// L-periodic KPP coefficients (smooth, piecewise-constant, or atomic).

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpp/coefficient_io.hpp"
#include "kpp/eigen.hpp"
#include "kpp/floquet.hpp"
#include "kpp/front.hpp"
#include "kpp/pde.hpp"
#include "kpp/speed.hpp"
#include "kpp/svg.hpp"
#include "kpp/sweep.hpp"

using nlohmann::json;

namespace {

void write_text(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    kpp::write_file(path, content);
}

json speed_json(const kpp::SpeedResult& r) {
    return {{"c_star", r.c_star},
            {"lambda_star", r.lambda_star},
            {"direction", r.direction == kpp::Direction::positive ? "positive" : "negative"},
            {"mu_at_star", r.mu_at_star},
            {"bracket", {r.bracket.first, r.bracket.second}},
            {"method", r.method == kpp::MuMethod::floquet
                           ? "floquet"
                           : (r.method == kpp::MuMethod::fd ? "fd" : "evolution")},
            {"tolerance_achieved", r.tolerance_achieved},
            {"scan_unimodal", r.scan_unimodal}};
}

std::string front_csv(const kpp::SimulationTrace& trace) {
    std::string out = "t,x_plus,x_minus\n";
    char buf[128];
    for (const auto& f : trace.front) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g\n", f.t, f.x_plus, f.x_minus);
        out += buf;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal speeds of pulsating fronts for periodic KPP media"};
    app.require_subcommand(1);

    std::string coeff_path, out_path = "-", psi_csv_path, svg_path, dump_path;

    // ---- eigen ----------------------------------------------------------
    auto* eig = app.add_subcommand("eigen", "principal eigenvalue mu(lambda, b)");
    double eig_lambda = 0.0;
    std::string eig_method = "fd";
    kpp::SolverConfig eig_cfg;
    eig->add_option("coefficient", coeff_path, "coefficient JSON file")->required();
    eig->add_option("--lambda", eig_lambda, "drift parameter");
    eig->add_option("--method", eig_method, "fd | evolution")
        ->check(CLI::IsMember({"fd", "evolution"}));
    eig->add_option("--grid", eig_cfg.grid_n, "grid points per period");
    eig->add_option("--out", out_path, "output JSON path ('-' = stdout)");
    eig->add_option("--psi-csv", psi_csv_path, "write (x, psi) samples as CSV");

    // ---- dispersion ------------------------------------------------------
    auto* disp = app.add_subcommand("dispersion", "transfer-matrix dispersion curve");
    double disp_lo = 0.0, disp_hi = 3.0;
    int disp_count = 61;
    disp->add_option("coefficient", coeff_path)->required();
    disp->add_option("--lambda-min", disp_lo);
    disp->add_option("--lambda-max", disp_hi);
    disp->add_option("--count", disp_count);
    disp->add_option("--out", out_path, "output CSV path ('-' = stdout)");

    // ---- speed -----------------------------------------------------------
    auto* spd = app.add_subcommand("speed", "minimal pulsating-wave speed");
    std::string spd_direction = "positive";
    kpp::SpeedConfig spd_cfg;
    spd->add_option("coefficient", coeff_path)->required();
    spd->add_option("--direction", spd_direction, "positive | negative | both")
        ->check(CLI::IsMember({"positive", "negative", "both"}));
    spd->add_option("--grid", spd_cfg.solver.grid_n);
    spd->add_option("--out", out_path);

    // ---- simulate --------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "Cauchy problem from a compact bump");
    kpp::SimulationConfig sim_cfg;
    sim->add_option("coefficient", coeff_path)->required();
    sim->add_option("--t-end", sim_cfg.t_end);
    sim->add_option("--dx", sim_cfg.grid_dx, "grid spacing (default L/512)");
    sim->add_option("--dt", sim_cfg.dt);
    sim->add_option("--half-width", sim_cfg.domain_half_width,
                    "domain half width (default: auto-sized)");
    bool sim_neumann = false;
    sim->add_flag("--neumann", sim_neumann, "Neumann boundary instead of Dirichlet");
    bool sim_duhamel = false;
    sim->add_flag("--duhamel", sim_duhamel, "Duhamel quadrature scheme");
    sim->add_option("--out", out_path, "front-position CSV ('-' = stdout)");
    sim->add_option("--svg", svg_path, "write a space-time heatmap SVG");
    sim->add_option("--dump", dump_path, "raw binary snapshot dump");

    // ---- spread ----------------------------------------------------------
    auto* spr = app.add_subcommand("spread", "simulate and compare with the eigenvalue speed");
    kpp::SimulationConfig spr_cfg;
    spr_cfg.t_end = 60.0;
    spr->add_option("coefficient", coeff_path)->required();
    spr->add_option("--t-end", spr_cfg.t_end);
    spr->add_option("--dx", spr_cfg.grid_dx);
    spr->add_option("--out", out_path);

    // ---- sweep -----------------------------------------------------------
    auto* swp = app.add_subcommand("sweep", "batch speeds over a coefficient family");
    std::string family = "fourier";
    double swp_alpha = 1.0, swp_L = 1.0;
    int swp_count = 50;
    std::uint64_t swp_seed = 1;
    swp->add_option("--family", family, "fourier | shigesada | mollified_comb")
        ->check(CLI::IsMember({"fourier", "shigesada", "mollified_comb"}));
    swp->add_option("--alpha", swp_alpha);
    swp->add_option("--period", swp_L);
    swp->add_option("--count", swp_count, "members (fourier family)");
    swp->add_option("--seed", swp_seed);
    swp->add_option("--out", out_path, "CSV output");
    swp->add_option("--svg", svg_path, "scatter of c* per member");

    // ---- optimal-gap -----------------------------------------------------
    auto* gap = app.add_subcommand("optimal-gap", "c*(h) - c*(b) against the Dirac comb");
    gap->add_option("coefficient", coeff_path)->required();
    gap->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eig->parsed()) {
            const auto b = kpp::load_coefficient(coeff_path);
            const kpp::EigenPair pair =
                eig_method == "fd"
                    ? kpp::principal_eigenpair_fd(b, eig_lambda, eig_cfg)
                    : kpp::principal_eigenpair_evolution(b, eig_lambda, 1.0, eig_cfg);
            const auto [mn, mx] = std::minmax_element(pair.psi.begin(), pair.psi.end());
            const bool ratio_ok =
                *mx / *mn <=
                kpp::eigenfunction_ratio_bound(b.alpha(), b.period()) * (1.0 + 1e-3);
            json j{{"lambda", pair.lambda},
                   {"mu", pair.mu},
                   {"residual", pair.residual},
                   {"ratio_bound_ok", ratio_ok}};
            write_text(out_path, j.dump(2) + "\n");
            if (!psi_csv_path.empty()) {
                std::string csv = "x,psi\n";
                char buf[80];
                for (std::size_t i = 0; i < pair.psi.size(); ++i) {
                    std::snprintf(buf, sizeof(buf), "%.10g,%.17g\n",
                                  b.period() * static_cast<double>(i) /
                                      static_cast<double>(pair.psi.size()),
                                  pair.psi[i]);
                    csv += buf;
                }
                write_text(psi_csv_path, csv);
            }
        } else if (disp->parsed()) {
            const auto b = kpp::load_coefficient(coeff_path);
            std::vector<double> lambdas;
            for (int i = 0; i < disp_count; ++i)
                lambdas.push_back(disp_lo + (disp_hi - disp_lo) * i /
                                                std::max(1, disp_count - 1));
            const kpp::DispersionCurve curve = kpp::dispersion_curve(b, lambdas);
            std::string csv = "lambda,mu,residual\n";
            char buf[120];
            for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.10g,%.17g,%.3g\n", curve.lambdas[i],
                              curve.mus[i], curve.residuals[i]);
                csv += buf;
            }
            write_text(out_path, csv);
            if (!curve.failed_lambdas.empty()) {
                std::cerr << "failed lambdas:";
                for (double l : curve.failed_lambdas) std::cerr << ' ' << l;
                std::cerr << '\n';
                return 1;
            }
        } else if (spd->parsed()) {
            const auto b = kpp::load_coefficient(coeff_path);
            json j;
            if (spd_direction == "both") {
                const auto rp = kpp::minimal_speed(b, kpp::Direction::positive, spd_cfg);
                const auto rn = kpp::minimal_speed(b, kpp::Direction::negative, spd_cfg);
                j = {{"positive", speed_json(rp)},
                     {"negative", speed_json(rn)},
                     {"direction_mismatch", std::abs(rp.c_star - rn.c_star)}};
            } else {
                const auto dir = spd_direction == "positive" ? kpp::Direction::positive
                                                             : kpp::Direction::negative;
                j = speed_json(kpp::minimal_speed(b, dir, spd_cfg));
            }
            write_text(out_path, j.dump(2) + "\n");
        } else if (sim->parsed()) {
            const auto b = kpp::load_coefficient(coeff_path);
            if (sim_neumann) sim_cfg.boundary = kpp::Boundary::neumann;
            if (sim_duhamel) sim_cfg.scheme = kpp::Scheme::duhamel;
            const kpp::SimulationTrace trace = kpp::simulate(b, sim_cfg);
            write_text(out_path, front_csv(trace));
            if (trace.contaminated)
                std::cerr << "warning: boundary contamination at t = "
                          << trace.contamination_time << '\n';
            if (!svg_path.empty()) kpp::write_file(svg_path, kpp::heatmap_svg(trace));
            if (!dump_path.empty()) {
                std::ofstream raw(dump_path, std::ios::binary);
                const std::uint64_t rows = trace.snapshots.size(),
                                    cols = static_cast<std::uint64_t>(trace.n);
                raw.write(reinterpret_cast<const char*>(&rows), 8);
                raw.write(reinterpret_cast<const char*>(&cols), 8);
                for (const auto& snap : trace.snapshots)
                    raw.write(reinterpret_cast<const char*>(snap.data()),
                              static_cast<std::streamsize>(snap.size() * sizeof(double)));
            }
        } else if (spr->parsed()) {
            const auto b = kpp::load_coefficient(coeff_path);
            const auto eig_speed = kpp::minimal_speed(b);
            const kpp::SimulationTrace trace = kpp::simulate(b, spr_cfg);
            const kpp::FrontFit fit = kpp::fit_front(trace, kpp::Direction::positive);
            double lambda_edge = std::numeric_limits<double>::quiet_NaN();
            try {
                lambda_edge = kpp::decay_rate_probe(trace, 0.8 * spr_cfg.t_end);
            } catch (const std::exception& e) {
                std::cerr << "decay probe: " << e.what() << '\n';
            }
            json j{{"c_fit", fit.speed_estimate},
                   {"c_eigen", eig_speed.c_star},
                   {"rel_err", std::abs(fit.speed_estimate - eig_speed.c_star) /
                                   eig_speed.c_star},
                   {"lambda_edge", lambda_edge},
                   {"error_bar", fit.error_bar},
                   {"periodicity_defect", fit.periodicity_defect}};
            write_text(out_path, j.dump(2) + "\n");
        } else if (swp->parsed()) {
            kpp::SweepPlan plan;
            plan.alpha = swp_alpha;
            plan.L = swp_L;
            if (family == "fourier")
                plan.family = kpp::FourierRandomFamily{swp_seed, swp_count};
            else if (family == "shigesada")
                plan.family = kpp::ShigesadaFamily{
                    {1.0, 0.5, 0.25, 0.125},
                    {std::numeric_limits<double>::infinity(), 10.0, 4.0}};
            else
                plan.family = kpp::MollifiedCombFamily{{0.4, 0.2, 0.1, 0.05, 0.025}};
            const auto records = kpp::run_sweep(plan);
            write_text(out_path, kpp::sweep_csv(records));
            if (!svg_path.empty()) {
                std::vector<double> xs, ys;
                for (const auto& r : records)
                    if (r.ok) {
                        xs.push_back(r.index);
                        ys.push_back(r.c_star);
                    }
                kpp::write_file(svg_path, kpp::scatter_svg(xs, ys, "member", "c*"));
            }
        } else if (gap->parsed()) {
            const auto b = kpp::load_coefficient(coeff_path);
            json j{{"gap", kpp::speed_gap_to_optimum(b)}};
            write_text(out_path, j.dump(2) + "\n");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
