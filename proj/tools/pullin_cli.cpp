// Command-line front end. Exit codes are a contract scripts rely on:
//   0 success, 2 usage or invalid parameters, 3 pull-in detected by
//   `simulate` (output still written), 4 I/O failure, 5 config parse error.
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pullin/device_config.hpp"
#include "pullin/errors.hpp"
#include "pullin/simulator.hpp"
#include "pullin/sweep.hpp"
#include "pullin/table.hpp"

namespace {

struct OutputOptions {
    std::string format = "csv";
    std::string path; // empty = stdout
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.path, "Write to this file instead of stdout");
}

void emit(const pullin::Table& t, const OutputOptions& o) {
    const auto write = [&](std::ostream& os) {
        if (o.format == "json")
            pullin::write_json(t, os);
        else
            pullin::write_csv(t, os);
        os.flush();
        if (!os) throw pullin::IoError("error writing output");
    };
    if (o.path.empty()) {
        write(std::cout);
    } else {
        std::ofstream ofs(o.path);
        if (!ofs) throw pullin::IoError("cannot open output file '" + o.path + "'");
        write(ofs);
    }
}

pullin::PullinTimeMethod parse_method(const std::string& name) {
    return name == "simulate" ? pullin::PullinTimeMethod::Simulate
                              : pullin::PullinTimeMethod::Quadrature;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic pull-in analysis of an electrostatically actuated "
                 "lumped-mass oscillator with a quadratic-softening spring"};
    app.require_subcommand(1);

    // classify
    double cl_alpha = 0.0, cl_K = 0.0;
    OutputOptions cl_out;
    CLI::App* classify = app.add_subcommand(
        "classify", "Regime of one (alpha, K) pair: Rest, Periodic or PullIn");
    classify->add_option("--alpha", cl_alpha, "Nonlinearity parameter")->required();
    classify->add_option("--K", cl_K, "Forcing parameter")->required();
    add_output_options(classify, cl_out);

    // kappa-curve
    double kc_min = 0.0, kc_max = 0.0;
    int kc_n = 100;
    OutputOptions kc_out;
    CLI::App* kappa_curve = app.add_subcommand(
        "kappa-curve", "Threshold curve kappa(alpha) on a linear alpha grid");
    kappa_curve->add_option("--alpha-min", kc_min, "Grid start")->required();
    kappa_curve->add_option("--alpha-max", kc_max, "Grid end")->required();
    kappa_curve->add_option("--n", kc_n, "Number of grid points");
    add_output_options(kappa_curve, kc_out);

    // simulate
    pullin::SimConfig sim_cfg;
    OutputOptions sim_out;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Integrate one trajectory and emit its samples; "
                    "exits 3 when the pull-in event fires");
    simulate->add_option("--alpha", sim_cfg.q.alpha, "Nonlinearity parameter")->required();
    simulate->add_option("--K", sim_cfg.q.K, "Forcing parameter")->required();
    simulate->add_option("--x0", sim_cfg.x0, "Initial displacement");
    simulate->add_option("--v0", sim_cfg.v0, "Initial velocity");
    simulate->add_option("--t-end", sim_cfg.t_end, "Integration horizon");
    simulate->add_option("--rel-tol", sim_cfg.rel_tol, "Relative step tolerance");
    simulate->add_option("--abs-tol", sim_cfg.abs_tol, "Absolute step tolerance");
    simulate->add_option("--delta", sim_cfg.pull_in_delta,
                         "Pull-in event level is x = 1 - delta");
    add_output_options(simulate, sim_out);

    // pullin-time: one pair with --alpha, or a fixed-K alpha sweep with
    // --alpha-min/--alpha-max/--n
    double pt_alpha = 0.0, pt_K = 0.0, pt_amin = 0.0, pt_amax = 0.0;
    int pt_n = 30;
    std::string pt_method = "quadrature";
    OutputOptions pt_out;
    CLI::App* pullin_time = app.add_subcommand(
        "pullin-time", "Time to pull-in from rest at fixed K, for one alpha "
                       "(--alpha) or an alpha range (--alpha-min/--alpha-max)");
    CLI::Option* pt_alpha_opt =
        pullin_time->add_option("--alpha", pt_alpha, "Nonlinearity parameter");
    pullin_time->add_option("--K", pt_K, "Forcing parameter")->required();
    CLI::Option* pt_amin_opt =
        pullin_time->add_option("--alpha-min", pt_amin, "Sweep grid start");
    CLI::Option* pt_amax_opt =
        pullin_time->add_option("--alpha-max", pt_amax, "Sweep grid end");
    pullin_time->add_option("--n", pt_n, "Sweep grid points");
    pullin_time->add_option("--method", pt_method, "quadrature or simulate")
        ->check(CLI::IsMember({"quadrature", "simulate"}));
    pt_alpha_opt->excludes(pt_amin_opt)->excludes(pt_amax_opt);
    pt_amin_opt->needs(pt_amax_opt);
    pt_amax_opt->needs(pt_amin_opt);
    add_output_options(pullin_time, pt_out);

    // period
    double pd_alpha = 0.0, pd_K = 0.0;
    OutputOptions pd_out;
    CLI::App* period = app.add_subcommand(
        "period", "Oscillation period of the zero-IC closed orbit");
    period->add_option("--alpha", pd_alpha, "Nonlinearity parameter")->required();
    period->add_option("--K", pd_K, "Forcing parameter")->required();
    add_output_options(period, pd_out);

    // sweep
    double sw_amin = 0.0, sw_amax = 0.0, sw_kmin = 0.0, sw_kmax = 0.0;
    int sw_na = 10, sw_nk = 10;
    OutputOptions sw_out;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Regime map over an (alpha, K) grid");
    sweep->add_option("--alpha-min", sw_amin, "Alpha grid start")->required();
    sweep->add_option("--alpha-max", sw_amax, "Alpha grid end")->required();
    sweep->add_option("--n-alpha", sw_na, "Alpha grid points");
    sweep->add_option("--K-min", sw_kmin, "K grid start")->required();
    sweep->add_option("--K-max", sw_kmax, "K grid end")->required();
    sweep->add_option("--n-K", sw_nk, "K grid points");
    add_output_options(sweep, sw_out);

    // voltage
    std::string vt_config;
    OutputOptions vt_out;
    CLI::App* voltage = app.add_subcommand(
        "voltage", "Pull-in voltage and nondimensional parameters of a device");
    voltage->add_option("--config", vt_config, "Device description file")->required();
    add_output_options(voltage, vt_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // normalize usage failures onto the contract
    }

    try {
        if (classify->parsed()) {
            emit(pullin::classify_report(cl_alpha, cl_K), cl_out);
        } else if (kappa_curve->parsed()) {
            emit(pullin::kappa_curve_table(kc_min, kc_max, kc_n), kc_out);
        } else if (simulate->parsed()) {
            const pullin::Trajectory traj = pullin::simulate(sim_cfg);
            emit(pullin::trajectory_table(traj), sim_out);
            if (traj.outcome == pullin::SimOutcome::PullInDetected) return 3;
        } else if (pullin_time->parsed()) {
            if (pt_amin_opt->count() > 0) {
                emit(pullin::pullin_time_sweep_table(pt_K, pt_amin, pt_amax, pt_n,
                                                     parse_method(pt_method)),
                     pt_out);
            } else if (pt_alpha_opt->count() > 0) {
                emit(pullin::pullin_time_report(pt_alpha, pt_K, parse_method(pt_method)),
                     pt_out);
            } else {
                std::cerr << "error: pullin-time needs --alpha or "
                             "--alpha-min/--alpha-max\n";
                return 2;
            }
        } else if (period->parsed()) {
            emit(pullin::period_report(pd_alpha, pd_K), pd_out);
        } else if (sweep->parsed()) {
            const pullin::SweepGrid grid =
                pullin::compute_sweep(pullin::linear_grid(sw_amin, sw_amax, sw_na),
                                      pullin::linear_grid(sw_kmin, sw_kmax, sw_nk));
            emit(pullin::sweep_table(grid), sw_out);
        } else if (voltage->parsed()) {
            emit(pullin::voltage_report(pullin::load_device_config(vt_config)), vt_out);
        }
    } catch (const pullin::ConfigParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 5;
    } catch (const pullin::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const pullin::RegimeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
