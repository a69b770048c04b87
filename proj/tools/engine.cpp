// Command-line front end: presets, mean trajectories, Monte Carlo ensembles,
// phase diagrams and market calibration.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "debtrec/calibration.hpp"
#include "debtrec/config.hpp"
#include "debtrec/errors.hpp"
#include "debtrec/io.hpp"
#include "debtrec/model.hpp"
#include "debtrec/phase.hpp"
#include "debtrec/presets.hpp"
#include "debtrec/stochastic.hpp"

using namespace debtrec;

namespace {

struct ScenarioArgs {
    std::string preset;
    std::string config;
    std::optional<double> p;
    std::optional<double> s;
    std::optional<int> horizon;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args, bool with_market) {
    cmd->add_option("--preset", args.preset, "Country/ownership preset")->required();
    cmd->add_option("--config", args.config, "key = value overrides");
    if (with_market) {
        cmd->add_option("--p", args.p, "Investment success probability");
        cmd->add_option("--s", args.s, "Mean quarterly housing drift");
    }
    cmd->add_option("--horizon", args.horizon, "Horizon in quarters");
}

RunConfig resolve(const ScenarioArgs& args) {
    const CountryPreset& preset = load_preset(args.preset);
    RunConfig config = args.config.empty() ? default_config(preset) : parse_config(args.config, preset);
    if (args.p) {
        config.market.p = *args.p;
    }
    if (args.s) {
        config.market.s = *args.s;
    }
    if (args.horizon) {
        config.horizon = *args.horizon;
    }
    config.validate();
    return config;
}

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ValidationError(std::string(flag) + " expects a,b");
    }
    double a = 0.0;
    double b = 0.0;
    try {
        std::size_t used = 0;
        a = std::stod(text.substr(0, comma), &used);
        b = std::stod(text.substr(comma + 1), &used);
    } catch (const std::exception&) {
        throw ValidationError(std::string(flag) + ": cannot parse '" + text + "'");
    }
    return {a, b};
}

std::vector<double> parse_levels(const std::string& text) {
    std::vector<double> levels;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            levels.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ValidationError("--contours: cannot parse '" + item + "'");
        }
    }
    return levels;
}

void print_presets() {
    std::printf("%-20s %-7s %9s %9s %9s %9s %9s %9s %7s %7s\n", "name", "use", "r_m_ann", "r_b_ann",
                "r_m_q", "r_b_q", "tau_m", "tau_b", "s_min", "s_max");
    for (const CountryPreset& p : all_presets()) {
        const FiscalParams q = p.fiscal();
        std::printf("%-20s %-7s %9.4f %9.4f %9.6f %9.6f %9.4f %9.4f %7.2f %7.2f\n", p.name.c_str(),
                    std::string(ownership_name(p.ownership)).c_str(), p.fiscal_annual.r_m_annual,
                    p.fiscal_annual.r_b_annual, q.r_m, q.r_b, p.fiscal_annual.tau_m,
                    p.fiscal_annual.tau_b, p.s_min, p.s_max);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Debt-recycling simulation and analysis engine"};
    app.require_subcommand(1);

    app.add_subcommand("presets", "List built-in presets");

    ScenarioArgs traj_args;
    std::string traj_out;
    auto* traj = app.add_subcommand("trajectory", "Closed-form mean path");
    add_scenario_options(traj, traj_args, true);
    traj->add_option("--out", traj_out, "Output CSV")->required();

    ScenarioArgs sim_args;
    std::string sim_out;
    std::optional<std::uint64_t> sim_paths;
    std::optional<std::uint64_t> sim_seed;
    std::optional<double> sim_phi;
    unsigned sim_workers = 0;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo ensemble");
    add_scenario_options(sim, sim_args, true);
    sim->add_option("--paths", sim_paths, "Number of sample paths");
    sim->add_option("--seed", sim_seed, "Master seed");
    sim->add_option("--phi", sim_phi, "Housing-shock standard deviation");
    sim->add_option("--workers", sim_workers, "Worker threads (0 = all cores)");
    sim->add_option("--out", sim_out, "Output JSON")->required();

    ScenarioArgs phase_args;
    std::string phase_grid;
    std::string phase_p_range;
    std::string phase_s_range;
    std::string phase_out;
    std::string phase_levels;
    std::string phase_contours_out;
    std::uint64_t phase_mc_paths = 0;
    unsigned phase_workers = 0;
    auto* phase = app.add_subcommand("phase", "Phase diagram over (p, s)");
    add_scenario_options(phase, phase_args, false);
    phase->add_option("--grid", phase_grid, "Cells as <n_p>x<n_s>");
    phase->add_option("--p-range", phase_p_range, "p range a,b");
    phase->add_option("--s-range", phase_s_range, "s range a,b");
    phase->add_option("--out", phase_out, "Output grid CSV")->required();
    phase->add_option("--contours", phase_levels, "Iso-time levels in quarters, e.g. 20,60");
    phase->add_option("--contours-out", phase_contours_out, "Output contour CSV");
    phase->add_option("--mc-paths", phase_mc_paths,
                      "Classify each cell by majority outcome over this many paths");
    phase->add_option("--workers", phase_workers, "Worker threads (0 = all cores)");

    std::string calp_in;
    std::string calp_out;
    bool calp_by_quarter = false;
    auto* calp = app.add_subcommand("calibrate-p", "Estimate p from daily closes");
    calp->add_option("--input", calp_in, "CSV with date,close")->required();
    calp->add_flag("--by-quarter", calp_by_quarter, "One estimate per calendar quarter");
    calp->add_option("--out", calp_out, "Output CSV")->required();

    std::string cals_in;
    std::string cals_out;
    auto* cals = app.add_subcommand("calibrate-s", "Estimate quarterly housing drift");
    cals->add_option("--input", cals_in, "CSV with year,quarter,index")->required();
    cals->add_option("--out", cals_out, "Output CSV")->required();

    std::string track_p;
    std::string track_s;
    std::string track_out;
    std::optional<int> track_quarter;
    auto* track = app.add_subcommand("track", "Join per-quarter p and s estimates");
    track->add_option("--p-input", track_p, "calibrate-p --by-quarter output")->required();
    track->add_option("--s-input", track_s, "calibrate-s output")->required();
    track->add_option("--quarter", track_quarter, "Keep only this quarter of each year");
    track->add_option("--out", track_out, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("presets")) {
            print_presets();
        } else if (traj->parsed()) {
            const RunConfig c = resolve(traj_args);
            write_trajectory_csv(traj_out, mean_trajectory(c.loan, c.fiscal, c.market, c.horizon));
        } else if (sim->parsed()) {
            RunConfig c = resolve(sim_args);
            if (sim_paths) {
                c.n_paths = *sim_paths;
            }
            if (sim_seed) {
                c.master_seed = *sim_seed;
            }
            if (sim_phi) {
                c.market.phi = *sim_phi;
            }
            c.validate();
            const EnsembleStats stats = simulate_ensemble(c.loan, c.fiscal, c.market, c.horizon,
                                                          c.n_paths, c.master_seed, {sim_workers});
            write_ensemble_json(sim_out, stats, c);
        } else if (phase->parsed()) {
            const RunConfig c = resolve(phase_args);
            GridSpec spec = c.grid_or_default(load_preset(c.preset));
            if (!phase_grid.empty()) {
                int n_p = 0;
                int n_s = 0;
                char sep = 0;
                std::istringstream in(phase_grid);
                if (!(in >> n_p >> sep >> n_s) || sep != 'x' || !in.eof()) {
                    throw ValidationError("--grid expects <n_p>x<n_s>, got '" + phase_grid + "'");
                }
                spec.n_p = n_p;
                spec.n_s = n_s;
            }
            if (!phase_p_range.empty()) {
                std::tie(spec.p_min, spec.p_max) = parse_range(phase_p_range, "--p-range");
            }
            if (!phase_s_range.empty()) {
                std::tie(spec.s_min, spec.s_max) = parse_range(phase_s_range, "--s-range");
            }
            SweepOptions opts;
            opts.workers = phase_workers;
            if (phase_mc_paths > 0) {
                opts.mode = SweepMode::MonteCarlo;
                opts.mc_paths = phase_mc_paths;
                opts.mc_seed = c.master_seed;
            }
            const PhaseGrid grid = sweep(spec, c.loan, c.fiscal, c.market.phi, c.horizon, opts);
            write_grid_csv(phase_out, grid);
            if (!phase_levels.empty()) {
                if (phase_contours_out.empty()) {
                    throw ValidationError("--contours requires --contours-out");
                }
                write_contours_csv(phase_contours_out,
                                   iso_time_contours(grid, parse_levels(phase_levels)));
            }
        } else if (calp->parsed()) {
            const DailyCloseSeries series = read_daily_csv(calp_in);
            if (calp_by_quarter) {
                write_p_by_quarter_csv(calp_out, estimate_p_by_quarter(series));
            } else {
                const PEstimate est = estimate_p(series);
                write_p_csv(calp_out, est);
                std::printf("p_hat = %.4f (N = %lld, N+ = %lld)\n", est.p_hat,
                            static_cast<long long>(est.n_days),
                            static_cast<long long>(est.n_positive));
            }
        } else if (cals->parsed()) {
            const SEstimate est = estimate_s(read_quarterly_csv(cals_in));
            write_s_csv(cals_out, est);
            std::printf("mean s = %.6f over %zu quarters\n", est.mean, est.drifts.size());
        } else if (track->parsed()) {
            const Track joined = build_track(read_p_by_quarter_csv(track_p), read_s_csv(track_s));
            const auto points =
                track_quarter ? select_quarter(joined.points, *track_quarter) : joined.points;
            write_track_csv(track_out, points);
            for (const QuarterKey& k : joined.missing_s) {
                std::fprintf(stderr, "omitted %dQ%d: no s estimate\n", k.year, k.quarter);
            }
            for (const QuarterKey& k : joined.missing_p) {
                std::fprintf(stderr, "omitted %dQ%d: no p estimate\n", k.year, k.quarter);
            }
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.kind());
    }
    return 0;
}
