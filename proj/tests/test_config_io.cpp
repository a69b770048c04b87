#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "debtrec/config.hpp"
#include "debtrec/csv.hpp"
#include "debtrec/errors.hpp"
#include "debtrec/io.hpp"
#include "debtrec/presets.hpp"

using namespace debtrec;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(::testing::TempDir()) / "debtrec_io";
    fs::create_directories(dir);
    return dir / name;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream(path) << text;
}

struct PresetRow {
    const char* name;
    double r_m, r_b, tau_m, tau_b, s_half;
    Ownership use;
};

constexpr PresetRow kTable[] = {
    {"australia_owner", 0.0607, 0.0835, 0.0, 0.32, 0.04, Ownership::Owner},
    {"australia_rental", 0.0628, 0.0835, 0.32, 0.32, 0.04, Ownership::Rental},
    {"germany_owner", 0.0369, 0.0534, 0.0, 0.0, 0.06, Ownership::Owner},
    {"germany_rental", 0.0369, 0.0534, 0.375, 0.0, 0.06, Ownership::Rental},
    {"switzerland_owner", 0.0162, 0.0162, 0.201, 0.201, 0.02, Ownership::Owner},
    {"switzerland_rental", 0.0162, 0.0162, 0.201, 0.201, 0.02, Ownership::Rental},
};

}  // namespace

TEST(Presets, Fidelity) {
    ASSERT_EQ(all_presets().size(), std::size(kTable));
    std::set<std::string> names;
    for (const PresetRow& row : kTable) {
        const CountryPreset& p = load_preset(row.name);
        names.insert(p.name);
        EXPECT_EQ(p.name, row.name);
        EXPECT_EQ(p.fiscal_annual.r_m_annual, row.r_m) << row.name;
        EXPECT_EQ(p.fiscal_annual.r_b_annual, row.r_b) << row.name;
        EXPECT_EQ(p.fiscal_annual.tau_m, row.tau_m) << row.name;
        EXPECT_EQ(p.fiscal_annual.tau_b, row.tau_b) << row.name;
        EXPECT_EQ(p.s_min, -row.s_half) << row.name;
        EXPECT_EQ(p.s_max, row.s_half) << row.name;
        EXPECT_EQ(p.ownership, row.use) << row.name;
        const FiscalParams q = p.fiscal();
        EXPECT_EQ(q.r_m, annual_to_quarterly(row.r_m));
        EXPECT_EQ(q.r_b, annual_to_quarterly(row.r_b));
        EXPECT_EQ(q.tau_m, row.tau_m);
        EXPECT_NO_THROW(q.validate());
    }
    EXPECT_EQ(names.size(), std::size(kTable));
}

TEST(Presets, SwitzerlandColumnsEqual) {
    CountryPreset owner = load_preset("switzerland_owner");
    const CountryPreset& rental = load_preset("switzerland_rental");
    EXPECT_EQ(owner.fiscal_annual, rental.fiscal_annual);
    EXPECT_EQ(owner.s_min, rental.s_min);
    EXPECT_EQ(owner.s_max, rental.s_max);
}

TEST(Presets, UnknownNameListsChoices) {
    try {
        load_preset("austria_owner");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        for (const PresetRow& row : kTable) {
            EXPECT_NE(msg.find(row.name), std::string::npos) << msg;
        }
        EXPECT_EQ(exit_code_for(e.kind()), 2);
    }
}

TEST(Config, DefaultsFromEmptyText) {
    const CountryPreset& ch = load_preset("switzerland_owner");
    const RunConfig c = parse_config_text("", ch);
    EXPECT_EQ(c.preset, "switzerland_owner");
    EXPECT_EQ(c.loan.e0, 30000.0);
    EXPECT_EQ(c.loan.m0, 300000.0);
    EXPECT_EQ(c.loan.pi_star, 3000.0);
    EXPECT_EQ(c.loan.ell, 0.5);
    EXPECT_EQ(c.loan.mu, 0.5);
    EXPECT_EQ(c.loan.q_skip, 0.01);
    EXPECT_EQ(c.horizon, 400);
    EXPECT_EQ(c.market.phi, 0.01);
    EXPECT_EQ(c.fiscal, ch.fiscal());
    EXPECT_EQ(c.fiscal_annual, ch.fiscal_annual);
    EXPECT_FALSE(c.grid);
    EXPECT_EQ(c, default_config(ch));
    const GridSpec g = c.grid_or_default(ch);
    EXPECT_EQ(g.s_min, -0.02);
    EXPECT_EQ(g.n_p, 201);
}

TEST(Config, Overrides) {
    const CountryPreset& de = load_preset("germany_owner");
    const RunConfig c = parse_config_text(
        "# scenario\n"
        "sim.horizon = 40\n"
        "  market.p=0.61   # inline comment\n"
        "fiscal.r_m_annual = 0.05\r\n"
        "grid.n_p = 11\n"
        "sim.seed = 18446744073709551615\n",
        de);
    EXPECT_EQ(c.horizon, 40);
    EXPECT_EQ(c.market.p, 0.61);
    EXPECT_EQ(c.fiscal_annual.r_m_annual, 0.05);
    EXPECT_EQ(c.fiscal.r_m, annual_to_quarterly(0.05));
    EXPECT_EQ(c.fiscal.r_b, de.fiscal().r_b);
    ASSERT_TRUE(c.grid);
    EXPECT_EQ(c.grid->n_p, 11);
    EXPECT_EQ(c.grid->s_max, 0.06);
    EXPECT_EQ(c.master_seed, 18446744073709551615ULL);
}

TEST(Config, OverrideTransparency) {
    for (const CountryPreset& p : all_presets()) {
        const std::string text =
            "fiscal.r_m_annual = " + format_double(p.fiscal_annual.r_m_annual) +
            "\nfiscal.r_b_annual = " + format_double(p.fiscal_annual.r_b_annual) +
            "\nfiscal.tau_m = " + format_double(p.fiscal_annual.tau_m) +
            "\nfiscal.tau_b = " + format_double(p.fiscal_annual.tau_b) +
            "\nloan.e0 = 30000\nsim.horizon = 400\nmarket.phi = 0.01\n";
        EXPECT_EQ(parse_config_text(text, p), default_config(p)) << p.name;
    }
}

TEST(Config, Rejections) {
    const CountryPreset& au = load_preset("australia_owner");
    const auto message = [&](const std::string& text) {
        try {
            parse_config_text(text, au);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string("accepted");
    };
    EXPECT_NE(message("market.p = 1.2").find("market.p"), std::string::npos);
    EXPECT_NE(message("market.px = 0.2").find("market.px"), std::string::npos);
    EXPECT_NE(message("loan.e0 = abc").find("loan.e0"), std::string::npos);
    EXPECT_NE(message("sim.horizon = 0").find("sim.horizon"), std::string::npos);
    EXPECT_NE(message("sim.horizon = 4.5").find("sim.horizon"), std::string::npos);
    EXPECT_NE(message("fiscal.r_b_annual = -0.1").find("fiscal.r_b_annual"), std::string::npos);
    EXPECT_NE(message("fiscal.tau_m = 1.5").find("tau_m"), std::string::npos);
    EXPECT_NE(message("grid.n_s = 1").find("n_s"), std::string::npos);
    EXPECT_NE(message("just a line").find("line 1"), std::string::npos);
}

TEST(Config, FileErrors) {
    EXPECT_THROW(parse_config(scratch("missing.cfg"), load_preset("germany_owner")), IoError);
    const fs::path ok = scratch("ok.cfg");
    write_text(ok, "market.s = -0.015\n");
    EXPECT_EQ(parse_config(ok, load_preset("germany_owner")).market.s, -0.015);
}

TEST(Csv, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.125, 0.0, 5e-324}) {
        EXPECT_EQ(parse_double(format_double(v), "test"), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(300000.0), "300000");
    EXPECT_EQ(format_double(-0.0141), "-0.0141");
    EXPECT_THROW(parse_double("1.5x", "test"), ValidationError);
    EXPECT_THROW(parse_integer("", "test"), ValidationError);
}

TEST(Csv, ReaderErrors) {
    EXPECT_THROW(read_csv(scratch("nope.csv")), IoError);
    const fs::path ragged = scratch("ragged.csv");
    write_text(ragged, "a,b\n1,2\n3\n");
    EXPECT_THROW(read_csv(ragged), ValidationError);
    const fs::path cols = scratch("cols.csv");
    write_text(cols, "\xEF\xBB\xBF" "date,price\n2025-01-02,1\n2025-01-03,2\n");
    EXPECT_THROW(read_daily_csv(cols), ValidationError);
    const fs::path one = scratch("one.csv");
    write_text(one, "date,close\n2025-01-02,1\n");
    EXPECT_THROW(estimate_p(read_daily_csv(one)), InsufficientDataError);
}

TEST(RoundTrip, Trajectory) {
    const LoanParams loan;
    const MeanPath path = mean_trajectory(loan, load_preset("australia_owner").fiscal(),
                                          MarketParams{0.6, 0.015, 0.01}, 60);
    const fs::path file = scratch("traj.csv");
    write_trajectory_csv(file, path);
    EXPECT_EQ(read_trajectory_csv(file), path);
    const CsvTable table = read_csv(file);
    EXPECT_EQ(table.header, (std::vector<std::string>{"t", "mean_equity", "mean_mortgage"}));
    EXPECT_EQ(table.rows[0], (std::vector<std::string>{"0", "30000", "300000"}));
    EXPECT_EQ(table.rows.size(), 61u);
}

TEST(RoundTrip, Grid) {
    GridSpec spec;
    spec.n_p = 17;
    spec.n_s = 13;
    spec.s_min = -0.06;
    spec.s_max = 0.06;
    const PhaseGrid grid = sweep(spec, LoanParams{}, load_preset("germany_rental").fiscal());
    const fs::path file = scratch("grid.csv");
    write_grid_csv(file, grid);
    EXPECT_EQ(read_grid_csv(file), grid);
    const CsvTable table = read_csv(file);
    EXPECT_EQ(table.header, (std::vector<std::string>{"p", "s", "outcome", "t_star"}));
    bool saw_empty = false;
    for (const auto& row : table.rows) {
        if (row[2] == "remortgage") {
            EXPECT_EQ(row[3], "");
            saw_empty = true;
        }
    }
    EXPECT_TRUE(saw_empty);
}

TEST(RoundTrip, Contours) {
    GridSpec spec;
    spec.n_p = 41;
    spec.n_s = 41;
    const PhaseGrid grid = sweep(spec, LoanParams{}, load_preset("switzerland_owner").fiscal());
    const auto sets = iso_time_contours(grid, {20.0, 60.0});
    const fs::path file = scratch("contours.csv");
    write_contours_csv(file, sets);
    std::vector<Polyline> flat;
    for (const ContourSet& set : sets) {
        flat.insert(flat.end(), set.lines.begin(), set.lines.end());
    }
    ASSERT_FALSE(flat.empty());
    EXPECT_EQ(read_contours_csv(file), flat);
    EXPECT_EQ(read_csv(file).header, (std::vector<std::string>{"level", "segment_id", "p", "s"}));
}

TEST(RoundTrip, EnsembleJson) {
    const CountryPreset& au = load_preset("australia_owner");
    RunConfig config = default_config(au);
    config.market = {0.55, 0.005, 0.01};
    config.horizon = 80;
    config.n_paths = 700;
    config.master_seed = 12;
    const EnsembleStats stats = simulate_ensemble(config.loan, config.fiscal, config.market,
                                                  config.horizon, config.n_paths,
                                                  config.master_seed);
    const fs::path file = scratch("ens.json");
    write_ensemble_json(file, stats, config);
    const EnsembleStats back = read_ensemble_json(file);
    EXPECT_EQ(back, stats);
    std::uint64_t total = 0;
    for (auto c : back.outcome_counts) {
        total += c;
    }
    EXPECT_EQ(total, 700u);

    std::ifstream in(file);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    for (const char* key : {"\"params\"", "\"n_paths\"", "\"outcome_counts\"", "\"strong_success\"",
                            "\"weak_success\"", "\"default\"", "\"remortgage\"", "\"mean_equity\"",
                            "\"mean_mortgage\"", "\"se_equity\"", "\"se_mortgage\"",
                            "\"mean_t_star\"", "\"r_m_annual\""}) {
        EXPECT_NE(text.find(key), std::string::npos) << key;
    }
}

TEST(RoundTrip, CalibrationOutputs) {
    const std::vector<QuarterlyP> p{{{2019, 4}, {0.25, 4, 1}, true},
                                    {{2020, 1}, {37.0 / 61.0, 61, 37}, false}};
    const fs::path pq = scratch("pq.csv");
    write_p_by_quarter_csv(pq, p);
    const auto p_back = read_p_by_quarter_csv(pq);
    ASSERT_EQ(p_back.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_EQ(p_back[k].key, p[k].key);
        EXPECT_EQ(p_back[k].estimate.p_hat, p[k].estimate.p_hat);
        EXPECT_EQ(p_back[k].estimate.n_days, p[k].estimate.n_days);
        EXPECT_EQ(p_back[k].estimate.n_positive, p[k].estimate.n_positive);
        EXPECT_EQ(p_back[k].partial, p[k].partial);
    }

    SEstimate s;
    s.drifts = {{{2020, 1}, 0.0141}, {{2020, 2}, -1.0 / 3.0}};
    s.mean = (0.0141 - 1.0 / 3.0) / 2.0;
    const fs::path sf = scratch("s.csv");
    write_s_csv(sf, s);
    const auto s_back = read_s_csv(sf);
    ASSERT_EQ(s_back.size(), 2u);
    EXPECT_EQ(s_back[1].key, (QuarterKey{2020, 2}));
    EXPECT_EQ(s_back[1].s_q, -1.0 / 3.0);

    const std::vector<CalibrationPoint> track{{{2020, 1}, 37.0 / 61.0, 0.0141, 61, 37}};
    const fs::path tf = scratch("track.csv");
    write_track_csv(tf, track);
    EXPECT_EQ(read_track_csv(tf), track);
}
