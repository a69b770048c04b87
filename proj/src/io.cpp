#include "debtrec/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "debtrec/csv.hpp"
#include "debtrec/errors.hpp"
#include "json.hpp"

namespace debtrec {

namespace {

using json = nlohmann::ordered_json;

class Writer {
public:
    explicit Writer(const std::filesystem::path& path) : path_(path), out_(path) {
        if (!out_) {
            throw IoError("cannot open '" + path.string() + "' for writing");
        }
    }

    std::ostream& stream() { return out_; }

    void finish() {
        out_.flush();
        if (!out_) {
            throw IoError("error while writing '" + path_.string() + "'");
        }
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

std::string context(const std::filesystem::path& path, std::size_t row) {
    return path.string() + " row " + std::to_string(row + 1);
}

int to_int(long long v, const std::string& ctx) {
    if (v < INT32_MIN || v > INT32_MAX) {
        throw ValidationError(ctx + ": integer out of range");
    }
    return static_cast<int>(v);
}

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

json moments_json(const std::vector<double>& v) { return json(v); }

std::vector<double> number_array(const json& j, const char* key) {
    std::vector<double> out;
    for (const auto& item : j.at(key)) {
        out.push_back(item.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                     : item.get<double>());
    }
    return out;
}

constexpr std::array<OutcomeClass, kOutcomeClassCount> kClasses{
    OutcomeClass::StrongSuccess, OutcomeClass::WeakSuccess, OutcomeClass::Default,
    OutcomeClass::PermanentRemortgage};

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const MeanPath& points) {
    Writer w(path);
    w.stream() << "t,mean_equity,mean_mortgage\n";
    for (std::size_t t = 0; t < points.size(); ++t) {
        w.stream() << t << ',' << format_double(points[t].equity) << ','
                   << format_double(points[t].mortgage) << '\n';
    }
    w.finish();
}

MeanPath read_trajectory_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t ct = table.column("t");
    const std::size_t ce = table.column("mean_equity");
    const std::size_t cm = table.column("mean_mortgage");
    MeanPath points;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto ctx = context(path, r);
        if (parse_integer(row[ct], ctx) != static_cast<long long>(r)) {
            throw ValidationError(ctx + ": t must count up from 0");
        }
        points.push_back({parse_double(row[ce], ctx), parse_double(row[cm], ctx)});
    }
    return points;
}

void write_grid_csv(const std::filesystem::path& path, const PhaseGrid& grid) {
    Writer w(path);
    w.stream() << "p,s,outcome,t_star\n";
    for (const PhaseCell& cell : grid.cells) {
        w.stream() << format_double(cell.p) << ',' << format_double(cell.s) << ','
                   << outcome_name(cell.outcome.cls) << ',';
        if (cell.outcome.t_star) {
            w.stream() << *cell.outcome.t_star;
        }
        w.stream() << '\n';
    }
    w.finish();
}

PhaseGrid read_grid_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t cp = table.column("p");
    const std::size_t cs = table.column("s");
    const std::size_t co = table.column("outcome");
    const std::size_t ctime = table.column("t_star");

    std::vector<PhaseCell> cells;
    std::set<double> ps;
    std::set<double> ss;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto ctx = context(path, r);
        PhaseCell cell;
        cell.p = parse_double(row[cp], ctx);
        cell.s = parse_double(row[cs], ctx);
        cell.outcome.cls = parse_outcome(row[co]);
        if (!row[ctime].empty()) {
            cell.outcome.t_star = to_int(parse_integer(row[ctime], ctx), ctx);
        }
        if (cell.outcome.t_star.has_value() ==
            (cell.outcome.cls == OutcomeClass::PermanentRemortgage)) {
            throw ValidationError(ctx + ": t_star must be empty exactly for remortgage cells");
        }
        ps.insert(cell.p);
        ss.insert(cell.s);
        cells.push_back(cell);
    }
    if (ps.size() < 2 || ss.size() < 2 || cells.size() != ps.size() * ss.size()) {
        throw ValidationError(path.string() + ": rows do not form a rectangular grid");
    }

    PhaseGrid grid;
    grid.spec = {*ps.begin(), *ps.rbegin(), *ss.begin(), *ss.rbegin(),
                 static_cast<int>(ps.size()), static_cast<int>(ss.size())};
    grid.spec.validate();
    const std::vector<double> p_axis(ps.begin(), ps.end());
    const std::vector<double> s_axis(ss.begin(), ss.end());
    grid.cells.resize(cells.size());
    std::vector<bool> seen(cells.size(), false);
    for (const PhaseCell& cell : cells) {
        const auto i = static_cast<std::size_t>(
            std::lower_bound(p_axis.begin(), p_axis.end(), cell.p) - p_axis.begin());
        const auto j = static_cast<std::size_t>(
            std::lower_bound(s_axis.begin(), s_axis.end(), cell.s) - s_axis.begin());
        const std::size_t idx = j * p_axis.size() + i;
        if (seen[idx]) {
            throw ValidationError(path.string() + ": duplicate grid cell");
        }
        seen[idx] = true;
        grid.cells[idx] = cell;
    }
    return grid;
}

void write_contours_csv(const std::filesystem::path& path, const std::vector<ContourSet>& sets) {
    Writer w(path);
    w.stream() << "level,segment_id,p,s\n";
    std::size_t id = 0;
    for (const ContourSet& set : sets) {
        for (const Polyline& line : set.lines) {
            for (const auto& [p, s] : line.points) {
                w.stream() << format_double(set.level) << ',' << id << ',' << format_double(p)
                           << ',' << format_double(s) << '\n';
            }
            ++id;
        }
    }
    w.finish();
}

std::vector<Polyline> read_contours_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t cl = table.column("level");
    const std::size_t cid = table.column("segment_id");
    const std::size_t cp = table.column("p");
    const std::size_t cs = table.column("s");
    std::vector<Polyline> lines;
    long long current = -1;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto ctx = context(path, r);
        const long long id = parse_integer(row[cid], ctx);
        if (id != current) {
            lines.emplace_back();
            lines.back().level = parse_double(row[cl], ctx);
            current = id;
        }
        lines.back().points.emplace_back(parse_double(row[cp], ctx), parse_double(row[cs], ctx));
    }
    for (Polyline& line : lines) {
        line.closed = line.points.size() > 2 && line.points.front() == line.points.back();
    }
    return lines;
}

void write_ensemble_json(const std::filesystem::path& path, const EnsembleStats& stats,
                         const RunConfig& config) {
    json params;
    params["preset"] = config.preset;
    params["loan"] = {{"ell", config.loan.ell},         {"mu", config.loan.mu},
                      {"e0", config.loan.e0},           {"m0", config.loan.m0},
                      {"pi_star", config.loan.pi_star}, {"q_skip", config.loan.q_skip}};
    params["fiscal"] = {{"r_m", config.fiscal.r_m},
                        {"r_b", config.fiscal.r_b},
                        {"r_m_annual", config.fiscal_annual.r_m_annual},
                        {"r_b_annual", config.fiscal_annual.r_b_annual},
                        {"tau_m", config.fiscal.tau_m},
                        {"tau_b", config.fiscal.tau_b}};
    params["market"] = {{"p", config.market.p}, {"s", config.market.s}, {"phi", config.market.phi}};
    params["horizon"] = config.horizon;
    params["master_seed"] = config.master_seed;

    json doc;
    doc["params"] = params;
    doc["n_paths"] = stats.n_paths;
    json counts = json::object();
    json t_star = json::object();
    for (OutcomeClass cls : kClasses) {
        const auto k = static_cast<std::size_t>(cls);
        counts[std::string(outcome_name(cls))] = stats.outcome_counts[k];
        if (cls != OutcomeClass::PermanentRemortgage) {
            t_star[std::string(outcome_name(cls))] = optional_number(stats.mean_t_star[k]);
        }
    }
    doc["outcome_counts"] = counts;
    doc["mean_equity"] = moments_json(stats.frozen.mean_equity);
    doc["mean_mortgage"] = moments_json(stats.frozen.mean_mortgage);
    doc["se_equity"] = moments_json(stats.frozen.se_equity);
    doc["se_mortgage"] = moments_json(stats.frozen.se_mortgage);
    doc["mean_t_star"] = t_star;
    doc["free_mean_equity"] = moments_json(stats.free.mean_equity);
    doc["free_mean_mortgage"] = moments_json(stats.free.mean_mortgage);
    doc["free_se_equity"] = moments_json(stats.free.se_equity);
    doc["free_se_mortgage"] = moments_json(stats.free.se_mortgage);

    Writer w(path);
    w.stream() << doc.dump(2) << '\n';
    w.finish();
}

EnsembleStats read_ensemble_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    EnsembleStats stats;
    try {
        const json doc = json::parse(in);
        stats.n_paths = doc.at("n_paths").get<std::uint64_t>();
        for (OutcomeClass cls : kClasses) {
            const auto k = static_cast<std::size_t>(cls);
            const std::string name(outcome_name(cls));
            stats.outcome_counts[k] = doc.at("outcome_counts").at(name).get<std::uint64_t>();
            if (cls != OutcomeClass::PermanentRemortgage) {
                const json& v = doc.at("mean_t_star").at(name);
                if (!v.is_null()) {
                    stats.mean_t_star[k] = v.get<double>();
                }
            }
        }
        stats.frozen = {number_array(doc, "mean_equity"), number_array(doc, "mean_mortgage"),
                        number_array(doc, "se_equity"), number_array(doc, "se_mortgage")};
        stats.free = {number_array(doc, "free_mean_equity"),
                      number_array(doc, "free_mean_mortgage"), number_array(doc, "free_se_equity"),
                      number_array(doc, "free_se_mortgage")};
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": malformed ensemble JSON: " + e.what());
    }
    return stats;
}

DailyCloseSeries read_daily_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t cd = table.column("date");
    const std::size_t cc = table.column("close");
    DailyCloseSeries series;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        series.closes.push_back({parse_date(row[cd]), parse_double(row[cc], context(path, r))});
    }
    return series;
}

QuarterlyIndexSeries read_quarterly_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t cy = table.column("year");
    const std::size_t cq = table.column("quarter");
    const std::size_t ci = table.column("index");
    QuarterlyIndexSeries series;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto ctx = context(path, r);
        QuarterlyLevel level;
        level.key = {to_int(parse_integer(row[cy], ctx), ctx),
                     to_int(parse_integer(row[cq], ctx), ctx)};
        level.level = parse_double(row[ci], ctx);
        series.levels.push_back(level);
    }
    return series;
}

void write_p_csv(const std::filesystem::path& path, const PEstimate& estimate) {
    Writer w(path);
    w.stream() << "p_hat,n_days,n_positive\n"
               << format_double(estimate.p_hat) << ',' << estimate.n_days << ','
               << estimate.n_positive << '\n';
    w.finish();
}

void write_p_by_quarter_csv(const std::filesystem::path& path, const std::vector<QuarterlyP>& rows) {
    Writer w(path);
    w.stream() << "year,quarter,p_hat,n_days,n_positive,partial\n";
    for (const QuarterlyP& q : rows) {
        w.stream() << q.key.year << ',' << q.key.quarter << ',' << format_double(q.estimate.p_hat)
                   << ',' << q.estimate.n_days << ',' << q.estimate.n_positive << ','
                   << (q.partial ? 1 : 0) << '\n';
    }
    w.finish();
}

std::vector<QuarterlyP> read_p_by_quarter_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t cy = table.column("year");
    const std::size_t cq = table.column("quarter");
    const std::size_t cp = table.column("p_hat");
    const std::size_t cn = table.column("n_days");
    const std::size_t cpos = table.column("n_positive");
    std::vector<QuarterlyP> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto ctx = context(path, r);
        QuarterlyP q;
        q.key = {to_int(parse_integer(row[cy], ctx), ctx), to_int(parse_integer(row[cq], ctx), ctx)};
        q.estimate.p_hat = parse_double(row[cp], ctx);
        q.estimate.n_days = parse_integer(row[cn], ctx);
        q.estimate.n_positive = parse_integer(row[cpos], ctx);
        if (const auto it = std::find(table.header.begin(), table.header.end(), "partial");
            it != table.header.end()) {
            q.partial = parse_integer(row[static_cast<std::size_t>(it - table.header.begin())], ctx) != 0;
        }
        out.push_back(q);
    }
    return out;
}

void write_s_csv(const std::filesystem::path& path, const SEstimate& estimate) {
    Writer w(path);
    w.stream() << "year,quarter,s_q\n";
    for (const QuarterlyDrift& d : estimate.drifts) {
        w.stream() << d.key.year << ',' << d.key.quarter << ',' << format_double(d.s_q) << '\n';
    }
    w.finish();
}

std::vector<QuarterlyDrift> read_s_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t cy = table.column("year");
    const std::size_t cq = table.column("quarter");
    const std::size_t cs = table.column("s_q");
    std::vector<QuarterlyDrift> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto ctx = context(path, r);
        out.push_back({{to_int(parse_integer(row[cy], ctx), ctx),
                        to_int(parse_integer(row[cq], ctx), ctx)},
                       parse_double(row[cs], ctx)});
    }
    return out;
}

void write_track_csv(const std::filesystem::path& path, const std::vector<CalibrationPoint>& points) {
    Writer w(path);
    w.stream() << "year,quarter,p_hat,s_hat,n_days,n_positive\n";
    for (const CalibrationPoint& pt : points) {
        w.stream() << pt.key.year << ',' << pt.key.quarter << ',' << format_double(pt.p_hat) << ','
                   << format_double(pt.s_hat) << ',' << pt.n_days << ',' << pt.n_positive << '\n';
    }
    w.finish();
}

std::vector<CalibrationPoint> read_track_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t cy = table.column("year");
    const std::size_t cq = table.column("quarter");
    const std::size_t cp = table.column("p_hat");
    const std::size_t cs = table.column("s_hat");
    const std::size_t cn = table.column("n_days");
    const std::size_t cpos = table.column("n_positive");
    std::vector<CalibrationPoint> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto ctx = context(path, r);
        out.push_back({{to_int(parse_integer(row[cy], ctx), ctx),
                        to_int(parse_integer(row[cq], ctx), ctx)},
                       parse_double(row[cp], ctx),
                       parse_double(row[cs], ctx),
                       parse_integer(row[cn], ctx),
                       parse_integer(row[cpos], ctx)});
    }
    return out;
}

}  // namespace debtrec
