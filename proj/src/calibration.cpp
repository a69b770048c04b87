#include "debtrec/calibration.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <map>

#include "debtrec/errors.hpp"

namespace debtrec {

namespace {

std::string key_text(const QuarterKey& key) {
    return std::to_string(key.year) + "Q" + std::to_string(key.quarter);
}

bool parse_int(std::string_view text, int& out) {
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

// Last calendar day of the quarter containing `date`.
std::chrono::sys_days quarter_end(const Date& date) {
    using namespace std::chrono;
    const int last_month = date.quarter() * 3;
    const year_month_day_last ymdl{year{date.year} / month{static_cast<unsigned>(last_month)} / last};
    return sys_days{ymdl};
}

std::chrono::sys_days to_days(const Date& date) {
    using namespace std::chrono;
    return sys_days{year{date.year} / month{static_cast<unsigned>(date.month)} /
                    day{static_cast<unsigned>(date.day)}};
}

QuarterKey key_of(const Date& date) { return {date.year, date.quarter()}; }

}  // namespace

Date parse_date(const std::string& text) {
    Date date;
    const bool shaped = text.size() == 10 && text[4] == '-' && text[7] == '-';
    if (!shaped || !parse_int(std::string_view(text).substr(0, 4), date.year) ||
        !parse_int(std::string_view(text).substr(5, 2), date.month) ||
        !parse_int(std::string_view(text).substr(8, 2), date.day)) {
        throw ValidationError("malformed date '" + text + "', expected yyyy-mm-dd");
    }
    using namespace std::chrono;
    const year_month_day ymd{year{date.year}, month{static_cast<unsigned>(date.month)},
                             day{static_cast<unsigned>(date.day)}};
    if (!ymd.ok()) {
        throw ValidationError("invalid calendar date '" + text + "'");
    }
    return date;
}

std::string format_date(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", date.year, date.month, date.day);
    return buf;
}

void DailyCloseSeries::validate() const {
    if (closes.size() < 2) {
        throw InsufficientDataError("daily series needs at least 2 closes, got " +
                                    std::to_string(closes.size()));
    }
    for (std::size_t k = 0; k < closes.size(); ++k) {
        if (!(closes[k].close > 0.0) || !std::isfinite(closes[k].close)) {
            throw ValidationError("non-positive close on " + format_date(closes[k].date));
        }
        if (k > 0 && !(closes[k - 1].date < closes[k].date)) {
            throw ValidationError("dates not strictly increasing at " + format_date(closes[k].date));
        }
    }
}

void QuarterlyIndexSeries::validate() const {
    if (levels.size() < 2) {
        throw InsufficientDataError("quarterly series needs at least 2 levels, got " +
                                    std::to_string(levels.size()));
    }
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (!(levels[k].level > 0.0) || !std::isfinite(levels[k].level)) {
            throw ValidationError("non-positive index level at " + key_text(levels[k].key));
        }
        if (levels[k].key.quarter < 1 || levels[k].key.quarter > 4) {
            throw ValidationError("quarter out of range at row " + std::to_string(k + 1));
        }
        if (k > 0 && levels[k].key != levels[k - 1].key.next()) {
            throw ValidationError("gap in quarterly series between " + key_text(levels[k - 1].key) +
                                  " and " + key_text(levels[k].key));
        }
    }
}

PEstimate estimate_p(const DailyCloseSeries& series) {
    series.validate();
    PEstimate est;
    for (std::size_t d = 1; d < series.closes.size(); ++d) {
        const double ret = series.closes[d].close / series.closes[d - 1].close - 1.0;
        ++est.n_days;
        est.n_positive += ret > 0.0 ? 1 : 0;
    }
    est.p_hat = static_cast<double>(est.n_positive) / static_cast<double>(est.n_days);
    return est;
}

std::vector<QuarterlyP> estimate_p_by_quarter(const DailyCloseSeries& series) {
    series.validate();
    std::vector<QuarterlyP> out;
    const auto& closes = series.closes;
    for (std::size_t d = 1; d < closes.size(); ++d) {
        const QuarterKey key = key_of(closes[d].date);
        if (out.empty() || out.back().key != key) {
            out.push_back({key, {}, false});
        }
        const double ret = closes[d].close / closes[d - 1].close - 1.0;
        ++out.back().estimate.n_days;
        out.back().estimate.n_positive += ret > 0.0 ? 1 : 0;
    }
    for (QuarterlyP& q : out) {
        q.estimate.p_hat =
            static_cast<double>(q.estimate.n_positive) / static_cast<double>(q.estimate.n_days);
    }
    if (!out.empty()) {
        if (key_of(closes.front().date) == out.front().key) {
            out.front().partial = true;
        }
        const Date& last = closes.back().date;
        if (quarter_end(last) - to_days(last) >= std::chrono::days{7}) {
            out.back().partial = true;
        }
    }
    return out;
}

SEstimate estimate_s(const QuarterlyIndexSeries& series) {
    series.validate();
    SEstimate est;
    double sum = 0.0;
    for (std::size_t k = 1; k < series.levels.size(); ++k) {
        const double s_q = series.levels[k].level / series.levels[k - 1].level - 1.0;
        est.drifts.push_back({series.levels[k].key, s_q});
        sum += s_q;
    }
    est.mean = sum / static_cast<double>(est.drifts.size());
    return est;
}

Track build_track(const std::vector<QuarterlyP>& p_points,
                  const std::vector<QuarterlyDrift>& s_points) {
    std::map<QuarterKey, const QuarterlyP*> p_by_key;
    for (const QuarterlyP& p : p_points) {
        if (!p_by_key.emplace(p.key, &p).second) {
            throw ValidationError("duplicate p quarter " + key_text(p.key));
        }
    }
    std::map<QuarterKey, double> s_by_key;
    for (const QuarterlyDrift& s : s_points) {
        if (!s_by_key.emplace(s.key, s.s_q).second) {
            throw ValidationError("duplicate s quarter " + key_text(s.key));
        }
    }

    Track track;
    for (const auto& [key, p] : p_by_key) {
        const auto it = s_by_key.find(key);
        if (it == s_by_key.end()) {
            track.missing_s.push_back(key);
            continue;
        }
        track.points.push_back({key, p->estimate.p_hat, it->second, p->estimate.n_days,
                                p->estimate.n_positive});
    }
    for (const auto& [key, s] : s_by_key) {
        if (!p_by_key.count(key)) {
            track.missing_p.push_back(key);
        }
    }
    if (track.points.empty()) {
        throw InsufficientDataError("p and s inputs share no quarter");
    }
    return track;
}

std::vector<CalibrationPoint> select_quarter(const std::vector<CalibrationPoint>& points,
                                             int quarter) {
    std::vector<CalibrationPoint> out;
    std::copy_if(points.begin(), points.end(), std::back_inserter(out),
                 [quarter](const CalibrationPoint& pt) { return pt.key.quarter == quarter; });
    return out;
}

}  // namespace debtrec
