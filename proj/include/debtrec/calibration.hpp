#pragma once

// Empirical estimates of the investment success probability p and the
// quarterly housing drift s.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace debtrec {

struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    int quarter() const noexcept { return (month - 1) / 3 + 1; }

    auto operator<=>(const Date&) const = default;
};

/// Parses yyyy-mm-dd; throws ValidationError on malformed or impossible dates.
Date parse_date(const std::string& text);
std::string format_date(const Date& date);

struct QuarterKey {
    int year = 0;
    int quarter = 1;

    QuarterKey next() const noexcept {
        return quarter == 4 ? QuarterKey{year + 1, 1} : QuarterKey{year, quarter + 1};
    }

    auto operator<=>(const QuarterKey&) const = default;
};

struct DailyClose {
    Date date;
    double close = 0.0;
};

struct DailyCloseSeries {
    std::vector<DailyClose> closes;

    /// Strictly increasing dates, positive prices, at least two closes.
    void validate() const;
};

struct QuarterlyLevel {
    QuarterKey key;
    double level = 0.0;
};

struct QuarterlyIndexSeries {
    std::vector<QuarterlyLevel> levels;

    /// Consecutive quarters, positive levels, at least two entries.
    void validate() const;
};

struct PEstimate {
    double p_hat = 0.0;
    std::int64_t n_days = 0;
    std::int64_t n_positive = 0;
};

/// p_hat over every daily return in the series. A zero return counts as
/// non-positive.
PEstimate estimate_p(const DailyCloseSeries& series);

struct QuarterlyP {
    QuarterKey key;
    PEstimate estimate;
    /// Set when the series starts or ends inside the quarter.
    bool partial = false;
};

/// p_hat per calendar quarter. The return from close d-1 to close d belongs
/// to the quarter of date d, so a quarter's first return uses the previous
/// quarter's last close when the series has one. The opening quarter is
/// partial unless the series starts in an earlier quarter; the closing
/// quarter is partial unless its last close falls within the final seven
/// days of the calendar quarter.
std::vector<QuarterlyP> estimate_p_by_quarter(const DailyCloseSeries& series);

struct QuarterlyDrift {
    QuarterKey key;
    double s_q = 0.0;
};

struct SEstimate {
    std::vector<QuarterlyDrift> drifts;  // keyed by the later quarter of each pair
    double mean = 0.0;
};

SEstimate estimate_s(const QuarterlyIndexSeries& series);

struct CalibrationPoint {
    QuarterKey key;
    double p_hat = 0.0;
    double s_hat = 0.0;
    std::int64_t n_days = 0;
    std::int64_t n_positive = 0;

    bool operator==(const CalibrationPoint&) const = default;
};

struct Track {
    std::vector<CalibrationPoint> points;
    std::vector<QuarterKey> missing_s;  // quarters with p but no s
    std::vector<QuarterKey> missing_p;  // quarters with s but no p
};

/// Inner join on (year, quarter), chronological. Throws
/// InsufficientDataError when no quarter is shared.
Track build_track(const std::vector<QuarterlyP>& p_points,
                  const std::vector<QuarterlyDrift>& s_points);

/// Points whose quarter equals `quarter`, e.g. 1 for the first-quarter
/// subsample of a historical track.
std::vector<CalibrationPoint> select_quarter(const std::vector<CalibrationPoint>& points,
                                             int quarter);

}  // namespace debtrec
