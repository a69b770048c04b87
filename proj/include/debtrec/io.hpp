#pragma once

// File formats written and read by the engine.
//
//   trajectory CSV   t,mean_equity,mean_mortgage
//   grid CSV         p,s,outcome,t_star          (t_star empty for remortgage)
//   contour CSV      level,segment_id,p,s        (one row per polyline vertex)
//   ensemble JSON    params, n_paths, outcome_counts, mean_equity, ...
//   daily CSV        date,close                  (input)
//   quarterly CSV    year,quarter,index          (input)
//   p CSV            p_hat,n_days,n_positive
//   p-by-quarter CSV year,quarter,p_hat,n_days,n_positive,partial
//   s CSV            year,quarter,s_q
//   track CSV        year,quarter,p_hat,s_hat,n_days,n_positive
//
// Floating-point fields use the shortest representation that parses back to
// the same double, so every write/read pair is lossless.

#include <filesystem>
#include <vector>

#include "debtrec/calibration.hpp"
#include "debtrec/config.hpp"
#include "debtrec/model.hpp"
#include "debtrec/phase.hpp"
#include "debtrec/stochastic.hpp"

namespace debtrec {

void write_trajectory_csv(const std::filesystem::path& path, const MeanPath& path_points);
MeanPath read_trajectory_csv(const std::filesystem::path& path);

void write_grid_csv(const std::filesystem::path& path, const PhaseGrid& grid);
/// Rebuilds the GridSpec from the distinct p and s values in the file.
PhaseGrid read_grid_csv(const std::filesystem::path& path);

void write_contours_csv(const std::filesystem::path& path, const std::vector<ContourSet>& sets);
/// One Polyline per segment_id, in file order.
std::vector<Polyline> read_contours_csv(const std::filesystem::path& path);

void write_ensemble_json(const std::filesystem::path& path, const EnsembleStats& stats,
                         const RunConfig& config);
EnsembleStats read_ensemble_json(const std::filesystem::path& path);

DailyCloseSeries read_daily_csv(const std::filesystem::path& path);
QuarterlyIndexSeries read_quarterly_csv(const std::filesystem::path& path);

void write_p_csv(const std::filesystem::path& path, const PEstimate& estimate);
void write_p_by_quarter_csv(const std::filesystem::path& path, const std::vector<QuarterlyP>& rows);
std::vector<QuarterlyP> read_p_by_quarter_csv(const std::filesystem::path& path);

void write_s_csv(const std::filesystem::path& path, const SEstimate& estimate);
std::vector<QuarterlyDrift> read_s_csv(const std::filesystem::path& path);

void write_track_csv(const std::filesystem::path& path, const std::vector<CalibrationPoint>& points);
std::vector<CalibrationPoint> read_track_csv(const std::filesystem::path& path);

}  // namespace debtrec
