#pragma once

// Outcome phase diagrams over the (p, s) plane.

#include <cstdint>
#include <vector>

#include "debtrec/model.hpp"

namespace debtrec {

inline constexpr int kDefaultGridCells = 201;

/// Cell centres include both range endpoints: centre i of n lies at
/// min + (max - min) * i / (n - 1).
struct GridSpec {
    double p_min = 0.0;
    double p_max = 1.0;
    double s_min = -0.02;
    double s_max = 0.02;
    int n_p = kDefaultGridCells;
    int n_s = kDefaultGridCells;

    void validate() const;

    double p_at(int i) const noexcept;
    double s_at(int j) const noexcept;

    bool operator==(const GridSpec&) const = default;
};

struct PhaseCell {
    double p = 0.0;
    double s = 0.0;
    Outcome outcome;

    bool operator==(const PhaseCell&) const = default;
};

/// Row-major over s: cell (i_p, j_s) is at index j_s * n_p + i_p, so rows
/// share an s value and columns share a p value.
struct PhaseGrid {
    GridSpec spec;
    std::vector<PhaseCell> cells;

    const PhaseCell& at(int i_p, int j_s) const {
        return cells[static_cast<std::size_t>(j_s) * static_cast<std::size_t>(spec.n_p) +
                     static_cast<std::size_t>(i_p)];
    }

    std::size_t count(OutcomeClass cls) const noexcept;
    std::size_t success_count() const noexcept;

    bool operator==(const PhaseGrid&) const = default;
};

enum class SweepMode {
    MeanPath,    // classify_mean per cell
    MonteCarlo,  // majority outcome over an ensemble per cell
};

struct SweepOptions {
    unsigned workers = 0;
    SweepMode mode = SweepMode::MeanPath;
    std::uint64_t mc_paths = 1000;
    std::uint64_t mc_seed = 0;
};

/// `phi` only affects SweepMode::MonteCarlo. In that mode each cell reports
/// the most frequent class (ties resolve to the earlier class in
/// OutcomeClass order) with that class's average hitting time rounded to the
/// nearest quarter.
PhaseGrid sweep(const GridSpec& spec, const LoanParams& loan, const FiscalParams& fiscal,
                double phi = 0.01, int horizon = kDefaultHorizon, const SweepOptions& options = {});

/// Nearest cell centre to (p, s). Throws OutOfRangeError outside the grid.
const PhaseCell& locate_point(const PhaseGrid& grid, double p, double s);

struct Polyline {
    double level = 0.0;
    std::vector<std::pair<double, double>> points;  // (p, s)
    bool closed = false;

    bool operator==(const Polyline&) const = default;
};

struct ContourSet {
    double level = 0.0;
    std::vector<Polyline> lines;
};

/// Marching squares on the hitting-time field. A corner is "below" when its
/// t_star is finite and less than the level. Squares with a corner that has
/// no hitting time are skipped, so every vertex lies on an edge between two
/// cells whose hitting times straddle the level.
std::vector<ContourSet> iso_time_contours(const PhaseGrid& grid, const std::vector<double>& levels);

}  // namespace debtrec
