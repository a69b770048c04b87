#include "debtrec/phase.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "debtrec/errors.hpp"
#include "debtrec/parallel.hpp"
#include "debtrec/stochastic.hpp"

namespace debtrec {

namespace {

double axis_at(double lo, double hi, int n, int i) noexcept {
    if (i == n - 1) {
        return hi;
    }
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

int nearest_index(double lo, double hi, int n, double x) {
    const double pos = (x - lo) / (hi - lo) * static_cast<double>(n - 1);
    const long idx = std::lround(pos);
    return static_cast<int>(std::clamp<long>(idx, 0, n - 1));
}

Outcome majority_outcome(const LoanParams& loan, const FiscalParams& fiscal,
                         const MarketParams& market, int horizon, const SweepOptions& options,
                         std::uint64_t cell_index) {
    const EnsembleStats stats =
        simulate_ensemble(loan, fiscal, market, horizon, options.mc_paths,
                          path_seed(options.mc_seed, cell_index), EnsembleOptions{1});
    std::size_t best = 0;
    for (std::size_t k = 1; k < kOutcomeClassCount; ++k) {
        if (stats.outcome_counts[k] > stats.outcome_counts[best]) {
            best = k;
        }
    }
    Outcome outcome;
    outcome.cls = static_cast<OutcomeClass>(best);
    if (stats.mean_t_star[best]) {
        outcome.t_star = static_cast<int>(std::lround(*stats.mean_t_star[best]));
    }
    return outcome;
}

}  // namespace

void GridSpec::validate() const {
    auto fail = [](const char* what) { throw ValidationError(std::string("grid: ") + what); };
    if (!(std::isfinite(p_min) && std::isfinite(p_max) && p_min >= 0.0 && p_max <= 1.0 &&
          p_min < p_max)) {
        fail("p range must satisfy 0 <= p_min < p_max <= 1");
    }
    if (!(std::isfinite(s_min) && std::isfinite(s_max) && s_min < s_max)) {
        fail("s range must satisfy s_min < s_max");
    }
    if (n_p < 2 || n_s < 2) {
        fail("n_p and n_s must be >= 2");
    }
}

double GridSpec::p_at(int i) const noexcept { return axis_at(p_min, p_max, n_p, i); }

double GridSpec::s_at(int j) const noexcept { return axis_at(s_min, s_max, n_s, j); }

std::size_t PhaseGrid::count(OutcomeClass cls) const noexcept {
    std::size_t n = 0;
    for (const PhaseCell& cell : cells) {
        n += cell.outcome.cls == cls ? 1 : 0;
    }
    return n;
}

std::size_t PhaseGrid::success_count() const noexcept {
    return count(OutcomeClass::StrongSuccess) + count(OutcomeClass::WeakSuccess);
}

PhaseGrid sweep(const GridSpec& spec, const LoanParams& loan, const FiscalParams& fiscal,
                double phi, int horizon, const SweepOptions& options) {
    spec.validate();
    loan.validate();
    fiscal.validate();
    MarketParams{0.5, 0.0, phi}.validate();

    PhaseGrid grid;
    grid.spec = spec;
    const auto n_cells = static_cast<std::size_t>(spec.n_p) * static_cast<std::size_t>(spec.n_s);
    grid.cells.resize(n_cells);

    parallel_for(n_cells, options.workers, [&](std::size_t idx) {
        const int i = static_cast<int>(idx % static_cast<std::size_t>(spec.n_p));
        const int j = static_cast<int>(idx / static_cast<std::size_t>(spec.n_p));
        PhaseCell& cell = grid.cells[idx];
        cell.p = spec.p_at(i);
        cell.s = spec.s_at(j);
        const MarketParams market{cell.p, cell.s, phi};
        if (options.mode == SweepMode::MonteCarlo) {
            cell.outcome = majority_outcome(loan, fiscal, market, horizon, options, idx);
        } else {
            cell.outcome = classify_mean(loan, fiscal, market, horizon);
        }
    });
    return grid;
}

const PhaseCell& locate_point(const PhaseGrid& grid, double p, double s) {
    const GridSpec& spec = grid.spec;
    if (!(p >= spec.p_min && p <= spec.p_max && s >= spec.s_min && s <= spec.s_max)) {
        throw OutOfRangeError("point (p=" + std::to_string(p) + ", s=" + std::to_string(s) +
                              ") lies outside the grid");
    }
    const int i = nearest_index(spec.p_min, spec.p_max, spec.n_p, p);
    const int j = nearest_index(spec.s_min, spec.s_max, spec.n_s, s);
    return grid.at(i, j);
}

}  // namespace debtrec
