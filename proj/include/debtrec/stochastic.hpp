#pragma once

// Monte Carlo engine for the stochastic equity/mortgage recursion.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "debtrec/model.hpp"
#include "debtrec/rng.hpp"

namespace debtrec {

struct ShockTriple {
    int sigma = 1;       // investment outcome, +1 or -1
    double r = 0.0;      // housing return for the quarter
    double pi = 0.0;     // payment made, 0 or pi*
};

struct State {
    double equity = 0.0;
    double mortgage = 0.0;
    int quarter = 0;

    double house_value() const noexcept { return equity + mortgage; }
    double usable_equity(double ell) const noexcept { return ell * equity; }

    bool operator==(const State&) const = default;
};

struct PathResult {
    Outcome outcome;
    /// Quarters 0..t_star (or 0..horizon), present when requested.
    std::optional<MeanPath> trajectory;

    bool operator==(const PathResult&) const = default;
};

/// Per-quarter first and second moments of an ensemble, length horizon + 1.
struct MomentSeries {
    std::vector<double> mean_equity;
    std::vector<double> mean_mortgage;
    std::vector<double> se_equity;
    std::vector<double> se_mortgage;

    bool operator==(const MomentSeries&) const = default;
};

struct EnsembleStats {
    std::uint64_t n_paths = 0;
    std::array<std::uint64_t, kOutcomeClassCount> outcome_counts{};

    /// Absorbed paths are held at their terminal state from t_star onward.
    MomentSeries frozen;

    /// The same shocks applied without absorption. Its expectation is exactly
    /// the closed-form mean path, so this is the series to compare against
    /// mean_trajectory.
    MomentSeries free;

    /// Average hitting time per class; absent for classes with no paths and
    /// always absent for PermanentRemortgage.
    std::array<std::optional<double>, kOutcomeClassCount> mean_t_star{};

    std::uint64_t count(OutcomeClass cls) const noexcept {
        return outcome_counts[static_cast<std::size_t>(cls)];
    }

    bool operator==(const EnsembleStats&) const = default;
};

struct EnsembleOptions {
    unsigned workers = 0;  // 0: one per hardware thread
};

/// Draw order is fixed: sigma, then r, then pi. Every draw is consumed even
/// when its distribution is degenerate, so paths that share a seed see the
/// same underlying uniforms regardless of fiscal parameters.
ShockTriple draw_shocks(RandomStream& rng, const LoanParams& loan, const MarketParams& market);

/// One quarter of the stochastic recursion. Negative balances are returned
/// as-is; absorption is the caller's concern.
State step(const State& state, const ShockTriple& shocks, const LoanParams& loan,
           const FiscalParams& fiscal) noexcept;

PathResult simulate_path(const LoanParams& loan, const FiscalParams& fiscal,
                         const MarketParams& market, int horizon, std::uint64_t seed,
                         bool keep_trajectory = false);

/// Path i uses the stream seeded with path_seed(master_seed, i). Results are
/// bit-identical for any worker count.
EnsembleStats simulate_ensemble(const LoanParams& loan, const FiscalParams& fiscal,
                                const MarketParams& market, int horizon,
                                std::uint64_t n_paths, std::uint64_t master_seed,
                                const EnsembleOptions& options = {});

}  // namespace debtrec
