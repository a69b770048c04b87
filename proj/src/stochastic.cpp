#include "debtrec/stochastic.hpp"

#include <cmath>

#include "debtrec/errors.hpp"
#include "debtrec/parallel.hpp"

namespace debtrec {

namespace {

// Fixed block size: aggregation order depends only on n_paths, never on the
// number of workers.
constexpr std::uint64_t kBlockPaths = 512;

void validate_run(const LoanParams& loan, const FiscalParams& fiscal, const MarketParams& market,
                  int horizon) {
    loan.validate();
    fiscal.validate();
    market.validate();
    if (horizon < 1) {
        throw ValidationError("horizon must satisfy >= 1");
    }
}

// Running mean and sum of squared deviations for one per-quarter series.
struct Moments {
    std::vector<double> mean;
    std::vector<double> m2;

    explicit Moments(std::size_t len) : mean(len, 0.0), m2(len, 0.0) {}

    void add(std::size_t t, double x, double n) {
        const double delta = x - mean[t];
        mean[t] += delta / n;
        m2[t] += delta * (x - mean[t]);
    }

    // Chan et al. pairwise combination.
    void merge(const Moments& other, double n_self, double n_other) {
        const double n = n_self + n_other;
        for (std::size_t t = 0; t < mean.size(); ++t) {
            const double delta = other.mean[t] - mean[t];
            mean[t] += delta * n_other / n;
            m2[t] += other.m2[t] + delta * delta * n_self * n_other / n;
        }
    }

    std::vector<double> standard_error(double n) const {
        std::vector<double> se(mean.size(), 0.0);
        if (n < 2.0) {
            return se;
        }
        for (std::size_t t = 0; t < se.size(); ++t) {
            se[t] = std::sqrt(std::max(m2[t], 0.0) / (n - 1.0) / n);
        }
        return se;
    }
};

struct BlockAccumulator {
    std::uint64_t n = 0;
    Moments frozen_e, frozen_m, free_e, free_m;
    std::array<std::uint64_t, kOutcomeClassCount> counts{};
    std::array<std::uint64_t, kOutcomeClassCount> t_star_sum{};

    explicit BlockAccumulator(std::size_t len)
        : frozen_e(len), frozen_m(len), free_e(len), free_m(len) {}

    void merge(const BlockAccumulator& other) {
        if (other.n == 0) {
            return;
        }
        if (n == 0) {
            *this = other;
            return;
        }
        const double a = static_cast<double>(n);
        const double b = static_cast<double>(other.n);
        frozen_e.merge(other.frozen_e, a, b);
        frozen_m.merge(other.frozen_m, a, b);
        free_e.merge(other.free_e, a, b);
        free_m.merge(other.free_m, a, b);
        for (std::size_t k = 0; k < kOutcomeClassCount; ++k) {
            counts[k] += other.counts[k];
            t_star_sum[k] += other.t_star_sum[k];
        }
        n += other.n;
    }
};

}  // namespace

ShockTriple draw_shocks(RandomStream& rng, const LoanParams& loan, const MarketParams& market) {
    ShockTriple shocks;
    shocks.sigma = rng.bernoulli(market.p) ? 1 : -1;
    shocks.r = market.s + market.phi * rng.normal();
    shocks.pi = rng.bernoulli(loan.q_skip) ? 0.0 : loan.pi_star;
    return shocks;
}

State step(const State& state, const ShockTriple& shocks, const LoanParams& loan,
           const FiscalParams& fiscal) noexcept {
    const double usable = state.usable_equity(loan.ell);
    const double investment = shocks.sigma * loan.mu * usable;
    const double house = state.house_value();
    State next;
    next.equity = state.equity + shocks.pi + investment + house * shocks.r -
                  (1.0 - fiscal.tau_b) * fiscal.r_b * usable +
                  fiscal.tau_m * fiscal.r_m * state.mortgage;
    next.mortgage = (1.0 + fiscal.r_m) * state.mortgage - shocks.pi - investment;
    next.quarter = state.quarter + 1;
    return next;
}

PathResult simulate_path(const LoanParams& loan, const FiscalParams& fiscal,
                         const MarketParams& market, int horizon, std::uint64_t seed,
                         bool keep_trajectory) {
    validate_run(loan, fiscal, market, horizon);
    RandomStream rng(seed);
    State state{loan.e0, loan.m0, 0};
    PathResult result;
    if (keep_trajectory) {
        result.trajectory.emplace();
        result.trajectory->reserve(static_cast<std::size_t>(horizon) + 1);
        result.trajectory->push_back({state.equity, state.mortgage});
    }
    for (int t = 1; t <= horizon; ++t) {
        state = step(state, draw_shocks(rng, loan, market), loan, fiscal);
        if (keep_trajectory) {
            result.trajectory->push_back({state.equity, state.mortgage});
        }
        const bool e_hit = state.equity <= 0.0;
        const bool m_hit = state.mortgage <= 0.0;
        if (e_hit || m_hit) {
            result.outcome = classify_hit(e_hit, m_hit, t, loan);
            return result;
        }
    }
    result.outcome = {OutcomeClass::PermanentRemortgage, std::nullopt};
    return result;
}

EnsembleStats simulate_ensemble(const LoanParams& loan, const FiscalParams& fiscal,
                                const MarketParams& market, int horizon,
                                std::uint64_t n_paths, std::uint64_t master_seed,
                                const EnsembleOptions& options) {
    validate_run(loan, fiscal, market, horizon);
    if (n_paths < 1) {
        throw ValidationError("n_paths must satisfy >= 1");
    }
    const std::size_t len = static_cast<std::size_t>(horizon) + 1;
    const std::uint64_t n_blocks = (n_paths + kBlockPaths - 1) / kBlockPaths;
    std::vector<BlockAccumulator> blocks(n_blocks, BlockAccumulator(len));

    parallel_for(n_blocks, options.workers, [&](std::size_t b) {
        BlockAccumulator& acc = blocks[b];
        const std::uint64_t first = b * kBlockPaths;
        const std::uint64_t last = std::min(n_paths, first + kBlockPaths);
        for (std::uint64_t i = first; i < last; ++i) {
            const double n = static_cast<double>(++acc.n);
            RandomStream rng(path_seed(master_seed, i));
            State frozen{loan.e0, loan.m0, 0};
            State free = frozen;
            std::optional<Outcome> absorbed;
            acc.frozen_e.add(0, frozen.equity, n);
            acc.frozen_m.add(0, frozen.mortgage, n);
            acc.free_e.add(0, free.equity, n);
            acc.free_m.add(0, free.mortgage, n);
            for (int t = 1; t <= horizon; ++t) {
                free = step(free, draw_shocks(rng, loan, market), loan, fiscal);
                if (!absorbed) {
                    frozen = free;
                    const bool e_hit = frozen.equity <= 0.0;
                    const bool m_hit = frozen.mortgage <= 0.0;
                    if (e_hit || m_hit) {
                        absorbed = classify_hit(e_hit, m_hit, t, loan);
                    }
                }
                const auto ts = static_cast<std::size_t>(t);
                acc.frozen_e.add(ts, frozen.equity, n);
                acc.frozen_m.add(ts, frozen.mortgage, n);
                acc.free_e.add(ts, free.equity, n);
                acc.free_m.add(ts, free.mortgage, n);
            }
            const Outcome outcome =
                absorbed.value_or(Outcome{OutcomeClass::PermanentRemortgage, std::nullopt});
            const auto k = static_cast<std::size_t>(outcome.cls);
            ++acc.counts[k];
            if (outcome.t_star) {
                acc.t_star_sum[k] += static_cast<std::uint64_t>(*outcome.t_star);
            }
        }
    });

    BlockAccumulator total(len);
    for (const BlockAccumulator& block : blocks) {
        total.merge(block);
    }

    EnsembleStats stats;
    stats.n_paths = total.n;
    stats.outcome_counts = total.counts;
    const double n = static_cast<double>(total.n);
    stats.frozen = {total.frozen_e.mean, total.frozen_m.mean, total.frozen_e.standard_error(n),
                    total.frozen_m.standard_error(n)};
    stats.free = {total.free_e.mean, total.free_m.mean, total.free_e.standard_error(n),
                  total.free_m.standard_error(n)};
    for (std::size_t k = 0; k < kOutcomeClassCount; ++k) {
        if (k != static_cast<std::size_t>(OutcomeClass::PermanentRemortgage) && total.counts[k] > 0) {
            stats.mean_t_star[k] =
                static_cast<double>(total.t_star_sum[k]) / static_cast<double>(total.counts[k]);
        }
    }
    return stats;
}

}  // namespace debtrec
