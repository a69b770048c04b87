#pragma once

// Run configuration: a preset plus key-by-key overrides from a flat
// `key = value` file.
//
//     # comment
//     loan.e0 = 30000
//     fiscal.r_m_annual = 0.0607
//     market.phi = 0.01
//     sim.horizon = 400
//     grid.n_p = 201
//
// Recognised keys:
//   loan.ell loan.mu loan.e0 loan.m0 loan.pi_star loan.q_skip
//   fiscal.r_m_annual fiscal.r_b_annual fiscal.tau_m fiscal.tau_b
//   market.p market.s market.phi
//   sim.horizon sim.n_paths sim.seed
//   grid.p_min grid.p_max grid.s_min grid.s_max grid.n_p grid.n_s

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "debtrec/model.hpp"
#include "debtrec/phase.hpp"
#include "debtrec/presets.hpp"

namespace debtrec {

struct RunConfig {
    std::string preset;
    LoanParams loan;
    FiscalAnnual fiscal_annual;
    FiscalParams fiscal;  // quarterly, derived from fiscal_annual
    MarketParams market;
    int horizon = kDefaultHorizon;
    std::uint64_t n_paths = 100000;
    std::uint64_t master_seed = 0;
    std::optional<GridSpec> grid;

    /// All component invariants; throws ValidationError.
    void validate() const;

    /// The configured grid, or the preset default: p over [0, 1], s over the
    /// preset's range, 201 x 201.
    GridSpec grid_or_default(const CountryPreset& preset) const;

    bool operator==(const RunConfig&) const = default;
};

/// Defaults for a preset with no overrides.
RunConfig default_config(const CountryPreset& preset);

/// Applies overrides from `text` on top of default_config(preset). Unknown
/// keys, malformed values and invariant violations throw ValidationError
/// naming the key.
RunConfig parse_config_text(std::string_view text, const CountryPreset& preset);

/// Reads `path` and forwards to parse_config_text. Throws IoError when the
/// file cannot be read.
RunConfig parse_config(const std::filesystem::path& path, const CountryPreset& preset);

}  // namespace debtrec
