#pragma once

// Country and ownership presets for Australia, Germany and Switzerland.

#include <span>
#include <string>
#include <string_view>

#include "debtrec/model.hpp"

namespace debtrec {

enum class Ownership { Owner, Rental };

std::string_view ownership_name(Ownership o) noexcept;

/// Annual-rate form of FiscalParams.
struct FiscalAnnual {
    double r_m_annual = 0.0;
    double r_b_annual = 0.0;
    double tau_m = 0.0;
    double tau_b = 0.0;

    /// Converts both rates with annual_to_quarterly.
    FiscalParams to_quarterly() const;

    bool operator==(const FiscalAnnual&) const = default;
};

struct CountryPreset {
    std::string name;
    FiscalAnnual fiscal_annual;
    double s_min = 0.0;
    double s_max = 0.0;
    Ownership ownership = Ownership::Owner;

    FiscalParams fiscal() const { return fiscal_annual.to_quarterly(); }

    bool operator==(const CountryPreset&) const = default;
};

std::span<const CountryPreset> all_presets() noexcept;

/// Throws ValidationError listing the valid names when `name` is unknown.
const CountryPreset& load_preset(std::string_view name);

}  // namespace debtrec
