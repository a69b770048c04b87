#include "debtrec/presets.hpp"

#include <array>

#include "debtrec/errors.hpp"

namespace debtrec {

namespace {

// Rates are annual; s ranges are per quarter.
const std::array<CountryPreset, 6> kPresets{{
    {"australia_owner", {0.0607, 0.0835, 0.0, 0.32}, -0.04, 0.04, Ownership::Owner},
    {"australia_rental", {0.0628, 0.0835, 0.32, 0.32}, -0.04, 0.04, Ownership::Rental},
    {"germany_owner", {0.0369, 0.0534, 0.0, 0.0}, -0.06, 0.06, Ownership::Owner},
    {"germany_rental", {0.0369, 0.0534, 0.375, 0.0}, -0.06, 0.06, Ownership::Rental},
    {"switzerland_owner", {0.0162, 0.0162, 0.201, 0.201}, -0.02, 0.02, Ownership::Owner},
    {"switzerland_rental", {0.0162, 0.0162, 0.201, 0.201}, -0.02, 0.02, Ownership::Rental},
}};

}  // namespace

std::string_view ownership_name(Ownership o) noexcept {
    return o == Ownership::Owner ? "owner" : "rental";
}

FiscalParams FiscalAnnual::to_quarterly() const {
    return {annual_to_quarterly(r_m_annual), annual_to_quarterly(r_b_annual), tau_m, tau_b};
}

std::span<const CountryPreset> all_presets() noexcept { return kPresets; }

const CountryPreset& load_preset(std::string_view name) {
    for (const CountryPreset& preset : kPresets) {
        if (preset.name == name) {
            return preset;
        }
    }
    std::string valid;
    for (const CountryPreset& preset : kPresets) {
        valid += valid.empty() ? "" : ", ";
        valid += preset.name;
    }
    throw ValidationError("unknown preset '" + std::string(name) + "'; valid presets: " + valid);
}

}  // namespace debtrec
