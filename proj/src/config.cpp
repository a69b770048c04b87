#include "debtrec/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "debtrec/errors.hpp"

namespace debtrec {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ValidationError("config key '" + std::string(key) + "': cannot parse '" +
                              std::string(text) + "' as a number");
    }
    return value;
}

using Setter = std::function<void(RunConfig&, const CountryPreset&, std::string_view key,
                                  std::string_view value)>;

Setter real(double LoanParams::*field) {
    return [field](RunConfig& c, const CountryPreset&, std::string_view k, std::string_view v) {
        c.loan.*field = parse_number<double>(k, v);
    };
}

Setter real(double FiscalAnnual::*field) {
    return [field](RunConfig& c, const CountryPreset&, std::string_view k, std::string_view v) {
        c.fiscal_annual.*field = parse_number<double>(k, v);
    };
}

Setter real(double MarketParams::*field) {
    return [field](RunConfig& c, const CountryPreset&, std::string_view k, std::string_view v) {
        c.market.*field = parse_number<double>(k, v);
    };
}

Setter grid_real(double GridSpec::*field) {
    return [field](RunConfig& c, const CountryPreset& preset, std::string_view k,
                   std::string_view v) {
        GridSpec g = c.grid_or_default(preset);
        g.*field = parse_number<double>(k, v);
        c.grid = g;
    };
}

Setter grid_int(int GridSpec::*field) {
    return [field](RunConfig& c, const CountryPreset& preset, std::string_view k,
                   std::string_view v) {
        GridSpec g = c.grid_or_default(preset);
        g.*field = parse_number<int>(k, v);
        c.grid = g;
    };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table{
        {"loan.ell", real(&LoanParams::ell)},
        {"loan.mu", real(&LoanParams::mu)},
        {"loan.e0", real(&LoanParams::e0)},
        {"loan.m0", real(&LoanParams::m0)},
        {"loan.pi_star", real(&LoanParams::pi_star)},
        {"loan.q_skip", real(&LoanParams::q_skip)},
        {"fiscal.r_m_annual", real(&FiscalAnnual::r_m_annual)},
        {"fiscal.r_b_annual", real(&FiscalAnnual::r_b_annual)},
        {"fiscal.tau_m", real(&FiscalAnnual::tau_m)},
        {"fiscal.tau_b", real(&FiscalAnnual::tau_b)},
        {"market.p", real(&MarketParams::p)},
        {"market.s", real(&MarketParams::s)},
        {"market.phi", real(&MarketParams::phi)},
        {"sim.horizon",
         [](RunConfig& c, const CountryPreset&, std::string_view k, std::string_view v) {
             c.horizon = parse_number<int>(k, v);
         }},
        {"sim.n_paths",
         [](RunConfig& c, const CountryPreset&, std::string_view k, std::string_view v) {
             c.n_paths = parse_number<std::uint64_t>(k, v);
         }},
        {"sim.seed",
         [](RunConfig& c, const CountryPreset&, std::string_view k, std::string_view v) {
             c.master_seed = parse_number<std::uint64_t>(k, v);
         }},
        {"grid.p_min", grid_real(&GridSpec::p_min)},
        {"grid.p_max", grid_real(&GridSpec::p_max)},
        {"grid.s_min", grid_real(&GridSpec::s_min)},
        {"grid.s_max", grid_real(&GridSpec::s_max)},
        {"grid.n_p", grid_int(&GridSpec::n_p)},
        {"grid.n_s", grid_int(&GridSpec::n_s)},
    };
    return table;
}

void check_annual(double value, const char* key) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ValidationError(std::string(key) + " must satisfy >= 0");
    }
}

}  // namespace

void RunConfig::validate() const {
    loan.validate();
    check_annual(fiscal_annual.r_m_annual, "fiscal.r_m_annual");
    check_annual(fiscal_annual.r_b_annual, "fiscal.r_b_annual");
    fiscal.validate();
    market.validate();
    if (horizon < 1) {
        throw ValidationError("sim.horizon must satisfy >= 1");
    }
    if (n_paths < 1) {
        throw ValidationError("sim.n_paths must satisfy >= 1");
    }
    if (grid) {
        grid->validate();
    }
}

GridSpec RunConfig::grid_or_default(const CountryPreset& preset) const {
    if (grid) {
        return *grid;
    }
    GridSpec g;
    g.s_min = preset.s_min;
    g.s_max = preset.s_max;
    return g;
}

RunConfig default_config(const CountryPreset& preset) {
    RunConfig c;
    c.preset = preset.name;
    c.fiscal_annual = preset.fiscal_annual;
    c.fiscal = preset.fiscal();
    return c;
}

RunConfig parse_config_text(std::string_view text, const CountryPreset& preset) {
    RunConfig c = default_config(preset);
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" +
                                  std::string(key) + "'");
        }
        it->second(c, preset, key, value);
    }
    check_annual(c.fiscal_annual.r_m_annual, "fiscal.r_m_annual");
    check_annual(c.fiscal_annual.r_b_annual, "fiscal.r_b_annual");
    c.fiscal = c.fiscal_annual.to_quarterly();
    c.validate();
    return c;
}

RunConfig parse_config(const std::filesystem::path& path, const CountryPreset& preset) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), preset);
}

}  // namespace debtrec
