#include "gridtie/config.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

namespace gridtie {

namespace {

struct KeyEntry {
    std::string_view name;
    double Config::* member;
};

constexpr std::array<KeyEntry, 11> kKeys{{
    {"vs_volts", &Config::vs_volts},
    {"vdc_volts", &Config::vdc_volts},
    {"vq_grid_volts", &Config::vq_grid_volts},
    {"r_grid_ohms", &Config::r_grid_ohms},
    {"l_grid_henries", &Config::l_grid_henries},
    {"f_grid_hz", &Config::f_grid_hz},
    {"l_conv_henries", &Config::l_conv_henries},
    {"c1_farads", &Config::c1_farads},
    {"c2_farads", &Config::c2_farads},
    {"f_sw_hz", &Config::f_sw_hz},
    {"p_target_watts", &Config::p_target_watts},
}};

constexpr std::array<std::string_view, 11> kKeyNames = [] {
    std::array<std::string_view, 11> names{};
    for (std::size_t i = 0; i < kKeys.size(); ++i) names[i] = kKeys[i].name;
    return names;
}();

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::span<const std::string_view> config_keys() { return kKeyNames; }

void apply_override(Config& cfg, std::string_view key, std::string_view value) {
    for (const auto& entry : kKeys) {
        if (entry.name != key) continue;
        double parsed = 0.0;
        const char* first = value.data();
        const char* last = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(first, last, parsed);
        if (ec != std::errc{} || ptr != last || !std::isfinite(parsed) || !(parsed > 0.0)) {
            throw Error(Errc::bad_config, "config value for '" + std::string(key) +
                                              "' must be a positive real, got '" +
                                              std::string(value) + "'");
        }
        cfg.*entry.member = parsed;
        return;
    }
    throw Error(Errc::bad_config, "unknown config key '" + std::string(key) + "'");
}

void load_config_file(Config& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::bad_config, "cannot open config file " + path.string());
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s{line};
        if (const auto hash = s.find('#'); hash != std::string_view::npos) {
            s = s.substr(0, hash);
        }
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw Error(Errc::bad_config, path.string() + ":" + std::to_string(lineno) +
                                              ": expected 'key = value'");
        }
        apply_override(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
}

GridParams grid_params(const Config& cfg) {
    GridParams g;
    g.resistance = cfg.r_grid_ohms;
    g.inductance = cfg.l_grid_henries;
    g.frequency_hz = cfg.f_grid_hz;
    g.vqg = cfg.vq_grid_volts;
    g.vdc = cfg.vdc_volts;
    return g;
}

ConverterParams converter_params(const Config& cfg, double vo_target) {
    ConverterParams p;
    p.inductance = cfg.l_conv_henries;
    p.c1 = cfg.c1_farads;
    p.c2 = cfg.c2_farads;
    p.vs = cfg.vs_volts;
    p.load = ResistiveLoad{vo_target * vo_target / cfg.p_target_watts};
    return p;
}

}  // namespace gridtie
