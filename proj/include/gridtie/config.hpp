#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "gridtie/inverter_dq.hpp"
#include "gridtie/tlb_converter.hpp"

namespace gridtie {

// Flat parameter set shared by all commands. Every key must be a positive
// real; unknown keys are rejected.
struct Config {
    double vs_volts = 400.0;
    double vdc_volts = 400.0;
    double vq_grid_volts = 160.0;
    double r_grid_ohms = 0.1;
    double l_grid_henries = 1.0e-3;
    double f_grid_hz = 60.0;
    double l_conv_henries = 0.2e-3;
    double c1_farads = 250e-6;
    double c2_farads = 250e-6;
    double f_sw_hz = 18e3;
    double p_target_watts = 600.0;
};

std::span<const std::string_view> config_keys();

// Sets one key, value given as text. Throws bad_config for unknown keys or
// values that do not parse as positive reals.
void apply_override(Config& cfg, std::string_view key, std::string_view value);

// "key = value" lines; '#' starts a comment, blank lines ignored.
void load_config_file(Config& cfg, const std::filesystem::path& path);

GridParams grid_params(const Config& cfg);

// Converter parameters with a resistive load drawing p_target at vo_target.
ConverterParams converter_params(const Config& cfg, double vo_target);

}  // namespace gridtie
