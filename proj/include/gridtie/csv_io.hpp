#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "gridtie/switched_sim.hpp"

namespace gridtie {

// Fixed-point decimal, C locale, for byte-stable CSV output.
std::string format_fixed(double v, int decimals = 6);

// Writes via a temp file in the same directory, then renames into place.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

// Header "t,<name...>", one row per retained sample. All waveforms must
// share the same time grid.
std::string waveform_csv(std::span<const Waveform> waves, int decimals = 6);

}  // namespace gridtie
