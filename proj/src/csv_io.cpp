#include "gridtie/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "gridtie/errors.hpp"

namespace gridtie {

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string out{buf};
    // Normalize the sign of zero so output is stable across libm quirks.
    if (out.find_first_of("123456789") == std::string::npos && !out.empty() && out[0] == '-') {
        out.erase(out.begin());
    }
    return out;
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (!dir.empty()) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) {
            throw Error(Errc::bad_argument, "cannot create directory " + dir.string());
        }
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(Errc::bad_argument, "cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error(Errc::bad_argument, "short write to " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(Errc::bad_argument, "cannot rename " + tmp.string() + " to " + path.string());
    }
}

std::string waveform_csv(std::span<const Waveform> waves, int decimals) {
    if (waves.empty()) {
        throw Error(Errc::bad_argument, "no waveforms to serialize");
    }
    const std::size_t n = waves.front().samples.size();
    for (const auto& w : waves) {
        if (w.samples.size() != n) {
            throw Error(Errc::bad_argument, "waveform '" + w.name + "' length mismatch");
        }
    }
    std::string out = "t";
    for (const auto& w : waves) {
        out += ',';
        out += w.name;
    }
    out += '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out += format_fixed(waves.front().time_at(i), decimals);
        for (const auto& w : waves) {
            out += ',';
            out += format_fixed(w.samples[i], decimals);
        }
        out += '\n';
    }
    return out;
}

}  // namespace gridtie
