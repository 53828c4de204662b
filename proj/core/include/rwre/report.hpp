#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rwre {

// Shortest round-trip decimal form; stable across runs and thread counts.
std::string format_double(double v);

// Writes via a temp file and rename so readers never see partial artifacts.
// I/O failures are reported with the path attached.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

// Two-column plot series, "# x y" header then one "x y" line per point.
std::string plot_series(const std::string& x_name, const std::string& y_name,
                        const std::vector<std::pair<double, double>>& points);

}  // namespace rwre
