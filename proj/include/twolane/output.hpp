#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "twolane/simulator.hpp"

namespace twolane {

/// Decimal with 9 significant digits, the CSV cell format.
std::string format_cell(double x);

/// Writes `content` to `path` via a sibling temporary file and a rename, so
/// the final name never holds a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Rows = sample times, columns = vehicle indices, cells = headway (m).
std::string spacetime_csv(const TrajectoryRecord& record, std::size_t lane);

/// Headway and velocity of every vehicle at one sample.
std::string profile_csv(const TrajectoryRecord& record, std::size_t lane, std::size_t sample);

/// Index of the sample closest to `time`.
std::size_t nearest_sample(const TrajectoryRecord& record, double time);

/// `%g` rendering used in file names such as lane1_profile_t950.csv.
std::string time_label(double t);

/// SVG polyline of column 1 against column 0 of a profile CSV. Throws
/// std::invalid_argument on an empty or malformed table.
std::string render_profile_svg(std::string_view csv_text);

void render_profile_plot(const std::filesystem::path& csv, const std::filesystem::path& out);

}  // namespace twolane
