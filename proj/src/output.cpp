#include "twolane/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twolane {

std::string format_cell(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string time_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string spacetime_csv(const TrajectoryRecord& record, std::size_t lane) {
  std::ostringstream os;
  os << "time_s";
  const std::size_t n = record.samples.empty() ? 0 : record.samples.front()[lane].headways.size();
  for (std::size_t i = 0; i < n; ++i) os << ",h" << i << "_m";
  os << "\n";
  for (std::size_t s = 0; s < record.times.size(); ++s) {
    os << format_cell(record.times[s]);
    for (double h : record.samples[s][lane].headways) os << "," << format_cell(h);
    os << "\n";
  }
  return os.str();
}

std::string profile_csv(const TrajectoryRecord& record, std::size_t lane, std::size_t sample) {
  const auto& s = record.samples.at(sample)[lane];
  std::ostringstream os;
  os << "index,headway_m,velocity_m_s\n";
  for (std::size_t i = 0; i < s.headways.size(); ++i) {
    os << i << "," << format_cell(s.headways[i]) << "," << format_cell(s.velocities[i]) << "\n";
  }
  return os.str();
}

std::size_t nearest_sample(const TrajectoryRecord& record, double time) {
  if (record.times.empty()) throw std::invalid_argument("record has no samples");
  std::size_t best = 0;
  for (std::size_t i = 1; i < record.times.size(); ++i) {
    if (std::abs(record.times[i] - time) < std::abs(record.times[best] - time)) best = i;
  }
  return best;
}

namespace {

std::vector<std::pair<double, double>> read_xy(std::string_view text) {
  std::vector<std::pair<double, double>> pts;
  std::size_t pos = 0;
  int line_no = 0;
  bool header = true;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto c1 = line.find(',');
    if (c1 == std::string_view::npos) {
      throw std::invalid_argument("profile CSV line " + std::to_string(line_no) +
                                  ": expected at least two columns");
    }
    auto c2 = line.find(',', c1 + 1);
    if (c2 == std::string_view::npos) c2 = line.size();
    double x = 0.0, y = 0.0;
    const auto a = line.substr(0, c1);
    const auto b = line.substr(c1 + 1, c2 - c1 - 1);
    auto ra = std::from_chars(a.data(), a.data() + a.size(), x);
    auto rb = std::from_chars(b.data(), b.data() + b.size(), y);
    if (ra.ec != std::errc() || ra.ptr != a.data() + a.size() || rb.ec != std::errc() ||
        rb.ptr != b.data() + b.size() || !std::isfinite(x) || !std::isfinite(y)) {
      throw std::invalid_argument("profile CSV line " + std::to_string(line_no) +
                                  ": non-numeric cell");
    }
    pts.emplace_back(x, y);
  }
  if (pts.empty()) throw std::invalid_argument("profile CSV has no data rows");
  return pts;
}

}  // namespace

std::string render_profile_svg(std::string_view csv_text) {
  const auto pts = read_xy(csv_text);

  constexpr double width = 640, height = 360;
  constexpr double left = 70, right = 20, top = 20, bottom = 50;
  double x_lo = pts.front().first, x_hi = x_lo, y_lo = pts.front().second, y_hi = y_lo;
  for (const auto& [x, y] : pts) {
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }
  // Flat profiles get a 1 m band so the line sits mid-plot.
  if (y_hi - y_lo < 1e-9) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  if (x_hi - x_lo < 1e-9) x_hi = x_lo + 1.0;
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto sy = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * ph; };

  char buf[128];
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"360\" "
        "viewBox=\"0 0 640 360\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"360\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                left, top, pw, ph);
  os << buf;
  os << "<polyline fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", sx(pts[i].first), sy(pts[i].second));
    os << buf;
  }
  os << "\"/>\n";
  auto text = [&](double x, double y, const char* anchor, const std::string& s, int rotate = 0) {
    if (rotate) {
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"%s\" "
                    "transform=\"rotate(%d %.2f %.2f)\">",
                    x, y, anchor, rotate, x, y);
    } else {
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"%s\">", x, y, anchor);
    }
    os << buf << s << "</text>\n";
  };
  auto num = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", v);
    return std::string(b);
  };
  text(left, height - bottom + 16, "start", num(x_lo));
  text(width - right, height - bottom + 16, "end", num(x_hi));
  text(left - 6, top + 10, "end", num(y_hi));
  text(left - 6, height - bottom, "end", num(y_lo));
  text(left + pw / 2, height - 12, "middle", "vehicle index n");
  text(18, top + ph / 2, "middle", "headway (m)", -90);
  os << "</svg>\n";
  return os.str();
}

void render_profile_plot(const std::filesystem::path& csv, const std::filesystem::path& out) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + csv.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  write_file_atomic(out, render_profile_svg(buf.str()));
}

}  // namespace twolane
