// Copyright 2026 The homcascade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace homcascade::cli {

namespace {

constexpr double kWidth = 640, kPanelHeight = 240, kMargin = 40;

struct Frame {
  double x0, x1, y0, y1, top;
  double px(double x) const { return kMargin + (x - x0) / std::max(x1 - x0, 1e-300) * (kWidth - 2 * kMargin); }
  double py(double y) const { return top + kPanelHeight - kMargin - (y - y0) / std::max(y1 - y0, 1e-300) * (kPanelHeight - 2 * kMargin); }
};

Frame frame_for(const std::vector<const Series*>& series, double top) {
  Frame f{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(), 0.0,
          std::numeric_limits<double>::lowest(), top};
  for (const Series* s : series) {
    for (double x : s->x) f.x0 = std::min(f.x0, x), f.x1 = std::max(f.x1, x);
    for (double y : s->y) f.y1 = std::max(f.y1, y);
  }
  if (f.x0 > f.x1) f.x0 = 0, f.x1 = 1;
  if (f.y1 <= 0) f.y1 = 1;
  return f;
}

void axes(std::ofstream& os, const Frame& f, const std::string& label) {
  os << "<rect x='" << kMargin << "' y='" << f.top + kMargin << "' width='" << kWidth - 2 * kMargin << "' height='"
     << kPanelHeight - 2 * kMargin << "' fill='none' stroke='#444'/>\n";
  os << "<text x='" << kMargin << "' y='" << f.top + kMargin - 8 << "' font-size='12'>" << label << " (x: " << f.x0
     << "..." << f.x1 << ", y max " << f.y1 << ")</text>\n";
}

}  // namespace

void write_line_plot(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series) {
  std::ofstream os(path);
  std::vector<const Series*> all;
  for (const auto& s : series) all.push_back(&s);
  const Frame f = frame_for(all, 0);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kPanelHeight << "'>\n";
  axes(os, f, title);
  double legend_y = kMargin + 14;
  for (const auto& s : series) {
    os << "<polyline fill='none' stroke='" << s.color << "' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i) os << f.px(s.x[i]) << ',' << f.py(s.y[i]) << ' ';
    os << "'/>\n<text x='" << kWidth - kMargin - 60 << "' y='" << legend_y << "' fill='" << s.color
       << "' font-size='12'>" << s.label << "</text>\n";
    legend_y += 14;
  }
  os << "</svg>\n";
}

void write_histogram_plot(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& panels) {
  std::ofstream os(path);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kPanelHeight * panels.size()
     << "'>\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Series& s = panels[p];
    const Frame f = frame_for({&s}, kPanelHeight * static_cast<double>(p));
    axes(os, f, title + ": " + s.label);
    // x holds bin edges (size y + 1).
    os << "<polyline fill='none' stroke='" << s.color << "' points='";
    for (std::size_t i = 0; i < s.y.size(); ++i)
      os << f.px(s.x[i]) << ',' << f.py(s.y[i]) << ' ' << f.px(s.x[i + 1]) << ',' << f.py(s.y[i]) << ' ';
    os << "'/>\n";
  }
  os << "</svg>\n";
}

}  // namespace homcascade::cli
