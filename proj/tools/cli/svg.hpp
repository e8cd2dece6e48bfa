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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace homcascade::cli {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal static line plot; a convenience view of the CSV outputs.
void write_line_plot(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series);

/// Step-outline histogram panels stacked vertically.
void write_histogram_plot(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& panels);

}  // namespace homcascade::cli
