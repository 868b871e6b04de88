// Copyright 2026 The qrc Authors
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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrc/csv.hpp"

namespace qrc {

class PlotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<Series> series;
    // data-space axis limits; on log axes these are log10 values
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
};

struct Figure {
    std::string name;
    std::vector<Panel> panels;
};

/// Recipes:
///   fig4       c_total vs j_scale, one panel per (gamma, f), one curve per sigma
///   fig5/6/7   c_total vs ent_mean and vs coh_mean at gamma = 0.01 with
///              f = 5 / 0.2 / 1 respectively, one curve per sigma
/// Points are seed-averaged per j_scale. Rows whose status is not "ok" are skipped.
Figure build_figure(const CsvTable& table, const std::string& recipe);

std::string render_svg(const Figure& figure);

/// Writes <out_dir>/<recipe>.svg and returns its path.
std::filesystem::path emit_plots(const std::filesystem::path& csv_path, const std::string& recipe,
                                 const std::filesystem::path& out_dir);

}  // namespace qrc
