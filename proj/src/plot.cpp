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

#include "qrc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace qrc {

namespace {

constexpr double kPanelWidth = 420.0;
constexpr double kPanelHeight = 320.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 48.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

struct Columns {
    std::size_t j_scale, gamma, f, sigma, c_total, status;
    std::optional<std::size_t> ent, coh;
};

Columns require_columns(const CsvTable& table, bool need_quantumness) {
    std::vector<std::string> needed{"j_scale", "gamma", "f", "sigma", "c_total", "status"};
    if (need_quantumness) needed.insert(needed.end(), {"ent_mean", "coh_mean"});
    std::vector<std::string> missing;
    for (const auto& name : needed) {
        if (!table.column(name)) missing.push_back(name);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw PlotError("CSV is missing required columns: " + list);
    }
    return Columns{*table.column("j_scale"), *table.column("gamma"),  *table.column("f"),
                   *table.column("sigma"),   *table.column("c_total"), *table.column("status"),
                   table.column("ent_mean"), table.column("coh_mean")};
}

// Averages over seeds: key (sigma, j_scale) -> running means of the requested columns.
struct Accumulator {
    double c_total = 0.0, ent = 0.0, coh = 0.0;
    int count = 0;
};

void fit_axes(Panel& panel) {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : panel.series) {
        for (auto [x, y] : s.points) {
            const double px = panel.log_x ? std::log10(x) : x;
            x0 = std::min(x0, px);
            x1 = std::max(x1, px);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!std::isfinite(x0)) {
        x0 = 0.0;
        x1 = 1.0;
        y0 = 0.0;
        y1 = 1.0;
    }
    auto pad = [](double& lo, double& hi) {
        const double span = hi - lo;
        const double p = span > 0.0 ? 0.05 * span : std::max(0.5, 0.05 * std::abs(lo));
        lo -= p;
        hi += p;
    };
    pad(x0, x1);
    pad(y0, y1);
    panel.x_min = x0;
    panel.x_max = x1;
    panel.y_min = y0;
    panel.y_max = y1;
}

std::string sigma_label(double sigma) { return sigma == 0.0 ? "sigma = 0" : "sigma = " + num(sigma); }

Figure capacity_vs_coupling(const CsvTable& table) {
    const Columns c = require_columns(table, false);
    // (gamma, f) -> sigma -> j_scale -> accumulator
    std::map<std::pair<double, double>, std::map<double, std::map<double, Accumulator>>> groups;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r][c.status] != "ok") continue;
        const double total = table.number(r, c.c_total);
        if (!std::isfinite(total)) continue;
        auto& acc = groups[{table.number(r, c.gamma), table.number(r, c.f)}][table.number(r, c.sigma)]
                          [table.number(r, c.j_scale)];
        acc.c_total += total;
        ++acc.count;
    }
    if (groups.empty()) throw PlotError("CSV has no successful rows to plot");

    Figure fig{"fig4", {}};
    for (const auto& [key, by_sigma] : groups) {
        Panel panel;
        panel.title = "gamma = " + num(key.first) + ", f = " + num(key.second);
        panel.x_label = "J_s";
        panel.y_label = "C_STM";
        panel.log_x = true;
        for (const auto& [sigma, by_j] : by_sigma) {
            Series s{sigma_label(sigma), {}};
            for (const auto& [j, acc] : by_j) {
                if (j <= 0.0) panel.log_x = false;
                s.points.emplace_back(j, acc.c_total / acc.count);
            }
            panel.series.push_back(std::move(s));
        }
        fit_axes(panel);
        fig.panels.push_back(std::move(panel));
    }
    return fig;
}

Figure capacity_vs_quantumness(const CsvTable& table, const std::string& name, double f_target) {
    constexpr double kGamma = 0.01;
    const Columns c = require_columns(table, true);
    std::map<double, std::map<double, Accumulator>> by_sigma;
    bool any_ok = false;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r][c.status] != "ok") continue;
        any_ok = true;
        if (!close(table.number(r, c.f), f_target) || !close(table.number(r, c.gamma), kGamma)) continue;
        const double total = table.number(r, c.c_total);
        if (!std::isfinite(total)) continue;
        auto& acc = by_sigma[table.number(r, c.sigma)][table.number(r, c.j_scale)];
        acc.c_total += total;
        acc.ent += table.number(r, *c.ent);
        acc.coh += table.number(r, *c.coh);
        ++acc.count;
    }
    if (!any_ok) throw PlotError("CSV has no successful rows to plot");
    if (by_sigma.empty()) {
        throw PlotError("recipe " + name + " needs rows with f = " + num(f_target) + " and gamma = " + num(kGamma));
    }

    Figure fig{name, {}};
    for (int which = 0; which < 2; ++which) {
        Panel panel;
        panel.title = "f = " + num(f_target) + ", gamma = " + num(kGamma);
        panel.x_label = which == 0 ? "log negativity (time average)" : "normalized l1 coherence (time average)";
        panel.y_label = "C_STM";
        for (const auto& [sigma, by_j] : by_sigma) {
            Series s{sigma_label(sigma), {}};
            for (const auto& [j, acc] : by_j) {
                const double x = (which == 0 ? acc.ent : acc.coh) / acc.count;
                s.points.emplace_back(x, acc.c_total / acc.count);
            }
            panel.series.push_back(std::move(s));
        }
        fit_axes(panel);
        fig.panels.push_back(std::move(panel));
    }
    return fig;
}

}  // namespace

Figure build_figure(const CsvTable& table, const std::string& recipe) {
    if (table.header.empty() || table.rows.empty()) throw PlotError("CSV is empty");
    if (recipe == "fig4") return capacity_vs_coupling(table);
    if (recipe == "fig5") return capacity_vs_quantumness(table, recipe, 5.0);
    if (recipe == "fig6") return capacity_vs_quantumness(table, recipe, 0.2);
    if (recipe == "fig7") return capacity_vs_quantumness(table, recipe, 1.0);
    throw PlotError("unknown recipe '" + recipe + "' (expected fig4, fig5, fig6 or fig7)");
}

std::string render_svg(const Figure& figure) {
    const double width = kPanelWidth * static_cast<double>(std::max<std::size_t>(1, figure.panels.size()));
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << kPanelHeight
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t p = 0; p < figure.panels.size(); ++p) {
        const Panel& panel = figure.panels[p];
        const double ox = kPanelWidth * static_cast<double>(p);
        const double plot_w = kPanelWidth - kMarginLeft - kMarginRight;
        const double plot_h = kPanelHeight - kMarginTop - kMarginBottom;
        auto sx = [&](double x) {
            const double v = panel.log_x ? std::log10(x) : x;
            return ox + kMarginLeft + (v - panel.x_min) / (panel.x_max - panel.x_min) * plot_w;
        };
        auto sy = [&](double y) { return kMarginTop + (panel.y_max - y) / (panel.y_max - panel.y_min) * plot_h; };

        os << "<g class=\"panel\" data-panel=\"" << p << "\" data-x-min=\"" << panel.x_min << "\" data-x-max=\""
           << panel.x_max << "\" data-y-min=\"" << panel.y_min << "\" data-y-max=\"" << panel.y_max << "\">\n";
        os << "<rect x=\"" << ox + kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
           << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
        os << "<text x=\"" << ox + kMarginLeft + plot_w / 2 << "\" y=\"" << kMarginTop - 14
           << "\" text-anchor=\"middle\" font-size=\"13\">" << panel.title << "</text>\n";
        os << "<text x=\"" << ox + kMarginLeft + plot_w / 2 << "\" y=\"" << kPanelHeight - 10
           << "\" text-anchor=\"middle\">" << panel.x_label << (panel.log_x ? " (log scale)" : "") << "</text>\n";
        os << "<text transform=\"translate(" << ox + 16 << "," << kMarginTop + plot_h / 2
           << ") rotate(-90)\" text-anchor=\"middle\">" << panel.y_label << "</text>\n";

        for (int t = 0; t <= 4; ++t) {
            const double fx = panel.x_min + (panel.x_max - panel.x_min) * t / 4.0;
            const double fy = panel.y_min + (panel.y_max - panel.y_min) * t / 4.0;
            const double px = ox + kMarginLeft + plot_w * t / 4.0;
            const double py = kMarginTop + plot_h * (1.0 - t / 4.0);
            os << "<text x=\"" << px << "\" y=\"" << kMarginTop + plot_h + 14 << "\" text-anchor=\"middle\">"
               << num(panel.log_x ? std::pow(10.0, fx) : fx) << "</text>\n";
            os << "<text x=\"" << ox + kMarginLeft - 4 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">" << num(fy)
               << "</text>\n";
        }

        for (std::size_t s = 0; s < panel.series.size(); ++s) {
            const Series& series = panel.series[s];
            const char* color = kPalette[s % std::size(kPalette)];
            os << "<polyline class=\"curve\" data-label=\"" << series.label << "\" fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"1.5\" points=\"";
            for (auto [x, y] : series.points) os << sx(x) << ',' << sy(y) << ' ';
            os << "\"/>\n";
            for (auto [x, y] : series.points) {
                os << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
            }
            const double ly = kMarginTop + 12 + 14 * static_cast<double>(s);
            os << "<text x=\"" << ox + kMarginLeft + plot_w - 6 << "\" y=\"" << ly << "\" text-anchor=\"end\" fill=\""
               << color << "\">" << series.label << "</text>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::filesystem::path emit_plots(const std::filesystem::path& csv_path, const std::string& recipe,
                                 const std::filesystem::path& out_dir) {
    const CsvTable table = read_csv(csv_path);
    const Figure figure = build_figure(table, recipe);
    std::filesystem::create_directories(out_dir);
    const auto path = out_dir / (recipe + ".svg");
    std::ofstream out(path);
    if (!out) throw PlotError("cannot write " + path.string());
    out << render_svg(figure);
    return path;
}

}  // namespace qrc
