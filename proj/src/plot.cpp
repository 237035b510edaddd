#include "dimenfix/plot.hpp"

#include "dimenfix/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace dimenfix {

namespace {

constexpr std::array<const char*, 10> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                              "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                              "#bcbd22", "#17becf"};
constexpr const char* unlabeled_color = "#4c72b0";
constexpr double margin = 60.0;
constexpr double legend_width = 160.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

struct AxisMap {
    double lo = 0.0;
    double hi = 1.0;
    double pixel_lo = 0.0;
    double pixel_hi = 1.0;

    double operator()(double v) const { return pixel_lo + (v - lo) / (hi - lo) * (pixel_hi - pixel_lo); }
};

AxisMap fit_axis(const Matrix& coords, std::size_t col, double pixel_lo, double pixel_hi) {
    double lo = coords(0, col);
    double hi = lo;
    for (std::size_t r = 1; r < coords.rows(); ++r) {
        lo = std::min(lo, coords(r, col));
        hi = std::max(hi, coords(r, col));
    }
    if (hi == lo) {
        return {lo - 0.5, hi + 0.5, pixel_lo, pixel_hi};
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad, pixel_lo, pixel_hi};
}

using ColorMap = std::map<std::string, std::string>;

ColorMap color_map(const std::optional<std::vector<std::string>>& labels) {
    ColorMap colors;
    if (!labels) {
        return colors;
    }
    const std::set<std::string> sorted(labels->begin(), labels->end());
    std::size_t k = 0;
    for (const auto& label : sorted) {
        colors.emplace(label, label_color(k++));
    }
    return colors;
}

void check_input(const Matrix& coords, const std::optional<std::vector<std::string>>& labels,
                 std::size_t cols, const PlotSpec& spec) {
    if (coords.cols() != cols) {
        throw InvalidArgument("scatter plot needs " + std::to_string(cols) + " columns, got " +
                              std::to_string(coords.cols()));
    }
    if (coords.rows() == 0) {
        throw InvalidArgument("nothing to plot");
    }
    if (spec.width <= 0 || spec.height <= 0 || !(spec.point_radius > 0.0)) {
        throw InvalidArgument("plot width, height and point radius must be positive");
    }
    for (double v : coords.data()) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("cannot plot non-finite coordinates");
        }
    }
    if (labels && labels->size() != coords.rows()) {
        throw InvalidArgument("plot needs one label per point");
    }
}

// Frame, axis captions and points for one x/y pair inside [left, left+w] x [top, top+h].
void draw_panel(std::string& out, const Matrix& coords, std::size_t xc, std::size_t yc,
                double left, double top, double w, double h,
                const std::optional<std::vector<std::string>>& labels, const ColorMap& colors,
                const PlotSpec& spec, std::string_view x_label, std::string_view y_label) {
    const AxisMap x = fit_axis(coords, xc, left, left + w);
    // Screen y grows downward, so the top pixel maps the data maximum.
    const AxisMap y = fit_axis(coords, yc, top + h, top);

    out += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(w) +
           "\" height=\"" + fmt(h) + "\" fill=\"none\" stroke=\"#444444\"/>\n";
    out += "<text x=\"" + fmt(left + w / 2) + "\" y=\"" + fmt(top + h + 36) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + xml_escape(x_label) + "</text>\n";
    out += "<text x=\"" + fmt(left - 36) + "\" y=\"" + fmt(top + h / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 " + fmt(left - 36) +
           " " + fmt(top + h / 2) + ")\">" + xml_escape(y_label) + "</text>\n";
    out += "<text x=\"" + fmt(left) + "\" y=\"" + fmt(top + h + 16) +
           "\" font-size=\"10\">" + fmt(x.lo) + "</text>\n";
    out += "<text x=\"" + fmt(left + w) + "\" y=\"" + fmt(top + h + 16) +
           "\" text-anchor=\"end\" font-size=\"10\">" + fmt(x.hi) + "</text>\n";
    out += "<text x=\"" + fmt(left - 4) + "\" y=\"" + fmt(top + h) +
           "\" text-anchor=\"end\" font-size=\"10\">" + fmt(y.lo) + "</text>\n";
    out += "<text x=\"" + fmt(left - 4) + "\" y=\"" + fmt(top + 10) +
           "\" text-anchor=\"end\" font-size=\"10\">" + fmt(y.hi) + "</text>\n";

    out += "<g stroke=\"none\" fill-opacity=\"0.8\">\n";
    for (std::size_t r = 0; r < coords.rows(); ++r) {
        const std::string& fill = labels ? colors.at((*labels)[r]) : std::string(unlabeled_color);
        out += "<circle cx=\"" + fmt(x(coords(r, xc))) + "\" cy=\"" + fmt(y(coords(r, yc))) +
               "\" r=\"" + fmt(spec.point_radius) + "\" fill=\"" + fill + "\"/>\n";
    }
    out += "</g>\n";
}

void draw_legend(std::string& out, const ColorMap& colors, double left, double top) {
    if (colors.empty()) {
        return;
    }
    out += "<g class=\"legend\" font-size=\"12\">\n";
    double y = top + 10;
    for (const auto& [label, color] : colors) {
        out += "<rect class=\"legend-swatch\" x=\"" + fmt(left) + "\" y=\"" + fmt(y - 9) +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        out += "<text x=\"" + fmt(left + 16) + "\" y=\"" + fmt(y) + "\">" + xml_escape(label) +
               "</text>\n";
        y += 18;
    }
    out += "</g>\n";
}

std::string open_svg(double width, double height, const PlotSpec& spec) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width) +
           "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) +
           "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty()) {
        out += "<text x=\"" + fmt(width / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" +
               xml_escape(spec.title) + "</text>\n";
    }
    return out;
}

} // namespace

std::string label_color(std::size_t k) {
    if (k < palette.size()) {
        return palette[k];
    }
    // Golden-angle hue walk past the fixed palette.
    const double hue = std::fmod(static_cast<double>(k) * 137.508, 360.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "hsl(%.1f,65%%,45%%)", hue);
    return buf;
}

std::string render_scatter(const Matrix& coords,
                           const std::optional<std::vector<std::string>>& labels,
                           const PlotSpec& spec) {
    check_input(coords, labels, 2, spec);
    const ColorMap colors = color_map(labels);
    const double extra = colors.empty() ? 0.0 : legend_width;
    const double width = spec.width + extra;

    std::string out = open_svg(width, spec.height, spec);
    draw_panel(out, coords, 0, 1, margin, margin, spec.width - 2 * margin,
               spec.height - 2 * margin, labels, colors, spec, spec.x_label, spec.y_label);
    draw_legend(out, colors, spec.width - margin + 20, margin);
    out += "</svg>\n";
    return out;
}

std::string render_panels(const Matrix& coords,
                          const std::optional<std::vector<std::string>>& labels,
                          const PlotSpec& spec, std::span<const std::string> axis_names) {
    check_input(coords, labels, 3, spec);
    auto name = [&](std::size_t k) {
        return k < axis_names.size() ? axis_names[k] : "dim" + std::to_string(k);
    };
    const ColorMap colors = color_map(labels);
    const double extra = colors.empty() ? 0.0 : legend_width;
    const double width = 3.0 * spec.width + extra;

    std::string out = open_svg(width, spec.height, spec);
    constexpr std::array<std::pair<std::size_t, std::size_t>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const double left = static_cast<double>(p) * spec.width + margin;
        draw_panel(out, coords, pairs[p].first, pairs[p].second, left, margin,
                   spec.width - 2 * margin, spec.height - 2 * margin, labels, colors, spec,
                   name(pairs[p].first), name(pairs[p].second));
    }
    draw_legend(out, colors, 3.0 * spec.width - margin + 20, margin);
    out += "</svg>\n";
    return out;
}

} // namespace dimenfix
