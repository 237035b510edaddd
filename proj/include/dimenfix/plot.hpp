#pragma once

#include "dimenfix/matrix.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dimenfix {

struct PlotSpec {
    int width = 800;
    int height = 600;
    double point_radius = 3.0;
    std::string x_label = "dim0";
    std::string y_label = "dim1";
    std::string title;
};

/// Palette entry for the k-th label in sorted order.
std::string label_color(std::size_t k);

/// Standalone SVG scatter of a 2-column coordinate matrix. y grows upward;
/// labels are colored in sorted label order and listed in a legend.
std::string render_scatter(const Matrix& coords,
                           const std::optional<std::vector<std::string>>& labels,
                           const PlotSpec& spec = {});

/// 3-column input as three side-by-side panels (0,1), (0,2), (1,2).
std::string render_panels(const Matrix& coords,
                          const std::optional<std::vector<std::string>>& labels,
                          const PlotSpec& spec = {},
                          std::span<const std::string> axis_names = {});

} // namespace dimenfix
