#pragma once

#include <array>
#include <string>
#include <vector>

namespace minpair {

/// RGB color of `v` on the fixed diverging scale: -1 blue, 0 white,
/// +1 red. Values outside [-1, 1] are clamped.
std::array<int, 3> diverging_color(double v);

/// Deterministic SVG heatmap. NaN cells are drawn hatched and annotated
/// "NA"; other cells carry their value to two decimals. Throws UsageError
/// unless `cells` is square and matches `labels`.
std::string render_heatmap(const std::vector<std::vector<double>>& cells, const std::vector<std::string>& labels,
                           const std::string& title = "");

}  // namespace minpair
