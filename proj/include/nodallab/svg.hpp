#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace nodallab {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Self-contained scatter/line plot (no external assets).  Throws
/// std::invalid_argument when every series is empty.
void emit_svg(const std::vector<SvgSeries>& series, const std::string& x_label,
              const std::string& y_label, const std::filesystem::path& path);

}  // namespace nodallab
