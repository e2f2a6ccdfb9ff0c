#include "nodallab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nodallab/io.hpp"

namespace nodallab {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 64, kRight = 20, kTop = 24, kBottom = 48;

const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3a8f5d", "#8a5ab2", "#c9803a", "#4f5d75"};

std::string fmt(double v) {
    // round to avoid 17-digit tick labels
    const double r = std::round(v * 1e6) / 1e6;
    return io::format_double(r == 0.0 ? 0.0 : r);
}

}  // namespace

void emit_svg(const std::vector<SvgSeries>& series, const std::string& x_label,
              const std::string& y_label, const std::filesystem::path& path) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!any) throw std::invalid_argument("emit_svg: no points");
    // degenerate ranges (single point, constant series) still need a window
    if (xmax - xmin < 1e-12) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) {
        return kLeft + (x - xmin) / (xmax - xmin) * (kWidth - kLeft - kRight);
    };
    auto py = [&](double y) {
        return kHeight - kBottom - (y - ymin) / (ymax - ymin) * (kHeight - kTop - kBottom);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes and ticks
    svg += "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">";
    svg += "<path d=\"M" + fmt(kLeft) + " " + fmt(kTop) + " V" + fmt(kHeight - kBottom) + " H" +
           fmt(kWidth - kRight) + "\"/>";
    svg += "</g>\n";
    svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int t = 0; t <= 5; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 5.0;
        const double fy = ymin + (ymax - ymin) * t / 5.0;
        svg += "<line x1=\"" + fmt(px(fx)) + "\" y1=\"" + fmt(kHeight - kBottom) + "\" x2=\"" +
               fmt(px(fx)) + "\" y2=\"" + fmt(kHeight - kBottom + 4) +
               "\" stroke=\"#333\" stroke-width=\"1\"/>";
        svg += "<text x=\"" + fmt(px(fx)) + "\" y=\"" + fmt(kHeight - kBottom + 16) +
               "\" text-anchor=\"middle\">" + fmt(fx) + "</text>\n";
        svg += "<line x1=\"" + fmt(kLeft - 4) + "\" y1=\"" + fmt(py(fy)) + "\" x2=\"" +
               fmt(kLeft) + "\" y2=\"" + fmt(py(fy)) + "\" stroke=\"#333\" stroke-width=\"1\"/>";
        svg += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(py(fy) + 4) +
               "\" text-anchor=\"end\">" + fmt(fy) + "</text>\n";
    }
    svg += "<text x=\"" + fmt((kLeft + kWidth - kRight) / 2) + "\" y=\"" + fmt(kHeight - 12) +
           "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    svg += "<text x=\"14\" y=\"" + fmt((kTop + kHeight - kBottom) / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
           fmt((kTop + kHeight - kBottom) / 2) + ")\">" + y_label + "</text>\n";
    svg += "</g>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        if (series[s].points.empty()) continue;
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        auto pts = series[s].points;
        std::sort(pts.begin(), pts.end());
        if (pts.size() > 1) {
            std::string d = "M";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                d += fmt(px(pts[i].first)) + " " + fmt(py(pts[i].second));
                if (i + 1 < pts.size()) d += " L";
            }
            svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"1.5\"/>\n";
        }
        for (const auto& [x, y] : pts) {
            svg += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) +
                   "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
        }
        svg += "<g font-family=\"sans-serif\" font-size=\"11\">";
        const double ly = kTop + 14 * static_cast<double>(s);
        svg += "<rect x=\"" + fmt(kWidth - kRight - 130) + "\" y=\"" + fmt(ly) +
               "\" width=\"10\" height=\"10\" fill=\"" + std::string(color) + "\"/>";
        svg += "<text x=\"" + fmt(kWidth - kRight - 115) + "\" y=\"" + fmt(ly + 9) + "\">" +
               series[s].label + "</text>";
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    io::atomic_write(path, svg);
}

}  // namespace nodallab
