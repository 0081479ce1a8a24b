#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "dls/coeffs.hpp"

namespace dls {

namespace {

struct Rgb {
    double r, g, b;
};

// viridis anchor colors, linearly interpolated
Rgb colormap(double x) {
    static constexpr std::array<Rgb, 5> stops = {{{68, 1, 84},
                                                  {59, 82, 139},
                                                  {33, 145, 140},
                                                  {94, 201, 98},
                                                  {253, 231, 37}}};
    x = std::clamp(x, 0.0, 1.0);
    const double pos = x * (stops.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= stops.size()) return stops.back();
    const double f = pos - static_cast<double>(lo);
    const Rgb& a = stops[lo];
    const Rgb& b = stops[lo + 1];
    return {a.r + f * (b.r - a.r), a.g + f * (b.g - a.g), a.b + f * (b.b - a.b)};
}

void emit_color(std::ostream& out, const Rgb& c) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(c.r + 0.5),
                  static_cast<int>(c.g + 0.5), static_cast<int>(c.b + 0.5));
    out << buf;
}

void emit_rect(std::ostream& out, double x, double y, double w, double h, const Rgb& c) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.3f\" height=\"%.3f\" fill=\"",
                  x, y, w, h);
    out << buf;
    emit_color(out, c);
    out << "\"/>\n";
}

}  // namespace

void write_heatmap_svg(std::ostream& out, const CoeffGrid& grid) {
    const double margin = 60.0;
    const double plot = 600.0;
    const double bar_gap = 30.0;
    const double bar_w = 22.0;
    const double width = margin * 2 + plot + bar_gap + bar_w + 60.0;
    const double height = margin * 2 + plot;
    const double cw = plot / static_cast<double>(grid.t_max + 1);

    double vmax = 1.0;
    for (std::size_t t = 0; t <= grid.t_max; ++t)
        for (std::size_t u = 0; u <= t; ++u) vmax = std::max(vmax, grid.cv[t][u]);
    const double log_max = std::log(std::max(vmax, 1.0 + 1e-12));
    const auto normalize = [&](double v) { return std::log(std::max(v, 1.0)) / log_max; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<!-- coefficient c_v over the triangle t >= u; log color scale -->\n";

    for (std::size_t t = 0; t <= grid.t_max; ++t) {
        const double x = margin + static_cast<double>(t) * cw;
        for (std::size_t u = 0; u <= t; ++u) {
            const double y = margin + plot - static_cast<double>(u + 1) * cw;
            emit_rect(out, x, y, cw + 0.05, cw + 0.05, colormap(normalize(grid.cv[t][u])));
        }
    }

    // axes
    out << "<line x1=\"" << margin << "\" y1=\"" << margin + plot << "\" x2=\"" << margin + plot
        << "\" y2=\"" << margin + plot << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << margin + plot << "\" stroke=\"black\"/>\n";
    for (int frac = 0; frac <= 2; ++frac) {
        const auto tick = grid.t_max * static_cast<std::size_t>(frac) / 2;
        const double px = margin + (static_cast<double>(tick) + 0.5) * cw;
        const double py = margin + plot - (static_cast<double>(tick) + 0.5) * cw;
        out << "<text x=\"" << px << "\" y=\"" << margin + plot + 18
            << "\" font-size=\"12\" text-anchor=\"middle\">" << tick << "</text>\n"
            << "<text x=\"" << margin - 8 << "\" y=\"" << py + 4
            << "\" font-size=\"12\" text-anchor=\"end\">" << tick << "</text>\n";
    }
    out << "<text x=\"" << margin + plot / 2 << "\" y=\"" << margin + plot + 38
        << "\" font-size=\"14\" text-anchor=\"middle\">t</text>\n"
        << "<text x=\"" << margin - 34 << "\" y=\"" << margin + plot / 2
        << "\" font-size=\"14\" text-anchor=\"middle\">u</text>\n";

    // colorbar
    const double bar_x = margin + plot + bar_gap;
    const int bar_steps = 64;
    for (int i = 0; i < bar_steps; ++i) {
        const double f = (static_cast<double>(i) + 0.5) / bar_steps;
        const double y = margin + plot * (1.0 - (static_cast<double>(i) + 1.0) / bar_steps);
        emit_rect(out, bar_x, y, bar_w, plot / bar_steps + 0.05, colormap(f));
    }
    char label[32];
    std::snprintf(label, sizeof(label), "%.3g", vmax);
    out << "<text x=\"" << bar_x + bar_w + 6 << "\" y=\"" << margin + 10
        << "\" font-size=\"12\">" << label << "</text>\n"
        << "<text x=\"" << bar_x + bar_w + 6 << "\" y=\"" << margin + plot
        << "\" font-size=\"12\">1</text>\n"
        << "<text x=\"" << bar_x << "\" y=\"" << margin - 12 << "\" font-size=\"13\">c_v</text>\n"
        << "</svg>\n";
}

}  // namespace dls
