#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lama/pca.hpp"
#include "lama/viz.hpp"

namespace lama {
namespace detail {

inline std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string svg_num(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

/// Low-to-high color ramp from blue to yellow, linear per channel.
inline std::string ramp_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const auto channel = [t](double lo, double hi) {
        return static_cast<int>(std::lround(lo + t * (hi - lo)));
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(32, 248), channel(48, 224),
                  channel(192, 40));
    return buf;
}

inline void svg_open(std::ostream& out, double width, double height) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(width)
        << "\" height=\"" << svg_num(height) << "\" viewBox=\"0 0 " << svg_num(width) << ' '
        << svg_num(height) << "\">\n";
}

inline void umatrix_cells(std::ostream& out, const UMatrix& u, double cell) {
    double lo = u.values(0, 0), hi = u.values(0, 0);
    for (std::size_t y = 0; y < u.ky(); ++y)
        for (std::size_t x = 0; x < u.kx(); ++x) {
            lo = std::min(lo, u.values(y, x));
            hi = std::max(hi, u.values(y, x));
        }
    const double span = hi - lo;
    for (std::size_t y = 0; y < u.ky(); ++y)
        for (std::size_t x = 0; x < u.kx(); ++x) {
            const double t = span > 0.0 ? (u.values(y, x) - lo) / span : 0.0;
            out << "<rect x=\"" << svg_num(x * cell) << "\" y=\"" << svg_num(y * cell)
                << "\" width=\"" << svg_num(cell) << "\" height=\"" << svg_num(cell)
                << "\" fill=\"" << ramp_color(t) << "\"/>\n";
        }
}

}  // namespace detail

/// Heatmap of the U-matrix; color runs blue (low) to yellow (high), scaled to
/// this map's own value range.
inline void render_umatrix_svg(std::ostream& out, const UMatrix& u) {
    const double cell = 24.0;
    detail::svg_open(out, u.kx() * cell, u.ky() * cell);
    detail::umatrix_cells(out, u, cell);
    out << "</svg>\n";
}

/// U-matrix heatmap with labels on top. Data labels are white, landmark
/// labels yellow; nodes carrying several labels get a marker dot and their
/// labels stacked.
inline void render_overlay_svg(std::ostream& out, const UMatrix& u, const LabelOverlay& overlay) {
    const double cell = 24.0;
    detail::svg_open(out, u.kx() * cell, u.ky() * cell);
    detail::umatrix_cells(out, u, cell);
    for (const OverlayPlacement& p : overlay.placements) {
        const double cx = (p.node % u.kx()) * cell + cell / 2.0;
        const double cy = (p.node / u.kx()) * cell + cell / 2.0;
        if (p.multi())
            out << "<circle cx=\"" << detail::svg_num(cx) << "\" cy=\"" << detail::svg_num(cy)
                << "\" r=\"2.5\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
        double line_y = cy;
        const auto label = [&](const std::string& name, const char* fill) {
            out << "<text x=\"" << detail::svg_num(cx) << "\" y=\"" << detail::svg_num(line_y)
                << "\" font-size=\"7\" font-family=\"sans-serif\" text-anchor=\"middle\" fill=\""
                << fill << "\" stroke=\"#000000\" stroke-width=\"0.25\">"
                << detail::xml_escape(name) << "</text>\n";
            line_y += 7.0;
        };
        for (const std::string& name : p.landmark_names) label(name, "#ffe040");
        for (const std::string& name : p.names) label(name, "#ffffff");
    }
    out << "</svg>\n";
}

/// Scatter of the first two projection coordinates: lattice mesh in grey,
/// codebook nodes as circles, data points as filled dots.
inline void render_pca_svg(std::ostream& out, const PcaProjection& p,
                           const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
    bool first = true;
    const auto widen = [&](const Matrix& coords) {
        for (std::size_t r = 0; r < coords.rows(); ++r) {
            if (first) {
                lo_x = hi_x = coords(r, 0);
                lo_y = hi_y = coords(r, 1);
                first = false;
            }
            lo_x = std::min(lo_x, coords(r, 0));
            hi_x = std::max(hi_x, coords(r, 0));
            lo_y = std::min(lo_y, coords(r, 1));
            hi_y = std::max(hi_y, coords(r, 1));
        }
    };
    widen(p.codebook_coords);
    widen(p.data_coords);

    const double size = 480.0, margin = 20.0;
    const double span_x = hi_x > lo_x ? hi_x - lo_x : 1.0;
    const double span_y = hi_y > lo_y ? hi_y - lo_y : 1.0;
    const auto sx = [&](double v) { return margin + (v - lo_x) / span_x * (size - 2 * margin); };
    // SVG y grows downward; flip so larger coordinates draw higher.
    const auto sy = [&](double v) {
        return size - margin - (v - lo_y) / span_y * (size - 2 * margin);
    };

    detail::svg_open(out, size, size);
    for (const auto& [a, b] : edges)
        out << "<line x1=\"" << detail::svg_num(sx(p.codebook_coords(a, 0))) << "\" y1=\""
            << detail::svg_num(sy(p.codebook_coords(a, 1))) << "\" x2=\""
            << detail::svg_num(sx(p.codebook_coords(b, 0))) << "\" y2=\""
            << detail::svg_num(sy(p.codebook_coords(b, 1)))
            << "\" stroke=\"#9c9c9c\" stroke-width=\"0.6\"/>\n";
    for (std::size_t r = 0; r < p.codebook_coords.rows(); ++r)
        out << "<circle cx=\"" << detail::svg_num(sx(p.codebook_coords(r, 0))) << "\" cy=\""
            << detail::svg_num(sy(p.codebook_coords(r, 1)))
            << "\" r=\"1.8\" fill=\"#3060c8\"/>\n";
    for (std::size_t r = 0; r < p.data_coords.rows(); ++r)
        out << "<circle cx=\"" << detail::svg_num(sx(p.data_coords(r, 0))) << "\" cy=\""
            << detail::svg_num(sy(p.data_coords(r, 1))) << "\" r=\"2.4\" fill=\"#d84020\"/>\n";
    out << "</svg>\n";
}

}  // namespace lama
