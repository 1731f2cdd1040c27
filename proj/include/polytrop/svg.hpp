#pragma once

// Minimal SVG pictures of planar fans and of low-dimensional complexes.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "polytrop/delta_complex.hpp"
#include "polytrop/fan.hpp"

namespace polytrop::svg {

namespace detail {

inline std::string header(int size) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << " " << size << "\">\n";
    return s.str();
}

inline std::pair<double, double> unit2(const IntVec& r) {
    double x = static_cast<double>(r[0]), y = static_cast<double>(r[1]);
    double n = std::hypot(x, y);
    return {x / n, y / n};
}

inline std::string escape(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

} // namespace detail

/// Rank-2 fan: shaded maximal cones and labelled rays.
inline std::string fan_svg(const Fan& f) {
    require(f.rank() == 2, ErrorKind::DimensionMismatch, "only rank-2 fans are drawn");
    const int size = 400;
    const double c = size / 2.0, len = size * 0.45;
    std::ostringstream s;
    s << std::fixed;
    s.precision(2);
    s << detail::header(size);
    for (const auto& cone : f.maximal_cones()) {
        if (!cone.pointed() || cone.dim() < 2) continue;
        s << "  <polygon fill=\"#cfe3f7\" stroke=\"none\" points=\"" << c << "," << c;
        for (const auto& r : cone.rays()) {
            auto [x, y] = detail::unit2(r);
            s << " " << c + len * x << "," << c - len * y;
        }
        s << "\"/>\n";
    }
    for (const auto& r : f.rays()) {
        auto [x, y] = detail::unit2(r);
        s << "  <line x1=\"" << c << "\" y1=\"" << c << "\" x2=\"" << c + len * x << "\" y2=\"" << c - len * y
          << "\" stroke=\"#1f4e79\" stroke-width=\"2\"/>\n";
        s << "  <text x=\"" << c + (len + 8) * x << "\" y=\"" << c - (len + 8) * y
          << "\" font-size=\"11\" text-anchor=\"middle\">(" << r[0] << "," << r[1] << ")</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

/// Vertices on a circle, edges as chords (loops as small circles), 2-cells shaded.
inline std::string complex_svg(const DeltaComplex& cx) {
    require(cx.dim() <= 2, ErrorKind::DimensionMismatch, "only complexes of dimension <= 2 are drawn");
    const int size = 400;
    const double c = size / 2.0, rad = size * 0.38;
    const double pi = std::acos(-1.0);
    std::size_t nv = cx.count(0);
    auto pos = [&](std::size_t v) {
        double a = 2 * pi * static_cast<double>(v) / static_cast<double>(std::max<std::size_t>(nv, 1));
        return std::make_pair(c + rad * std::cos(a), c - rad * std::sin(a));
    };
    std::ostringstream s;
    s << std::fixed;
    s.precision(2);
    s << detail::header(size);
    for (const auto& t : cx.cells(2)) {
        s << "  <polygon fill=\"#f3dcc4\" stroke=\"none\" points=\"";
        for (std::size_t k = 0; k < 3; ++k) {
            auto [x, y] = pos(t.vertices[k]);
            s << (k ? " " : "") << x << "," << y;
        }
        s << "\"/>\n";
    }
    for (const auto& e : cx.cells(1)) {
        auto [x0, y0] = pos(e.vertices[0]);
        auto [x1, y1] = pos(e.vertices[1]);
        if (e.vertices[0] == e.vertices[1]) {
            s << "  <circle cx=\"" << x0 + 20 << "\" cy=\"" << y0 << "\" r=\"20\" fill=\"none\" stroke=\"#333\"/>\n";
        } else {
            s << "  <line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y1
              << "\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
        }
    }
    for (std::size_t v = 0; v < nv; ++v) {
        auto [x, y] = pos(v);
        s << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"#b22\"/>\n";
        s << "  <text x=\"" << x + 6 << "\" y=\"" << y - 6 << "\" font-size=\"10\">" << detail::escape(cx.cell(0, v).label) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

} // namespace polytrop::svg
