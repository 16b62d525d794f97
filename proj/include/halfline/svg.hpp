#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "halfline/enclosure.hpp"
#include "halfline/report.hpp"

namespace hls {

struct SvgOptions {
    int width = 640;
    int height = 640;
    bool log_radial = false;   // logarithmic radial scale for regions spanning decades
    double autoscale = 1.2;    // plot bound = autoscale * largest finite radius
    double min_extent = 1e-6;  // fallback when everything is zero
};

namespace svg_detail {

struct Mapper {
    double extent;
    bool log_radial;
    double log_floor;
    int width, height;

    // radial transform applied to |z| before the linear pixel map
    double radial(double r) const {
        if (!log_radial) return r;
        if (r <= log_floor) return 0.0;
        return std::log10(r / log_floor) / std::log10(extent / log_floor);
    }

    std::pair<double, double> to_pixels(std::complex<double> z) const {
        double rr = std::abs(z);
        double scale = log_radial ? (rr > 0 ? radial(rr) / rr : 0.0) : 1.0;
        const double limit = log_radial ? 1.0 : extent;
        const double px = 0.5 * width * (1.0 + z.real() * scale / limit);
        const double py = 0.5 * height * (1.0 - z.imag() * scale / limit);
        return {px, py};
    }
};

inline std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(4);
    ss << std::fixed << v;
    return ss.str();
}

} // namespace svg_detail

/// Renders enclosure-region boundaries (closed curves), eigenvalue markers,
/// the essential-spectrum ray, and axes into a standalone SVG document.
inline std::string render_svg(const std::vector<EnclosureRegion>& regions,
                              const std::vector<cplx>& eigenvalues,
                              const SvgOptions& opt = {}) {
    double rmax = 0.0;
    for (const auto& region : regions)
        for (double r : region.radii)
            if (std::isfinite(r)) rmax = std::max(rmax, r);
    for (const auto& ev : eigenvalues) rmax = std::max(rmax, std::abs(ev));
    if (rmax <= 0.0) rmax = opt.min_extent;
    const double extent = opt.autoscale * rmax;

    svg_detail::Mapper map{extent, opt.log_radial, extent * 1e-6,
                           opt.width, opt.height};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
        << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << ' '
        << opt.height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes through the origin
    out << "<line class=\"axis\" x1=\"0\" y1=\"" << opt.height / 2 << "\" x2=\"" << opt.width
        << "\" y2=\"" << opt.height / 2 << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
    out << "<line class=\"axis\" x1=\"" << opt.width / 2 << "\" y1=\"0\" x2=\"" << opt.width / 2
        << "\" y2=\"" << opt.height << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";

    // essential spectrum [0, infinity) as a ray to the right edge
    out << "<line class=\"essential\" x1=\"" << opt.width / 2 << "\" y1=\"" << opt.height / 2
        << "\" x2=\"" << opt.width << "\" y2=\"" << opt.height / 2
        << "\" stroke=\"#d33\" stroke-width=\"2.5\"/>\n";

    const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                             "#8c564b", "#e377c2", "#17becf", "#bcbd22"};
    int color = 0;
    for (const auto& region : regions) {
        std::ostringstream path;
        bool started = false;
        for (std::size_t i = 0; i < region.thetas.size(); ++i) {
            double r = region.radii[i];
            if (!std::isfinite(r)) r = extent; // inadmissible angles clipped to the frame
            const auto [px, py] =
                map.to_pixels(std::polar(std::min(r, extent), region.thetas[i]));
            path << (started ? " L " : "M ") << svg_detail::fmt(px) << ' '
                 << svg_detail::fmt(py);
            started = true;
        }
        path << " Z";
        out << "<path class=\"region\" data-provenance=\"" << provenance_name(region.provenance)
            << "\" d=\"" << path.str() << "\" fill=\"none\" stroke=\""
            << palette[color % 8] << "\" stroke-width=\"1.5\"/>\n";
        ++color;
    }

    for (const auto& ev : eigenvalues) {
        const auto [px, py] = map.to_pixels(ev);
        out << "<circle class=\"eigenvalue\" cx=\"" << svg_detail::fmt(px) << "\" cy=\""
            << svg_detail::fmt(py) << "\" r=\"4\" fill=\"#111\"/>\n";
    }

    out << "<text x=\"8\" y=\"16\" font-size=\"12\" fill=\"#555\">extent "
        << format_double(extent) << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace hls
