#include "lspec/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lspec/errors.hpp"

namespace lspec {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fmtg(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

HistogramBins histogram_density(const std::vector<double>& values,
                                std::size_t total_count, int bins_override) {
    HistogramBins h;
    if (values.empty() || total_count == 0) return h;

    std::vector<double> v(values);
    std::sort(v.begin(), v.end());
    const double lo = v.front(), hi = v.back();
    int nbins;
    if (bins_override > 0) {
        nbins = bins_override;
    } else {
        const double q1 = v[std::size_t(0.25 * double(v.size() - 1))];
        const double q3 = v[std::size_t(0.75 * double(v.size() - 1))];
        const double iqr = q3 - q1;
        const double w = 2.0 * iqr / std::cbrt(double(v.size()));
        nbins = (w > 0.0 && hi > lo) ? int(std::ceil((hi - lo) / w)) : 1;
        nbins = std::clamp(nbins, 1, 512);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    h.lo = lo;
    h.width = span / nbins;
    h.height.assign(nbins, 0.0);
    for (double x : v) {
        int b = int((x - lo) / h.width);
        if (b >= nbins) b = nbins - 1;
        h.height[b] += 1.0;
    }
    for (double& c : h.height) c /= double(total_count) * h.width;
    return h;
}

std::string render_spectrum_svg(const Spectrum& s, const LsdModel& model,
                                const PlotOptions& opt) {
    const int W = opt.width, H = opt.height;
    const int ml = 52, mr = 16, mt = 28, mb = 40;  // margins
    const double pw = W - ml - mr, ph = H - mt - mb;

    // drop the zero atom from the bars when the model has one
    std::vector<double> nonzero;
    double norm = 0.0;
    for (double v : s.values) norm = std::max(norm, std::fabs(v));
    const bool drop_zeros = model.point_mass() > 0.0;
    for (double v : s.values)
        if (!drop_zeros || std::fabs(v) > 1e-8 * norm) nonzero.push_back(v);

    const HistogramBins bars =
        histogram_density(nonzero, s.values.size(), opt.bins);

    const double d = model.boundary();
    double xmin = -1.1 * d, xmax = 1.1 * d;
    if (!nonzero.empty()) {
        xmin = std::min(xmin, bars.lo - bars.width);
        xmax = std::max(xmax, bars.lo + bars.width * double(bars.height.size() + 1));
    }

    // curve on the open support (skip the origin)
    std::vector<std::pair<double, double>> curve;
    double ymax = 0.0;
    for (int i = 0; i <= opt.curve_points; ++i) {
        const double x = xmin + (xmax - xmin) * double(i) / opt.curve_points;
        if (std::fabs(x) < 1e-9) continue;
        const double y = model.density(x);
        curve.emplace_back(x, y);
        if (std::isfinite(y)) ymax = std::max(ymax, y);
    }
    for (double hgt : bars.height) ymax = std::max(ymax, hgt);
    if (ymax <= 0.0) ymax = 1.0;
    ymax *= 1.08;

    const auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    const auto Y = [&](double y) { return mt + ph - std::min(y, ymax) / ymax * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
        << "\" fill=\"white\"/>\n";

    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
        << "\" y2=\"" << mt + ph << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << mt + ph << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // x ticks at -d, 0, d and frame ends
    for (double tx : {xmin, -d, 0.0, d, xmax}) {
        const double px = X(tx);
        svg << "<line x1=\"" << fmt(px) << "\" y1=\"" << mt + ph << "\" x2=\""
            << fmt(px) << "\" y2=\"" << mt + ph + 4
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << fmt(px) << "\" y=\"" << mt + ph + 16
            << "\" font-size=\"10\" text-anchor=\"middle\">" << fmtg(tx)
            << "</text>\n";
    }
    // y ticks
    for (int i = 0; i <= 4; ++i) {
        const double ty = ymax * i / 4.0;
        svg << "<line x1=\"" << ml - 4 << "\" y1=\"" << fmt(Y(ty)) << "\" x2=\""
            << ml << "\" y2=\"" << fmt(Y(ty))
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << ml - 7 << "\" y=\"" << fmt(Y(ty) + 3)
            << "\" font-size=\"10\" text-anchor=\"end\">" << fmtg(ty)
            << "</text>\n";
    }

    // histogram bars
    for (std::size_t b = 0; b < bars.height.size(); ++b) {
        if (bars.height[b] <= 0.0) continue;
        const double x0 = X(bars.lo + bars.width * double(b));
        const double x1 = X(bars.lo + bars.width * double(b + 1));
        const double y = Y(bars.height[b]);
        svg << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y) << "\" width=\""
            << fmt(x1 - x0) << "\" height=\"" << fmt(mt + ph - y)
            << "\" fill=\"#9ecae1\" stroke=\"#4292c6\" stroke-width=\"0.5\"/>\n";
    }

    // density curve (split at the origin gap)
    std::string path;
    bool pen_down = false;
    for (const auto& [x, y] : curve) {
        if (!std::isfinite(y)) {
            pen_down = false;
            continue;
        }
        path += pen_down ? "L" : "M";
        path += fmt(X(x)) + " " + fmt(Y(y)) + " ";
        pen_down = true;
    }
    svg << "<path d=\"" << path
        << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";

    if (!opt.title.empty())
        svg << "<text x=\"" << W / 2 << "\" y=\"" << mt - 10
            << "\" font-size=\"12\" text-anchor=\"middle\">" << opt.title
            << "</text>\n";
    if (drop_zeros) {
        char legend[120];
        std::snprintf(legend, sizeof legend,
                      "atom mass %.4g at 0 excluded from bars", model.point_mass());
        svg << "<text x=\"" << ml + 8 << "\" y=\"" << mt + 14
            << "\" font-size=\"10\">" << legend << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace lspec
