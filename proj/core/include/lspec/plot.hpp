#pragma once

#include <string>
#include <vector>

#include "lspec/eig.hpp"
#include "lspec/lsd.hpp"

namespace lspec {

struct HistogramBins {
    double lo = 0.0;
    double width = 0.0;
    std::vector<double> height;      // density-normalized bar heights
};

// Freedman-Diaconis width 2 IQR n^{-1/3} on the given values; heights are
// normalized by `total_count` so the excluded zero atom keeps its mass out
// of the bars. bins_override > 0 forces the bin count.
HistogramBins histogram_density(const std::vector<double>& values,
                                std::size_t total_count, int bins_override = 0);

struct PlotOptions {
    int width = 720;
    int height = 440;
    int bins = 0;                    // 0 = Freedman-Diaconis
    int curve_points = 400;
    std::string title;
};

// Histogram of the spectrum overlaid with the phi_c curve. Zero eigenvalues
// (|x| <= 1e-8 ||M||) are dropped from the bars when the model carries an
// atom; the legend states the excluded mass. Layout is deterministic.
std::string render_spectrum_svg(const Spectrum& s, const LsdModel& model,
                                const PlotOptions& opt = {});

} // namespace lspec
