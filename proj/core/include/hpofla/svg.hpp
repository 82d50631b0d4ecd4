#pragma once

// Static SVG renderings of the three analyses on a fixed 800 x 600 canvas.
// Output is a pure function of the inputs.

#include <string>

#include "hpofla/analyses.hpp"

namespace hpofla {

enum class PlotKind { fdc, locality, neutrality };

/// Scatter of (distance, fitness) as <circle>s plus the regression <line>
/// when the slope is defined. Axes are drawn as <path>, so the only <line>
/// is the regression line.
std::string fdc_svg(const FdcResult& fdc);

/// Box glyph per non-empty bin and one bisector <line> from (0, 0) to
/// (max_fitness, max_fitness).
std::string locality_svg(const LocalityProfile& locality, const FitnessBinning& binning);

/// Box glyph of neutrality degree per non-empty bin.
std::string neutrality_svg(const NeutralityProfile& neutrality, const FitnessBinning& binning);

}  // namespace hpofla
