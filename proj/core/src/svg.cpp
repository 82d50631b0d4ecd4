#include "hpofla/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace hpofla {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // avoid "-0.00"
  return std::string(buf) == "-0.00" ? "0.00" : buf;
}

// Maps data coordinates onto the plot area.
struct Frame {
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const {
    return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
  }
};

Frame make_frame(double x_lo, double x_hi, double y_lo, double y_hi) {
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
  return {x_lo, x_hi, y_lo, y_hi};
}

class Canvas {
 public:
  Canvas(const Frame& frame, std::string_view title, std::string_view x_label,
         std::string_view y_label)
      : frame_(frame) {
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
            "viewBox=\"0 0 800 600\">\n";
    out_ += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out_ += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">";
    out_ += title;
    out_ += "</text>\n";
    axes(x_label, y_label);
  }

  const Frame& frame() const { return frame_; }

  void circle(double x, double y) {
    out_ += "<circle cx=\"" + num(frame_.px(x)) + "\" cy=\"" + num(frame_.py(y)) +
            "\" r=\"2\" fill=\"black\" fill-opacity=\"0.5\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, std::string_view style) {
    out_ += "<line x1=\"" + num(frame_.px(x1)) + "\" y1=\"" + num(frame_.py(y1)) + "\" x2=\"" +
            num(frame_.px(x2)) + "\" y2=\"" + num(frame_.py(y2)) + "\" " + std::string(style) +
            " clip-path=\"url(#plot-area)\"/>\n";
  }

  void box(double center, double half_width, const BoxStats& s) {
    const double l = frame_.px(center - half_width);
    const double r = frame_.px(center + half_width);
    const double c = frame_.px(center);
    const double top = frame_.py(s.q3);
    const double bottom = frame_.py(s.q1);
    out_ += "<rect x=\"" + num(l) + "\" y=\"" + num(top) + "\" width=\"" + num(r - l) +
            "\" height=\"" + num(bottom - top) +
            "\" fill=\"#dddddd\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out_ += "<path d=\"M" + num(c) + ' ' + num(frame_.py(s.max)) + " V" + num(top) + " M" +
            num(c) + ' ' + num(bottom) + " V" + num(frame_.py(s.min)) + " M" + num(l) + ' ' +
            num(frame_.py(s.median)) + " H" + num(r) +
            "\" stroke=\"black\" stroke-width=\"1\" fill=\"none\"/>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  void axes(std::string_view x_label, std::string_view y_label) {
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    out_ += "<defs><clipPath id=\"plot-area\"><rect x=\"" + num(x0) + "\" y=\"" + num(y1) +
            "\" width=\"" + num(x1 - x0) + "\" height=\"" + num(y0 - y1) +
            "\"/></clipPath></defs>\n";
    out_ += "<path d=\"M" + num(x0) + ' ' + num(y1) + " V" + num(y0) + " H" + num(x1) +
            "\" stroke=\"black\" stroke-width=\"1\" fill=\"none\"/>\n";
    constexpr int kTicks = 5;
    std::string ticks;
    for (int t = 0; t <= kTicks; ++t) {
      const double fx = frame_.x_lo + (frame_.x_hi - frame_.x_lo) * t / kTicks;
      const double fy = frame_.y_lo + (frame_.y_hi - frame_.y_lo) * t / kTicks;
      const double px = frame_.px(fx);
      const double py = frame_.py(fy);
      ticks += " M" + num(px) + ' ' + num(y0) + " v5 M" + num(x0) + ' ' + num(py) + " h-5";
      out_ += "<text x=\"" + num(px) + "\" y=\"" + num(y0 + 20) +
              "\" text-anchor=\"middle\" font-size=\"11\">" + num(fx) + "</text>\n";
      out_ += "<text x=\"" + num(x0 - 8) + "\" y=\"" + num(py + 4) +
              "\" text-anchor=\"end\" font-size=\"11\">" + num(fy) + "</text>\n";
    }
    out_ += "<path d=\"" + ticks.substr(1) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out_ += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(kHeight - 15) +
            "\" text-anchor=\"middle\" font-size=\"13\">" + std::string(x_label) + "</text>\n";
    out_ += "<text x=\"18\" y=\"" + num((y0 + y1) / 2) +
            "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
            num((y0 + y1) / 2) + ")\">" + std::string(y_label) + "</text>\n";
  }

  Frame frame_;
  std::string out_;
};

}  // namespace

std::string fdc_svg(const FdcResult& fdc) {
  double d_hi = 0.0, f_lo = 0.0, f_hi = 0.0;
  for (const auto& p : fdc.points) {
    d_hi = std::max(d_hi, p.distance);
    f_lo = std::min(f_lo, p.fitness);
    f_hi = std::max(f_hi, p.fitness);
  }
  Canvas canvas(make_frame(0.0, d_hi, f_lo, f_hi), "Fitness vs distance to optimum",
                "distance to optimum", "fitness");
  for (const auto& p : fdc.points) canvas.circle(p.distance, p.fitness);
  if (fdc.slope && fdc.intercept) {
    const auto& fr = canvas.frame();
    canvas.line(fr.x_lo, *fdc.intercept + *fdc.slope * fr.x_lo, fr.x_hi,
                *fdc.intercept + *fdc.slope * fr.x_hi,
                "stroke=\"blue\" stroke-width=\"2\"");
  }
  return canvas.finish();
}

std::string locality_svg(const LocalityProfile& locality, const FitnessBinning& binning) {
  Canvas canvas(make_frame(0.0, binning.max_fitness, 0.0, binning.max_fitness),
                "Average neighbour fitness vs observed fitness", "observed fitness",
                "average neighbour fitness");
  for (std::size_t k = 0; k < locality.bins.size(); ++k) {
    if (locality.bins[k].count == 0) continue;
    canvas.box(binning.center(k), 0.35 * binning.step, locality.bins[k]);
  }
  canvas.line(0.0, 0.0, binning.max_fitness, binning.max_fitness,
              "stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"8 3 2 3\"");
  return canvas.finish();
}

std::string neutrality_svg(const NeutralityProfile& neutrality, const FitnessBinning& binning) {
  double nd_hi = 0.0;
  for (const auto& b : neutrality.bins) {
    if (b.count > 0) nd_hi = std::max(nd_hi, b.max);
  }
  Canvas canvas(make_frame(0.0, binning.max_fitness, 0.0, std::max(nd_hi, 1.0)),
                "Neutrality degree vs observed fitness", "observed fitness",
                "neutrality degree");
  for (std::size_t k = 0; k < neutrality.bins.size(); ++k) {
    if (neutrality.bins[k].count == 0) continue;
    canvas.box(binning.center(k), 0.35 * binning.step, neutrality.bins[k]);
  }
  return canvas.finish();
}

}  // namespace hpofla
