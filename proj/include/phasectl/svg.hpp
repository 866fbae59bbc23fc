#pragma once

#include <string>
#include <vector>

#include "phasectl/types.hpp"

namespace phasectl {

/// Minimal static SVG figure: one view rectangle in data coordinates, axes
/// with min/max labels, polylines, and shaded rectangles. No dependencies.
class SvgPlot {
 public:
  SvgPlot(Scalar width = 640.0, Scalar height = 400.0);

  /// Data-coordinate view; call before adding geometry.
  void set_view(Scalar xmin, Scalar xmax, Scalar ymin, Scalar ymax);
  /// Expands the view to fit the given samples (with a small margin).
  void fit_view(const Vector& x, const Vector& y);

  void add_polyline(const Vector& x, const Vector& y, const std::string& color,
                    Scalar stroke_width = 1.5);
  void add_rect(Scalar x0, Scalar y0, Scalar x1, Scalar y1, const std::string& color,
                Scalar opacity);
  void add_circle(Scalar x, Scalar y, Scalar radius_px, const std::string& color);
  void add_text(Scalar x, Scalar y, const std::string& text);
  void set_labels(std::string x_label, std::string y_label, std::string title);

  std::string render() const;

 private:
  Scalar px(Scalar x) const;
  Scalar py(Scalar y) const;

  Scalar width_, height_;
  Scalar xmin_ = 0.0, xmax_ = 1.0, ymin_ = 0.0, ymax_ = 1.0;
  bool view_set_ = false;
  std::string x_label_, y_label_, title_;
  std::vector<std::string> body_;
};

}  // namespace phasectl
