#include "phasectl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace phasectl {

namespace {

constexpr Scalar kMarginLeft = 64.0;
constexpr Scalar kMarginRight = 16.0;
constexpr Scalar kMarginTop = 28.0;
constexpr Scalar kMarginBottom = 44.0;

std::string num(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

SvgPlot::SvgPlot(Scalar width, Scalar height) : width_(width), height_(height) {}

void SvgPlot::set_view(Scalar xmin, Scalar xmax, Scalar ymin, Scalar ymax) {
  xmin_ = xmin;
  xmax_ = xmax;
  ymin_ = ymin;
  ymax_ = ymax;
  if (xmax_ <= xmin_) xmax_ = xmin_ + 1.0;
  if (ymax_ <= ymin_) ymax_ = ymin_ + 1.0;
  view_set_ = true;
}

void SvgPlot::fit_view(const Vector& x, const Vector& y) {
  if (x.size() == 0 || y.size() == 0) return;
  Scalar xmin = x.minCoeff(), xmax = x.maxCoeff();
  Scalar ymin = y.minCoeff(), ymax = y.maxCoeff();
  if (view_set_) {
    xmin = std::min(xmin, xmin_);
    xmax = std::max(xmax, xmax_);
    ymin = std::min(ymin, ymin_);
    ymax = std::max(ymax, ymax_);
  }
  const Scalar my = 0.05 * std::max(ymax - ymin, Scalar(1e-12));
  set_view(xmin, xmax, ymin - my, ymax + my);
}

Scalar SvgPlot::px(Scalar x) const {
  return kMarginLeft + (x - xmin_) / (xmax_ - xmin_) * (width_ - kMarginLeft - kMarginRight);
}

Scalar SvgPlot::py(Scalar y) const {
  return height_ - kMarginBottom -
         (y - ymin_) / (ymax_ - ymin_) * (height_ - kMarginTop - kMarginBottom);
}

void SvgPlot::add_polyline(const Vector& x, const Vector& y, const std::string& color,
                           Scalar stroke_width) {
  if (x.size() != y.size() || x.size() < 2) return;
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
     << num(stroke_width) << "\" points=\"";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
    os << num(px(x[i])) << "," << num(py(y[i])) << " ";
  }
  os << "\"/>";
  body_.push_back(os.str());
}

void SvgPlot::add_rect(Scalar x0, Scalar y0, Scalar x1, Scalar y1,
                       const std::string& color, Scalar opacity) {
  const Scalar a = px(std::min(x0, x1)), b = px(std::max(x0, x1));
  const Scalar c = py(std::max(y0, y1)), d = py(std::min(y0, y1));
  std::ostringstream os;
  os << "<rect x=\"" << num(a) << "\" y=\"" << num(c) << "\" width=\"" << num(b - a)
     << "\" height=\"" << num(d - c) << "\" fill=\"" << color << "\" fill-opacity=\""
     << num(opacity) << "\"/>";
  body_.push_back(os.str());
}

void SvgPlot::add_circle(Scalar x, Scalar y, Scalar radius_px, const std::string& color) {
  std::ostringstream os;
  os << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\""
     << num(radius_px) << "\" fill=\"" << color << "\"/>";
  body_.push_back(os.str());
}

void SvgPlot::add_text(Scalar x, Scalar y, const std::string& text) {
  std::ostringstream os;
  os << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(y))
     << "\" font-size=\"12\" font-family=\"sans-serif\">" << text << "</text>";
  body_.push_back(os.str());
}

std::string SvgPlot::render() const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_)
     << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_) << " "
     << num(height_) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& e : body_) os << e << "\n";

  // Axes frame drawn last so shaded regions never cover it.
  const Scalar x0 = kMarginLeft, x1 = width_ - kMarginRight;
  const Scalar y0 = kMarginTop, y1 = height_ - kMarginBottom;
  os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0)
     << "\" height=\"" << num(y1 - y0)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<text x=\"" << num(x0) << "\" y=\"" << num(y1 + 16)
     << "\" font-size=\"11\" font-family=\"sans-serif\">" << num(xmin_) << "</text>\n";
  os << "<text x=\"" << num(x1 - 36) << "\" y=\"" << num(y1 + 16)
     << "\" font-size=\"11\" font-family=\"sans-serif\">" << num(xmax_) << "</text>\n";
  os << "<text x=\"" << num(4.0) << "\" y=\"" << num(y1)
     << "\" font-size=\"11\" font-family=\"sans-serif\">" << num(ymin_) << "</text>\n";
  os << "<text x=\"" << num(4.0) << "\" y=\"" << num(y0 + 10)
     << "\" font-size=\"11\" font-family=\"sans-serif\">" << num(ymax_) << "</text>\n";
  if (!x_label_.empty()) {
    os << "<text x=\"" << num(0.5 * (x0 + x1)) << "\" y=\"" << num(height_ - 8)
       << "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\">"
       << x_label_ << "</text>\n";
  }
  if (!y_label_.empty()) {
    os << "<text x=\"14\" y=\"" << num(0.5 * (y0 + y1))
       << "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\" "
          "transform=\"rotate(-90 14 "
       << num(0.5 * (y0 + y1)) << ")\">" << y_label_ << "</text>\n";
  }
  if (!title_.empty()) {
    os << "<text x=\"" << num(0.5 * (x0 + x1)) << "\" y=\"" << num(18.0)
       << "\" font-size=\"13\" font-family=\"sans-serif\" text-anchor=\"middle\">"
       << title_ << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void SvgPlot::set_labels(std::string x_label, std::string y_label, std::string title) {
  x_label_ = std::move(x_label);
  y_label_ = std::move(y_label);
  title_ = std::move(title);
}

}  // namespace phasectl
