#include "trilat/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace trilat {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 640.0;
constexpr double kTop = 48.0;
constexpr double kBottom = 420.0;
constexpr int kTicks = 5;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

std::string coord(double v) { return fmt("%.2f", v); }
std::string tick_label(double v) { return fmt("%.6g", v); }

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
};

AxisRange axis_range(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::max(1.0, std::abs(lo) * 0.05);
    return {lo - pad, lo + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

double scale(double v, const AxisRange& r, double out_lo, double out_hi) {
  return out_lo + (v - r.lo) / (r.hi - r.lo) * (out_hi - out_lo);
}

std::string ramp_color(double t) {
  // Blue #2c7bb6 to red #d7191c.
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(0x2c + t * (0xd7 - 0x2c)));
  const int g = static_cast<int>(std::lround(0x7b + t * (0x19 - 0x7b)));
  const int b = static_cast<int>(std::lround(0xb6 + t * (0x1c - 0xb6)));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

void append_frame(std::string& out, const std::string& title,
                  const std::string& x_label, const std::string& y_label,
                  const AxisRange& xr, const AxisRange& yr) {
  out += "<rect x=\"0\" y=\"0\" width=\"" + coord(kWidth) + "\" height=\"" +
         coord(kHeight) + "\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"" + coord(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
         "font-family=\"sans-serif\">" +
         title + "</text>\n";
  out += "<rect x=\"" + coord(kLeft) + "\" y=\"" + coord(kTop) + "\" width=\"" +
         coord(kRight - kLeft) + "\" height=\"" + coord(kBottom - kTop) +
         "\" fill=\"none\" stroke=\"#444444\"/>\n";
  for (int t = 0; t < kTicks; ++t) {
    const double f = static_cast<double>(t) / (kTicks - 1);
    const double xv = xr.lo + f * (xr.hi - xr.lo);
    const double yv = yr.lo + f * (yr.hi - yr.lo);
    const double xp = scale(xv, xr, kLeft, kRight);
    const double yp = scale(yv, yr, kBottom, kTop);
    out += "<line x1=\"" + coord(xp) + "\" y1=\"" + coord(kBottom) + "\" x2=\"" +
           coord(xp) + "\" y2=\"" + coord(kBottom + 6) +
           "\" stroke=\"#444444\"/>\n";
    out += "<text x=\"" + coord(xp) + "\" y=\"" + coord(kBottom + 20) +
           "\" text-anchor=\"middle\" font-size=\"11\" "
           "font-family=\"sans-serif\">" +
           tick_label(xv) + "</text>\n";
    out += "<line x1=\"" + coord(kLeft - 6) + "\" y1=\"" + coord(yp) +
           "\" x2=\"" + coord(kLeft) + "\" y2=\"" + coord(yp) +
           "\" stroke=\"#444444\"/>\n";
    out += "<text x=\"" + coord(kLeft - 9) + "\" y=\"" + coord(yp + 4) +
           "\" text-anchor=\"end\" font-size=\"11\" "
           "font-family=\"sans-serif\">" +
           tick_label(yv) + "</text>\n";
  }
  out += "<text x=\"" + coord((kLeft + kRight) / 2) + "\" y=\"" +
         coord(kHeight - 10) +
         "\" text-anchor=\"middle\" font-size=\"13\" "
         "font-family=\"sans-serif\">" +
         x_label + "</text>\n";
  out += "<text x=\"18\" y=\"" + coord((kTop + kBottom) / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 18 " +
         coord((kTop + kBottom) / 2) + ")\">" + y_label + "</text>\n";
}

std::string document(const std::string& body) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(kWidth) +
         "\" height=\"" + coord(kHeight) + "\" viewBox=\"0 0 " + coord(kWidth) +
         " " + coord(kHeight) + "\">\n" + body + "</svg>\n";
}

}  // namespace

std::string render_scatter_svg(const ScatterSpec& spec) {
  if (spec.points.empty()) throw std::invalid_argument("no points to plot");
  double xlo = spec.points[0].x, xhi = xlo;
  double ylo = spec.points[0].y, yhi = ylo;
  double clo = spec.points[0].color_value, chi = clo;
  for (const auto& p : spec.points) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
    clo = std::min(clo, p.color_value);
    chi = std::max(chi, p.color_value);
  }
  const AxisRange xr = axis_range(xlo, xhi);
  const AxisRange yr = axis_range(ylo, yhi);

  std::string body;
  append_frame(body, spec.title, spec.x_label, spec.y_label, xr, yr);
  for (const auto& p : spec.points) {
    const double t = chi > clo ? (p.color_value - clo) / (chi - clo) : 0.5;
    body += "<circle cx=\"" + coord(scale(p.x, xr, kLeft, kRight)) + "\" cy=\"" +
            coord(scale(p.y, yr, kBottom, kTop)) + "\" r=\"4\" fill=\"" +
            ramp_color(t) + "\" fill-opacity=\"0.8\"/>\n";
  }
  // Color legend: vertical ramp with end labels.
  const double lx = kRight + 24;
  for (int s = 0; s < 10; ++s) {
    const double y0 = kTop + (kBottom - kTop) * s / 10.0;
    body += "<rect x=\"" + coord(lx) + "\" y=\"" + coord(y0) +
            "\" width=\"14\" height=\"" + coord((kBottom - kTop) / 10.0) +
            "\" fill=\"" + ramp_color(1.0 - (s + 0.5) / 10.0) + "\"/>\n";
  }
  body += "<text x=\"" + coord(lx + 20) + "\" y=\"" + coord(kTop + 10) +
          "\" font-size=\"11\" font-family=\"sans-serif\">" + tick_label(chi) +
          "</text>\n";
  body += "<text x=\"" + coord(lx + 20) + "\" y=\"" + coord(kBottom) +
          "\" font-size=\"11\" font-family=\"sans-serif\">" + tick_label(clo) +
          "</text>\n";
  body += "<text x=\"" + coord(lx) + "\" y=\"" + coord(kTop - 10) +
          "\" font-size=\"11\" font-family=\"sans-serif\">" + spec.color_label +
          "</text>\n";
  return document(body);
}

std::string render_line_svg(const LineSpec& spec) {
  if (spec.xs.empty() || spec.xs.size() != spec.ys.size()) {
    throw std::invalid_argument("line plot needs matching non-empty series");
  }
  double xlo = spec.xs[0], xhi = xlo, ylo = spec.ys[0], yhi = ylo;
  for (std::size_t i = 0; i < spec.xs.size(); ++i) {
    xlo = std::min(xlo, spec.xs[i]);
    xhi = std::max(xhi, spec.xs[i]);
    ylo = std::min(ylo, spec.ys[i]);
    yhi = std::max(yhi, spec.ys[i]);
  }
  const AxisRange xr = axis_range(xlo, xhi);
  const AxisRange yr = axis_range(ylo, yhi);

  std::string body;
  append_frame(body, spec.title, spec.x_label, spec.y_label, xr, yr);
  std::string pts;
  for (std::size_t i = 0; i < spec.xs.size(); ++i) {
    if (!pts.empty()) pts += ' ';
    pts += coord(scale(spec.xs[i], xr, kLeft, kRight)) + "," +
           coord(scale(spec.ys[i], yr, kBottom, kTop));
  }
  body += "<polyline points=\"" + pts +
          "\" fill=\"none\" stroke=\"#2c7bb6\" stroke-width=\"2\"/>\n";
  for (std::size_t i = 0; i < spec.xs.size(); ++i) {
    body += "<circle cx=\"" + coord(scale(spec.xs[i], xr, kLeft, kRight)) +
            "\" cy=\"" + coord(scale(spec.ys[i], yr, kBottom, kTop)) +
            "\" r=\"4\" fill=\"#2c7bb6\"/>\n";
  }
  return document(body);
}

}  // namespace trilat
