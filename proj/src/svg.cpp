#include "sdra/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sdra/errors.hpp"

namespace sdra::svg {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMargin = 60;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Blue -> yellow ramp for t in [0, 1].
std::string colour(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(68 + t * (253 - 68)));
  const int g = static_cast<int>(std::lround(1 + t * (231 - 1)));
  const int b = static_cast<int>(std::lround(84 + t * (37 - 84)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

double magnitude(const FieldSample& s, Component c) {
  switch (c) {
    case Component::h_z: return std::abs(s.h_z);
    case Component::e_phi: return std::abs(s.e_phi);
    case Component::e_r: return std::abs(s.e_r);
    case Component::e_total:
      return std::sqrt(std::norm(s.e_r) + std::norm(s.e_phi) + std::norm(s.e_z));
  }
  return 0.0;
}

}  // namespace

std::string line_plot(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series) {
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw DomainError("plot series '" + s.name + "' is ragged");
    for (double x : s.x) x_lo = std::min(x_lo, x), x_hi = std::max(x_hi, x);
    for (double y : s.y) y_lo = std::min(y_lo, y), y_hi = std::max(y_hi, y);
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
  const double pw = kWidth - 2 * kMargin, ph = kHeight - 2 * kMargin;
  const auto px = [&](double x) { return kMargin + (x - x_lo) / (x_hi - x_lo) * pw; };
  const auto py = [&](double y) { return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(title) << "</text>\n"
      << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << pw << "\" height=\""
      << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / 4.0;
    const double yv = y_lo + (y_hi - y_lo) * t / 4.0;
    out << "<text x=\"" << num(px(xv)) << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n"
        << "<text x=\"" << kMargin - 6 << "\" y=\"" << num(py(yv) + 4)
        << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n"
      << "<text transform=\"translate(16," << kHeight / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* stroke = kPalette[k % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << (i ? " " : "") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
    }
    out << "\"/>\n<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << kMargin + 16 + 16 * k
        << "\" text-anchor=\"end\" fill=\"" << stroke << "\">" << escape(s.name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string field_heatmap(const FieldGrid& grid, std::size_t iz, Component component) {
  if (iz >= grid.n_z()) throw DomainError("heat map plane index out of range");
  const double a = grid.geometry().radius();
  const double phi0 = grid.geometry().sector_angle();
  const std::size_t nr = grid.n_r(), np = grid.n_phi();

  double peak = 0.0;
  for (std::size_t ip = 0; ip < np; ++ip)
    for (std::size_t ir = 0; ir < nr; ++ir)
      peak = std::max(peak, magnitude(grid.at(ir, ip, iz), component));
  if (!(peak > 0.0)) peak = 1.0;

  const double size = std::min(kWidth, kHeight) - 2.0 * kMargin;
  const double scale = size / (2.0 * a);
  const double cx = kWidth / 2.0, cy = kHeight / 2.0;
  const auto pt = [&](double r, double phi) {
    return num(cx + scale * r * std::cos(phi)) + "," + num(cy - scale * r * std::sin(phi));
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(grid.mode().label()) << " at z = " << num(grid.at(0, 0, iz).at.z * 1e3)
      << " mm</text>\n";
  // Each node owns the wedge between the midpoints to its neighbours.
  const double dr = a / static_cast<double>(nr - 1);
  const double dphi = phi0 / static_cast<double>(np - 1);
  for (std::size_t ip = 0; ip < np; ++ip) {
    const double p0 = std::max(0.0, (static_cast<double>(ip) - 0.5) * dphi);
    const double p1 = std::min(phi0, (static_cast<double>(ip) + 0.5) * dphi);
    for (std::size_t ir = 0; ir < nr; ++ir) {
      const double r0 = std::max(0.0, (static_cast<double>(ir) - 0.5) * dr);
      const double r1 = std::min(a, (static_cast<double>(ir) + 0.5) * dr);
      const double t = magnitude(grid.at(ir, ip, iz), component) / peak;
      out << "<polygon fill=\"" << colour(t) << "\" stroke=\"none\" points=\"" << pt(r0, p0)
          << ' ' << pt(r1, p0) << ' ' << pt(r1, p1) << ' ' << pt(r0, p1) << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace sdra::svg
