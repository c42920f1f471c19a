#include "srp_cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "srp/error.hpp"

namespace srp::cli {

namespace fs = std::filesystem;

StagedOutput::StagedOutput(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
  std::random_device entropy;
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::ostringstream name;
    name << ".srp-staging-" << std::hex << entropy() << entropy();
    staging_ = dir_ / name.str();
    if (fs::create_directory(staging_)) {
      return;
    }
  }
  throw DataError("cannot create a staging directory in '" + dir_.string() + "'");
}

StagedOutput::~StagedOutput() {
  std::error_code ignored;
  fs::remove_all(staging_, ignored);
}

fs::path StagedOutput::stage(const std::string& name) {
  if (committed_) {
    throw ContractError("StagedOutput: already committed");
  }
  names_.push_back(name);
  return staging_ / name;
}

void StagedOutput::write(const std::string& name, const std::string& contents) {
  const fs::path path = stage(name);
  std::ofstream file(path, std::ios::binary);
  file << contents;
  file.close();
  if (!file) {
    throw DataError("write failed for '" + path.string() + "'");
  }
}

std::vector<fs::path> StagedOutput::commit() {
  std::vector<fs::path> out;
  for (const std::string& name : names_) {
    if (!fs::exists(staging_ / name)) {
      throw DataError("staged file '" + name + "' was never written");
    }
  }
  for (const std::string& name : names_) {
    fs::rename(staging_ / name, dir_ / name);
    out.push_back(dir_ / name);
  }
  committed_ = true;
  return out;
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};
constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

std::string escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo <= 0.0) {
      const double pad = std::max(1e-12, std::abs(lo) * 0.05 + 0.5);
      lo -= pad;
      hi += pad;
    } else {
      const double pad = 0.05 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
  }
  double map(double v, double out_lo, double out_hi) const { return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo); }
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

void open_svg(std::ostringstream& svg, const std::string& title) {
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
}

void axes(std::ostringstream& svg, const Range& x, const Range& y, const std::string& x_label,
          const std::string& y_label, bool log_y) {
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;
  svg << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = x.lo + (x.hi - x.lo) * t / 4.0;
    const double px = x.map(fx, x0, x1);
    svg << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px << "\" y2=\"" << y0 + 5
        << "\" stroke=\"#444\"/><text x=\"" << px << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">" << fmt(fx)
        << "</text>\n";
    const double fy = y.lo + (y.hi - y.lo) * t / 4.0;
    const double py = y.map(fy, y0, y1);
    svg << "<line x1=\"" << x0 - 5 << "\" y1=\"" << py << "\" x2=\"" << x0 << "\" y2=\"" << py
        << "\" stroke=\"#444\"/><text x=\"" << x0 - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">"
        << fmt(log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
  }
  svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  svg << "<text transform=\"translate(16," << (y0 + y1) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label) << "</text>\n";
}

void legend_entry(std::ostringstream& svg, std::size_t row, const std::string& label, const char* fill,
                  const char* stroke) {
  const double x = kWidth - kRight + 15;
  const double y = kTop + 12 + 18.0 * static_cast<double>(row);
  svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"" << fill << "\" stroke=\"" << stroke
      << "\" stroke-width=\"1.5\"/><text x=\"" << x + 10 << "\" y=\"" << y + 4 << "\">" << escape(label)
      << "</text>\n";
}

}  // namespace

std::string scatter_svg(const Matrix& z_train, std::span<const int> y_train, const Matrix& z_test,
                        std::span<const int> y_test, const std::vector<std::string>& class_names,
                        const std::string& title) {
  if (z_train.rows() < 2 || (z_test.cols() > 0 && z_test.rows() < 2)) {
    throw ContractError("scatter_svg: need a 2-D embedding");
  }
  Range x;
  Range y;
  for (const Matrix* z : {&z_train, &z_test}) {
    for (Index j = 0; j < z->cols(); ++j) {
      x.add((*z)(0, j));
      y.add((*z)(1, j));
    }
  }
  x.finish();
  y.finish();

  std::ostringstream svg;
  open_svg(svg, title);
  axes(svg, x, y, "z1", "z2", false);
  auto points = [&](const Matrix& z, std::span<const int> labels, bool filled) {
    for (Index j = 0; j < z.cols(); ++j) {
      if (!std::isfinite(z(0, j)) || !std::isfinite(z(1, j))) {
        continue;
      }
      const char* c = color(static_cast<std::size_t>(labels[static_cast<std::size_t>(j)]));
      svg << "<circle cx=\"" << x.map(z(0, j), kLeft, kWidth - kRight) << "\" cy=\""
          << y.map(z(1, j), kHeight - kBottom, kTop) << "\" r=\"3\" fill=\"" << (filled ? c : "none")
          << "\" stroke=\"" << c << "\" stroke-width=\"1.2\"/>\n";
    }
  };
  points(z_train, y_train, true);
  points(z_test, y_test, false);
  std::size_t row = 0;
  for (std::size_t c = 0; c < class_names.size(); ++c) {
    legend_entry(svg, row++, class_names[c] + " train", color(c), color(c));
    legend_entry(svg, row++, class_names[c] + " test", "none", color(c));
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string curves_svg(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                       const std::string& y_label, bool log_y) {
  auto to_y = [log_y](double v) { return log_y ? (v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN()) : v; };
  Range x;
  Range y;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x.add(s.x[i]);
      const double spread = i < s.spread.size() ? s.spread[i] : 0.0;
      y.add(to_y(s.y[i] - spread));
      y.add(to_y(s.y[i] + spread));
      y.add(to_y(s.y[i]));
    }
  }
  x.finish();
  y.finish();

  std::ostringstream svg;
  open_svg(svg, title);
  axes(svg, x, y, x_label, log_y ? y_label + " (log scale)" : y_label, log_y);
  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* c = color(si);
    std::ostringstream path;
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double vy = to_y(s.y[i]);
      if (!std::isfinite(vy)) {
        continue;
      }
      const double px = x.map(s.x[i], kLeft, kWidth - kRight);
      const double py = y.map(vy, kHeight - kBottom, kTop);
      path << (first ? "" : " ") << px << ',' << py;
      first = false;
      svg << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"3.5\" fill=\"" << c << "\"/>\n";
      if (i < s.spread.size() && s.spread[i] > 0.0) {
        const double lo = to_y(s.y[i] - s.spread[i]);
        const double hi = to_y(s.y[i] + s.spread[i]);
        if (std::isfinite(lo) && std::isfinite(hi)) {
          svg << "<line x1=\"" << px << "\" y1=\"" << y.map(lo, kHeight - kBottom, kTop) << "\" x2=\"" << px
              << "\" y2=\"" << y.map(hi, kHeight - kBottom, kTop) << "\" stroke=\"" << c << "\"/>\n";
        }
      }
    }
    if (!first) {
      svg << "<polyline points=\"" << path.str() << "\" fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n";
    }
    legend_entry(svg, si, s.name, c, c);
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace srp::cli
