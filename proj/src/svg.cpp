// Copyright 2026 The pulsekit Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pulsekit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pulsekit::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string tick_text(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range data_range(const std::vector<Series>& series, bool take_x, bool log_scale) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const Series& s : series) {
        const auto& vals = take_x ? s.x : s.y;
        for (double v : vals) {
            if (!std::isfinite(v) || (log_scale && v <= 0.0)) {
                continue;
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        return {0.0, 1.0};
    }
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    return {lo, hi};
}

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 4.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
        ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    }
    return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    const int first = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
    const int last = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
    for (int e = first; e <= last; ++e) {
        ticks.push_back(std::pow(10.0, e));
    }
    if (ticks.empty()) {
        ticks = {lo, hi};
    }
    return ticks;
}

} // namespace

Plot::Plot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void Plot::add_series(Series s) { series_.push_back(std::move(s)); }

std::string Plot::render_group(double x0, double y0, double w, double h,
                               bool with_legend) const {
    const double ml = 62, mr = 16, mt = 30, mb = 44; // margins
    const double px = x0 + ml, py = y0 + mt;
    const double pw = w - ml - mr, ph = h - mt - mb;

    Range xr = data_range(series_, true, log_x_);
    Range yr = data_range(series_, false, log_y_);
    if (log_y_) {
        // keep a little headroom on decades
        yr.lo /= 1.3;
        yr.hi *= 1.3;
    } else {
        const double pad = 0.05 * (yr.hi - yr.lo);
        yr.lo -= pad;
        yr.hi += pad;
    }

    auto x_pos = [&](double v) {
        const double t = log_x_ ? (std::log10(v) - std::log10(xr.lo)) /
                                      (std::log10(xr.hi) - std::log10(xr.lo))
                                : (v - xr.lo) / (xr.hi - xr.lo);
        return px + t * pw;
    };
    auto y_pos = [&](double v) {
        const double t = log_y_ ? (std::log10(v) - std::log10(yr.lo)) /
                                      (std::log10(yr.hi) - std::log10(yr.lo))
                                : (v - yr.lo) / (yr.hi - yr.lo);
        return py + ph - t * ph;
    };

    std::ostringstream out;
    out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\""
        << fmt(pw) << "\" height=\"" << fmt(ph)
        << "\" fill=\"white\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << fmt(px + pw / 2) << "\" y=\"" << fmt(py - 10)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << title_ << "</text>\n";

    const auto xticks = log_x_ ? log_ticks(xr.lo, xr.hi) : linear_ticks(xr.lo, xr.hi);
    for (double t : xticks) {
        const double gx = x_pos(t);
        out << "<line x1=\"" << fmt(gx) << "\" y1=\"" << fmt(py) << "\" x2=\""
            << fmt(gx) << "\" y2=\"" << fmt(py + ph)
            << "\" stroke=\"#ddd\" stroke-width=\"0.6\"/>\n";
        out << "<text x=\"" << fmt(gx) << "\" y=\"" << fmt(py + ph + 16)
            << "\" text-anchor=\"middle\">" << tick_text(t) << "</text>\n";
    }
    const auto yticks = log_y_ ? log_ticks(yr.lo, yr.hi) : linear_ticks(yr.lo, yr.hi);
    for (double t : yticks) {
        const double gy = y_pos(t);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(gy) << "\" x2=\""
            << fmt(px + pw) << "\" y2=\"" << fmt(gy)
            << "\" stroke=\"#ddd\" stroke-width=\"0.6\"/>\n";
        out << "<text x=\"" << fmt(px - 6) << "\" y=\"" << fmt(gy + 4)
            << "\" text-anchor=\"end\">" << tick_text(t) << "</text>\n";
    }

    out << "<text x=\"" << fmt(px + pw / 2) << "\" y=\"" << fmt(py + ph + 34)
        << "\" text-anchor=\"middle\">" << x_label_ << "</text>\n";
    out << "<text x=\"" << fmt(x0 + 14) << "\" y=\"" << fmt(py + ph / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << fmt(x0 + 14) << " "
        << fmt(py + ph / 2) << ")\">" << y_label_ << "</text>\n";

    for (std::size_t si = 0; si < series_.size(); ++si) {
        const Series& s = series_[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (log_x_ && s.x[i] <= 0.0) {
                continue;
            }
            if (log_y_ && s.y[i] <= 0.0) {
                continue;
            }
            out << fmt(x_pos(s.x[i])) << ',' << fmt(y_pos(s.y[i])) << ' ';
        }
        out << "\"/>\n";
    }

    if (with_legend) {
        double ly = py + 14;
        for (std::size_t si = 0; si < series_.size(); ++si) {
            if (series_[si].label.empty()) {
                continue;
            }
            const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
            out << "<line x1=\"" << fmt(px + pw - 130) << "\" y1=\"" << fmt(ly - 4)
                << "\" x2=\"" << fmt(px + pw - 108) << "\" y2=\"" << fmt(ly - 4)
                << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
            out << "<text x=\"" << fmt(px + pw - 102) << "\" y=\"" << fmt(ly) << "\">"
                << series_[si].label << "</text>\n";
            ly += 16;
        }
    }
    out << "</g>\n";
    return out.str();
}

std::string Plot::render(int width, int height) const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << render_group(0, 0, width, height, true);
    if (inset_) {
        out << inset_->render_group(width * 0.55, height * 0.08, width * 0.4,
                                    height * 0.38, false);
    }
    out << "</svg>\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("svg: cannot open " + path);
    }
    out << content;
}

} // namespace pulsekit::svg
