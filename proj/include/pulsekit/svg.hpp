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

#pragma once

#include <memory>
#include <string>
#include <vector>

namespace pulsekit::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
};

/// Minimal line-plot renderer (polylines, axes, tick labels, legend, optional
/// log scaling and one inset panel). Keeps plotting dependency-free; CSV
/// stays the canonical output.
class Plot {
  public:
    Plot(std::string title, std::string x_label, std::string y_label);

    void set_log_x(bool on) { log_x_ = on; }
    void set_log_y(bool on) { log_y_ = on; }
    void add_series(Series s);
    void set_inset(std::shared_ptr<Plot> inset) { inset_ = std::move(inset); }

    std::string render(int width = 720, int height = 540) const;

  private:
    std::string render_group(double x0, double y0, double w, double h,
                             bool with_legend) const;

    std::string title_, x_label_, y_label_;
    bool log_x_ = false;
    bool log_y_ = false;
    std::vector<Series> series_;
    std::shared_ptr<Plot> inset_;
};

void write_file(const std::string& path, const std::string& content);

} // namespace pulsekit::svg
