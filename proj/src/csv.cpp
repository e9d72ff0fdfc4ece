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

#include "pulsekit/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace pulsekit {

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path)
    : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) {
        throw std::runtime_error("CsvWriter: cannot open " + path);
    }
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) {
            out_ << ',';
        }
        out_ << names[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvValue>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out_ << ',';
        }
        std::visit(
            [this](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>) {
                    out_ << csv_double(v);
                } else {
                    out_ << v;
                }
            },
            values[i]);
    }
    out_ << '\n';
}

} // namespace pulsekit
