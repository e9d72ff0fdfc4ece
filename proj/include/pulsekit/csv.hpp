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

#include <cstdint>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace pulsekit {

/// Doubles in CSV output carry 17 significant digits so a parsed value
/// round-trips bit-exactly.
std::string csv_double(double v);

using CsvValue = std::variant<std::int64_t, std::uint64_t, double, std::string>;

/// Minimal CSV emitter: header row first, then data rows, '\n' line ends,
/// binary stream so output bytes are platform-independent.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void header(const std::vector<std::string>& names);
    void row(const std::vector<CsvValue>& values);

  private:
    std::ofstream out_;
};

} // namespace pulsekit
