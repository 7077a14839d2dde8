// SPDX-License-Identifier: Apache-2.0
//
// radeq - link-level simulator and optimizer for resolution-adaptive
// quantized massive MU-MIMO uplink equalization
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace radeq {

// Locale-free float formatting with 9 significant digits (the byte-stability
// contract for CSV bodies and embedded config headers).
std::string format_double(double v);

// '#'-prefixed key = value comment block embedding the resolved run
// configuration at the top of a CSV file.
void write_csv_header(
    std::ostream& out, const std::string& command,
    const std::vector<std::pair<std::string, std::string>>& config);

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace radeq
