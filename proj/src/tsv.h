// Copyright 2026 The absa-pair Authors.
//
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

// Unquoted TSV: fields may not contain tab or newline. LF line endings.

#ifndef ABSA_SRC_TSV_H_
#define ABSA_SRC_TSV_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absa/types.h"

namespace absa::tsv {

struct Line {
  std::size_t line;  // 1-based
  std::string_view text;
};

inline void append_row(std::string& out, std::span<const std::string_view> fields) {
  bool first = true;
  for (auto f : fields) {
    if (f.find_first_of("\t\n\r") != std::string_view::npos) {
      throw ContractViolation("TSV field contains tab or newline: '" +
                              std::string(f) + "'");
    }
    if (!first) out += '\t';
    out += f;
    first = false;
  }
  out += '\n';
}

// Non-empty lines with their 1-based numbers; a trailing CR is dropped.
inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t pos = 0;
  std::size_t line = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view l = text.substr(pos, end - pos);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    ++line;
    if (!l.empty()) out.push_back({line, l});
    pos = end + 1;
  }
  return out;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    auto tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

}  // namespace absa::tsv

#endif  // ABSA_SRC_TSV_H_
