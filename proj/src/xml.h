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

// Small non-validating XML reader: elements, attributes, character data,
// CDATA, comments, processing instructions, DOCTYPE (skipped) and the
// predefined plus numeric entity references. Errors carry the byte offset.

#ifndef ABSA_SRC_XML_H_
#define ABSA_SRC_XML_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace absa::xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::string text;  // concatenated character data of direct children
  std::size_t offset = 0;

  const std::string* attribute(std::string_view key) const;
  const Element* child(std::string_view child_name) const;
};

// Returns the document element. Throws absa::ParseError.
Element parse(std::string_view document);

}  // namespace absa::xml

#endif  // ABSA_SRC_XML_H_
