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

#include "xml.h"

#include <cstdint>

#include "absa/types.h"

namespace absa::xml {
namespace {

class Reader {
 public:
  explicit Reader(std::string_view doc) : doc_(doc) {}

  Element document() {
    skip_misc();
    if (at_end() || peek() != '<') fail("expected document element");
    Element root = element();
    skip_misc();
    if (!at_end()) fail("content after document element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    throw ParseError("XML parse error at byte offset " + std::to_string(at) +
                     ": " + what);
  }

  bool at_end() const { return pos_ >= doc_.size(); }
  char peek() const { return doc_[pos_]; }
  bool starts_with(std::string_view s) const {
    return doc_.substr(pos_, s.size()) == s;
  }

  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }
  static bool is_name_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == ':' || c == '-' ||
           c == '.';
  }

  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  void skip_until(std::string_view terminator, const char* what) {
    auto end = doc_.find(terminator, pos_);
    if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
    pos_ = end + terminator.size();
  }

  // Whitespace, comments, PIs and DOCTYPE outside the document element.
  void skip_misc() {
    for (;;) {
      skip_space();
      if (starts_with("<?")) {
        skip_until("?>", "processing instruction");
      } else if (starts_with("<!--")) {
        skip_until("-->", "comment");
      } else if (starts_with("<!DOCTYPE")) {
        skip_doctype();
      } else {
        return;
      }
    }
  }

  void skip_doctype() {
    std::size_t start = pos_;
    int depth = 0;
    while (!at_end()) {
      char c = peek();
      ++pos_;
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == '>' && depth <= 0) return;
    }
    fail_at(start, "unterminated DOCTYPE");
  }

  std::string name() {
    std::size_t start = pos_;
    while (!at_end() && is_name_char(peek())) ++pos_;
    if (pos_ == start) fail("expected name");
    return std::string(doc_.substr(start, pos_ - start));
  }

  static void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  // pos_ is at '&'.
  void entity(std::string& out) {
    std::size_t start = pos_;
    auto end = doc_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 12) {
      fail_at(start, "malformed entity reference");
    }
    std::string_view ref = doc_.substr(pos_ + 1, end - pos_ - 1);
    pos_ = end + 1;
    if (ref == "lt") { out += '<'; return; }
    if (ref == "gt") { out += '>'; return; }
    if (ref == "amp") { out += '&'; return; }
    if (ref == "quot") { out += '"'; return; }
    if (ref == "apos") { out += '\''; return; }
    if (ref.size() >= 2 && ref[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = ref[1] == 'x' || ref[1] == 'X';
      std::string_view digits = ref.substr(hex ? 2 : 1);
      if (digits.empty()) fail_at(start, "malformed character reference");
      for (char c : digits) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else fail_at(start, "malformed character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        if (cp > 0x10FFFF) fail_at(start, "character reference out of range");
      }
      append_utf8(out, cp);
      return;
    }
    fail_at(start, "unknown entity '&" + std::string(ref) + ";'");
  }

  std::string attribute_value() {
    if (at_end() || (peek() != '"' && peek() != '\'')) {
      fail("expected quoted attribute value");
    }
    char quote = peek();
    ++pos_;
    std::string value;
    for (;;) {
      if (at_end()) fail("unterminated attribute value");
      char c = peek();
      if (c == quote) { ++pos_; return value; }
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') { entity(value); continue; }
      value += c;
      ++pos_;
    }
  }

  // pos_ is at '<' of a start tag.
  Element element() {
    Element e;
    e.offset = pos_;
    ++pos_;
    e.name = name();
    for (;;) {
      bool spaced = !at_end() && is_space(peek());
      skip_space();
      if (at_end()) fail_at(e.offset, "unterminated start tag");
      if (starts_with("/>")) { pos_ += 2; return e; }
      if (peek() == '>') { ++pos_; break; }
      if (!spaced) fail("expected whitespace before attribute");
      std::string key = name();
      skip_space();
      if (at_end() || peek() != '=') fail("expected '=' after attribute name");
      ++pos_;
      skip_space();
      for (const auto& [k, v] : e.attributes) {
        if (k == key) fail("duplicate attribute '" + key + "'");
      }
      e.attributes.emplace_back(std::move(key), attribute_value());
    }
    content(e);
    return e;
  }

  void content(Element& e) {
    for (;;) {
      if (at_end()) fail_at(e.offset, "unclosed element <" + e.name + ">");
      char c = peek();
      if (c == '<') {
        if (starts_with("</")) {
          std::size_t close_at = pos_;
          pos_ += 2;
          std::string closing = name();
          skip_space();
          if (at_end() || peek() != '>') fail("expected '>' in end tag");
          ++pos_;
          if (closing != e.name) {
            fail_at(close_at, "mismatched end tag </" + closing +
                                  ">, expected </" + e.name + ">");
          }
          return;
        }
        if (starts_with("<!--")) {
          skip_until("-->", "comment");
        } else if (starts_with("<![CDATA[")) {
          pos_ += 9;
          auto end = doc_.find("]]>", pos_);
          if (end == std::string_view::npos) fail("unterminated CDATA section");
          e.text += doc_.substr(pos_, end - pos_);
          pos_ = end + 3;
        } else if (starts_with("<?")) {
          skip_until("?>", "processing instruction");
        } else {
          e.children.push_back(element());
        }
      } else if (c == '&') {
        entity(e.text);
      } else {
        e.text += c;
        ++pos_;
      }
    }
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
};

}  // namespace

const std::string* Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

const Element* Element::child(std::string_view child_name) const {
  for (const auto& c : children) {
    if (c.name == child_name) return &c;
  }
  return nullptr;
}

Element parse(std::string_view document) {
  // Skip a UTF-8 byte order mark.
  std::size_t skip = document.substr(0, 3) == "\xEF\xBB\xBF" ? 3 : 0;
  Reader reader(document.substr(skip));
  try {
    return reader.document();
  } catch (const ParseError& e) {
    if (skip == 0) throw;
    throw ParseError(std::string(e.what()) + " (after 3-byte BOM)");
  }
}

}  // namespace absa::xml
