// Copyright 2026 The Rankbench Authors.
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

#ifndef RANKBENCH_TEXT_HPP_
#define RANKBENCH_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "rankbench/error.hpp"

namespace rankbench::text {

constexpr bool IsSpace(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' ||
         c == U'\f';
}

// Decodes UTF-8 into code points. Invalid sequences raise ValidationError.
inline std::u32string DecodeUtf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    const auto lead = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      throw ValidationError("invalid UTF-8 lead byte at offset " +
                            std::to_string(i));
    }
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= s.size()) {
        throw ValidationError("truncated UTF-8 sequence at offset " +
                              std::to_string(i));
      }
      const auto cont = static_cast<unsigned char>(s[i + k]);
      if ((cont & 0xC0) != 0x80) {
        throw ValidationError("invalid UTF-8 continuation at offset " +
                              std::to_string(i + k));
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

// Code points of `s` with all whitespace removed.
inline std::u32string StripWhitespace(std::string_view s) {
  std::u32string cps = DecodeUtf8(s);
  std::u32string out;
  out.reserve(cps.size());
  for (char32_t c : cps) {
    if (!IsSpace(c)) out.push_back(c);
  }
  return out;
}

// Whitespace-separated words; runs of whitespace count as one separator.
inline std::vector<std::string_view> SplitWords(std::string_view s) {
  std::vector<std::string_view> words;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(static_cast<unsigned char>(s[i]))) ++i;
    const size_t start = i;
    while (i < s.size() && !IsSpace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) words.push_back(s.substr(start, i - start));
  }
  return words;
}

}  // namespace rankbench::text

#endif  // RANKBENCH_TEXT_HPP_
