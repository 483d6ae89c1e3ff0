// Copyright 2026 The innoindex Authors
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

#ifndef INNOINDEX_TEXT_H
#define INNOINDEX_TEXT_H

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace innoindex::text {

/// Lowercases ASCII, Latin-1 and Cyrillic letters in a UTF-8 string. Other
/// code points pass through untouched.
std::string to_lower(std::string_view utf8);

/// Splits UTF-8 text into lowercase tokens. ASCII characters other than
/// letters and digits separate tokens, as do common Unicode punctuation and
/// space characters (guillemets, dashes, curly quotes, no-break space).
std::vector<std::string> tokenize(std::string_view utf8);

/// True when `term` is exactly one token under `tokenize`.
bool is_single_token(std::string_view term);

std::string_view trim(std::string_view s);

/// Splits on `sep`, trimming each piece. Empty pieces are kept.
std::vector<std::string> split(std::string_view s, char sep);

/// One content line of a sectioned file, with `#` comments removed.
struct SectionLine {
  std::string section;  // lowercase, without brackets; empty before the first
  std::string content;  // trimmed, non-empty
  int line_number = 0;  // 1-based
};

/// Reads `[section]`-delimited line-oriented text. Blank lines and comments
/// are dropped; a header line with no content yields an entry with an empty
/// `content` so callers can see that the section exists.
std::vector<SectionLine> read_sections(std::string_view text);

/// Reads a whole file; throws Error(kIoError) naming the path on failure.
std::string read_file(std::filesystem::path const& path);

}  // namespace innoindex::text

#endif  // INNOINDEX_TEXT_H
