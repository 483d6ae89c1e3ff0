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

#ifndef INNOINDEX_CORPUS_H
#define INNOINDEX_CORPUS_H

#include "innoindex/date.h"
#include "innoindex/lingmodel.h"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace innoindex {

struct Document {
  std::string id;
  Date date;
  std::vector<std::string> terms;  // sorted, unique, lowercase
  std::optional<double> freq;      // citations/sales proxy; >= 0

  bool has_term(std::string_view term) const;
};

/// One query count over one window: R_k and F_k.
struct HitResult {
  std::string query;
  DateWindow window;
  std::uint64_t hit_count = 0;
  double frequency = 0.0;

  friend bool operator==(HitResult const&, HitResult const&) = default;
};

/// An immutable, date-ordered document collection with an inverted index.
///
/// Documents are kept sorted by (date, id) so that a date window maps to a
/// contiguous range of document positions; posting lists store positions.
class Corpus {
 public:
  Corpus() = default;
  /// Throws Error(kMalformedCorpus) on duplicate ids or negative `freq`.
  explicit Corpus(std::vector<Document> documents);

  std::vector<Document> const& documents() const { return documents_; }
  std::size_t size() const { return documents_.size(); }

  /// Closed span [first date, last date]; degenerate for an empty corpus.
  bool degenerate() const { return documents_.empty(); }
  Date first_date() const { return documents_.front().date; }
  Date last_date() const { return documents_.back().date; }
  /// Half-open form of the span, [first, last + 1 day).
  DateWindow span() const;

  /// Positions of documents containing `term`, ascending; empty if none.
  std::vector<std::uint32_t> const& postings(std::string_view term) const;

 private:
  std::vector<Document> documents_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> index_;
};

/// Builds a document by tokenizing `text`.
Document make_document(std::string id, Date date, std::string_view text,
                       std::optional<double> freq = std::nullopt);

/// Reads one JSON object per line with `id`, `date` (YYYY-MM-DD), `text`
/// and optional non-negative `freq`. Blank lines are ignored.
/// Throws Error(kIoError) or Error(kMalformedCorpus) with the line number.
Corpus load_corpus(std::filesystem::path const& path);
Corpus parse_corpus(std::string_view content);

/// Counts documents in `window ∩ span` whose terms satisfy every conjunct
/// (an OR-group matches when any member is present). `frequency` sums the
/// per-document weight, `freq` when present and 1 otherwise.
HitResult execute_query(Corpus const& corpus, Query const& query,
                        DateWindow const& window);

}  // namespace innoindex

#endif  // INNOINDEX_CORPUS_H
