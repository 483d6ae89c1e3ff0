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

#include "innoindex/corpus.h"

#include "innoindex/error.h"
#include "innoindex/text.h"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace innoindex {
namespace {

std::vector<std::uint32_t> const kNoPostings;

using PositionRange = std::pair<std::uint32_t, std::uint32_t>;

// Restricts a sorted posting list to [range.first, range.second).
std::pair<std::vector<std::uint32_t>::const_iterator,
          std::vector<std::uint32_t>::const_iterator>
clip(std::vector<std::uint32_t> const& postings, PositionRange range) {
  auto b = std::lower_bound(postings.begin(), postings.end(), range.first);
  auto e = std::lower_bound(b, postings.end(), range.second);
  return {b, e};
}

std::vector<std::uint32_t> group_postings(Corpus const& corpus,
                                          Query::TermGroup const& group,
                                          PositionRange range) {
  std::vector<std::uint32_t> merged;
  for (auto const& member : group) {
    auto [b, e] = clip(corpus.postings(member), range);
    std::vector<std::uint32_t> next;
    next.reserve(merged.size() + static_cast<std::size_t>(e - b));
    std::set_union(merged.begin(), merged.end(), b, e, std::back_inserter(next));
    merged.swap(next);
  }
  return merged;
}

}  // namespace

bool Document::has_term(std::string_view term) const {
  return std::binary_search(terms.begin(), terms.end(), term);
}

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
  std::sort(documents_.begin(), documents_.end(), [](auto const& a, auto const& b) {
    return a.date != b.date ? a.date < b.date : a.id < b.id;
  });
  if (documents_.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kMalformedCorpus, "corpus too large");
  }
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    auto& doc = documents_[i];
    if (doc.freq && !(*doc.freq >= 0.0 && std::isfinite(*doc.freq))) {
      throw Error(ErrorCode::kMalformedCorpus,
                  "document '" + doc.id + "' has a negative or non-finite freq");
    }
    std::sort(doc.terms.begin(), doc.terms.end());
    doc.terms.erase(std::unique(doc.terms.begin(), doc.terms.end()), doc.terms.end());
    for (auto const& t : doc.terms) index_[t].push_back(static_cast<std::uint32_t>(i));
  }
  std::set<std::string_view> ids;
  for (auto const& doc : documents_) {
    if (!ids.insert(doc.id).second) {
      throw Error(ErrorCode::kMalformedCorpus, "duplicate document id '" + doc.id + "'");
    }
  }
}

DateWindow Corpus::span() const {
  if (degenerate()) return {};
  return {first_date(), last_date() + std::chrono::days(1)};
}

std::vector<std::uint32_t> const& Corpus::postings(std::string_view term) const {
  auto it = index_.find(std::string(term));
  return it == index_.end() ? kNoPostings : it->second;
}

Document make_document(std::string id, Date date, std::string_view text,
                       std::optional<double> freq) {
  return Document{std::move(id), date, text::tokenize(text), freq};
}

Corpus parse_corpus(std::string_view content) {
  std::vector<Document> docs;
  std::set<std::string> ids;
  int line_number = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    auto end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = text::trim(content.substr(start, end - start));
    start = end + 1;
    ++line_number;
    if (line.empty()) continue;

    auto fail = [&](std::string const& why) {
      return Error(ErrorCode::kMalformedCorpus,
                   "line " + std::to_string(line_number) + ": " + why);
    };
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (nlohmann::json::parse_error const&) {
      throw fail("not a JSON object");
    }
    if (!record.is_object()) throw fail("not a JSON object");
    for (char const* field : {"id", "date", "text"}) {
      if (!record.contains(field) || !record[field].is_string()) {
        throw fail(std::string("missing string field '") + field + "'");
      }
    }
    auto id = record["id"].get<std::string>();
    if (id.empty()) throw fail("empty 'id'");
    auto date = parse_date(record["date"].get<std::string>());
    if (!date) throw fail("'date' is not YYYY-MM-DD");
    std::optional<double> freq;
    if (record.contains("freq") && !record["freq"].is_null()) {
      if (!record["freq"].is_number()) throw fail("'freq' is not a number");
      freq = record["freq"].get<double>();
      if (!(*freq >= 0.0) || !std::isfinite(*freq)) throw fail("'freq' must be non-negative");
    }
    if (!ids.insert(id).second) throw fail("duplicate id '" + id + "'");
    docs.push_back(make_document(std::move(id), *date, record["text"].get<std::string>(), freq));
  }
  return Corpus(std::move(docs));
}

Corpus load_corpus(std::filesystem::path const& path) {
  auto content = text::read_file(path);
  try {
    return parse_corpus(content);
  } catch (Error const& e) {
    if (e.code() != ErrorCode::kMalformedCorpus) throw;
    throw Error(e.code(), path.string() + ": " +
                              std::string(e.what()).substr(to_string(e.code()).size() + 2));
  }
}

HitResult execute_query(Corpus const& corpus, Query const& query,
                        DateWindow const& window) {
  HitResult result{query.canonical_text(), window, 0, 0.0};
  if (corpus.degenerate()) return result;
  auto clipped = window.intersect(corpus.span());
  if (clipped.empty()) return result;

  auto const& docs = corpus.documents();
  auto by_date = [](Document const& d, Date t) { return d.date < t; };
  auto lo = std::lower_bound(docs.begin(), docs.end(), clipped.start, by_date) - docs.begin();
  auto hi = std::lower_bound(docs.begin(), docs.end(), clipped.end, by_date) - docs.begin();
  PositionRange range{static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
  if (range.first >= range.second) return result;

  std::vector<std::uint32_t> matches;
  if (query.conjuncts().empty()) {
    for (auto i = range.first; i < range.second; ++i) matches.push_back(i);
  } else {
    std::vector<std::vector<std::uint32_t>> lists;
    lists.reserve(query.conjuncts().size());
    for (auto const& group : query.conjuncts()) {
      lists.push_back(group_postings(corpus, group, range));
      if (lists.back().empty()) return result;
    }
    std::sort(lists.begin(), lists.end(),
              [](auto const& a, auto const& b) { return a.size() < b.size(); });
    matches = std::move(lists.front());
    for (std::size_t i = 1; i < lists.size() && !matches.empty(); ++i) {
      std::vector<std::uint32_t> next;
      std::set_intersection(matches.begin(), matches.end(), lists[i].begin(),
                            lists[i].end(), std::back_inserter(next));
      matches.swap(next);
    }
  }
  result.hit_count = matches.size();
  for (auto pos : matches) result.frequency += docs[pos].freq.value_or(1.0);
  return result;
}

}  // namespace innoindex
