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

#include "innoindex/lingmodel.h"

#include "innoindex/error.h"
#include "innoindex/text.h"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>

namespace innoindex {
namespace {

std::string at_line(int line) { return "line " + std::to_string(line) + ": "; }

std::size_t parse_positive(std::string_view value, std::string_view key,
                           int line) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kMalformedModel,
                at_line(line) + "'" + std::string(key) +
                    "' expects an integer, got '" + std::string(value) + "'");
  }
  if (n == 0) {
    throw Error(ErrorCode::kConstraintViolation,
                at_line(line) + "'" + std::string(key) + "' must be positive");
  }
  return n;
}

Term parse_term(std::string_view content, int line) {
  auto words = text::split(content, ' ');
  words.erase(std::remove(words.begin(), words.end(), std::string()),
              words.end());
  if (words.empty() || words.size() > 2) {
    throw Error(ErrorCode::kMalformedModel,
                at_line(line) + "expected '<term> [weight=<r>]', got '" +
                    std::string(content) + "'");
  }
  Term term{text::to_lower(words[0]), 1.0};
  if (words.size() == 2) {
    std::string_view w = words[1];
    if (w.substr(0, 7) != "weight=") {
      throw Error(ErrorCode::kMalformedModel,
                  at_line(line) + "unexpected '" + words[1] + "' after term");
    }
    try {
      std::size_t used = 0;
      std::string number(w.substr(7));
      term.weight = std::stod(number, &used);
      if (used != number.size()) throw std::invalid_argument(number);
    } catch (std::exception const&) {
      throw Error(ErrorCode::kMalformedModel,
                  at_line(line) + "bad weight '" + words[1] + "'");
    }
    if (!(term.weight > 0.0 && term.weight <= 1.0)) {
      throw Error(ErrorCode::kConstraintViolation,
                  at_line(line) + "weight must lie in (0, 1]");
    }
  }
  return term;
}

void require_token(std::string const& term, ErrorCode code, std::string where) {
  if (term.empty() || !text::is_single_token(term)) {
    throw Error(code, where + "'" + term +
                          "' is not a single search token (letters and digits only)");
  }
}

}  // namespace

std::string_view to_string(ArchetypeKind kind) {
  switch (kind) {
    case ArchetypeKind::kStructure: return "structure";
    case ArchetypeKind::kApplication: return "application";
    case ArchetypeKind::kResults: return "results";
  }
  return "unknown";
}

std::optional<ArchetypeKind> parse_archetype_kind(std::string_view name) {
  if (name == "structure") return ArchetypeKind::kStructure;
  if (name == "application") return ArchetypeKind::kApplication;
  if (name == "results") return ArchetypeKind::kResults;
  return std::nullopt;
}

LinguisticModel LinguisticModel::create(
    std::vector<Term> marker, std::vector<ArchetypeClass> classes,
    std::map<std::string, std::vector<std::string>> synonyms,
    std::size_t terms_per_query, std::optional<std::size_t> max_queries) {
  if (marker.empty()) {
    throw Error(ErrorCode::kMalformedModel, "marker has no terms");
  }
  if (classes.empty() || classes.size() > 3) {
    throw Error(ErrorCode::kMalformedModel,
                "a model needs between one and three archetype classes");
  }
  std::set<std::string> seen;
  auto add_term = [&](Term& t, std::string const& where) {
    t.text = text::to_lower(text::trim(t.text));
    require_token(t.text, ErrorCode::kMalformedModel, where);
    if (!(t.weight > 0.0 && t.weight <= 1.0)) {
      throw Error(ErrorCode::kConstraintViolation,
                  where + "weight of '" + t.text + "' must lie in (0, 1]");
    }
    if (!seen.insert(t.text).second) {
      throw Error(ErrorCode::kMalformedModel,
                  where + "duplicate term '" + t.text + "'");
    }
  };
  for (auto& t : marker) add_term(t, "marker: ");
  std::set<ArchetypeKind> kinds;
  std::size_t archetype_count = 0;
  for (auto& c : classes) {
    std::string where = "class " + std::string(to_string(c.kind)) + ": ";
    if (!kinds.insert(c.kind).second) {
      throw Error(ErrorCode::kMalformedModel, where + "declared twice");
    }
    if (c.terms.empty()) throw Error(ErrorCode::kMalformedModel, where + "has no terms");
    for (auto& t : c.terms) add_term(t, where);
    archetype_count += c.terms.size();
  }

  std::map<std::string, std::vector<std::string>> clean;
  for (auto& [key, syns] : synonyms) {
    std::string k = text::to_lower(text::trim(key));
    if (!seen.contains(k)) {
      throw Error(ErrorCode::kDanglingSynonym,
                  "synonyms given for '" + k + "', which is not a model term");
    }
    auto& out = clean[k];
    for (auto const& s : syns) {
      std::string lowered = text::to_lower(text::trim(s));
      require_token(lowered, ErrorCode::kMalformedModel, "synonyms of '" + k + "': ");
      if (lowered == k) continue;
      if (std::find(out.begin(), out.end(), lowered) == out.end()) {
        out.push_back(std::move(lowered));
      }
    }
    if (out.empty()) clean.erase(k);
  }

  if (terms_per_query < marker.size() + 1) {
    throw Error(ErrorCode::kConstraintViolation,
                "terms_per_query=" + std::to_string(terms_per_query) +
                    " leaves no room for an archetype term after " +
                    std::to_string(marker.size()) + " marker terms");
  }
  if (terms_per_query - marker.size() > archetype_count) {
    throw Error(ErrorCode::kConstraintViolation,
                "terms_per_query=" + std::to_string(terms_per_query) +
                    " needs more archetype terms than the model has (" +
                    std::to_string(archetype_count) + ")");
  }
  if (max_queries && *max_queries == 0) {
    throw Error(ErrorCode::kConstraintViolation, "max_queries must be positive");
  }

  LinguisticModel model;
  model.marker_ = std::move(marker);
  model.classes_ = std::move(classes);
  model.synonyms_ = std::move(clean);
  model.terms_per_query_ = terms_per_query;
  model.max_queries_ = max_queries;
  return model;
}

std::vector<Term> LinguisticModel::archetype_terms() const {
  std::vector<Term> all;
  for (auto const& c : classes_) all.insert(all.end(), c.terms.begin(), c.terms.end());
  return all;
}

Query::Query(std::vector<TermGroup> conjuncts) : conjuncts_(std::move(conjuncts)) {}

std::string Query::canonical_text() const {
  std::string out;
  for (std::size_t i = 0; i < conjuncts_.size(); ++i) {
    if (i != 0) out += " AND ";
    auto const& group = conjuncts_[i];
    if (group.size() == 1) {
      out += group.front();
      continue;
    }
    out += '(';
    for (std::size_t j = 0; j < group.size(); ++j) {
      if (j != 0) out += " OR ";
      out += group[j];
    }
    out += ')';
  }
  return out;
}

LinguisticModel parse_model(std::string_view config_text) {
  std::optional<std::vector<Term>> marker;
  std::vector<ArchetypeClass> classes;
  std::map<std::string, std::vector<std::string>> synonyms;
  std::map<std::string, int> synonym_lines;
  std::optional<std::size_t> terms_per_query;
  std::optional<std::size_t> max_queries;

  for (auto const& line : text::read_sections(config_text)) {
    std::string_view section = line.section;
    if (section.empty()) {
      throw Error(ErrorCode::kMalformedModel,
                  at_line(line.line_number) + "content before any section header");
    }
    if (section == "marker") {
      if (!marker) marker.emplace();
      for (auto const& word : text::split(line.content, ' ')) {
        if (!word.empty()) marker->push_back(Term{text::to_lower(word), 1.0});
      }
    } else if (section.substr(0, 6) == "class:") {
      auto kind = parse_archetype_kind(text::trim(section.substr(6)));
      if (!kind) {
        throw Error(ErrorCode::kMalformedModel,
                    at_line(line.line_number) + "unknown class kind '" +
                        std::string(section.substr(6)) + "'");
      }
      auto it = std::find_if(classes.begin(), classes.end(),
                             [&](auto const& c) { return c.kind == *kind; });
      if (it == classes.end()) {
        classes.push_back({*kind, {}});
        it = std::prev(classes.end());
      } else if (line.content.empty()) {
        throw Error(ErrorCode::kMalformedModel,
                    at_line(line.line_number) + "class '" +
                        std::string(to_string(*kind)) + "' declared twice");
      }
      if (!line.content.empty()) {
        Term term = parse_term(line.content, line.line_number);
        for (auto const& t : it->terms) {
          if (t.text == term.text) {
            throw Error(ErrorCode::kMalformedModel,
                        at_line(line.line_number) + "duplicate term '" + term.text + "'");
          }
        }
        it->terms.push_back(std::move(term));
      }
    } else if (section == "synonyms") {
      if (line.content.empty()) continue;
      auto colon = line.content.find(':');
      if (colon == std::string::npos) {
        throw Error(ErrorCode::kMalformedModel,
                    at_line(line.line_number) + "expected 'term: syn1, syn2'");
      }
      std::string key = text::to_lower(text::trim(line.content.substr(0, colon)));
      auto& list = synonyms[key];
      synonym_lines.emplace(key, line.line_number);
      for (auto& s : text::split(std::string_view(line.content).substr(colon + 1), ',')) {
        if (!s.empty()) list.push_back(std::move(s));
      }
    } else if (section == "limits") {
      if (line.content.empty()) continue;
      auto eq = line.content.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::kMalformedModel,
                    at_line(line.line_number) + "expected '<key>=<value>'");
      }
      std::string key(text::trim(std::string_view(line.content).substr(0, eq)));
      std::string_view value = text::trim(std::string_view(line.content).substr(eq + 1));
      if (key == "terms_per_query") {
        terms_per_query = parse_positive(value, key, line.line_number);
      } else if (key == "max_queries") {
        max_queries = parse_positive(value, key, line.line_number);
      } else {
        throw Error(ErrorCode::kMalformedModel,
                    at_line(line.line_number) + "unknown limit '" + key + "'");
      }
    } else {
      throw Error(ErrorCode::kMalformedModel,
                  at_line(line.line_number) + "unknown section [" + line.section + "]");
    }
  }

  if (!marker) throw Error(ErrorCode::kMalformedModel, "missing [marker] section");
  if (marker->empty()) throw Error(ErrorCode::kMalformedModel, "[marker] section is empty");
  for (auto const& [key, line] : synonym_lines) {
    bool known = std::any_of(marker->begin(), marker->end(),
                             [&](Term const& t) { return t.text == key; });
    for (auto const& c : classes) {
      known = known || std::any_of(c.terms.begin(), c.terms.end(),
                                   [&](Term const& t) { return t.text == key; });
    }
    if (!known) {
      throw Error(ErrorCode::kDanglingSynonym,
                  at_line(line) + "synonyms given for '" + key +
                      "', which is not a model term");
    }
  }
  std::size_t tpq = terms_per_query.value_or(marker->size() + 1);
  return LinguisticModel::create(std::move(*marker), std::move(classes),
                                 std::move(synonyms), tpq, max_queries);
}

LinguisticModel load_model(std::filesystem::path const& path) {
  std::string content = text::read_file(path);
  try {
    return parse_model(content);
  } catch (Error const& e) {
    throw Error(e.code(), path.string() + ": " +
                              std::string(e.what()).substr(to_string(e.code()).size() + 2));
  }
}

std::vector<Query> generate_queries(LinguisticModel const& model) {
  auto const archetypes = model.archetype_terms();
  std::size_t const n = archetypes.size();
  std::size_t const k = model.terms_per_query() - model.marker().size();
  std::size_t const limit =
      model.max_queries().value_or(std::numeric_limits<std::size_t>::max());

  std::vector<Query> queries;
  if (k == 0 || k > n) return queries;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (queries.size() < limit) {
    std::vector<Query::TermGroup> conjuncts;
    conjuncts.reserve(model.terms_per_query());
    for (auto const& t : model.marker()) conjuncts.push_back({t.text});
    for (auto idx : pick) conjuncts.push_back({archetypes[idx].text});
    queries.emplace_back(std::move(conjuncts));

    // Advance to the next k-combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return queries;
}

Query expand_synonyms(Query const& query, LinguisticModel const& model) {
  std::vector<Query::TermGroup> out;
  out.reserve(query.conjuncts().size());
  for (auto const& group : query.conjuncts()) {
    if (group.empty()) {
      out.push_back(group);
      continue;
    }
    Query::TermGroup expanded{group.front()};
    if (auto it = model.synonyms().find(group.front()); it != model.synonyms().end()) {
      expanded.insert(expanded.end(), it->second.begin(), it->second.end());
    }
    out.push_back(std::move(expanded));
  }
  return Query(std::move(out));
}

}  // namespace innoindex
