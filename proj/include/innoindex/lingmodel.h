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

#ifndef INNOINDEX_LINGMODEL_H
#define INNOINDEX_LINGMODEL_H

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace innoindex {

/// A search token and its expert-assigned weight in (0, 1]. Weights are kept
/// for reporting; no indicator formula consumes them.
struct Term {
  std::string text;
  double weight = 1.0;

  friend bool operator==(Term const&, Term const&) = default;
};

enum class ArchetypeKind { kStructure, kApplication, kResults };

std::string_view to_string(ArchetypeKind kind);
std::optional<ArchetypeKind> parse_archetype_kind(std::string_view name);

struct ArchetypeClass {
  ArchetypeKind kind;
  std::vector<Term> terms;

  friend bool operator==(ArchetypeClass const&, ArchetypeClass const&) = default;
};

/// Marker terms, archetype classes and local constraints of one object.
///
/// Construct through `parse_model` or `LinguisticModel::create`; both
/// validate the invariants (non-empty marker, 1..3 classes with unique kinds,
/// unique term texts across the model, synonyms keyed by model terms,
/// `terms_per_query` large enough for the marker plus one archetype and small
/// enough to be satisfiable).
class LinguisticModel {
 public:
  static LinguisticModel create(
      std::vector<Term> marker, std::vector<ArchetypeClass> classes,
      std::map<std::string, std::vector<std::string>> synonyms,
      std::size_t terms_per_query,
      std::optional<std::size_t> max_queries = std::nullopt);

  std::vector<Term> const& marker() const { return marker_; }
  std::vector<ArchetypeClass> const& classes() const { return classes_; }
  std::map<std::string, std::vector<std::string>> const& synonyms() const {
    return synonyms_;
  }
  std::size_t terms_per_query() const { return terms_per_query_; }
  std::optional<std::size_t> max_queries() const { return max_queries_; }

  /// Archetype terms of all classes, in class order then term order.
  std::vector<Term> archetype_terms() const;

  friend bool operator==(LinguisticModel const&, LinguisticModel const&) = default;

 private:
  LinguisticModel() = default;

  std::vector<Term> marker_;
  std::vector<ArchetypeClass> classes_;
  std::map<std::string, std::vector<std::string>> synonyms_;
  std::size_t terms_per_query_ = 0;
  std::optional<std::size_t> max_queries_;
};

/// A conjunction of term groups; a group with several members is an OR-set
/// whose first member is the model term it was expanded from.
class Query {
 public:
  using TermGroup = std::vector<std::string>;

  Query() = default;
  explicit Query(std::vector<TermGroup> conjuncts);

  std::vector<TermGroup> const& conjuncts() const { return conjuncts_; }

  /// "a AND b AND (c OR d)"
  std::string canonical_text() const;

  friend bool operator==(Query const&, Query const&) = default;

 private:
  std::vector<TermGroup> conjuncts_;
};

/// Parses the line-oriented model format:
///
///     [marker]                 one or more terms per line (split on spaces)
///     [class:application]      one term per line, optional `weight=<r>`
///     [synonyms]               term: syn1, syn2
///     [limits]                 terms_per_query=<n>, max_queries=<n>
///
/// `#` starts a comment. Throws Error with kMalformedModel,
/// kConstraintViolation or kDanglingSynonym; messages carry line numbers.
LinguisticModel parse_model(std::string_view config_text);
LinguisticModel load_model(std::filesystem::path const& path);

/// All combinations of `terms_per_query - |marker|` archetype terms, in
/// lexicographic order of term positions, each prefixed by the marker.
/// Truncated to the first `max_queries` entries when that limit is set.
std::vector<Query> generate_queries(LinguisticModel const& model);

/// Replaces each conjunct's head term by the OR-set {head} ∪ synonyms(head).
Query expand_synonyms(Query const& query, LinguisticModel const& model);

}  // namespace innoindex

#endif  // INNOINDEX_LINGMODEL_H
