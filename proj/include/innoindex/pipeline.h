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

#ifndef INNOINDEX_PIPELINE_H
#define INNOINDEX_PIPELINE_H

#include "innoindex/evidence.h"
#include "innoindex/indicators.h"
#include "innoindex/ledger.h"
#include "innoindex/lingmodel.h"
#include "innoindex/timeseries.h"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace innoindex {

struct IndicatorConfig {
  Normalizer normalizer = Normalizer::linear_auto();
  Aggregator aggregator = Aggregator::kMean;
  WeightVector weights;
  ImpOptions imp;
};

struct FrameConfig {
  FramePartition frame = FramePartition::equal_bins(5);
  /// Bins asked about in Bel/Pl; defaults to the bins lying at or above 0.5.
  FocalSet query = default_query(FramePartition::equal_bins(5));

  static FocalSet default_query(FramePartition const& frame);
};

struct NamedPath {
  std::string name;
  std::filesystem::path path;
};

/// The run configuration file:
///
///     [model]       <object_id> = <model file>      (one or more)
///     [sources]     <source_id> = <corpus file>     (one or more)
///     [grid]        start, end (YYYY-MM-DD), period (<n>y|<n>m|<n>d)
///     [indicators]  normalizer=linear|exp, x_max | x_half, aggregator,
///                   weights=<r>,<r>,<r>, smoothing=on|off
///     [frame]       bins=<K> | boundaries=<b0>,...,<bK>, query=<i>|<j>...
///     [output]      dir=<directory>
///
/// Relative paths resolve against the directory of the config file.
struct RunConfig {
  std::vector<NamedPath> models;
  std::vector<NamedPath> sources;
  std::vector<Date> grid;
  IndicatorConfig indicators;
  FrameConfig frame;
  std::filesystem::path output_dir = "out";

  std::filesystem::path ledger_path() const { return output_dir / "ledger.csv"; }
};

/// Throws Error(kConfigError) with line context.
RunConfig parse_run_config(std::string_view text, std::filesystem::path const& base_dir);
RunConfig load_run_config(std::filesystem::path const& path);

/// Queries measured for a model: generated, then synonym-expanded.
std::vector<Query> measured_queries(LinguisticModel const& model);

// --- crisp index -----------------------------------------------------------

struct IndexRow {
  std::string object_id;
  Date period;
  double nov = 0.0;
  double dem = 0.0;
  double imp = 0.0;
  double ix = 0.0;
};

/// Per-period Nov and Dem for each object plus one closing row dated at the
/// end of the last period (t_{m+1}) whose Nov/Dem aggregate every
/// observation. Imp is per object and repeated on each of its rows.
///
/// Normalizers resolve per (object, source) over all of that source's
/// observations, so sources of very different sizes pool on one scale.
/// `source_filter` restricts the computation to one source. Throws
/// Error(kInsufficientData) naming an object with fewer than two periods.
std::vector<IndexRow> compute_index(std::vector<LedgerRecord> const& records,
                                    IndicatorConfig const& config,
                                    std::optional<std::string> const& source_filter = {});

inline constexpr std::string_view kIndexHeader = "object,period,nov,dem,imp,ix";
std::string format_index_csv(std::vector<IndexRow> const& rows);
/// Throws Error(kSchemaError).
std::vector<IndexRow> parse_index_csv(std::string_view text);

// --- interval index ----------------------------------------------------------

struct FusionRow {
  std::string object_id;
  IntervalIndex index;
  double conflict_mass = 0.0;  // largest total conflict over the three indicators
  std::vector<std::string> sources;
};

/// Per object: histogram BPAs of each source's per-period Nov and Dem and
/// per-query Imp, combined across sources by the sequential fold, queried
/// with Bel/Pl and turned into the interval index. Missing periods or
/// queries leave their share of mass on the whole frame.
///
/// Throws Error(kInsufficientData) when an object has fewer than two sources
/// and TotalConflict naming the source pair when combination is impossible.
std::vector<FusionRow> compute_fusion(std::vector<LedgerRecord> const& records,
                                      IndicatorConfig const& config,
                                      FrameConfig const& frame);

inline constexpr std::string_view kFusionHeader =
    "object,ix_lo,ix_hi,ln_ix_lo,ln_ix_hi,conflict_mass";
std::string format_fusion_csv(std::vector<FusionRow> const& rows);

// --- report -----------------------------------------------------------------

struct LabeledIndex {
  std::string label;  // empty when there is a single index file
  std::vector<IndexRow> rows;
};

struct ExpertScore {
  std::string object_id;
  double score = 0.0;
};

/// Expert CSV with `object,score` columns. Throws Error(kSchemaError).
std::vector<ExpertScore> parse_expert_csv(std::string_view text);

struct ReportOutput {
  std::string plot_data_csv;  // object,series,period,value
  std::string summary;
  std::vector<std::string> warnings;
};

/// Long-format plot data of every indicator series, and a summary with the
/// closing Ix per object. With expert scores, the summary adds a table of
/// the closing Dem of the first index next to the expert score, each with
/// its rank (1 = highest). Objects without an expert score are left out of
/// that table with a warning.
ReportOutput build_report(std::vector<LabeledIndex> const& indexes,
                          std::optional<std::vector<ExpertScore>> const& expert);

// --- trend ------------------------------------------------------------------

/// Series CSV `period_start,value`; rows are taken in file order.
IndicatorSeries parse_series_csv(std::string_view text, SeriesLabel label);
/// `degree,c0,...,c<degree>,residual_rms` header plus one row.
std::string format_trend_csv(TrendFit const& fit);

}  // namespace innoindex

#endif  // INNOINDEX_PIPELINE_H
