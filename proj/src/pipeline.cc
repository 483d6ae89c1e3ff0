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

#include "innoindex/pipeline.h"

#include "innoindex/csv.h"
#include "innoindex/text.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace innoindex {
namespace {

Error config_error(int line, std::string const& why) {
  return Error(ErrorCode::kConfigError, "line " + std::to_string(line) + ": " + why);
}

std::pair<std::string, std::string> key_value(text::SectionLine const& line) {
  auto eq = line.content.find('=');
  if (eq == std::string::npos) throw config_error(line.line_number, "expected '<key> = <value>'");
  return {std::string(text::trim(std::string_view(line.content).substr(0, eq))),
          std::string(text::trim(std::string_view(line.content).substr(eq + 1)))};
}

double config_number(std::string const& value, int line, std::string const& key) {
  auto v = csv::parse_number(value);
  if (!v) throw config_error(line, "'" + key + "' expects a number, got '" + value + "'");
  return *v;
}

// Observations of one object, grouped for indicator computation.
struct SourceData {
  std::string id;
  std::vector<LedgerRecord const*> records;
  Normalizer hit_norm = Normalizer::linear_auto();
  Normalizer freq_norm = Normalizer::linear_auto();
};

struct ObjectData {
  std::string object_id;
  std::vector<Date> periods;  // sorted union of period starts
  Date closing;               // latest period end
  std::vector<SourceData> sources;
  std::vector<std::string> queries;  // sorted union

  std::size_t ordinal(Date p) const {
    return static_cast<std::size_t>(std::lower_bound(periods.begin(), periods.end(), p) -
                                    periods.begin());
  }
};

std::vector<ObjectData> group_records(std::vector<LedgerRecord> const& records,
                                      Normalizer const& norm,
                                      std::optional<std::string> const& source_filter) {
  std::map<std::string, std::map<std::string, std::vector<LedgerRecord const*>>> by_object;
  for (auto const& r : records) {
    if (source_filter && r.source_id != *source_filter) continue;
    by_object[r.object_id][r.source_id].push_back(&r);
  }
  std::vector<ObjectData> out;
  for (auto& [object, sources] : by_object) {
    ObjectData data;
    data.object_id = object;
    std::set<Date> periods;
    std::set<std::string> queries;
    Date closing{};
    for (auto& [source, recs] : sources) {
      SourceData s;
      s.id = source;
      s.records = std::move(recs);
      std::vector<double> hits, freqs;
      for (auto const* r : s.records) {
        periods.insert(r->period_start);
        queries.insert(r->query);
        closing = std::max(closing, r->period_end);
        hits.push_back(static_cast<double>(r->hits));
        freqs.push_back(r->freq);
      }
      s.hit_norm = norm.resolve(hits);
      s.freq_norm = norm.resolve(freqs);
      data.sources.push_back(std::move(s));
    }
    data.periods.assign(periods.begin(), periods.end());
    data.queries.assign(queries.begin(), queries.end());
    data.closing = closing;
    out.push_back(std::move(data));
  }
  return out;
}

struct NormalizedCell {
  double hit;   // f(R)
  double freq;  // f(F)
};

// Normalized observations of a source, indexed by period ordinal.
std::vector<std::vector<NormalizedCell>> by_period(ObjectData const& obj, SourceData const& s) {
  std::vector<std::vector<NormalizedCell>> cells(obj.periods.size());
  for (auto const* r : s.records) {
    cells[obj.ordinal(r->period_start)].push_back(
        {s.hit_norm(static_cast<double>(r->hits)), s.freq_norm(r->freq)});
  }
  return cells;
}

double nov_of(std::vector<double> const& normalized_hits, Aggregator agg) {
  return std::clamp(1.0 - aggregate(normalized_hits, agg), 0.0, 1.0);
}

double dem_of(std::vector<double> const& normalized_freqs, Aggregator agg) {
  return std::clamp(aggregate(normalized_freqs, agg), 0.0, 1.0);
}

// Fewer than three points have no interior peak, so both gaps are 1.
double imp_of(std::vector<SeriesPoint> const& nov, std::vector<SeriesPoint> const& dem,
              ImpOptions const& options) {
  if (nov.size() < 3 || dem.size() < 3) return 0.0;
  return compute_imp(IndicatorSeries(nov, SeriesLabel::kNov),
                     IndicatorSeries(dem, SeriesLabel::kDem), options)
      .value;
}

std::string join_ids(std::vector<std::string> const& ids, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i <= to; ++i) {
    if (!out.empty()) out += '+';
    out += ids[i];
  }
  return out;
}

std::vector<std::size_t> ranks_desc(std::vector<double> const& values) {
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<std::size_t> rank(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r + 1;
  return rank;
}

}  // namespace

FocalSet FrameConfig::default_query(FramePartition const& frame) {
  std::uint64_t mask = 0;
  auto const& b = frame.boundaries();
  for (std::size_t k = 0; k < frame.size(); ++k) {
    if (b[k] >= 0.5) mask |= std::uint64_t{1} << k;
  }
  if (mask == 0) mask = std::uint64_t{1} << (frame.size() - 1);
  return FocalSet(frame.size(), mask);
}

RunConfig parse_run_config(std::string_view text, std::filesystem::path const& base_dir) {
  RunConfig config;
  config.output_dir = base_dir / "out";
  std::optional<Date> start, end;
  PeriodLength period;
  std::string normalizer = "linear";
  std::optional<double> x_max, x_half;
  std::optional<std::string> query_text;
  int query_line = 0;
  auto resolve = [&](std::string const& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  for (auto const& line : text::read_sections(text)) {
    if (line.content.empty()) {
      static std::set<std::string> const known = {"model",      "sources", "grid",
                                                  "indicators", "frame",   "output"};
      if (!known.contains(line.section)) {
        throw config_error(line.line_number, "unknown section [" + line.section + "]");
      }
      continue;
    }
    auto [key, value] = key_value(line);
    int const n = line.line_number;
    if (key.empty() || value.empty()) throw config_error(n, "empty key or value");
    if (line.section == "model" || line.section == "sources") {
      auto& list = line.section == "model" ? config.models : config.sources;
      for (auto const& e : list) {
        if (e.name == key) throw config_error(n, "'" + key + "' listed twice");
      }
      list.push_back({key, resolve(value)});
    } else if (line.section == "grid") {
      if (key == "start" || key == "end") {
        auto d = parse_date(value);
        if (!d) throw config_error(n, "'" + key + "' expects YYYY-MM-DD");
        (key == "start" ? start : end) = d;
      } else if (key == "period") {
        auto p = PeriodLength::parse(value);
        if (!p) throw config_error(n, "'period' expects <n>y, <n>m or <n>d");
        period = *p;
      } else {
        throw config_error(n, "unknown grid key '" + key + "'");
      }
    } else if (line.section == "indicators") {
      if (key == "normalizer") {
        if (value != "linear" && value != "exp" && value != "exponential") {
          throw config_error(n, "normalizer must be linear or exp");
        }
        normalizer = value == "linear" ? "linear" : "exp";
      } else if (key == "x_max") {
        x_max = config_number(value, n, key);
      } else if (key == "x_half") {
        x_half = config_number(value, n, key);
      } else if (key == "aggregator") {
        if (value == "mean") {
          config.indicators.aggregator = Aggregator::kMean;
        } else if (value == "median") {
          config.indicators.aggregator = Aggregator::kMedian;
        } else {
          throw config_error(n, "aggregator must be mean or median");
        }
      } else if (key == "weights") {
        auto parts = text::split(value, ',');
        if (parts.size() != 3) throw config_error(n, "weights expects three numbers");
        try {
          config.indicators.weights =
              WeightVector(config_number(parts[0], n, key), config_number(parts[1], n, key),
                           config_number(parts[2], n, key));
        } catch (Error const& e) {
          if (e.code() == ErrorCode::kConfigError) throw;
          throw config_error(n, e.what());
        }
      } else if (key == "smoothing") {
        if (value != "on" && value != "off") throw config_error(n, "smoothing must be on or off");
        config.indicators.imp.smooth = value == "on";
      } else {
        throw config_error(n, "unknown indicators key '" + key + "'");
      }
    } else if (line.section == "frame") {
      try {
        if (key == "bins") {
          auto k = config_number(value, n, key);
          if (k != static_cast<double>(static_cast<std::size_t>(k))) {
            throw config_error(n, "bins expects an integer");
          }
          config.frame.frame = FramePartition::equal_bins(static_cast<std::size_t>(k));
        } else if (key == "boundaries") {
          std::vector<double> b;
          for (auto const& part : text::split(value, ',')) {
            b.push_back(config_number(part, n, key));
          }
          config.frame.frame = FramePartition(std::move(b));
        } else if (key == "query") {
          query_text = value;
          query_line = n;
        } else {
          throw config_error(n, "unknown frame key '" + key + "'");
        }
      } catch (Error const& e) {
        if (e.code() == ErrorCode::kConfigError) throw;
        throw config_error(n, e.what());
      }
    } else if (line.section == "output") {
      if (key != "dir") throw config_error(n, "unknown output key '" + key + "'");
      config.output_dir = resolve(value);
    } else {
      throw config_error(n, "entry outside a known section");
    }
  }

  if (config.models.empty()) throw Error(ErrorCode::kConfigError, "no [model] entries");
  if (config.sources.empty()) throw Error(ErrorCode::kConfigError, "no [sources] entries");
  if (!start || !end) throw Error(ErrorCode::kConfigError, "[grid] needs start and end");
  if (!(*start < *end)) throw Error(ErrorCode::kConfigError, "grid start must precede end");
  config.grid = make_grid(*start, *end, period);
  if (config.grid.size() < 3) {
    throw Error(ErrorCode::kConfigError, "the grid must contain at least two periods");
  }

  try {
    if (normalizer == "linear") {
      if (x_half) throw Error(ErrorCode::kConfigError, "x_half applies to the exp normalizer");
      config.indicators.normalizer = x_max ? Normalizer::linear(*x_max) : Normalizer::linear_auto();
    } else {
      if (x_max) throw Error(ErrorCode::kConfigError, "x_max applies to the linear normalizer");
      config.indicators.normalizer =
          x_half ? Normalizer::exponential_half(*x_half) : Normalizer::exponential_auto();
    }
  } catch (Error const& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    throw Error(ErrorCode::kConfigError, e.what());
  }

  if (query_text) {
    try {
      config.frame.query = FocalSet::parse(*query_text, config.frame.frame.size());
    } catch (Error const& e) {
      throw config_error(query_line, e.what());
    }
  } else {
    config.frame.query = FrameConfig::default_query(config.frame.frame);
  }
  return config;
}

RunConfig load_run_config(std::filesystem::path const& path) {
  auto content = text::read_file(path);
  try {
    return parse_run_config(content, path.parent_path());
  } catch (Error const& e) {
    throw Error(e.code(), path.string() + ": " +
                              std::string(e.what()).substr(to_string(e.code()).size() + 2));
  }
}

std::vector<Query> measured_queries(LinguisticModel const& model) {
  auto queries = generate_queries(model);
  for (auto& q : queries) q = expand_synonyms(q, model);
  return queries;
}

std::vector<IndexRow> compute_index(std::vector<LedgerRecord> const& records,
                                    IndicatorConfig const& config,
                                    std::optional<std::string> const& source_filter) {
  std::vector<IndexRow> rows;
  auto const agg = config.aggregator;
  for (auto const& obj : group_records(records, config.normalizer, source_filter)) {
    if (obj.periods.size() < 2) {
      throw Error(ErrorCode::kInsufficientData,
                  "object '" + obj.object_id + "' has " + std::to_string(obj.periods.size()) +
                      " measured period(s), at least 2 are needed");
    }
    std::vector<std::vector<double>> hits(obj.periods.size()), freqs(obj.periods.size());
    std::vector<double> all_hits, all_freqs;
    for (auto const& s : obj.sources) {
      auto cells = by_period(obj, s);
      for (std::size_t p = 0; p < cells.size(); ++p) {
        for (auto const& c : cells[p]) {
          hits[p].push_back(c.hit);
          freqs[p].push_back(c.freq);
          all_hits.push_back(c.hit);
          all_freqs.push_back(c.freq);
        }
      }
    }
    std::vector<SeriesPoint> nov_points, dem_points;
    for (std::size_t p = 0; p < obj.periods.size(); ++p) {
      auto t = static_cast<double>(p);
      nov_points.push_back({t, nov_of(hits[p], agg)});
      dem_points.push_back({t, dem_of(freqs[p], agg)});
    }
    double const imp = imp_of(nov_points, dem_points, config.imp);
    auto const& w = config.weights;
    for (std::size_t p = 0; p < obj.periods.size(); ++p) {
      double nov = nov_points[p].v, dem = dem_points[p].v;
      rows.push_back({obj.object_id, obj.periods[p], nov, dem, imp, compute_ix(nov, dem, imp, w)});
    }
    double nov = nov_of(all_hits, agg), dem = dem_of(all_freqs, agg);
    rows.push_back({obj.object_id, obj.closing, nov, dem, imp, compute_ix(nov, dem, imp, w)});
  }
  return rows;
}

std::string format_index_csv(std::vector<IndexRow> const& rows) {
  std::string out(kIndexHeader);
  out += '\n';
  for (auto const& r : rows) {
    out += csv::format_row({r.object_id, format_date(r.period), csv::format_number(r.nov),
                            csv::format_number(r.dem), csv::format_number(r.imp),
                            csv::format_number(r.ix)});
  }
  return out;
}

std::vector<IndexRow> parse_index_csv(std::string_view text) {
  auto table = csv::read_table(text, {"object", "period", "nov", "dem", "imp", "ix"}, "index");
  std::vector<IndexRow> rows;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto const& row = table.rows[i];
    auto fail = [&](char const* what) {
      return Error(ErrorCode::kSchemaError,
                   "index row " + std::to_string(i + 2) + ": bad " + what);
    };
    IndexRow r;
    r.object_id = row[table.column("object")];
    auto period = parse_date(row[table.column("period")]);
    if (!period) throw fail("period");
    r.period = *period;
    double* fields[] = {&r.nov, &r.dem, &r.imp, &r.ix};
    char const* names[] = {"nov", "dem", "imp", "ix"};
    for (int k = 0; k < 4; ++k) {
      auto v = csv::parse_number(row[table.column(names[k])]);
      if (!v || *v < 0.0 || *v > 1.0) throw fail(names[k]);
      *fields[k] = *v;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<FusionRow> compute_fusion(std::vector<LedgerRecord> const& records,
                                      IndicatorConfig const& config,
                                      FrameConfig const& frame_config) {
  std::vector<FusionRow> out;
  auto const agg = config.aggregator;
  auto const& frame = frame_config.frame;
  for (auto const& obj : group_records(records, config.normalizer, std::nullopt)) {
    if (obj.sources.size() < 2) {
      throw Error(ErrorCode::kInsufficientData,
                  "object '" + obj.object_id + "' is measured by " +
                      std::to_string(obj.sources.size()) +
                      " source(s); fusion needs at least 2");
    }
    std::vector<std::string> ids;
    std::vector<Bpa> nov_bpas, dem_bpas, imp_bpas;
    for (auto const& s : obj.sources) {
      ids.push_back(s.id);
      auto cells = by_period(obj, s);
      std::vector<double> nov_samples, dem_samples;
      for (auto const& period_cells : cells) {
        if (period_cells.empty()) continue;
        std::vector<double> h, f;
        for (auto const& c : period_cells) {
          h.push_back(c.hit);
          f.push_back(c.freq);
        }
        nov_samples.push_back(nov_of(h, agg));
        dem_samples.push_back(dem_of(f, agg));
      }
      std::map<std::string, std::pair<std::vector<SeriesPoint>, std::vector<SeriesPoint>>>
          per_query;
      for (auto const* r : s.records) {  // ledger order: period-major within a source
        auto t = static_cast<double>(obj.ordinal(r->period_start));
        auto& [nov, dem] = per_query[r->query];
        nov.push_back({t, std::clamp(1.0 - s.hit_norm(static_cast<double>(r->hits)), 0.0, 1.0)});
        dem.push_back({t, s.freq_norm(r->freq)});
      }
      std::vector<double> imp_samples;
      for (auto const& [q, series] : per_query) {
        if (series.first.size() >= 3) {
          imp_samples.push_back(imp_of(series.first, series.second, config.imp));
        }
      }
      nov_bpas.push_back(mass_from_samples(nov_samples, frame, obj.periods.size()));
      dem_bpas.push_back(mass_from_samples(dem_samples, frame, obj.periods.size()));
      imp_bpas.push_back(mass_from_samples(imp_samples, frame, obj.queries.size()));
    }

    auto fuse = [&](std::vector<Bpa> const& bpas, char const* indicator) {
      try {
        return combine_all_detailed(bpas);
      } catch (TotalConflict const& e) {
        throw TotalConflict("object '" + obj.object_id + "', " + indicator + ": sources '" +
                                join_ids(ids, 0, e.left()) + "' and '" + ids[e.right()] +
                                "' are in total conflict",
                            e.left(), e.right());
      }
    };
    auto nov = fuse(nov_bpas, "nov");
    auto dem = fuse(dem_bpas, "dem");
    auto imp = fuse(imp_bpas, "imp");
    auto const& q = frame_config.query;
    FusionRow row;
    row.object_id = obj.object_id;
    row.index = interval_ix(bel_pl(nov.bpa, q), bel_pl(dem.bpa, q), bel_pl(imp.bpa, q),
                            config.weights);
    row.conflict_mass = std::max({nov.conflict, dem.conflict, imp.conflict});
    row.sources = ids;
    out.push_back(std::move(row));
  }
  return out;
}

std::string format_fusion_csv(std::vector<FusionRow> const& rows) {
  std::string out(kFusionHeader);
  out += '\n';
  for (auto const& r : rows) {
    out += csv::format_row({r.object_id, csv::format_number(r.index.ix.bel),
                            csv::format_number(r.index.ix.pl),
                            csv::format_number(r.index.ln_ix.bel),
                            csv::format_number(r.index.ln_ix.pl),
                            csv::format_number(r.conflict_mass)});
  }
  return out;
}

std::vector<ExpertScore> parse_expert_csv(std::string_view text) {
  auto table = csv::read_table(text, {"object", "score"}, "expert scores");
  std::vector<ExpertScore> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto const& row = table.rows[i];
    auto score = csv::parse_number(row[table.column("score")]);
    std::string object = row[table.column("object")];
    if (!score || object.empty()) {
      throw Error(ErrorCode::kSchemaError,
                  "expert scores row " + std::to_string(i + 2) + ": bad object or score");
    }
    if (!seen.insert(object).second) {
      throw Error(ErrorCode::kSchemaError,
                  "expert scores row " + std::to_string(i + 2) + ": '" + object +
                      "' listed twice");
    }
    out.push_back({std::move(object), *score});
  }
  return out;
}

ReportOutput build_report(std::vector<LabeledIndex> const& indexes,
                          std::optional<std::vector<ExpertScore>> const& expert) {
  ReportOutput out;
  out.plot_data_csv = "object,series,period,value\n";
  for (auto const& index : indexes) {
    for (auto const& r : index.rows) {
      std::pair<char const*, double> values[] = {
          {"nov", r.nov}, {"dem", r.dem}, {"imp", r.imp}, {"ix", r.ix}};
      for (auto const& [name, v] : values) {
        std::string series = index.label.empty() ? name : index.label + ":" + name;
        out.plot_data_csv += csv::format_row(
            {r.object_id, series, format_date(r.period), csv::format_number(v)});
      }
    }
  }

  // Closing row (latest period) of each object in the first index.
  std::vector<IndexRow> closing;
  if (!indexes.empty()) {
    std::map<std::string, IndexRow> latest;
    for (auto const& r : indexes.front().rows) {
      auto it = latest.find(r.object_id);
      if (it == latest.end() || it->second.period < r.period) latest[r.object_id] = r;
    }
    for (auto& [id, r] : latest) closing.push_back(r);
  }

  std::string& s = out.summary;
  s += "object,period,nov,dem,imp,ix\n";
  for (auto const& r : closing) {
    s += csv::format_row({r.object_id, format_date(r.period), csv::format_number(r.nov),
                          csv::format_number(r.dem), csv::format_number(r.imp),
                          csv::format_number(r.ix)});
  }

  if (expert) {
    std::map<std::string, double> scores;
    for (auto const& e : *expert) scores[e.object_id] = e.score;
    std::vector<IndexRow> joined;
    for (auto const& r : closing) {
      if (scores.contains(r.object_id)) {
        joined.push_back(r);
      } else {
        out.warnings.push_back("object '" + r.object_id +
                               "' has no expert score and is left out of the comparison");
      }
    }
    std::vector<double> dem, score;
    for (auto const& r : joined) {
      dem.push_back(r.dem);
      score.push_back(scores[r.object_id]);
    }
    auto dem_rank = ranks_desc(dem);
    auto score_rank = ranks_desc(score);
    s += "\nobject,computed_dem,computed_rank,expert_score,expert_rank\n";
    for (std::size_t i = 0; i < joined.size(); ++i) {
      s += csv::format_row({joined[i].object_id, csv::format_number(dem[i]),
                            std::to_string(dem_rank[i]), csv::format_number(score[i]),
                            std::to_string(score_rank[i])});
    }
  }
  return out;
}

IndicatorSeries parse_series_csv(std::string_view text, SeriesLabel label) {
  auto table = csv::read_table(text, {"period_start", "value"}, "series");
  std::vector<double> values;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto v = csv::parse_number(table.rows[i][table.column("value")]);
    if (!v) {
      throw Error(ErrorCode::kSchemaError, "series row " + std::to_string(i + 2) + ": bad value");
    }
    values.push_back(*v);
  }
  return IndicatorSeries::from_values(values, label);
}

std::string format_trend_csv(TrendFit const& fit) {
  csv::Row header{"degree"};
  csv::Row row{std::to_string(fit.degree)};
  for (std::size_t i = 0; i < fit.coefficients.size(); ++i) {
    header.push_back("c" + std::to_string(i));
    row.push_back(csv::format_number(fit.coefficients[i]));
  }
  header.push_back("residual_rms");
  row.push_back(csv::format_number(fit.residual_rms));
  return csv::format_row(header) + csv::format_row(row);
}

}  // namespace innoindex
