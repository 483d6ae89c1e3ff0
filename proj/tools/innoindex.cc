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

// innoindex: queries -> measure -> index -> fuse -> report.

#include "innoindex/corpus.h"
#include "innoindex/error.h"
#include "innoindex/ledger.h"
#include "innoindex/lingmodel.h"
#include "innoindex/measurement.h"
#include "innoindex/pipeline.h"
#include "innoindex/source.h"
#include "innoindex/text.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

namespace fs = std::filesystem;
using namespace innoindex;

namespace {

void write_output(fs::path const& path, std::string const& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
}

void warn(std::string const& message) { std::cerr << "warning: " << message << "\n"; }

struct CommonFlags {
  std::string config;
  std::string ledger;
};

RunConfig config_of(CommonFlags const& flags) {
  if (flags.config.empty()) throw Error(ErrorCode::kConfigError, "--config is required");
  return load_run_config(flags.config);
}

fs::path ledger_of(CommonFlags const& flags, RunConfig const& config) {
  return flags.ledger.empty() ? config.ledger_path() : fs::path(flags.ledger);
}

std::vector<LedgerRecord> read_ledger(fs::path const& path) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kIoError, "ledger '" + path.string() + "' does not exist");
  }
  return Ledger::read(path).records();
}

std::vector<LedgerRecord> known_objects(std::vector<LedgerRecord> records,
                                        RunConfig const& config) {
  std::erase_if(records, [&](LedgerRecord const& r) {
    return std::none_of(config.models.begin(), config.models.end(),
                        [&](NamedPath const& m) { return m.name == r.object_id; });
  });
  return records;
}

int cmd_queries(CommonFlags const& flags, std::string const& model_path,
                std::string const& object) {
  std::vector<NamedPath> models;
  if (!model_path.empty()) {
    models.push_back({object, model_path});
  } else {
    auto config = config_of(flags);
    for (auto const& m : config.models) {
      if (object.empty() || m.name == object) models.push_back(m);
    }
    if (models.empty()) {
      throw Error(ErrorCode::kConfigError, "no model for object '" + object + "'");
    }
  }
  for (auto const& m : models) {
    if (models.size() > 1) std::cout << "# " << m.name << "\n";
    for (auto const& q : generate_queries(load_model(m.path))) {
      std::cout << q.canonical_text() << "\n";
    }
  }
  return 0;
}

int cmd_measure(CommonFlags const& flags, int threads) {
  auto config = config_of(flags);
  auto ledger_path = ledger_of(flags, config);
  auto ledger = Ledger::read(ledger_path);

  std::vector<std::pair<std::string, LinguisticModel>> models;
  for (auto const& m : config.models) models.emplace_back(m.name, load_model(m.path));
  std::vector<std::unique_ptr<EvidenceSource>> sources;
  for (auto const& s : config.sources) {
    auto corpus = std::make_shared<Corpus const>(load_corpus(s.path));
    if (corpus->degenerate()) warn("source '" + s.name + "' holds no documents");
    sources.push_back(std::make_unique<CorpusSource>(s.name, std::move(corpus)));
  }

  MeasureOptions options;
  options.max_threads = threads;
  std::size_t rows = 0;
  std::vector<std::string> unavailable;
  for (auto const& [object, model] : models) {
    auto queries = measured_queries(model);
    for (auto& source : sources) {
      std::vector<LedgerRecord> records;
      try {
        records = to_records(measure_series(*source, object, queries, config.grid, options));
      } catch (SourceUnavailable const& e) {
        auto const& partial = e.partial();
        records = to_records(partial);
        if (records.empty()) {
          unavailable.push_back(object + "/" + source->id());
          continue;
        }
        for (auto [p, q] : partial.missing()) {
          warn("missing " + object + "/" + source->id() + " '" +
               partial.queries[q].canonical_text() + "' at " +
               format_date(partial.grid[p]));
        }
      }
      rows += records.size();
      for (auto& r : records) ledger.upsert(std::move(r));
    }
  }
  ledger.write(ledger_path);
  std::cerr << "measured " << rows << " cells into " << ledger_path.string() << "\n";
  if (!unavailable.empty()) {
    std::string which;
    for (auto const& u : unavailable) which += (which.empty() ? "" : ", ") + u;
    std::cerr << "error: SourceUnavailable: no cells measured for " << which << "\n";
    return exit_status(ErrorCode::kSourceUnavailable);
  }
  return 0;
}

int cmd_index(CommonFlags const& flags, std::string const& out, std::string const& source) {
  auto config = config_of(flags);
  auto records = known_objects(read_ledger(ledger_of(flags, config)), config);
  std::optional<std::string> filter;
  if (!source.empty()) filter = source;
  auto rows = compute_index(records, config.indicators, filter);
  if (rows.empty()) throw Error(ErrorCode::kInsufficientData, "the ledger holds no matching rows");
  write_output(out.empty() ? config.output_dir / "index.csv" : fs::path(out),
               format_index_csv(rows));
  return 0;
}

int cmd_fuse(CommonFlags const& flags, std::string const& out) {
  auto config = config_of(flags);
  auto records = known_objects(read_ledger(ledger_of(flags, config)), config);
  auto rows = compute_fusion(records, config.indicators, config.frame);
  if (rows.empty()) throw Error(ErrorCode::kInsufficientData, "the ledger holds no matching rows");
  for (auto const& r : rows) {
    if (r.index.floored) {
      warn("object '" + r.object_id + "': a zero lower bound was floored before the logarithm");
    }
  }
  write_output(out.empty() ? config.output_dir / "fusion.csv" : fs::path(out),
               format_fusion_csv(rows));
  return 0;
}

int cmd_report(CommonFlags const& flags, std::vector<std::string> index_paths,
               std::string const& expert_path, std::string const& out) {
  fs::path out_dir = "out";
  if (!flags.config.empty()) out_dir = config_of(flags).output_dir;
  if (index_paths.empty()) index_paths.push_back((out_dir / "index.csv").string());

  std::vector<LabeledIndex> indexes;
  for (auto const& p : index_paths) {
    std::string label = index_paths.size() > 1 ? fs::path(p).stem().string() : "";
    indexes.push_back({label, parse_index_csv(text::read_file(p))});
  }
  std::optional<std::vector<ExpertScore>> expert;
  if (!expert_path.empty()) expert = parse_expert_csv(text::read_file(expert_path));

  auto report = build_report(indexes, expert);
  for (auto const& w : report.warnings) warn(w);
  fs::path plot = out.empty() ? out_dir / "plot_data.csv" : fs::path(out);
  write_output(plot, report.plot_data_csv);
  if (plot != "-") write_output(plot.parent_path() / "summary.txt", report.summary);
  std::cout << report.summary;
  return 0;
}

int cmd_trend(std::string const& series_path, int degree, std::string const& label) {
  auto series =
      parse_series_csv(text::read_file(series_path),
                       label == "dem" ? SeriesLabel::kDem : SeriesLabel::kNov);
  std::cout << format_trend_csv(fit_trend(series, degree));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Innovation indicators from search evidence"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto add_common = [&](CLI::App* sub, bool ledger) {
    sub->add_option("-c,--config", flags.config, "Run configuration file");
    if (ledger) sub->add_option("--ledger", flags.ledger, "Ledger CSV (default <output>/ledger.csv)");
  };

  std::string model_path, object;
  auto* queries = app.add_subcommand("queries", "Print the generated queries, one per line");
  add_common(queries, false);
  queries->add_option("--model", model_path, "Model file; overrides the config");
  queries->add_option("--object", object, "Restrict to one object of the config");

  int threads = 0;
  auto* measure = app.add_subcommand("measure", "Measure every query over the grid");
  add_common(measure, true);
  measure->add_option("--threads", threads, "Worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);

  std::string out, source;
  auto* index = app.add_subcommand("index", "Crisp indicators and index per period");
  add_common(index, true);
  index->add_option("-o,--out", out, "Output CSV, '-' for stdout (default <output>/index.csv)");
  index->add_option("--source", source, "Use a single source");

  auto* fuse = app.add_subcommand("fuse", "Belief/plausibility interval index");
  add_common(fuse, true);
  fuse->add_option("-o,--out", out, "Output CSV, '-' for stdout (default <output>/fusion.csv)");

  std::vector<std::string> index_paths;
  std::string expert;
  auto* report = app.add_subcommand("report", "Plot data and summary from index CSVs");
  add_common(report, false);
  report->add_option("--index", index_paths, "Index CSV; repeatable");
  report->add_option("--expert", expert, "Expert scores CSV (object,score)");
  report->add_option("-o,--out", out, "Plot data CSV (default <output>/plot_data.csv)");

  std::string series_path, label = "nov";
  int degree = 1;
  auto* trend = app.add_subcommand("trend", "Least-squares polynomial trend of a series");
  trend->add_option("--series", series_path, "Series CSV (period_start,value)")->required();
  trend->add_option("--degree", degree, "Polynomial degree")->check(CLI::NonNegativeNumber);
  trend->add_option("--label", label, "Series label")->check(CLI::IsMember({"nov", "dem"}));

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int status = app.exit(e);
    return status == 0 ? 0 : 1;
  }

  try {
    if (*queries) return cmd_queries(flags, model_path, object);
    if (*measure) return cmd_measure(flags, threads);
    if (*index) return cmd_index(flags, out, source);
    if (*fuse) return cmd_fuse(flags, out);
    if (*report) return cmd_report(flags, index_paths, expert, out);
    if (*trend) return cmd_trend(series_path, degree, label);
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_status(e.code());
  } catch (fs::filesystem_error const& e) {
    std::cerr << "error: IoError: " << e.what() << "\n";
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
