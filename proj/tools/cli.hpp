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

// The rankbench command-line interface. Kept in a header so the test suites
// can drive it in-process.

#ifndef RANKBENCH_TOOLS_CLI_HPP_
#define RANKBENCH_TOOLS_CLI_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rankbench.hpp"

namespace rankbench::cli {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

using Json = nlohmann::ordered_json;

namespace internal {

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::istream& in;
  std::uint64_t seed = 42;
  std::string format = "csv";
  bool quiet = false;
  Json summary = Json::object();
  int exit_code = kExitOk;

  void Warn(const std::string& message) const {
    if (!quiet) err << "warning: " << message << '\n';
  }
};

inline std::uint64_t ParseSeed(const std::string& text, const char* source) {
  try {
    size_t used = 0;
    const unsigned long long v = std::stoull(text, &used, 10);
    if (used == text.size() && !text.empty() && text[0] != '-') return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(std::string("invalid seed in ") + source + ": '" +
                        text + "'");
}

// "name=path" or "path" (model named after the file stem).
inline std::pair<std::string, std::filesystem::path> SplitNamedPath(
    const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq != std::string::npos && eq > 0) {
    return {spec.substr(0, eq), spec.substr(eq + 1)};
  }
  const std::filesystem::path p(spec);
  return {p.stem().string(), p};
}

inline std::ofstream OpenOutput(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot write '" + path.string() + "'");
  return f;
}

// Writes `emit` to the --out file, or to stdout when no file is given.
template <typename Emit>
void WriteData(Context& ctx, const std::string& out_path, Emit&& emit) {
  if (out_path.empty()) {
    emit(ctx.out);
    ctx.out.flush();
    return;
  }
  std::ofstream f = OpenOutput(out_path);
  emit(f);
}

inline void WriteTable(Context& ctx, const std::string& out_path,
                       const Table& table) {
  WriteData(ctx, out_path, [&](std::ostream& os) {
    if (ctx.format == "json") {
      os << ToJson(table).dump(2) << '\n';
    } else {
      WriteCsv(os, table);
    }
  });
}

// Resolved values of every option of a subcommand, defaults included.
inline Json ResolvedConfig(const CLI::App& sub) {
  Json config = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string key = opt->get_lnames().front();
    if (key == "help") continue;
    if (opt->get_expected_min() == 0) {
      config[key] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& results = opt->results();
      if (opt->get_expected_max() > 1 || results.size() > 1) {
        config[key] = results;
      } else {
        config[key] = results.front();
      }
    } else {
      config[key] = opt->get_default_str();
    }
  }
  return config;
}

inline DatasetKind ParseTask(const std::string& task) {
  return DatasetKind::Parse(task);
}

inline std::vector<PredictionSet> LoadModels(
    const std::vector<std::string>& specs, const DatasetKind& kind) {
  std::vector<PredictionSet> models;
  for (const std::string& spec : specs) {
    auto [name, path] = SplitNamedPath(spec);
    models.push_back(io::LoadPredictions(path, kind, name));
  }
  return models;
}

inline bool ParseYesNo(std::string s, const char* what) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "yes" || s == "y" || s == "true" || s == "1") return true;
  if (s == "no" || s == "n" || s == "false" || s == "0") return false;
  throw ValidationError(std::string("expected yes or no for ") + what +
                        ", got '" + s + "'");
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline CsvTable ReadCsvTable(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = io::SplitCsvLine(line, line_no);
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      if (fields.size() != table.header.size()) {
        throw ValidationError(path.string() + ": line " +
                              std::to_string(line_no) + ": expected " +
                              std::to_string(table.header.size()) +
                              " fields");
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (table.header.empty()) {
    throw ValidationError(path.string() + ": empty table");
  }
  return table;
}

inline double ParseNumber(const std::string& s, const std::string& where) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(where + ": '" + s + "' is not a finite number");
}

// Reads a score table (model + metric columns) or a rank file (bt_score
// column) into metric reports. Metric columns with blank cells are skipped
// and reported through `warn`.
template <typename WarnFn>
std::vector<MetricReport> LoadReports(const std::string& spec, WarnFn warn) {
  auto [name, path] = SplitNamedPath(spec);
  const bool named = spec.find('=') != std::string::npos;
  const CsvTable table = ReadCsvTable(path);
  if (table.header.front() != "model") {
    throw ValidationError(path.string() +
                          ": first column must be 'model'");
  }
  auto column_report = [&](size_t c, std::string metric, bool higher) {
    MetricReport r{std::move(metric), higher, {}, {}};
    for (const auto& row : table.rows) {
      r.models.push_back(row[0]);
      r.scores.push_back(ParseNumber(row[c], path.string()));
    }
    return r;
  };
  const auto bt = std::find(table.header.begin(), table.header.end(),
                            "bt_score");
  if (bt != table.header.end()) {
    return {column_report(bt - table.header.begin(), named ? name : "bt",
                          true)};
  }
  std::vector<MetricReport> reports;
  for (size_t c = 1; c < table.header.size(); ++c) {
    const bool blank = std::any_of(
        table.rows.begin(), table.rows.end(),
        [c](const auto& row) { return row[c].empty(); });
    if (blank) {
      warn(path.string() + ": skipping column '" + table.header[c] +
           "' with undefined cells");
      continue;
    }
    bool higher = true;
    try {
      higher = Info(ParseMetric(table.header[c])).higher_is_better;
    } catch (const ValidationError&) {
    }
    std::string metric = named ? name + "." + table.header[c] : table.header[c];
    reports.push_back(column_report(c, std::move(metric), higher));
  }
  return reports;
}

}  // namespace internal

// Runs the tool. Data goes to `out`, diagnostics to `err`. `env_seed` is the
// value of RANKBENCH_SEED, if set.
inline int Run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err, std::istream& in,
               const char* env_seed = std::getenv("RANKBENCH_SEED")) {
  using internal::Context;
  Context ctx{out, err, in};

  CLI::App app{"Evaluate and rank models from per-example outputs.",
               "rankbench"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag,
                 "Random seed (default 42, or RANKBENCH_SEED)");
  app.add_option("--format", ctx.format, "Tabular output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--quiet", ctx.quiet, "Suppress warnings");

  std::string out_path;
  std::string sidecar_path;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--sidecar", sidecar_path,
                    "Provenance JSON (default: <out>.json when --out is set)");
  };

  // score / compare
  std::string truth_path, task;
  std::vector<std::string> preds;
  std::string metrics_list;
  std::string f1_average = "auto";
  std::string rule_name = "auto";
  double tie_tolerance = 0.0;

  auto* score = app.add_subcommand("score", "Global metric table per model");
  score->add_option("--truth", truth_path, "Ground-truth JSONL")->required();
  score->add_option("--pred", preds, "Predictions JSONL, as NAME=PATH or PATH")
      ->required();
  score->add_option("--task", task, "binary, multiclass:K or text")->required();
  score->add_option("--metrics", metrics_list,
                    "Comma-separated metrics (default: all for the task)");
  score->add_option("--f1-average", f1_average, "F1 averaging")
      ->check(CLI::IsMember({"auto", "binary", "macro"}));
  add_output(score);

  auto* compare = app.add_subcommand("compare", "Judge all model pairs per example");
  compare->add_option("--truth", truth_path, "Ground-truth JSONL")->required();
  compare->add_option("--pred", preds, "Predictions JSONL, as NAME=PATH or PATH")
      ->required();
  compare->add_option("--task", task, "binary, multiclass:K or text")->required();
  compare->add_option("--rule", rule_name, "Judge rule")
      ->check(CLI::IsMember({"auto", "closer", "chrf", "edit_distance", "wer"}));
  compare->add_option("--tie-tolerance", tie_tolerance,
                      "Differences up to this value are ties");
  add_output(compare);

  // rank
  std::string in_path;
  int resamples = 1000;
  double level = 0.95;
  double multiplier = 12.0;
  FitOptions fit;
  int threads = 1;
  auto* rank = app.add_subcommand("rank", "Bradley-Terry ranking with bootstrap intervals");
  rank->add_option("--in", in_path, "Comparisons CSV")->required();
  rank->add_option("--resamples", resamples, "Bootstrap resamples (0 = none)")
      ->check(CLI::NonNegativeNumber);
  rank->add_option("--level", level, "Interval coverage")
      ->check(CLI::Range(0.0, 1.0));
  rank->add_option("--multiplier", multiplier,
                   "Per-pair budget is ceil(multiplier * m * ln m)");
  rank->add_option("--prior", fit.prior, "Virtual ties added per pair");
  rank->add_option("--tolerance", fit.tolerance, "Convergence tolerance");
  rank->add_option("--max-iter", fit.max_iterations, "Iteration limit");
  rank->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  add_output(rank);

  // correlate
  std::vector<std::string> tables;
  bool oriented = false;
  auto* correlate = app.add_subcommand("correlate", "Spearman correlation matrix");
  correlate->add_option("--in", tables,
                        "Score tables or rank files, as NAME=PATH or PATH")
      ->required();
  correlate->add_flag("--oriented", oriented,
                      "Rank lower-is-better metrics ascending");
  add_output(correlate);

  // transform
  std::string transform_kind;
  TextPenalty penalty;
  double q = 0.0;
  double delta = 0.0;
  int n_examples = 1000;
  double noise = 0.25;
  auto* transform = app.add_subcommand("transform", "Manipulate outputs or comparisons");
  transform->add_option("--kind", transform_kind, "Transform")
      ->required()
      ->check(CLI::IsMember({"binarize", "penalize-class", "penalize-text",
                             "tie-inject", "score-gap"}));
  transform->add_option("--in", in_path, "Predictions JSONL or comparisons CSV");
  transform->add_option("--truth", truth_path, "Ground truth (penalize-class)");
  transform->add_option("--task", task, "binary, multiclass:K or text");
  transform->add_option("--fraction", penalty.fraction, "Share of outputs penalized")
      ->check(CLI::Range(0.0, 1.0));
  transform->add_option("--junk-length", penalty.junk_length,
                        "Random letters appended")
      ->check(CLI::PositiveNumber);
  transform->add_option("--q", q, "Tie probability")->check(CLI::Range(0.0, 1.0));
  transform->add_option("--delta", delta, "Score gap")->check(CLI::Range(0.0, 0.5));
  transform->add_option("--n", n_examples, "Examples (score-gap)")
      ->check(CLI::PositiveNumber);
  transform->add_option("--noise", noise, "Noise half-width (score-gap)");
  add_output(transform);

  // experiment
  std::string experiment_name;
  std::optional<int> trials;
  auto* experiment = app.add_subcommand("experiment", "Run a seeded synthetic study");
  experiment->add_option("--name", experiment_name, "Experiment")
      ->required()
      ->check(CLI::IsMember({"binary-response", "tie-curve", "stability",
                             "magnitude"}));
  experiment->add_option("--trials", trials, "Trials per grid point")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--in", in_path,
                         "Comparisons CSV for the stability study");
  add_output(experiment);

  // advise
  std::string hard, confident, consistent;
  bool interactive = false;
  auto* advise = app.add_subcommand("advise", "Recommend global or pairwise evaluation");
  advise->add_option("--hard-to-define", hard,
                     "Is the quality measure hard to define? (yes/no)");
  advise->add_option("--confident", confident,
                     "Do some models give over-confident outputs? (yes/no)");
  advise->add_option("--consistent", consistent,
                     "Are model scores relatively consistent? (yes/no)");
  advise->add_flag("--interactive", interactive, "Prompt for missing answers");
  add_output(advise);

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    ctx.seed = 42;
    if (env_seed != nullptr && *env_seed != '\0') {
      ctx.seed = internal::ParseSeed(env_seed, "RANKBENCH_SEED");
    }
    if (seed_flag) ctx.seed = *seed_flag;

    if (active == score) {
      const DatasetKind kind = internal::ParseTask(task);
      const GroundTruth truth = io::LoadGroundTruth(truth_path, kind);
      const auto models = internal::LoadModels(preds, kind);
      std::vector<Metric> metrics;
      if (metrics_list.empty()) {
        metrics = DefaultMetrics(kind);
      } else {
        std::stringstream ss(metrics_list);
        std::string name;
        while (std::getline(ss, name, ',')) {
          if (!name.empty()) metrics.push_back(ParseMetric(name));
        }
      }
      Table table{{"model"}, {}};
      int undefined = 0;
      for (Metric m : metrics) table.columns.emplace_back(Info(m).name);
      for (const PredictionSet& p : models) {
        std::vector<Cell> row = {p.model()};
        for (Metric m : metrics) {
          try {
            if (m == Metric::kF1 && f1_average != "auto") {
              row.emplace_back(F1(p, truth, f1_average == "binary"
                                                ? F1Average::kBinary
                                                : F1Average::kMacro));
            } else {
              row.emplace_back(Evaluate(m, p, truth));
            }
          } catch (const UndefinedMetricError& e) {
            // Left blank so the other columns remain usable.
            ctx.Warn(p.model() + ": " + e.what());
            row.emplace_back(experiments::kNaN);
            ++undefined;
          }
        }
        table.rows.push_back(std::move(row));
      }
      internal::WriteTable(ctx, out_path, table);
      ctx.summary["models"] = models.size();
      ctx.summary["examples"] = truth.size();
      ctx.summary["undefined_cells"] = undefined;
    } else if (active == compare) {
      const DatasetKind kind = internal::ParseTask(task);
      const GroundTruth truth = io::LoadGroundTruth(truth_path, kind);
      const auto models = internal::LoadModels(preds, kind);
      JudgeRule rule;
      if (rule_name == "auto") rule_name = kind.categorical() ? "closer" : "chrf";
      rule = rule_name == "closer"
                 ? JudgeRule::CloserDecisionValue(tie_tolerance)
                 : JudgeRule::TextMetric(ParseMetric(rule_name), tie_tolerance);
      const ComparisonLog log = GenerateComparisons(models, truth, rule);
      std::int64_t counts[3] = {0, 0, 0};
      for (const auto& r : log.records()) ++counts[static_cast<int>(r.outcome)];
      internal::WriteData(ctx, out_path, [&](std::ostream& os) {
        if (ctx.format == "json") {
          Json rows = Json::array();
          for (size_t k = 0; k < log.size(); ++k) {
            const Comparison c = log.At(k);
            rows.push_back({{"left", c.left},
                            {"right", c.right},
                            {"outcome", OutcomeName(c.outcome)},
                            {"example_id", c.example_id.value_or("")}});
          }
          os << rows.dump(2) << '\n';
        } else {
          io::WriteComparisons(os, log);
        }
      });
      ctx.summary["comparisons"] = log.size();
      ctx.summary["left_wins"] = counts[0];
      ctx.summary["right_wins"] = counts[1];
      ctx.summary["ties"] = counts[2];
      ctx.summary["tie_fraction"] =
          log.empty() ? 0.0 : static_cast<double>(counts[2]) / log.size();
    } else if (active == rank) {
      const ComparisonLog log = io::LoadComparisons(in_path);
      for (const auto& [a, b] : MissingPairs(log)) {
        ctx.Warn("no comparisons between '" + a + "' and '" + b + "'");
      }
      const SamplePlan plan = MakeSamplePlan(
          static_cast<std::int64_t>(log.models().size()), multiplier, ctx.seed);
      BTRanking ranking;
      if (resamples > 0) {
        BootstrapOptions bo;
        bo.resamples = resamples;
        bo.level = level;
        bo.threads = threads;
        bo.fit = fit;
        const auto groups = GroupByPair(log);
        const bool all_short = std::all_of(
            groups.begin(), groups.end(), [&](const auto& g) {
              return static_cast<std::int64_t>(g.records.size()) <
                     plan.per_pair;
            });
        if (all_short) {
          ctx.Warn("every pair has fewer than " +
                   std::to_string(plan.per_pair) +
                   " comparisons; resamples keep all records, so intervals "
                   "collapse to the point estimate");
        }
        ranking = BootstrapIntervals(log, plan, bo);
      } else {
        ranking = FitBradleyTerry(Tally(log), fit);
      }
      Table table{{"model", "bt_score", "ci_low", "ci_high", "rank"}, {}};
      const auto positions = ranking.Positions();
      for (size_t idx : ranking.order) {
        const double lo = ranking.intervals ? (*ranking.intervals)[idx].low
                                            : experiments::kNaN;
        const double hi = ranking.intervals ? (*ranking.intervals)[idx].high
                                            : experiments::kNaN;
        table.rows.push_back({ranking.models[idx], ranking.scores[idx], lo, hi,
                              static_cast<std::int64_t>(positions[idx])});
      }
      internal::WriteTable(ctx, out_path, table);
      ctx.summary["models"] = ranking.models.size();
      ctx.summary["comparisons"] = log.size();
      ctx.summary["per_pair_budget"] = plan.per_pair;
      ctx.summary["iterations"] = ranking.iterations;
      ctx.summary["converged"] = ranking.converged;
      if (!ranking.converged) {
        err << "error: Bradley-Terry fit did not converge within "
            << fit.max_iterations << " iterations (partial result written)\n";
        ctx.exit_code = kExitNumerical;
      }
    } else if (active == correlate) {
      std::vector<MetricReport> reports;
      for (const std::string& spec : tables) {
        auto warn = [&ctx](const std::string& m) { ctx.Warn(m); };
        for (MetricReport& r : internal::LoadReports(spec, warn)) {
          reports.push_back(std::move(r));
        }
      }
      if (reports.size() < 2) {
        throw ValidationError("correlation matrix needs at least 2 reports");
      }
      const RankOrientation orientation =
          oriented ? RankOrientation::kOriented : RankOrientation::kRaw;
      std::vector<RankVector> ranks;
      for (const MetricReport& r : reports) ranks.push_back(Ranks(r, orientation));
      // Undefined pairs (a metric ranks every model equally) become blank
      // cells rather than aborting the whole matrix.
      Table table{{"metric"}, {}};
      for (const auto& r : reports) table.columns.push_back(r.metric);
      size_t undefined = 0;
      for (size_t i = 0; i < reports.size(); ++i) {
        std::vector<Cell> row = {reports[i].metric};
        for (size_t j = 0; j < reports.size(); ++j) {
          double rho = 1.0;
          if (i != j) {
            try {
              rho = Spearman(ranks[i], ranks[j]);
            } catch (const UndefinedMetricError& e) {
              rho = experiments::kNaN;
              if (i < j) {
                ctx.Warn(reports[i].metric + " vs " + reports[j].metric +
                         ": " + e.what());
                ++undefined;
              }
            }
          }
          row.emplace_back(rho);
        }
        table.rows.push_back(std::move(row));
      }
      internal::WriteTable(ctx, out_path, table);
      ctx.summary["reports"] = reports.size();
      ctx.summary["undefined_cells"] = undefined;
    } else if (active == transform) {
      penalty.seed = ctx.seed;
      auto need = [](const std::string& value, const char* flag) {
        if (value.empty()) {
          throw ValidationError(std::string("transform requires ") + flag);
        }
      };
      if (transform_kind == "tie-inject") {
        need(in_path, "--in");
        const ComparisonLog log =
            InjectTies(io::LoadComparisons(in_path), q, ctx.seed);
        internal::WriteData(ctx, out_path, [&](std::ostream& os) {
          io::WriteComparisons(os, log);
        });
        ctx.summary["comparisons"] = log.size();
      } else if (transform_kind == "score-gap") {
        need(out_path, "--out (output directory)");
        const SyntheticSet set = GappedPair(delta, n_examples, ctx.seed, noise);
        const std::filesystem::path dir(out_path);
        std::filesystem::create_directories(dir);
        for (const PredictionSet& p : set.models) {
          std::ofstream f = internal::OpenOutput(dir / (p.model() + ".jsonl"));
          io::WritePredictions(f, p);
        }
        std::ofstream f = internal::OpenOutput(dir / "truth.jsonl");
        io::WriteGroundTruth(f, set.truth);
        if (sidecar_path.empty()) sidecar_path = (dir / "config.json").string();
      } else {
        need(in_path, "--in");
        if (task.empty()) {
          if (transform_kind != "penalize-text") {
            throw ValidationError("transform requires --task");
          }
          task = "text";
        }
        const DatasetKind kind = internal::ParseTask(task);
        const PredictionSet input = io::LoadPredictions(in_path, kind);
        PredictionSet result = input;
        if (transform_kind == "binarize") {
          result = Binarize(input);
        } else if (transform_kind == "penalize-class") {
          need(truth_path, "--truth");
          result = PenalizeClass(input, io::LoadGroundTruth(truth_path, kind));
        } else {
          result = PenalizeText(input, penalty);
          ctx.summary["penalized"] = PenalizedCount(penalty.fraction, input.size());
        }
        internal::WriteData(ctx, out_path, [&](std::ostream& os) {
          io::WritePredictions(os, result);
        });
      }
    } else if (active == experiment) {
      Table table;
      Json& s = ctx.summary;
      if (experiment_name == "binary-response") {
        experiments::BinaryResponseOptions o;
        o.seed = ctx.seed;
        o.threads = threads;
        if (trials) o.trials = *trials;
        const auto result = experiments::RunBinaryResponse(o);
        table = result.ToTable();
        for (const auto& [k, v] : result.Summarize()) s[k] = v;
      } else if (experiment_name == "tie-curve") {
        experiments::TieCurveOptions o;
        o.seed = ctx.seed;
        o.threads = threads;
        if (trials) o.trials = *trials;
        const auto curve = experiments::RunTieCurve(o);
        table = experiments::ToTable(curve);
        s["trials"] = o.trials;
        s["mean_spearman_q0"] = curve.front().mean_spearman;
        s["mean_spearman_q0.5"] = curve[curve.size() / 2].mean_spearman;
        s["mean_spearman_q1"] = curve.back().mean_spearman;
      } else if (experiment_name == "stability") {
        experiments::StabilityOptions o;
        o.seed = ctx.seed;
        o.threads = threads;
        if (trials) o.trials = *trials;
        std::optional<ComparisonLog> source;
        if (!in_path.empty()) source = io::LoadComparisons(in_path);
        const auto result =
            experiments::RunStability(o, source ? &*source : nullptr);
        for (const auto& w : result.warnings) ctx.Warn(w);
        table = experiments::ToTable(result);
        std::vector<double> ys;
        for (const auto& p : result.curve) ys.push_back(p.mean_distance);
        s["trials"] = o.trials;
        s["budget_k"] = result.budget;
        s["distance_at_k_min"] = result.curve.front().mean_distance;
        s["distance_at_budget"] = result.DistanceAt(result.budget);
        s["trend_residual_rms"] = experiments::TrendResidualRms(ys, false);
        s["warnings"] = result.warnings;
      } else {
        experiments::MagnitudeOptions o;
        o.seed = ctx.seed;
        o.threads = threads;
        if (trials) o.trials = *trials;
        const auto curve = experiments::RunMagnitude(o);
        table = experiments::ToTable(curve);
        std::vector<double> ys;
        for (const auto& p : curve) ys.push_back(p.p_correct);
        s["trials"] = o.trials;
        s["p_correct_at_zero"] = curve.front().p_correct;
        s["p_correct_at_max_delta"] = curve.back().p_correct;
        s["trend_residual_rms"] = experiments::TrendResidualRms(ys, true);
      }
      internal::WriteTable(ctx, out_path, table);
    } else if (active == advise) {
      auto answer = [&](std::string& value, const char* flag,
                        const char* question) {
        if (value.empty() && interactive) {
          err << question << " [yes/no]: ";
          std::getline(ctx.in, value);
        }
        if (value.empty()) {
          throw ValidationError(std::string("missing answer for ") + flag);
        }
        return internal::ParseYesNo(value, flag);
      };
      EvaluationTraits traits;
      traits.measure_hard_to_define =
          answer(hard, "--hard-to-define",
                 "Is the quality measure hard to define?");
      traits.models_confident =
          answer(confident, "--confident",
                 "Do some models produce over-confident outputs?");
      traits.scores_consistent =
          answer(consistent, "--consistent",
                 "Are model scores relatively consistent?");
      const std::string rec(RecommendationName(Advise(traits)));
      Table table{{"recommendation"}, {{rec}}};
      internal::WriteTable(ctx, out_path, table);
      ctx.summary["recommendation"] = rec;
    }

    std::string sidecar = sidecar_path;
    if (sidecar.empty() && !out_path.empty()) sidecar = out_path + ".json";
    if (!sidecar.empty()) {
      Json doc;
      doc["tool"] = "rankbench";
      doc["version"] = kVersion;
      doc["command"] = active->get_name();
      doc["seed"] = ctx.seed;
      doc["format"] = ctx.format;
      doc["config"] = internal::ResolvedConfig(*active);
      doc["summary"] = ctx.summary;
      std::ofstream f = internal::OpenOutput(sidecar);
      f << doc.dump(2) << '\n';
    }
    return ctx.exit_code;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace rankbench::cli

#endif  // RANKBENCH_TOOLS_CLI_HPP_
