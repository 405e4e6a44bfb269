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

// Acceptance suite. Runs each numbered criterion and prints one PASS/FAIL
// line per criterion; exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "rankbench.hpp"
#include "test_util.hpp"

namespace rankbench {
namespace {

namespace ex = experiments;
using testing::Id;
using testing::MatrixOf;

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Records the first failed check and keeps a short detail string.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && outcome_.pass) {
      outcome_.pass = false;
      outcome_.detail = what;
    }
  }
  void Note(const std::string& detail) {
    if (outcome_.pass) outcome_.detail = detail;
  }
  Verdict Done() const { return outcome_; }

 private:
  Verdict outcome_;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

// 1. Bradley-Terry fit against the grid oracle.
Verdict BtOracle() {
  Check check;
  Rng rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const size_t m = 2 + trial % 3;
    const auto w = testing::RandomWins(rng, m);
    const BTRanking fit = FitBradleyTerry(MatrixOf(w));
    const std::vector<double> expected = oracle::BtGridFit(w);
    check.Expect(fit.converged, "fit did not converge");
    for (size_t i = 0; i < m; ++i) {
      worst = std::max(worst, std::abs(fit.scores[i] - expected[i]));
    }
  }
  check.Expect(worst <= 1e-4, Fmt("max deviation %.3g > 1e-4", worst));
  check.Note(Fmt("100 matrices, max deviation %.3g", worst));
  return check.Done();
}

// 2. Two-player closed form.
Verdict TwoPlayer() {
  Check check;
  Rng rng(202);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double wa = 1 + static_cast<double>(rng.Below(100));
    const double wb = 1 + static_cast<double>(rng.Below(100));
    const BTRanking fit = FitBradleyTerry(MatrixOf({{0, wa}, {wb, 0}}));
    worst = std::max(worst, std::abs(fit.scores[0] - wa / (wa + wb)));
    worst = std::max(worst, std::abs(fit.scores[1] - wb / (wa + wb)));
  }
  check.Expect(worst <= 1e-8, Fmt("max deviation %.3g > 1e-8", worst));
  check.Note(Fmt("50 pairs, max deviation %.3g", worst));
  return check.Done();
}

// 3. All-tie inputs give uniform scores.
Verdict TieSymmetry() {
  Check check;
  Rng rng(303);
  double worst = 0.0;
  for (size_t m = 2; m <= 8; ++m) {
    ComparisonLog log;
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = i + 1; j < m; ++j) {
        const int ties = 1 + static_cast<int>(rng.Below(10));
        for (int k = 0; k < ties; ++k) {
          log.Add({"m" + std::to_string(i), "m" + std::to_string(j),
                   Outcome::kTie, std::nullopt});
        }
      }
    }
    const BTRanking fit = FitBradleyTerry(Tally(log));
    for (double p : fit.scores) {
      worst = std::max(worst, std::abs(p - 1.0 / static_cast<double>(m)));
    }
  }
  check.Expect(worst <= 1e-8, Fmt("max deviation from 1/m %.3g", worst));
  check.Note(Fmt("m=2..8, max deviation %.3g", worst));
  return check.Done();
}

// 4. Tie-curve checkpoints.
Verdict TieCurve() {
  Check check;
  ex::TieCurveOptions options;
  options.trials = 200;
  options.threads = 4;
  const auto curve = ex::RunTieCurve(options);
  const double q0 = curve.front().mean_spearman;
  const double q50 = curve[curve.size() / 2].mean_spearman;
  const double q100 = curve.back().mean_spearman;
  check.Expect(curve[curve.size() / 2].q == 0.5, "grid has no q=0.5 point");
  check.Expect(q0 >= 0.95, Fmt("q=0 mean %.4f < 0.95", q0));
  check.Expect(q50 >= 0.8, Fmt("q=0.5 mean %.4f < 0.8", q50));
  check.Expect(std::abs(q100) <= 0.1, Fmt("|q=1 mean| %.4f > 0.1", q100));
  check.Note(Fmt("q=0 %.4f, q=0.5 %.4f, q=1 %.4f", q0, q50, q100));
  return check.Done();
}

// 5. Magnitude checkpoints.
Verdict Magnitude() {
  Check check;
  ex::MagnitudeOptions options;
  options.trials = 1000;
  options.threads = 4;
  const auto curve = ex::RunMagnitude(options);
  std::vector<double> p;
  for (const auto& point : curve) p.push_back(point.p_correct);
  const double at_zero = curve.front().p_correct;
  const double at_max = curve.back().p_correct;
  const double residual = ex::TrendResidualRms(p, true);
  check.Expect(curve.front().delta == 0.0, "grid does not start at 0");
  check.Expect(std::abs(curve.back().delta - 0.1) < 1e-12,
               "grid does not end at 0.1");
  check.Expect(at_zero >= 0.45 && at_zero <= 0.55,
               Fmt("P(correct) at 0 = %.4f", at_zero));
  check.Expect(residual <= 0.02,
               Fmt("isotonic residual RMS %.4f > 0.02", residual));
  check.Expect(at_max >= 0.9, Fmt("P(correct) at 0.1 = %.4f < 0.9", at_max));
  check.Note(Fmt("P(0)=%.3f, P(0.1)=%.3f, isotonic RMS %.4f", at_zero, at_max,
                 residual));
  return check.Done();
}

// 6. Stability checkpoints.
Verdict Stability() {
  Check check;
  ex::StabilityOptions options;
  options.trials = 200;
  options.threads = 4;
  const ex::StabilityResult result = ex::RunStability(options);
  std::vector<double> d;
  for (const auto& point : result.curve) d.push_back(point.mean_distance);
  const double first = result.DistanceAt(10);
  const double budget = result.DistanceAt(result.budget);
  const double residual = ex::TrendResidualRms(d, false);
  check.Expect(result.budget == 238, "budget is not 238");
  check.Expect(budget <= 0.1 * first,
               Fmt("distance at 238 = %.3f > 10%% of %.3f", budget, first));
  check.Expect(residual <= 0.05 * first,
               Fmt("antitonic residual RMS %.4f > 5%% of %.3f", residual, first));
  check.Note(Fmt("d(10)=%.3f, d(238)=%.3f, antitonic RMS %.4f", first, budget,
                 residual));
  return check.Done();
}

// 7. Random binary models.
Verdict BinaryResponse() {
  Check check;
  ex::BinaryResponseOptions options;
  options.trials = 100;
  options.threads = 4;
  const auto result = ex::RunBinaryResponse(options);
  double lo = 1.0, hi = 0.0;
  for (const auto& tr : result.trials) {
    for (size_t k = 0; k < tr.accuracy.size(); ++k) {
      for (double v : {tr.accuracy[k], tr.roc_auc[k], tr.f1[k]}) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  const double share = result.BtSpreadShare();
  check.Expect(lo >= 0.44 && hi <= 0.56,
               Fmt("global metrics span [%.4f, %.4f] (BT spread share %.2f)", lo,
                   hi, share));
  check.Expect(share >= 0.6, Fmt("BT spread share %.2f < 0.6", share));
  check.Note(Fmt("metrics in [%.4f, %.4f], BT spread share %.2f", lo, hi,
                 share));
  return check.Done();
}

// 8. Metrics against brute-force oracles.
Verdict MetricOracles() {
  Check check;
  Rng rng(808);
  const DatasetKind binary = DatasetKind::Binary();
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = 2 + rng.Below(10);
    std::vector<double> s;
    std::vector<int> y = {0, 1};
    for (size_t i = 0; i < n; ++i) {
      // Coarse values make ties common.
      s.push_back(rng.Bernoulli(0.5) ? rng.Below(5) / 4.0 : rng.Uniform());
      if (i >= 2) y.push_back(static_cast<int>(rng.Below(2)));
    }
    for (size_t i = y.size() - 1; i > 0; --i) std::swap(y[i], y[rng.Below(i + 1)]);
    const PredictionSet p = testing::BinaryPreds("m", s);
    const GroundTruth truth = testing::LabelTruth(binary, y);
    std::vector<int> hard;
    for (double v : s) hard.push_back(v >= 0.5);
    check.Expect(Accuracy(p, truth) == oracle::Accuracy(hard, y), "accuracy");
    check.Expect(std::abs(F1(p, truth) - oracle::ClassF1(hard, y, 1)) <= 1e-9,
                 "binary f1");
    check.Expect(std::abs(RocAuc(p, truth) - oracle::Auc(s, y)) <= 1e-9,
                 "roc_auc");
    check.Expect(
        std::abs(AveragePrecision(p, truth) - oracle::AveragePrecision(s, y)) <=
            1e-9,
        "average_precision");
    check.Expect(std::abs(MeanAbsoluteError(p, truth) - oracle::Mae(s, y)) <=
                     1e-9,
                 "mae");
    ++checked;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 3 + static_cast<int>(rng.Below(3));
    const size_t n = 1 + rng.Below(12);
    std::vector<int> pred, y;
    for (size_t i = 0; i < n; ++i) {
      pred.push_back(static_cast<int>(rng.Below(k)));
      y.push_back(static_cast<int>(rng.Below(k)));
    }
    const DatasetKind kind = DatasetKind::MultiClass(k);
    const PredictionSet p = testing::LabelPreds("m", kind, pred);
    const GroundTruth truth = testing::LabelTruth(kind, y);
    check.Expect(Accuracy(p, truth) == oracle::Accuracy(pred, y),
                 "multi-class accuracy");
    check.Expect(std::abs(F1(p, truth) - oracle::MacroF1(pred, y, k)) <= 1e-9,
                 "macro f1");
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = 1 + rng.Below(4);
    std::vector<std::string> hyps, refs;
    double ed = 0, wer = 0, chrf = 0;
    for (size_t i = 0; i < n; ++i) {
      hyps.push_back(testing::RandomString(rng, 12, "abc de"));
      std::string ref;
      while (oracle::Words(ref).empty()) {
        ref = testing::RandomString(rng, 12, "abc de");
      }
      refs.push_back(ref);
      const size_t exact = CharEditDistance(hyps[i], refs[i]);
      check.Expect(exact == oracle::EditDistance(hyps[i], refs[i]),
                   "edit distance");
      ed += static_cast<double>(oracle::EditDistance(hyps[i], refs[i]));
      wer += oracle::Wer(hyps[i], refs[i]);
      chrf += oracle::ChrF(hyps[i], refs[i]);
    }
    const PredictionSet p = testing::TextPreds("m", hyps);
    const GroundTruth truth = testing::TextTruth(refs);
    check.Expect(std::abs(EditDistance(p, truth) - ed / n) <= 1e-9,
                 "mean edit distance");
    check.Expect(std::abs(WordErrorRate(p, truth) - wer / n) <= 1e-9, "wer");
    check.Expect(std::abs(ChrF(p, truth) - chrf / n) <= 1e-9, "chrf");
  }
  check.Note("1000 instances per metric family");
  return check.Done();
}

// 9. Binarization keeps accuracy and F1, changes MAE.
Verdict Binarization() {
  Check check;
  Rng rng(909);
  int mae_checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + static_cast<int>(rng.Below(4));
    const size_t n = 1 + rng.Below(30);
    const DatasetKind kind =
        k == 2 ? DatasetKind::Binary() : DatasetKind::MultiClass(k);
    PredictionSet p("m", kind);
    std::vector<int> y;
    bool fractional = false;
    for (size_t i = 0; i < n; ++i) {
      y.push_back(static_cast<int>(rng.Below(k)));
      if (k == 2) {
        const double v = rng.Bernoulli(0.2) ? static_cast<double>(rng.Below(2))
                                            : rng.Uniform();
        fractional |= v != std::floor(v);
        p.Add(Id(i), Scores{{v}});
      } else {
        std::vector<double> v;
        for (int c = 0; c < k; ++c) v.push_back(rng.Below(3) / 2.0);
        p.Add(Id(i), Scores{v});
      }
    }
    const GroundTruth truth = testing::LabelTruth(kind, y);
    const PredictionSet b = Binarize(p);
    check.Expect(Accuracy(b, truth) == Accuracy(p, truth), "accuracy changed");
    check.Expect(F1(b, truth) == F1(p, truth), "f1 changed");
    if (k == 2 && fractional) {
      ++mae_checked;
      check.Expect(MeanAbsoluteError(b, truth) != MeanAbsoluteError(p, truth),
                   "mae unchanged despite fractional values");
    }
  }
  check.Note("500 sets, " + std::to_string(mae_checked) + " MAE checks");
  return check.Done();
}

// 10. Determinism of CLI pipelines and bootstrap intervals.
Verdict Determinism() {
  Check check;
  testing::TempDir dir;
  auto run = [&](std::vector<std::string> args) {
    args.insert(args.begin(), "rankbench");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    std::istringstream in;
    const int code = cli::Run(static_cast<int>(argv.size()), argv.data(), out,
                              err, in, nullptr);
    check.Expect(code == 0, "command failed: " + args[1] + ": " + err.str());
  };
  auto snapshot = [&]() {
    std::string all;
    std::vector<std::filesystem::path> files;
    for (const auto& e :
         std::filesystem::recursive_directory_iterator(dir.path())) {
      if (e.is_regular_file() && e.path().parent_path().filename() != "gen") {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      all += f.string() + "\n" + testing::ReadFile(f);
    }
    return all;
  };
  const std::string d = dir.path().string();
  // Inputs generated once; every pipeline below is run twice.
  run({"transform", "--kind", "score-gap", "--delta", "0.1", "--n", "200",
       "--out", d + "/gen"});
  const std::vector<std::vector<std::string>> pipelines = {
      {"score", "--truth", d + "/gen/truth.jsonl", "--task", "binary",
       "--pred", d + "/gen/A.jsonl", "--pred", d + "/gen/B.jsonl", "--out",
       d + "/s.csv"},
      {"compare", "--truth", d + "/gen/truth.jsonl", "--task", "binary",
       "--pred", d + "/gen/A.jsonl", "--pred", d + "/gen/B.jsonl", "--out",
       d + "/c.csv"},
      {"transform", "--kind", "tie-inject", "--q", "0.3", "--in", d + "/c.csv",
       "--out", d + "/ct.csv"},
      {"rank", "--in", d + "/ct.csv", "--resamples", "200", "--threads", "4",
       "--out", d + "/r.csv"},
      {"correlate", "--in", d + "/s.csv", "--in", d + "/r.csv", "--out",
       d + "/corr.csv"},
      {"transform", "--kind", "binarize", "--task", "binary", "--in",
       d + "/gen/B.jsonl", "--out", d + "/bin.jsonl"},
      {"transform", "--kind", "penalize-class", "--task", "binary", "--in",
       d + "/gen/B.jsonl", "--truth", d + "/gen/truth.jsonl", "--out",
       d + "/pen.jsonl"},
      {"experiment", "--name", "binary-response", "--trials", "4", "--threads",
       "3", "--out", d + "/br.csv"},
      {"experiment", "--name", "tie-curve", "--trials", "4", "--threads", "3",
       "--out", d + "/tc.csv"},
      {"experiment", "--name", "stability", "--trials", "2", "--threads", "3",
       "--in", d + "/c.csv", "--out", d + "/st.csv"},
      {"experiment", "--name", "magnitude", "--trials", "4", "--threads", "3",
       "--out", d + "/mg.csv"},
      {"advise", "--hard-to-define", "no", "--confident", "no", "--consistent",
       "yes", "--out", d + "/adv.csv"},
  };
  for (const auto& args : pipelines) run(args);
  const std::string first = snapshot();
  for (const auto& args : pipelines) run(args);
  check.Expect(snapshot() == first, "outputs differ between runs");

  const ComparisonLog log = io::LoadComparisons(d + "/ct.csv");
  BootstrapOptions options;
  options.resamples = 300;
  const BTRanking serial = BootstrapIntervals(log, MakeSamplePlan(2), options);
  for (int threads : {2, 4, 8}) {
    options.threads = threads;
    const BTRanking parallel =
        BootstrapIntervals(log, MakeSamplePlan(2), options);
    for (size_t i = 0; i < serial.scores.size(); ++i) {
      check.Expect(
          (*parallel.intervals)[i].low == (*serial.intervals)[i].low &&
              (*parallel.intervals)[i].high == (*serial.intervals)[i].high,
          "bootstrap intervals depend on thread count");
    }
  }
  check.Note(std::to_string(pipelines.size()) +
             " pipelines rerun byte-identically; bootstrap thread-invariant");
  return check.Done();
}

struct Criterion {
  int number;
  const char* name;
  std::function<Verdict()> run;
  double time_limit_seconds;
};

}  // namespace
}  // namespace rankbench

int main() {
  using rankbench::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "bt-oracle-equivalence", rankbench::BtOracle, 60},
      {2, "two-player-closed-form", rankbench::TwoPlayer, 0},
      {3, "tie-symmetry", rankbench::TieSymmetry, 0},
      {4, "tie-curve-checkpoint", rankbench::TieCurve, 600},
      {5, "magnitude-checkpoint", rankbench::Magnitude, 0},
      {6, "stability-checkpoint", rankbench::Stability, 600},
      {7, "binary-response", rankbench::BinaryResponse, 0},
      {8, "metric-oracles", rankbench::MetricOracles, 0},
      {9, "binarization-invariance", rankbench::Binarization, 0},
      {10, "determinism", rankbench::Determinism, 0},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    rankbench::Verdict outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.time_limit_seconds > 0 && seconds >= c.time_limit_seconds) {
      outcome.pass = false;
      outcome.detail += " (over time limit)";
    }
    failures += !outcome.pass;
    std::printf("AC%-2d %s  %-26s %7.2fs  %s\n", c.number,
                outcome.pass ? "PASS" : "FAIL", c.name, seconds,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
