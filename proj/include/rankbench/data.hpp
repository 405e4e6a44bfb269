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

// Data model for per-example model outputs, ground truth and pairwise
// comparison records.

#ifndef RANKBENCH_DATA_HPP_
#define RANKBENCH_DATA_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "rankbench/error.hpp"

namespace rankbench {

enum class TaskType { kBinary, kMultiClass, kText };

// The kind of a dataset: binary classification, k-class classification or
// text generation. Fixed for the whole dataset.
class DatasetKind {
 public:
  static DatasetKind Binary() { return DatasetKind(TaskType::kBinary, 2); }
  static DatasetKind MultiClass(int num_classes) {
    if (num_classes < 2) {
      throw ValidationError("multi-class datasets need at least 2 classes");
    }
    return DatasetKind(TaskType::kMultiClass, num_classes);
  }
  static DatasetKind Text() { return DatasetKind(TaskType::kText, 0); }

  // Accepts "binary", "multiclass:K" and "text".
  static DatasetKind Parse(std::string_view s) {
    if (s == "binary") return Binary();
    if (s == "text") return Text();
    constexpr std::string_view kPrefix = "multiclass:";
    if (s.starts_with(kPrefix)) {
      const std::string digits(s.substr(kPrefix.size()));
      if (!digits.empty() &&
          std::all_of(digits.begin(), digits.end(),
                      [](char c) { return c >= '0' && c <= '9'; }) &&
          digits.size() < 9) {
        return MultiClass(std::stoi(digits));
      }
    }
    throw ValidationError("unknown task kind '" + std::string(s) +
                          "' (expected binary, multiclass:K or text)");
  }

  TaskType type() const { return type_; }
  int num_classes() const { return num_classes_; }
  bool categorical() const { return type_ != TaskType::kText; }

  std::string ToString() const {
    switch (type_) {
      case TaskType::kBinary:
        return "binary";
      case TaskType::kMultiClass:
        return "multiclass:" + std::to_string(num_classes_);
      case TaskType::kText:
        return "text";
    }
    return "?";
  }

  friend bool operator==(const DatasetKind&, const DatasetKind&) = default;

 private:
  DatasetKind(TaskType type, int num_classes)
      : type_(type), num_classes_(num_classes) {}

  TaskType type_;
  int num_classes_;
};

// Real-valued decision values. Binary datasets store a single positive-class
// value s; the implied vector is (1 - s, s).
struct Scores {
  std::vector<double> values;
  friend bool operator==(const Scores&, const Scores&) = default;
};

struct Label {
  int value = 0;
  friend bool operator==(const Label&, const Label&) = default;
};

using Output = std::variant<Scores, Label, std::string>;
using Reference = std::variant<int, std::string>;

// Throws ValidationError unless `out` is a valid output for `kind`.
inline void ValidateOutput(const Output& out, const DatasetKind& kind) {
  if (const auto* scores = std::get_if<Scores>(&out)) {
    if (!kind.categorical()) {
      throw ValidationError("decision values given for a text dataset");
    }
    const size_t expected =
        kind.type() == TaskType::kBinary ? 1 : kind.num_classes();
    if (scores->values.size() != expected) {
      throw ValidationError("expected " + std::to_string(expected) +
                            " decision values, got " +
                            std::to_string(scores->values.size()));
    }
    for (double v : scores->values) {
      if (!std::isfinite(v)) {
        throw ValidationError("non-finite decision value");
      }
    }
    if (kind.type() == TaskType::kBinary &&
        (scores->values[0] < 0.0 || scores->values[0] > 1.0)) {
      throw ValidationError("binary decision value outside [0, 1]");
    }
  } else if (const auto* label = std::get_if<Label>(&out)) {
    if (!kind.categorical()) {
      throw ValidationError("class label given for a text dataset");
    }
    if (label->value < 0 || label->value >= kind.num_classes()) {
      throw ValidationError("label " + std::to_string(label->value) +
                            " out of range for " + kind.ToString());
    }
  } else if (kind.categorical()) {
    throw ValidationError("text output given for a " + kind.ToString() +
                          " dataset");
  }
}

inline void ValidateReference(const Reference& ref, const DatasetKind& kind) {
  if (const auto* label = std::get_if<int>(&ref)) {
    if (!kind.categorical()) {
      throw ValidationError("class label given as reference for text dataset");
    }
    if (*label < 0 || *label >= kind.num_classes()) {
      throw ValidationError("reference label " + std::to_string(*label) +
                            " out of range for " + kind.ToString());
    }
  } else if (kind.categorical()) {
    throw ValidationError("text reference given for a " + kind.ToString() +
                          " dataset");
  }
}

// Index of the largest value; ties go to the lowest index.
inline int ArgMax(std::span<const double> values) {
  int best = 0;
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = static_cast<int>(i);
  }
  return best;
}

// Hardened class label. Binary decision values round half up at 0.5;
// multi-class vectors use ArgMax.
inline int HardLabel(const Output& out, const DatasetKind& kind) {
  if (const auto* label = std::get_if<Label>(&out)) return label->value;
  const auto* scores = std::get_if<Scores>(&out);
  if (scores == nullptr) throw ValidationError("text output has no label");
  if (kind.type() == TaskType::kBinary) return scores->values[0] >= 0.5;
  return ArgMax(scores->values);
}

// The full decision vector (length k). Labels become one-hot vectors.
inline std::vector<double> DecisionVector(const Output& out,
                                          const DatasetKind& kind) {
  if (const auto* label = std::get_if<Label>(&out)) {
    std::vector<double> v(kind.num_classes(), 0.0);
    v[label->value] = 1.0;
    return v;
  }
  const auto* scores = std::get_if<Scores>(&out);
  if (scores == nullptr) throw ValidationError("text output has no scores");
  if (kind.type() == TaskType::kBinary) {
    return {1.0 - scores->values[0], scores->values[0]};
  }
  return scores->values;
}

// Positive-class decision value of a binary output.
inline double PositiveScore(const Output& out, const DatasetKind& kind) {
  if (kind.type() != TaskType::kBinary) {
    throw ValidationError("positive-class score requires a binary dataset");
  }
  if (const auto* label = std::get_if<Label>(&out)) return label->value;
  return std::get<Scores>(out).values[0];
}

struct StringHash {
  using is_transparent = void;
  size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

// Values keyed by example id, iterated in insertion order.
template <typename Value>
class ExampleTable {
 public:
  void Add(std::string id, Value value) {
    if (index_.contains(id)) {
      throw ValidationError("duplicate example id '" + id + "'");
    }
    index_.emplace(id, ids_.size());
    ids_.push_back(std::move(id));
    values_.push_back(std::move(value));
  }

  size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<Value>& values() const { return values_; }
  std::vector<Value>& mutable_values() { return values_; }

  const Value* Find(std::string_view id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &values_[it->second];
  }

  const Value& At(std::string_view id) const {
    const Value* v = Find(id);
    if (v == nullptr) {
      throw ValidationError("missing example id '" + std::string(id) + "'");
    }
    return *v;
  }

 private:
  std::vector<std::string> ids_;
  std::vector<Value> values_;
  std::unordered_map<std::string, size_t, StringHash, std::equal_to<>> index_;
};

class GroundTruth {
 public:
  explicit GroundTruth(DatasetKind kind) : kind_(kind) {}

  void Add(std::string id, Reference ref) {
    ValidateReference(ref, kind_);
    table_.Add(std::move(id), std::move(ref));
  }

  const DatasetKind& kind() const { return kind_; }
  size_t size() const { return table_.size(); }
  const std::vector<std::string>& ids() const { return table_.ids(); }
  const std::vector<Reference>& references() const { return table_.values(); }
  const Reference& At(std::string_view id) const { return table_.At(id); }

  int LabelAt(size_t i) const { return std::get<int>(table_.values()[i]); }
  const std::string& TextAt(size_t i) const {
    return std::get<std::string>(table_.values()[i]);
  }

 private:
  DatasetKind kind_;
  ExampleTable<Reference> table_;
};

// One model's outputs over a dataset.
class PredictionSet {
 public:
  PredictionSet(std::string model, DatasetKind kind)
      : model_(std::move(model)), kind_(kind) {}

  void Add(std::string id, Output out) {
    ValidateOutput(out, kind_);
    table_.Add(std::move(id), std::move(out));
  }

  const std::string& model() const { return model_; }
  void set_model(std::string model) { model_ = std::move(model); }
  const DatasetKind& kind() const { return kind_; }
  size_t size() const { return table_.size(); }
  const std::vector<std::string>& ids() const { return table_.ids(); }
  const std::vector<Output>& outputs() const { return table_.values(); }
  const Output* Find(std::string_view id) const { return table_.Find(id); }
  const Output& At(std::string_view id) const { return table_.At(id); }

 private:
  std::string model_;
  DatasetKind kind_;
  ExampleTable<Output> table_;
};

// Throws unless `preds` shares the kind of `truth` and covers all its ids.
inline void CheckCoverage(const PredictionSet& preds,
                          const GroundTruth& truth) {
  if (preds.kind() != truth.kind()) {
    throw ValidationError("model '" + preds.model() + "' has kind " +
                          preds.kind().ToString() + ", ground truth has " +
                          truth.kind().ToString());
  }
  for (const std::string& id : truth.ids()) {
    if (preds.Find(id) == nullptr) {
      throw ValidationError("model '" + preds.model() +
                            "' has no output for example '" + id + "'");
    }
  }
}

// Outputs of `preds` in the ground truth's example order.
inline std::vector<const Output*> AlignOutputs(const PredictionSet& preds,
                                               const GroundTruth& truth) {
  CheckCoverage(preds, truth);
  std::vector<const Output*> aligned;
  aligned.reserve(truth.size());
  for (const std::string& id : truth.ids()) aligned.push_back(preds.Find(id));
  return aligned;
}

// Reconstructs labels by majority vote over at least three models. Decision
// values are hardened first; vote ties go to the lowest class index.
inline GroundTruth MajorityVoteTruth(std::span<const PredictionSet> preds) {
  if (preds.size() < 3) {
    throw ValidationError("majority vote needs at least 3 models, got " +
                          std::to_string(preds.size()));
  }
  const DatasetKind kind = preds[0].kind();
  if (!kind.categorical()) {
    throw ValidationError("majority vote is undefined for text outputs");
  }
  for (const PredictionSet& p : preds) {
    if (p.kind() != kind) {
      throw ValidationError("majority vote over mixed dataset kinds");
    }
  }
  GroundTruth truth(kind);
  std::vector<int> votes(kind.num_classes());
  for (const std::string& id : preds[0].ids()) {
    std::fill(votes.begin(), votes.end(), 0);
    for (const PredictionSet& p : preds) {
      const Output* out = p.Find(id);
      if (out == nullptr) {
        throw ValidationError("model '" + p.model() +
                              "' has no output for example '" + id + "'");
      }
      ++votes[HardLabel(*out, kind)];
    }
    const int winner = static_cast<int>(
        std::max_element(votes.begin(), votes.end()) - votes.begin());
    truth.Add(id, winner);
  }
  return truth;
}

// Number of pairwise comparisons produced by m models on n examples.
inline std::int64_t CountPairs(std::int64_t num_models,
                               std::int64_t num_examples) {
  if (num_models < 2) throw ValidationError("need at least 2 models");
  if (num_examples < 1) throw ValidationError("need at least 1 example");
  return num_examples * (num_models * (num_models - 1) / 2);
}

enum class Outcome : std::uint8_t { kLeft, kRight, kTie };

inline std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kLeft:
      return "left";
    case Outcome::kRight:
      return "right";
    case Outcome::kTie:
      return "tie";
  }
  return "?";
}

inline Outcome ParseOutcome(std::string_view s) {
  if (s == "left") return Outcome::kLeft;
  if (s == "right") return Outcome::kRight;
  if (s == "tie") return Outcome::kTie;
  throw ValidationError("unknown outcome '" + std::string(s) +
                        "' (expected left, right or tie)");
}

struct Comparison {
  std::string left;
  std::string right;
  Outcome outcome = Outcome::kTie;
  std::optional<std::string> example_id;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

// A compact list of comparisons. Model and example names are interned; the
// model table is in order of first appearance unless models are registered
// up front.
class ComparisonLog {
 public:
  static constexpr std::uint32_t kNoExample = 0xFFFFFFFFu;

  struct Record {
    std::uint32_t left;
    std::uint32_t right;
    std::uint32_t example;
    Outcome outcome;
    friend bool operator==(const Record&, const Record&) = default;
  };

  ComparisonLog() = default;
  explicit ComparisonLog(std::vector<std::string> models) {
    for (std::string& m : models) InternModel(m);
  }

  std::uint32_t InternModel(std::string_view name) {
    if (auto it = model_index_.find(name); it != model_index_.end()) {
      return it->second;
    }
    const auto idx = static_cast<std::uint32_t>(models_.size());
    models_.emplace_back(name);
    model_index_.emplace(models_.back(), idx);
    return idx;
  }

  std::uint32_t InternExample(std::string_view id) {
    if (auto it = example_index_.find(id); it != example_index_.end()) {
      return it->second;
    }
    const auto idx = static_cast<std::uint32_t>(examples_.size());
    examples_.emplace_back(id);
    example_index_.emplace(examples_.back(), idx);
    return idx;
  }

  void Add(const Comparison& c) {
    if (c.left == c.right) {
      throw ValidationError("self-comparison of model '" + c.left + "'");
    }
    const std::uint32_t left = InternModel(c.left);
    const std::uint32_t right = InternModel(c.right);
    const std::uint32_t example =
        c.example_id ? InternExample(*c.example_id) : kNoExample;
    records_.push_back({left, right, example, c.outcome});
  }

  void Add(std::uint32_t left, std::uint32_t right, Outcome outcome,
           std::uint32_t example = kNoExample) {
    if (left == right) {
      throw ValidationError("self-comparison of model '" + models_[left] +
                            "'");
    }
    records_.push_back({left, right, example, outcome});
  }

  // Empty copy sharing the model and example tables.
  ComparisonLog EmptyLike() const {
    ComparisonLog out;
    out.models_ = models_;
    out.model_index_ = model_index_;
    out.examples_ = examples_;
    out.example_index_ = example_index_;
    return out;
  }

  void Reserve(size_t n) { records_.reserve(n); }

  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::vector<std::string>& models() const { return models_; }
  const std::vector<std::string>& examples() const { return examples_; }
  const std::vector<Record>& records() const { return records_; }
  std::vector<Record>& mutable_records() { return records_; }

  Comparison At(size_t i) const {
    const Record& r = records_[i];
    Comparison c{models_[r.left], models_[r.right], r.outcome, std::nullopt};
    if (r.example != kNoExample) c.example_id = examples_[r.example];
    return c;
  }

 private:
  std::vector<std::string> models_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>>
      model_index_;
  std::vector<std::string> examples_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>>
      example_index_;
  std::vector<Record> records_;
};

}  // namespace rankbench

#endif  // RANKBENCH_DATA_HPP_
