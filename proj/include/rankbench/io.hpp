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

// File formats.
//
// Predictions JSONL: one object per line with "id" and exactly one of
// "scores" (array of finite numbers), "label" (integer) or "text" (string).
// Ground-truth JSONL: "id" plus "label" or "text".
// Comparisons CSV: header "left,right,outcome" with an optional trailing
// "example_id" column; outcome is one of left, right, tie.

#ifndef RANKBENCH_IO_HPP_
#define RANKBENCH_IO_HPP_

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rankbench/data.hpp"
#include "rankbench/error.hpp"

namespace rankbench::io {

namespace internal {

inline std::string LinePrefix(size_t line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

inline nlohmann::json ParseLine(const std::string& line, size_t line_no) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(LinePrefix(line_no) + "malformed JSON (" + e.what() +
                          ")");
  }
  if (!j.is_object()) {
    throw ValidationError(LinePrefix(line_no) + "expected a JSON object");
  }
  if (!j.contains("id") || !j["id"].is_string()) {
    throw ValidationError(LinePrefix(line_no) + "missing string field 'id'");
  }
  return j;
}

inline bool IsBlank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

inline std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  return in;
}

inline Output ParseOutput(const nlohmann::json& j, const DatasetKind& kind,
                          size_t line_no) {
  const int present = static_cast<int>(j.contains("scores")) +
                      static_cast<int>(j.contains("label")) +
                      static_cast<int>(j.contains("text"));
  if (present != 1) {
    throw ValidationError(LinePrefix(line_no) +
                          "expected exactly one of 'scores', 'label', 'text'");
  }
  if (j.contains("scores")) {
    const nlohmann::json& s = j["scores"];
    Scores scores;
    if (s.is_number()) {
      scores.values.push_back(s.get<double>());
    } else if (s.is_array()) {
      for (const auto& v : s) {
        if (!v.is_number()) {
          throw ValidationError(LinePrefix(line_no) +
                                "'scores' must contain only numbers");
        }
        scores.values.push_back(v.get<double>());
      }
    } else {
      throw ValidationError(LinePrefix(line_no) +
                            "'scores' must be a number array");
    }
    // A binary dataset may list both class scores; keep the positive one.
    if (kind.type() == TaskType::kBinary && scores.values.size() == 2) {
      scores.values = {scores.values[1]};
    }
    return scores;
  }
  if (j.contains("label")) {
    if (!j["label"].is_number_integer()) {
      throw ValidationError(LinePrefix(line_no) + "'label' must be an integer");
    }
    return Label{j["label"].get<int>()};
  }
  if (!j["text"].is_string()) {
    throw ValidationError(LinePrefix(line_no) + "'text' must be a string");
  }
  return j["text"].get<std::string>();
}

}  // namespace internal

inline PredictionSet ReadPredictions(std::istream& in, std::string model,
                                     const DatasetKind& kind) {
  PredictionSet preds(std::move(model), kind);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::IsBlank(line)) continue;
    const nlohmann::json j = internal::ParseLine(line, line_no);
    Output out = internal::ParseOutput(j, kind, line_no);
    try {
      preds.Add(j["id"].get<std::string>(), std::move(out));
    } catch (const ValidationError& e) {
      throw ValidationError(internal::LinePrefix(line_no) + e.what());
    }
  }
  return preds;
}

// Loads a predictions file. The model name defaults to the file stem.
inline PredictionSet LoadPredictions(const std::filesystem::path& path,
                                     const DatasetKind& kind,
                                     std::string model = "") {
  std::ifstream in = internal::OpenInput(path);
  if (model.empty()) model = path.stem().string();
  try {
    return ReadPredictions(in, std::move(model), kind);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

inline GroundTruth ReadGroundTruth(std::istream& in, const DatasetKind& kind) {
  GroundTruth truth(kind);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::IsBlank(line)) continue;
    const nlohmann::json j = internal::ParseLine(line, line_no);
    const bool has_label = j.contains("label");
    const bool has_text = j.contains("text");
    if (has_label == has_text) {
      throw ValidationError(internal::LinePrefix(line_no) +
                            "expected exactly one of 'label', 'text'");
    }
    Reference ref;
    if (has_label) {
      if (!j["label"].is_number_integer()) {
        throw ValidationError(internal::LinePrefix(line_no) +
                              "'label' must be an integer");
      }
      ref = j["label"].get<int>();
    } else {
      if (!j["text"].is_string()) {
        throw ValidationError(internal::LinePrefix(line_no) +
                              "'text' must be a string");
      }
      ref = j["text"].get<std::string>();
    }
    try {
      truth.Add(j["id"].get<std::string>(), std::move(ref));
    } catch (const ValidationError& e) {
      throw ValidationError(internal::LinePrefix(line_no) + e.what());
    }
  }
  return truth;
}

inline GroundTruth LoadGroundTruth(const std::filesystem::path& path,
                                   const DatasetKind& kind) {
  std::ifstream in = internal::OpenInput(path);
  try {
    return ReadGroundTruth(in, kind);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

inline void WritePredictions(std::ostream& out, const PredictionSet& preds) {
  for (size_t i = 0; i < preds.size(); ++i) {
    nlohmann::ordered_json j;
    j["id"] = preds.ids()[i];
    const Output& o = preds.outputs()[i];
    if (const auto* s = std::get_if<Scores>(&o)) {
      j["scores"] = s->values;
    } else if (const auto* l = std::get_if<Label>(&o)) {
      j["label"] = l->value;
    } else {
      j["text"] = std::get<std::string>(o);
    }
    out << j.dump() << '\n';
  }
}

inline void WriteGroundTruth(std::ostream& out, const GroundTruth& truth) {
  for (size_t i = 0; i < truth.size(); ++i) {
    nlohmann::ordered_json j;
    j["id"] = truth.ids()[i];
    const Reference& r = truth.references()[i];
    if (const auto* l = std::get_if<int>(&r)) {
      j["label"] = *l;
    } else {
      j["text"] = std::get<std::string>(r);
    }
    out << j.dump() << '\n';
  }
}

// Minimal RFC 4180 field splitting: commas, double-quoted fields, "" escapes.
inline std::vector<std::string> SplitCsvLine(std::string_view line,
                                             size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) {
    throw ValidationError(internal::LinePrefix(line_no) +
                          "unterminated quoted field");
  }
  fields.push_back(std::move(field));
  return fields;
}

inline std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline ComparisonLog ReadComparisons(std::istream& in) {
  std::string line;
  size_t line_no = 0;
  ComparisonLog log;
  bool header_seen = false;
  bool has_example = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitCsvLine(line, line_no);
    if (!header_seen) {
      if (fields.size() < 3 || fields[0] != "left" || fields[1] != "right" ||
          fields[2] != "outcome" ||
          (fields.size() == 4 && fields[3] != "example_id") ||
          fields.size() > 4) {
        throw ValidationError(
            internal::LinePrefix(line_no) +
            "expected header 'left,right,outcome[,example_id]'");
      }
      has_example = fields.size() == 4;
      header_seen = true;
      continue;
    }
    const size_t expected = has_example ? 4 : 3;
    if (fields.size() != expected && !(has_example && fields.size() == 3)) {
      throw ValidationError(internal::LinePrefix(line_no) + "expected " +
                            std::to_string(expected) + " fields, got " +
                            std::to_string(fields.size()));
    }
    Comparison c;
    c.left = std::move(fields[0]);
    c.right = std::move(fields[1]);
    try {
      c.outcome = ParseOutcome(fields[2]);
      if (has_example && fields.size() == 4 && !fields[3].empty()) {
        c.example_id = std::move(fields[3]);
      }
      log.Add(c);
    } catch (const ValidationError& e) {
      throw ValidationError(internal::LinePrefix(line_no) + e.what());
    }
  }
  if (!header_seen) throw ValidationError("empty comparisons file");
  return log;
}

inline ComparisonLog LoadComparisons(const std::filesystem::path& path) {
  std::ifstream in = internal::OpenInput(path);
  try {
    return ReadComparisons(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

// Writes the example_id column only when some record carries one.
inline void WriteComparisons(std::ostream& out, const ComparisonLog& log) {
  bool with_example = false;
  for (const auto& r : log.records()) {
    if (r.example != ComparisonLog::kNoExample) {
      with_example = true;
      break;
    }
  }
  out << (with_example ? "left,right,outcome,example_id\n"
                       : "left,right,outcome\n");
  for (const auto& r : log.records()) {
    out << CsvField(log.models()[r.left]) << ','
        << CsvField(log.models()[r.right]) << ',' << OutcomeName(r.outcome);
    if (with_example) {
      out << ',';
      if (r.example != ComparisonLog::kNoExample) {
        out << CsvField(log.examples()[r.example]);
      }
    }
    out << '\n';
  }
}

}  // namespace rankbench::io

#endif  // RANKBENCH_IO_HPP_
