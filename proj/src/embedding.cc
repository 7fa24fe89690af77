// Copyright 2026 The tafrag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tafrag/embedding.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tafrag {
namespace {

constexpr const char* kSchema = "emb/1";

using nlohmann::json;

const json& RequireField(const json& doc, const char* name,
                         const std::string& origin) {
  auto it = doc.find(name);
  if (it == doc.end()) {
    throw SchemaError(origin + ": missing field '" + name + "'");
  }
  return *it;
}

}  // namespace

EmbeddingVector ParseEmbedding(const std::string& json_text,
                               EmbeddingLoadMode mode,
                               const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(origin + ": not a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "schema" && key != "dim" && key != "normalized" &&
        key != "source" && key != "values") {
      throw SchemaError(origin + ": unexpected field '" + key + "'");
    }
  }
  const json& schema = RequireField(doc, "schema", origin);
  if (!schema.is_string() || schema.get<std::string>() != kSchema) {
    throw SchemaError(origin + ": schema must be \"emb/1\"");
  }
  const json& dim = RequireField(doc, "dim", origin);
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw SchemaError(origin + ": dim must be a positive integer");
  }
  const json& normalized = RequireField(doc, "normalized", origin);
  if (!normalized.is_boolean()) {
    throw SchemaError(origin + ": normalized must be a boolean");
  }
  const json& source = RequireField(doc, "source", origin);
  if (!source.is_string()) {
    throw SchemaError(origin + ": source must be a string");
  }
  const json& values = RequireField(doc, "values", origin);
  if (!values.is_array()) {
    throw SchemaError(origin + ": values must be an array");
  }
  if (values.size() != dim.get<std::size_t>()) {
    throw SchemaError(origin + ": dim " + std::to_string(dim.get<long long>()) +
                      " does not match " + std::to_string(values.size()) +
                      " values");
  }

  EmbeddingVector out;
  out.source = source.get<std::string>();
  out.values.resize(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_number()) {
      throw SchemaError(origin + ": values[" + std::to_string(i) +
                        "] is not a number");
    }
    const double v = values[i].get<double>();
    if (!std::isfinite(v)) {
      throw SchemaError(origin + ": values[" + std::to_string(i) +
                        "] is not finite");
    }
    out.values[static_cast<Eigen::Index>(i)] = v;
  }

  const double norm = out.values.norm();
  if (norm == 0.0) {
    throw DegenerateEmbeddingError(origin + ": zero embedding vector");
  }
  if (std::abs(norm - 1.0) > kUnitNormTolerance) {
    if (mode == EmbeddingLoadMode::kStrict) {
      throw ValidationError(origin + ": embedding norm " +
                            std::to_string(norm) + " is not unit");
    }
    out.values /= norm;
  }
  out.normalized = true;
  return out;
}

EmbeddingVector LoadEmbedding(const std::string& path,
                              EmbeddingLoadMode mode) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseEmbedding(ss.str(), mode, path);
}

std::string SerializeEmbedding(const EmbeddingVector& embedding) {
  json doc;
  doc["schema"] = kSchema;
  doc["dim"] = embedding.dim();
  doc["normalized"] = embedding.normalized;
  doc["source"] = embedding.source;
  json values = json::array();
  for (Eigen::Index i = 0; i < embedding.dim(); ++i) {
    values.push_back(embedding.values[i]);
  }
  doc["values"] = std::move(values);
  return doc.dump();
}

void WriteEmbedding(const std::string& path,
                    const EmbeddingVector& embedding) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << SerializeEmbedding(embedding) << '\n';
  if (!out) throw IoError(path + ": write failed");
}

std::string SidecarPathFor(const std::string& wav_path) {
  std::filesystem::path p(wav_path);
  p.replace_extension(".emb.json");
  return p.string();
}

}  // namespace tafrag
