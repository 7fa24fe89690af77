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

#include "tafrag/manifest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tafrag/errors.h"

namespace tafrag {
namespace {

using nlohmann::json;

constexpr const char* kSchema = "manifest/1";

// Ids become file-name components and CSV cells.
void CheckId(const std::string& id, const std::string& what,
             const std::string& group_id) {
  if (id.empty()) {
    throw ValidationError("group '" + group_id + "': empty " + what);
  }
  if (id.find_first_of("/\\,\"\n\r") != std::string::npos ||
      id.find("__") != std::string::npos) {
    throw ValidationError("group '" + group_id + "': " + what + " '" + id +
                          "' contains a reserved character sequence");
  }
}

std::string RequireString(const json& obj, const char* key,
                          const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ValidationError(where + ": field '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

std::string_view CategoryName(Category category) {
  switch (category) {
    case Category::kMls:
      return "MLS";
    case Category::kIs:
      return "IS";
    case Category::kSr:
      return "SR";
  }
  return "?";
}

Category ParseCategory(std::string_view name) {
  if (name == "MLS") return Category::kMls;
  if (name == "IS") return Category::kIs;
  if (name == "SR") return Category::kSr;
  throw ValidationError("unknown category '" + std::string(name) + "'");
}

void ValidateGroups(const std::vector<PerturbationGroup>& groups) {
  std::set<std::string> group_ids;
  for (const PerturbationGroup& g : groups) {
    CheckId(g.id, "group id", g.id);
    if (!group_ids.insert(g.id).second) {
      throw ValidationError("group '" + g.id + "': duplicate group id");
    }
    const std::size_t expected =
        g.category == Category::kIs ? kIntensityLevels : 2;
    if (g.variants.size() != expected) {
      throw ValidationError("group '" + g.id + "': " +
                            std::string(CategoryName(g.category)) +
                            " groups need " + std::to_string(expected) +
                            " variants, found " +
                            std::to_string(g.variants.size()));
    }
    std::set<std::string> variant_ids;
    for (std::size_t k = 0; k < g.variants.size(); ++k) {
      const PromptVariant& v = g.variants[k];
      CheckId(v.id, "variant id", g.id);
      if (!variant_ids.insert(v.id).second) {
        throw ValidationError("group '" + g.id + "': duplicate variant id '" +
                              v.id + "'");
      }
      if (v.text.empty()) {
        throw ValidationError("group '" + g.id + "': variant '" + v.id +
                              "' has empty text");
      }
      if (g.category == Category::kIs) {
        if (!v.level) {
          throw ValidationError("group '" + g.id + "': variant '" + v.id +
                                "' is missing its intensity level");
        }
        if (*v.level != static_cast<int>(k) + 1) {
          throw ValidationError(
              "group '" + g.id + "': intensity levels must be 1..4 in "
              "strictly increasing order (variant '" + v.id + "' has level " +
              std::to_string(*v.level) + ")");
        }
      } else if (v.level) {
        throw ValidationError("group '" + g.id + "': variant '" + v.id +
                              "' has a level outside an IS group");
      }
    }
  }
}

Manifest ParseManifest(const std::string& json_text,
                       const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(origin + ": not a JSON object");
  auto schema = doc.find("schema");
  if (schema == doc.end() || !schema->is_string() ||
      schema->get<std::string>() != kSchema) {
    throw SchemaError(origin + ": schema must be \"manifest/1\"");
  }
  auto groups_it = doc.find("groups");
  if (groups_it == doc.end() || !groups_it->is_array()) {
    throw SchemaError(origin + ": groups must be an array");
  }

  Manifest manifest;
  for (std::size_t gi = 0; gi < groups_it->size(); ++gi) {
    const json& g = (*groups_it)[gi];
    const std::string where = origin + ": groups[" + std::to_string(gi) + "]";
    if (!g.is_object()) throw ValidationError(where + ": not an object");
    PerturbationGroup group;
    group.id = RequireString(g, "id", where);
    const std::string gwhere = "group '" + group.id + "'";
    group.category = ParseCategory(RequireString(g, "category", gwhere));
    auto tmpl = g.find("template");
    if (tmpl != g.end() && !tmpl->is_null()) {
      if (!tmpl->is_string()) {
        throw ValidationError(gwhere + ": template must be a string");
      }
      group.template_text = tmpl->get<std::string>();
    }
    auto variants = g.find("variants");
    if (variants == g.end() || !variants->is_array()) {
      throw ValidationError(gwhere + ": variants must be an array");
    }
    for (const json& v : *variants) {
      if (!v.is_object()) {
        throw ValidationError(gwhere + ": variant is not an object");
      }
      PromptVariant variant;
      variant.id = RequireString(v, "id", gwhere);
      variant.text = RequireString(v, "text", gwhere);
      auto level = v.find("level");
      if (level != v.end() && !level->is_null()) {
        if (!level->is_number_integer()) {
          throw ValidationError(gwhere + ": variant '" + variant.id +
                                "' level must be an integer or null");
        }
        variant.level = level->get<int>();
      }
      group.variants.push_back(std::move(variant));
    }
    manifest.groups.push_back(std::move(group));
  }
  ValidateGroups(manifest.groups);
  if (manifest.groups.empty()) {
    manifest.warnings.push_back(origin + ": manifest contains no groups");
  }
  return manifest;
}

Manifest LoadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseManifest(ss.str(), path);
}

std::string SerializeManifest(const std::vector<PerturbationGroup>& groups) {
  json doc;
  doc["schema"] = kSchema;
  json arr = json::array();
  for (const PerturbationGroup& g : groups) {
    json jg;
    jg["id"] = g.id;
    jg["category"] = std::string(CategoryName(g.category));
    jg["template"] = g.template_text;
    json variants = json::array();
    for (const PromptVariant& v : g.variants) {
      json jv;
      jv["id"] = v.id;
      jv["text"] = v.text;
      jv["level"] = v.level ? json(*v.level) : json(nullptr);
      variants.push_back(std::move(jv));
    }
    jg["variants"] = std::move(variants);
    arr.push_back(std::move(jg));
  }
  doc["groups"] = std::move(arr);
  return doc.dump(2);
}

std::vector<ComparisonPair> EnumeratePairs(
    const std::vector<PerturbationGroup>& groups) {
  std::vector<ComparisonPair> pairs;
  for (const PerturbationGroup& g : groups) {
    for (std::size_t k = 0; k + 1 < g.variants.size(); ++k) {
      pairs.push_back(
          {g.id, g.variants[k].id, g.variants[k + 1].id, g.category});
    }
  }
  return pairs;
}

std::string CorpusWavPath(const std::string& root, const std::string& model,
                          long long seed, const std::string& group_id,
                          const std::string& variant_id) {
  return (std::filesystem::path(root) / model / std::to_string(seed) /
          (group_id + "__" + variant_id + ".wav"))
      .string();
}

std::size_t CorpusFileCount(const std::vector<PerturbationGroup>& groups) {
  std::size_t count = 0;
  for (const PerturbationGroup& g : groups) count += g.variants.size();
  return count;
}

}  // namespace tafrag
