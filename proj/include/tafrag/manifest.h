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

#ifndef TAFRAG_MANIFEST_H_
#define TAFRAG_MANIFEST_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tafrag {

// MLS: minimal lexical substitution, IS: intensity shift, SR: structural
// rephrasing.
enum class Category { kMls, kIs, kSr };

inline constexpr Category kAllCategories[] = {Category::kMls, Category::kIs,
                                              Category::kSr};

std::string_view CategoryName(Category category);
// Throws ValidationError for anything but "MLS", "IS" or "SR".
Category ParseCategory(std::string_view name);

struct PromptVariant {
  std::string id;
  std::string text;
  std::optional<int> level;  // IS only, 1..4
};

struct PerturbationGroup {
  std::string id;
  Category category = Category::kMls;
  std::string template_text;
  std::vector<PromptVariant> variants;
};

struct ComparisonPair {
  std::string group_id;
  std::string variant_a;
  std::string variant_b;
  Category category = Category::kMls;

  bool operator==(const ComparisonPair&) const = default;
};

struct Manifest {
  std::vector<PerturbationGroup> groups;
  std::vector<std::string> warnings;
};

inline constexpr int kIntensityLevels = 4;

// Checks every group invariant; throws ValidationError naming the group.
void ValidateGroups(const std::vector<PerturbationGroup>& groups);

// Parses and validates a `manifest/1` document.
Manifest ParseManifest(const std::string& json_text,
                       const std::string& origin = "<memory>");
Manifest LoadManifest(const std::string& path);
std::string SerializeManifest(const std::vector<PerturbationGroup>& groups);

// One pair per MLS/SR group, three adjacent-level pairs per IS group, in
// group order then level order.
std::vector<ComparisonPair> EnumeratePairs(
    const std::vector<PerturbationGroup>& groups);

// `<root>/<model>/<seed>/<group_id>__<variant_id>.wav`
std::string CorpusWavPath(const std::string& root, const std::string& model,
                          long long seed, const std::string& group_id,
                          const std::string& variant_id);

// Number of distinct audio files a corpus needs per (model, seed).
std::size_t CorpusFileCount(const std::vector<PerturbationGroup>& groups);

}  // namespace tafrag

#endif  // TAFRAG_MANIFEST_H_
