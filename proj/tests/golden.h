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

#ifndef TAFRAG_TESTS_GOLDEN_H_
#define TAFRAG_TESTS_GOLDEN_H_

#include <cstdlib>
#include <filesystem>
#include <string>

#include "tafrag/report.h"

namespace tafrag::testing {

inline std::string GoldenPath(const std::string& name) {
  return std::string(TAFRAG_GOLDEN_DIR) + "/" + name;
}

// Returns true when `bytes` equals the frozen golden file. With
// TAFRAG_UPDATE_GOLDEN=1 in the environment the file is rewritten instead.
inline bool MatchesGolden(const std::string& name, const std::string& bytes) {
  const std::string path = GoldenPath(name);
  const char* update = std::getenv("TAFRAG_UPDATE_GOLDEN");
  if (update != nullptr && std::string(update) == "1") {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    WriteTextFile(path, bytes);
    return true;
  }
  if (!std::filesystem::exists(path)) return false;
  return ReadTextFile(path) == bytes;
}

}  // namespace tafrag::testing

#endif  // TAFRAG_TESTS_GOLDEN_H_
