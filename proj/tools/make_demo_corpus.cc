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

// Writes the deterministic demonstration corpus (mock tone backend plus
// synthetic embedding sidecars) for one or more (model, seed) cells.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tafrag/democorpus.h"
#include "tafrag/errors.h"
#include "tafrag/manifest.h"

#ifndef TAFRAG_DEFAULT_MANIFEST
#define TAFRAG_DEFAULT_MANIFEST "data/default_manifest.json"
#endif

int main(int argc, char** argv) {
  CLI::App app{"Generate the bundled synthetic tafrag corpus"};
  std::string manifest_path = TAFRAG_DEFAULT_MANIFEST;
  std::string root;
  std::vector<std::string> models = {"mock-small"};
  std::vector<long long> seeds = {0};
  std::optional<double> cos_center;
  double duration = 2.0;
  app.add_option("--manifest", manifest_path, "manifest JSON");
  app.add_option("--out", root, "corpus root")->required();
  app.add_option("--model", models, "model label (repeatable)");
  app.add_option("--seed", seeds, "seed (repeatable)");
  app.add_option("--cos-center", cos_center,
                 "target mean cosine (default: per-seed schedule)");
  app.add_option("--duration", duration, "clip length in seconds");
  CLI11_PARSE(app, argc, argv);

  try {
    const tafrag::Manifest manifest = tafrag::LoadManifest(manifest_path);
    for (const std::string& model : models) {
      for (long long seed : seeds) {
        tafrag::DemoCorpusOptions options;
        options.model = model;
        options.seed = seed;
        options.duration_s = duration;
        options.cosine_center =
            cos_center.value_or(tafrag::DefaultCosineCenter(seed));
        const std::size_t n =
            tafrag::WriteDemoCorpus(manifest.groups, root, options);
        std::cerr << model << "/" << seed << ": " << n << " files\n";
      }
    }
  } catch (const tafrag::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
