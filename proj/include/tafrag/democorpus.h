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

#ifndef TAFRAG_DEMOCORPUS_H_
#define TAFRAG_DEMOCORPUS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tafrag/audio_io.h"
#include "tafrag/embedding.h"
#include "tafrag/manifest.h"

namespace tafrag {

// 64-bit FNV-1a; stable across platforms, used to key synthetic content.
std::uint64_t Fnv1a64(std::string_view text);

// Per-seed cosine centers for the bundled demonstration corpora. Their
// spread across seeds 0..5 is 8 percentage points.
double DefaultCosineCenter(long long seed);

struct DemoCorpusOptions {
  std::string model = "mock-small";
  long long seed = 0;
  double sample_rate = 16000.0;
  double duration_s = 2.0;
  int embedding_dim = 64;
  // Target mean cosine between compared variants; each group adds a fixed
  // offset in [-0.1, 0.1].
  double cosine_center = 0.62;
};

// Deterministic tone rendering of one prompt variant: a short arpeggiated
// phrase keyed by (group, seed) with a variant-dependent perturbation.
AudioBuffer SynthesizeVariant(const PerturbationGroup& group,
                              std::size_t variant_index,
                              const DemoCorpusOptions& options);

// Unit embeddings for all variants of a group such that every pair of
// variants has cosine similarity equal to the group's target.
std::vector<EmbeddingVector> SynthesizeGroupEmbeddings(
    const PerturbationGroup& group, const DemoCorpusOptions& options);

double GroupTargetCosine(const PerturbationGroup& group,
                         const DemoCorpusOptions& options);

// Writes `<root>/<model>/<seed>/<group>__<variant>.wav` plus `.emb.json`
// sidecars for every variant. Returns the number of WAV files written.
std::size_t WriteDemoCorpus(const std::vector<PerturbationGroup>& groups,
                            const std::string& root,
                            const DemoCorpusOptions& options);

}  // namespace tafrag

#endif  // TAFRAG_DEMOCORPUS_H_
