// benchmarks/metrics_bench.cc

// Copyright 2026  The sre-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "sre/det.h"
#include "sre/synth.h"

namespace {

struct Data {
  sre::TrialKey key;
  sre::ScoreSet scores;
};

Data make(std::size_t speakers) {
  sre::synth::SynthConfig c;
  c.n_speakers = speakers;
  c.seed = 1;
  Data d;
  d.key = sre::synth::generate_key(c);
  d.scores = sre::synth::generate_scores(d.key, c, 1);
  return d;
}

void BM_MinCost(benchmark::State &state) {
  Data d = make(static_cast<std::size_t>(state.range(0)));
  auto schema = sre::PartitionSchema::for_track(sre::Track::kAudio);
  auto points = sre::default_operating_points();
  for (auto _ : state)
    benchmark::DoNotOptimize(sre::min_c_primary(d.scores, d.key, schema, points).min_c_primary);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(d.key.size()));
}
BENCHMARK(BM_MinCost)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_Bootstrap100(benchmark::State &state) {
  Data d = make(20);
  sre::BootstrapOptions o;
  o.n_replicates = 100;
  o.seed = 3;
  o.threads = 1;
  auto schema = sre::PartitionSchema::for_track(sre::Track::kAudio);
  for (auto _ : state) benchmark::DoNotOptimize(sre::bootstrap_ci(d.scores, d.key, schema, o));
}
BENCHMARK(BM_Bootstrap100)->Unit(benchmark::kMillisecond);

}  // namespace
