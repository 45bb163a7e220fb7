// benchmarks/backend_bench.cc

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


#include <random>

#include <benchmark/benchmark.h>

#include "sre/backend/plda.h"

namespace {

using sre::backend::Matrix;
using sre::backend::Vector;

sre::backend::PldaModel model(int k) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  Matrix a(k, k), b(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      a(i, j) = n(rng);
      b(i, j) = n(rng);
    }
  return {Vector::Zero(k), a * a.transpose() / k, b * b.transpose() / k + Matrix::Identity(k, k)};
}

void BM_PldaScore(benchmark::State &state) {
  const int k = static_cast<int>(state.range(0));
  sre::backend::PldaScorer scorer(model(k));
  std::vector<Vector> enroll{scorer.project(Vector::Random(k))};
  auto stats = scorer.stats(enroll);
  Vector test = scorer.project(Vector::Random(k));
  for (auto _ : state) benchmark::DoNotOptimize(scorer.llr(stats, test));
}
BENCHMARK(BM_PldaScore)->Arg(32)->Arg(128)->Arg(250);

void BM_PldaEm(benchmark::State &state) {
  const int k = 16, speakers = 200, per = 8;
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n;
  Matrix rows(speakers * per, k);
  std::map<std::string, std::vector<std::size_t>> groups;
  for (int s = 0; s < speakers; ++s) {
    Vector y(k);
    for (int j = 0; j < k; ++j) y(j) = n(rng);
    for (int i = 0; i < per; ++i) {
      for (int j = 0; j < k; ++j) rows(s * per + i, j) = y(j) + 0.5 * n(rng);
      groups["s" + std::to_string(s)].push_back(static_cast<std::size_t>(s * per + i));
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(sre::backend::fit_plda_em(rows, groups));
}
BENCHMARK(BM_PldaEm)->Unit(benchmark::kMillisecond);

}  // namespace
