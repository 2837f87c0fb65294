/*
 *  Copyright (C) 2026  The dlrc Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <string>

#include "dlrc/abox_closure.hpp"
#include "dlrc/oracle.hpp"
#include "dlrc/rational_closure.hpp"

namespace dlrc {
namespace {

KnowledgeBase dataKb(const std::string& name) {
  return parseKB(readFile(std::string(DLRC_DATA_DIR) + "/" + name));
}

// A_{i+1} <= A_i with alternating defaults on F, so every A_i sits one rank
// above A_{i-1}.
KnowledgeBase exceptionChain(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) {
    const std::string a = "A" + std::to_string(i);
    if (i > 0) text += a + " <= A" + std::to_string(i - 1) + "\n";
    text += "T(" + a + ") <= " + (i % 2 ? "not F" : "F") + "\n";
  }
  return parseKB(text);
}

void BM_RankTableVip(benchmark::State& state) {
  const KnowledgeBase kb = dataKb("vip_tbox.dkb");
  for (auto _ : state) {
    RationalClosure rc(kb);
    benchmark::DoNotOptimize(rc.table().fixpointIndex);
  }
}
BENCHMARK(BM_RankTableVip);

void BM_RankTableChain(benchmark::State& state) {
  const KnowledgeBase kb = exceptionChain(static_cast<int>(state.range(0)));
  std::uint64_t calls = 0;
  for (auto _ : state) {
    RationalClosure rc(kb);
    calls = rc.stats().entailment_calls;
    benchmark::DoNotOptimize(rc.table().fixpointIndex);
  }
  state.counters["entailment_calls"] = static_cast<double>(calls);
}
BENCHMARK(BM_RankTableChain)
    ->DenseRange(2, 10, 2)
    ->Unit(benchmark::kMillisecond);

void BM_TBoxQueryActor(benchmark::State& state) {
  const KnowledgeBase kb = dataKb("actor_comic.dkb");
  const auto q = std::get<SubsumptionQuery>(
      parseQuery("T(Actor and Comic) <= Charming ?"));
  for (auto _ : state) benchmark::DoNotOptimize(inClosureTBox(kb, q));
}
BENCHMARK(BM_TBoxQueryActor);

void BM_ABoxClosureVip(benchmark::State& state) {
  const KnowledgeBase kb = dataKb("vip.dkb");
  const auto q = std::get<AssertionQuery>(
      parseQuery("demi : atleast 2 HasMarried . Person ?"));
  for (auto _ : state) benchmark::DoNotOptimize(inClosureABox(kb, q));
}
BENCHMARK(BM_ABoxClosureVip)->Unit(benchmark::kMillisecond);

void BM_ABoxClosurePenguins(benchmark::State& state) {
  const KnowledgeBase kb = dataKb("penguins.dkb");
  const auto q = std::get<AssertionQuery>(parseQuery("tweety : not Fly ?"));
  for (auto _ : state) benchmark::DoNotOptimize(inClosureABox(kb, q));
}
BENCHMARK(BM_ABoxClosurePenguins)->Unit(benchmark::kMillisecond);

void BM_SatisfiableWithTyp(benchmark::State& state) {
  const KnowledgeBase kb = dataKb("penguins.dkb");
  for (auto _ : state) {
    benchmark::DoNotOptimize(satisfiableWithTyp(kb).satisfiable);
  }
}
BENCHMARK(BM_SatisfiableWithTyp)->Unit(benchmark::kMillisecond);

void BM_OracleActor(benchmark::State& state) {
  const KnowledgeBase kb = dataKb("actor.dkb");
  const auto q = std::get<SubsumptionQuery>(
      parseQuery("T(Actor and Comic) <= Charming ?"));
  const OracleBounds bounds{static_cast<int>(state.range(0)), 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimalCanonicalEntails(kb, q, bounds).verdict);
  }
}
BENCHMARK(BM_OracleActor)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_OracleVip(benchmark::State& state) {
  const KnowledgeBase kb = dataKb("vip.dkb");
  const auto q = std::get<AssertionQuery>(
      parseQuery("demi : atleast 2 HasMarried . Person ?"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimalCanonicalEntails(kb, q, {8, 3}).verdict);
  }
}
BENCHMARK(BM_OracleVip)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dlrc

// The packaged benchmark_main archive does not link with this toolchain.
BENCHMARK_MAIN();
