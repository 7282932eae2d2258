#include <benchmark/benchmark.h>

#include "nsbox/measures.hpp"
#include "nsbox/sampling.hpp"

using namespace nsbox;

namespace {

const Setting kS2222(2, 2, 2, 2);
const Setting kS3322(3, 3, 2, 2);
const Setting kS2233(2, 2, 3, 3);

void BM_validate(benchmark::State& state) {
  const Behaviour pr = pr_box(kS2233, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(Behaviour::validated(pr.setting(), pr.table()));
}
BENCHMARK(BM_validate);

void BM_vertex_enumeration_3322(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(VertexSet::make(kS3322));
}
BENCHMARK(BM_vertex_enumeration_3322);

void BM_membership_pr_2222(benchmark::State& state) {
  const VertexSet vs = VertexSet::make(kS2222);
  const Behaviour pr = pr_box(kS2222);
  for (auto _ : state) benchmark::DoNotOptimize(is_local(pr, vs));
}
BENCHMARK(BM_membership_pr_2222);

void BM_membership_mixture_3322(benchmark::State& state) {
  const VertexSet vs = VertexSet::make(kS3322);
  Sampler sampler(5);
  const Behaviour p = sampler.ns_mixture(vs, pr_family_embeddings(kS3322));
  for (auto _ : state) benchmark::DoNotOptimize(is_local(p, vs));
}
BENCHMARK(BM_membership_mixture_3322);

void BM_wiring_enumeration_2222(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_wirings(kS2222));
}
BENCHMARK(BM_wiring_enumeration_2222);

void BM_compare_pr_isotropic(benchmark::State& state) {
  const VertexSet vs = VertexSet::make(kS2222);
  const auto wirings = enumerate_wirings(kS2222);
  const Behaviour pr = pr_box(kS2222);
  const Behaviour target =
      mix({{make_rational(1, 4), pr}, {make_rational(3, 4), uniform_behaviour(kS2222)}});
  for (auto _ : state) benchmark::DoNotOptimize(compare(pr, target, vs, wirings));
}
BENCHMARK(BM_compare_pr_isotropic);

void BM_detector_membership_probe(benchmark::State& state) {
  const VertexSet enlarged = VertexSet::make(kS2233);
  const Behaviour pr = pr_box(kS2222);
  const Rational eta = make_rational(2, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(is_local(detector_model(pr, eta), enlarged));
}
BENCHMARK(BM_detector_membership_probe);

void BM_comm_cost_avg_pr(benchmark::State& state) {
  const Behaviour pr = pr_box(kS2222);
  for (auto _ : state) benchmark::DoNotOptimize(comm_cost_avg(pr));
}
BENCHMARK(BM_comm_cost_avg_pr);

void BM_rel_entropy_pr(benchmark::State& state) {
  const VertexSet vs = VertexSet::make(kS2222);
  const Behaviour pr = pr_box(kS2222);
  for (auto _ : state) benchmark::DoNotOptimize(relative_entropy_nl(pr, vs));
}
BENCHMARK(BM_rel_entropy_pr);

void BM_bell_value_relabelings_2233(benchmark::State& state) {
  const Behaviour pr3 = pr_box(kS2233, 3);
  const BellFunctional f = chsh_functional(kS2233);
  for (auto _ : state)
    benchmark::DoNotOptimize(bell_value(pr3, f, BellMode::relabelings));
}
BENCHMARK(BM_bell_value_relabelings_2233);

}  // namespace

BENCHMARK_MAIN();
