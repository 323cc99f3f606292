#include <benchmark/benchmark.h>

#include "groupoidal/instances.hpp"
#include "groupoidal/morita.hpp"
#include "groupoidal/sections.hpp"

using namespace groupoidal;

namespace {

GroupAction swap_left(std::size_t n)
{
  std::vector<int> id(n), sw(n);
  for (std::size_t i = 0; i < n; ++i) {
    id[i] = static_cast<int>(i);
    sw[i] = static_cast<int>((i + n / 2) % n);
  }
  return pair_groupoid_action(cyclic_group(2), n, {id, sw}, Side::left);
}

GroupAction swap_right(std::size_t n)
{
  std::vector<int> id(n), sw(n);
  for (std::size_t i = 0; i < n; ++i) {
    id[i] = static_cast<int>(i);
    sw[i] = static_cast<int>(i ^ 1u);
  }
  return pair_groupoid_action(cyclic_group(2), n, {id, sw}, Side::right);
}

void BM_GroupoidEquivalence(benchmark::State& state)
{
  const auto inst = random_commuting_instance(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    const auto e = symmetric_groupoid_equivalence(inst.groupoid, inst.g, inst.h);
    benchmark::DoNotOptimize(verify_groupoid_equivalence(e));
  }
  state.SetLabel(inst.description);
}
BENCHMARK(BM_GroupoidEquivalence)->Arg(3)->Arg(17)->Arg(42);

void BM_BundleEquivalence(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = trivial_line_bundle(make_pair_groupoid(n));
  const auto g = lift_action(a, swap_left(n));
  const auto h = lift_action(a, swap_right(n));
  for (auto _ : state) {
    const auto e = symmetric_action_equivalence(g, h);
    benchmark::DoNotOptimize(verify_bundle_equivalence(e));
  }
}
BENCHMARK(BM_BundleEquivalence)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SymmetricMorita(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = trivial_line_bundle(make_pair_groupoid(n));
  const auto g = lift_action(a, swap_left(n));
  const auto h = lift_action(a, swap_right(n));
  for (auto _ : state)
    benchmark::DoNotOptimize(symmetric_morita(g, h));
}
BENCHMARK(BM_SymmetricMorita)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_StarStructure(benchmark::State& state)
{
  const auto a = section_algebra(trivial_line_bundle(make_pair_groupoid(static_cast<std::size_t>(state.range(0)))));
  for (auto _ : state)
    benchmark::DoNotOptimize(star_structure_report(a));
  state.SetLabel("dim " + std::to_string(a.dim()));
}
BENCHMARK(BM_StarStructure)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_CoactionDemo(benchmark::State& state)
{
  const auto g = cyclic_group(static_cast<std::size_t>(state.range(0)));
  const auto b = trivial_line_bundle(g.groupoid());
  for (auto _ : state)
    benchmark::DoNotOptimize(coaction_demo(b));
}
BENCHMARK(BM_CoactionDemo)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Convolve(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto b = matrix_bundle(make_pair_groupoid(n), std::vector<int>(n, 2));
  const Vector f = Vector::Random(b.total_dim()), g = Vector::Random(b.total_dim());
  for (auto _ : state)
    benchmark::DoNotOptimize(convolve(b, f, g));
}
BENCHMARK(BM_Convolve)->Arg(4)->Arg(8)->Arg(16);

} // namespace

BENCHMARK_MAIN();
