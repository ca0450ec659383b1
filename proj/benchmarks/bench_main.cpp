#include "zft/apoly.hpp"
#include "zft/nz.hpp"
#include "zft/oracle.hpp"
#include <benchmark/benchmark.h>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

zft::Triangulation fixture(const char* name) { return zft::parse_triangulation(slurp(name)); }

zft::Poly power(zft::Poly base, int e) {
    zft::Poly acc(base.ring);
    acc.add_term(zft::Mono(base.ring->size(), 0), 1);
    for (int i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

}  // namespace

static void BM_Parse(benchmark::State& state, const char* name) {
    std::string text = slurp(name);
    for (auto _ : state) benchmark::DoNotOptimize(zft::parse_triangulation(text));
}
BENCHMARK_CAPTURE(BM_Parse, trefoil, "trefoil.zft");
BENCHMARK_CAPTURE(BM_Parse, knot_5_2, "5_2.zft");

// dense bivariate resultant, the inner loop of the elimination stage
static void BM_Resultant(benchmark::State& state) {
    auto ring = std::make_shared<zft::Ring>(std::vector<std::string>{"x", "y"});
    zft::Poly x = zft::Poly::variable(ring, 0, 1), y = zft::Poly::variable(ring, 1, 1);
    zft::Poly one(ring);
    one.add_term(zft::Mono(2, 0), 1);
    zft::Poly p = power(x + y + y + one, 5);
    zft::Poly q = power(x + x + x - y + one + one, 4) + x * y;
    for (auto _ : state) benchmark::DoNotOptimize(zft::resultant(p, q, 0));
}
BENCHMARK(BM_Resultant)->Unit(benchmark::kMillisecond);

static void BM_GluingMatrices(benchmark::State& state, const char* name) {
    auto tri = fixture(name);
    for (auto _ : state) benchmark::DoNotOptimize(zft::gluing_matrices(tri));
}
BENCHMARK_CAPTURE(BM_GluingMatrices, knot_5_2, "5_2.zft");

static void BM_Reduce(benchmark::State& state, const char* name) {
    auto tri = fixture(name);
    for (auto _ : state) benchmark::DoNotOptimize(zft::reduce_state_integral(tri));
}
BENCHMARK_CAPTURE(BM_Reduce, trefoil, "trefoil.zft")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Reduce, fig8, "4_1.zft")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Reduce, knot_5_2, "5_2.zft")->Unit(benchmark::kMillisecond);

static void BM_EnumerateReductions(benchmark::State& state, const char* name) {
    auto tri = fixture(name);
    for (auto _ : state) benchmark::DoNotOptimize(zft::enumerate_reductions(tri));
}
BENCHMARK_CAPTURE(BM_EnumerateReductions, knot_5_2, "5_2.zft")->Unit(benchmark::kMillisecond);

static void BM_APoly(benchmark::State& state, const char* name) {
    auto tri = fixture(name);
    for (auto _ : state) benchmark::DoNotOptimize(zft::apoly_factor(tri));
}
BENCHMARK_CAPTURE(BM_APoly, trefoil, "trefoil.zft")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_APoly, fig8, "4_1.zft")->Unit(benchmark::kMillisecond);
// the three-tetrahedron eliminant runs for seconds; one timed pass is enough
BENCHMARK_CAPTURE(BM_APoly, knot_5_2, "5_2.zft")
    ->Iterations(1)
    ->Unit(benchmark::kSecond);

static void BM_Oracle(benchmark::State& state, const char* name) {
    auto tri = fixture(name);
    auto rr = zft::reduce_state_integral(tri);
    for (auto _ : state)
        benchmark::DoNotOptimize(zft::run_oracle(tri, rr, 9, (int)state.range(0)));
}
BENCHMARK_CAPTURE(BM_Oracle, trefoil, "trefoil.zft")->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Oracle, knot_5_2, "5_2.zft")->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
