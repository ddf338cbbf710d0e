// Serial reference kernels against their OpenMP variants.

#include <benchmark/benchmark.h>

#include <map>
#include <vector>

#include "lfem/assembly.hpp"
#include "lfem/kernels.hpp"

using namespace lfem;

namespace {

const Mesh& mesh_at(int refinements) {
    static std::vector<Mesh> cache;
    static const Mesh base = generate_cook_mesh(9);
    if (cache.empty()) cache.push_back(base);
    while (static_cast<int>(cache.size()) <= refinements) cache.push_back(uniform_refine(cache.back()));
    return cache[static_cast<std::size_t>(refinements)];
}

const SparseSymMatrix& matrix_at(int refinements) {
    static std::map<int, SparseSymMatrix> cache;
    auto it = cache.find(refinements);
    if (it == cache.end()) {
        const auto p = make_cook_problem(std::make_shared<const Mesh>(mesh_at(refinements)), 7.5e6, 0.375, 1.0 / 16,
                                         AlphaPolicy::locking_free());
        it = cache.emplace(refinements, assemble(p).matrix).first;
    }
    return it->second;
}

template <bool Parallel>
void BM_Spmv(benchmark::State& state) {
    const auto& a = matrix_at(static_cast<int>(state.range(0)));
    std::vector<double> x(a.size(), 1.0), y(a.size());
    for (auto _ : state) {
        if (Parallel) kernels::spmv_omp(a, x, y);
        else kernels::spmv_serial(a, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.counters["rows"] = static_cast<double>(a.size());
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.nnz()));
}

template <bool Parallel>
void BM_ElementMatrices(benchmark::State& state) {
    const auto& m = mesh_at(static_cast<int>(state.range(0)));
    const std::vector<double> mu(m.num_triangles(), 0.375), lam(m.num_triangles(), 28.4);
    std::vector<ElementMatrix> out(m.num_triangles());
    for (auto _ : state) {
        if (Parallel) kernels::element_matrices_omp(m, mu, lam, out);
        else kernels::element_matrices_serial(m, mu, lam, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.num_triangles()));
}

template <bool Parallel>
void BM_ElementLoads(benchmark::State& state) {
    const auto& m = mesh_at(static_cast<int>(state.range(0)));
    auto f = [](const Point& x) { return example1_body_force(x, 1e4, 1.0); };
    std::vector<ElementVector> out(m.num_triangles());
    for (auto _ : state) {
        if (Parallel) kernels::element_loads_omp(m, f, quadrature::degree4_rule(), out);
        else kernels::element_loads_serial(m, f, quadrature::degree4_rule(), out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.num_triangles()));
}

}  // namespace

BENCHMARK(BM_Spmv<false>)->Name("spmv/serial")->DenseRange(1, 4)->UseRealTime();
BENCHMARK(BM_Spmv<true>)->Name("spmv/omp")->DenseRange(1, 4)->UseRealTime();
BENCHMARK(BM_ElementMatrices<false>)->Name("element_matrices/serial")->DenseRange(1, 4)->UseRealTime();
BENCHMARK(BM_ElementMatrices<true>)->Name("element_matrices/omp")->DenseRange(1, 4)->UseRealTime();
BENCHMARK(BM_ElementLoads<false>)->Name("element_loads/serial")->DenseRange(1, 4)->UseRealTime();
BENCHMARK(BM_ElementLoads<true>)->Name("element_loads/omp")->DenseRange(1, 4)->UseRealTime();

BENCHMARK_MAIN();
