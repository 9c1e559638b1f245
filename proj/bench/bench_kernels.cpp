// Serial reference vs OpenMP dense-layer kernels on the classifier's hidden
// layer shape (batch x 100 -> 100).

#include <benchmark/benchmark.h>

#include <vector>

#include "airmia/kernels.hpp"
#include "airmia/rng.hpp"

using namespace airmia;

namespace {

struct Buffers {
    kernels::DenseShape shape;
    std::vector<double> x, w, bias, z, dz, dw, db, dx;

    explicit Buffers(std::size_t batch, std::size_t width = 100) : shape{batch, width, width}
    {
        Engine rng = substream(42, "bench");
        auto fill = [&](std::vector<double>& v, std::size_t n) {
            v.resize(n);
            for (auto& e : v) e = uniform(rng, -1.0, 1.0);
        };
        fill(x, batch * width);
        fill(w, width * width);
        fill(bias, width);
        fill(dz, batch * width);
        z.assign(batch * width, 0.0);
        dw.assign(width * width, 0.0);
        db.assign(width, 0.0);
        dx.assign(batch * width, 0.0);
    }
};

template <bool Parallel>
void bm_forward(benchmark::State& state)
{
    Buffers b(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::dense_forward(b.shape, b.x, b.w, b.bias, b.z);
        } else {
            kernels::serial::dense_forward(b.shape, b.x, b.w, b.bias, b.z);
        }
        benchmark::DoNotOptimize(b.z.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void bm_backward(benchmark::State& state)
{
    Buffers b(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::dense_backward_params(b.shape, b.dz, b.x, b.dw, b.db);
            kernels::dense_backward_input(b.shape, b.dz, b.w, b.dx);
        } else {
            kernels::serial::dense_backward_params(b.shape, b.dz, b.x, b.dw, b.db);
            kernels::serial::dense_backward_input(b.shape, b.dz, b.w, b.dx);
        }
        benchmark::DoNotOptimize(b.dw.data());
        benchmark::DoNotOptimize(b.dx.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(bm_forward<false>)->Name("forward/serial")->Arg(64)->Arg(1024)->Arg(10000);
BENCHMARK(bm_forward<true>)->Name("forward/openmp")->Arg(64)->Arg(1024)->Arg(10000);
BENCHMARK(bm_backward<false>)->Name("backward/serial")->Arg(64)->Arg(1024)->Arg(10000);
BENCHMARK(bm_backward<true>)->Name("backward/openmp")->Arg(64)->Arg(1024)->Arg(10000);

BENCHMARK_MAIN();
