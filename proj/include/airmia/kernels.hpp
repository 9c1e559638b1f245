#pragma once

// Dense-layer kernels. Each routine exists twice: a plain serial reference in
// kernels::serial and an OpenMP version in kernels. The parallel versions split
// work over independent output rows and keep every per-element summation in
// the serial order, so both produce bit-identical results.
//
// Layout is row-major throughout: inputs are batch x in, weights out x in,
// pre-activations batch x out.

#include <cstddef>
#include <span>

namespace airmia::kernels {

struct DenseShape {
    std::size_t batch;
    std::size_t in;
    std::size_t out;
};

// Fixed-order dot product shared by both variants.
double dot(std::span<const double> a, std::span<const double> b) noexcept;

// z[b][o] = bias[o] + sum_k x[b][k] * w[o][k]
void dense_forward(DenseShape s, std::span<const double> x, std::span<const double> w,
                   std::span<const double> bias, std::span<double> z);

// dw[o][k] += sum_b dz[b][o] * x[b][k],  db[o] += sum_b dz[b][o]
void dense_backward_params(DenseShape s, std::span<const double> dz, std::span<const double> x,
                           std::span<double> dw, std::span<double> db);

// dx[b][k] = sum_o dz[b][o] * w[o][k]
void dense_backward_input(DenseShape s, std::span<const double> dz, std::span<const double> w,
                          std::span<double> dx);

// Number of threads the parallel kernels will use (1 without OpenMP).
int thread_count() noexcept;

namespace serial {

void dense_forward(DenseShape s, std::span<const double> x, std::span<const double> w,
                   std::span<const double> bias, std::span<double> z);
void dense_backward_params(DenseShape s, std::span<const double> dz, std::span<const double> x,
                           std::span<double> dw, std::span<double> db);
void dense_backward_input(DenseShape s, std::span<const double> dz, std::span<const double> w,
                          std::span<double> dx);

}  // namespace serial

}  // namespace airmia::kernels
