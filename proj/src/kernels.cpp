#include "airmia/kernels.hpp"

#include <cassert>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace airmia::kernels {

namespace {

// Row bodies shared by the serial and parallel drivers.

// wt is the transposed weight matrix (in x out), so the inner loop is a
// contiguous axpy over outputs. Each z[b][o] accumulates bias + x[b][0]*w[o][0]
// + x[b][1]*w[o][1] + ... in k order.
inline void forward_row(DenseShape s, const double* x, const double* wt, const double* bias, double* z,
                        std::size_t b)
{
    const double* xr = x + b * s.in;
    double* zr = z + b * s.out;
    for (std::size_t o = 0; o < s.out; ++o) zr[o] = bias[o];
    for (std::size_t k = 0; k < s.in; ++k) {
        const double xv = xr[k];
        if (xv == 0.0) continue;
        const double* wr = wt + k * s.out;
        for (std::size_t o = 0; o < s.out; ++o) zr[o] += xv * wr[o];
    }
}

std::vector<double> transpose(DenseShape s, std::span<const double> w)
{
    std::vector<double> wt(w.size());
    for (std::size_t o = 0; o < s.out; ++o) {
        for (std::size_t k = 0; k < s.in; ++k) wt[k * s.out + o] = w[o * s.in + k];
    }
    return wt;
}

inline void params_row(DenseShape s, const double* dz, const double* x, double* dw, double* db,
                       std::size_t o)
{
    double* dwr = dw + o * s.in;
    double bias_acc = db[o];
    for (std::size_t b = 0; b < s.batch; ++b) {
        const double g = dz[b * s.out + o];
        bias_acc += g;
        if (g == 0.0) continue;
        const double* xr = x + b * s.in;
        for (std::size_t k = 0; k < s.in; ++k) dwr[k] += g * xr[k];
    }
    db[o] = bias_acc;
}

inline void input_row(DenseShape s, const double* dz, const double* w, double* dx, std::size_t b)
{
    double* dxr = dx + b * s.in;
    for (std::size_t k = 0; k < s.in; ++k) dxr[k] = 0.0;
    const double* dzr = dz + b * s.out;
    for (std::size_t o = 0; o < s.out; ++o) {
        const double g = dzr[o];
        if (g == 0.0) continue;
        const double* wr = w + o * s.in;
        for (std::size_t k = 0; k < s.in; ++k) dxr[k] += g * wr[k];
    }
}

void check(DenseShape s, std::size_t x, std::size_t w, std::size_t out_rows)
{
    assert(x == s.batch * s.in);
    assert(w == s.out * s.in);
    assert(out_rows > 0 || s.batch == 0);
    (void)s, (void)x, (void)w, (void)out_rows;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) noexcept
{
    const std::size_t n = a.size();
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        acc0 += a[k] * b[k];
        acc1 += a[k + 1] * b[k + 1];
        acc2 += a[k + 2] * b[k + 2];
        acc3 += a[k + 3] * b[k + 3];
    }
    for (; k < n; ++k) acc0 += a[k] * b[k];
    return (acc0 + acc1) + (acc2 + acc3);
}

int thread_count() noexcept
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void dense_forward(DenseShape s, std::span<const double> x, std::span<const double> w,
                   std::span<const double> bias, std::span<double> z)
{
    check(s, x.size(), w.size(), z.size());
    const auto wt = transpose(s, w);
    const auto n = static_cast<std::ptrdiff_t>(s.batch);
#pragma omp parallel for schedule(static) if (n > 8)
    for (std::ptrdiff_t b = 0; b < n; ++b) {
        forward_row(s, x.data(), wt.data(), bias.data(), z.data(), static_cast<std::size_t>(b));
    }
}

void dense_backward_params(DenseShape s, std::span<const double> dz, std::span<const double> x,
                           std::span<double> dw, std::span<double> db)
{
    check(s, x.size(), dw.size(), db.size());
    const auto n = static_cast<std::ptrdiff_t>(s.out);
#pragma omp parallel for schedule(static) if (n > 8)
    for (std::ptrdiff_t o = 0; o < n; ++o) {
        params_row(s, dz.data(), x.data(), dw.data(), db.data(), static_cast<std::size_t>(o));
    }
}

void dense_backward_input(DenseShape s, std::span<const double> dz, std::span<const double> w,
                          std::span<double> dx)
{
    check(s, dx.size(), w.size(), dz.size());
    const auto n = static_cast<std::ptrdiff_t>(s.batch);
#pragma omp parallel for schedule(static) if (n > 8)
    for (std::ptrdiff_t b = 0; b < n; ++b) {
        input_row(s, dz.data(), w.data(), dx.data(), static_cast<std::size_t>(b));
    }
}

namespace serial {

void dense_forward(DenseShape s, std::span<const double> x, std::span<const double> w,
                   std::span<const double> bias, std::span<double> z)
{
    check(s, x.size(), w.size(), z.size());
    const auto wt = transpose(s, w);
    for (std::size_t b = 0; b < s.batch; ++b) forward_row(s, x.data(), wt.data(), bias.data(), z.data(), b);
}

void dense_backward_params(DenseShape s, std::span<const double> dz, std::span<const double> x,
                           std::span<double> dw, std::span<double> db)
{
    check(s, x.size(), dw.size(), db.size());
    for (std::size_t o = 0; o < s.out; ++o) params_row(s, dz.data(), x.data(), dw.data(), db.data(), o);
}

void dense_backward_input(DenseShape s, std::span<const double> dz, std::span<const double> w,
                          std::span<double> dx)
{
    check(s, dx.size(), w.size(), dz.size());
    for (std::size_t b = 0; b < s.batch; ++b) input_row(s, dz.data(), w.data(), dx.data(), b);
}

}  // namespace serial

}  // namespace airmia::kernels
