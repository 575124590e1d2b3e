#include "tvd/kernels.hpp"

#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

#include "tvd/basis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tvd::kernels {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void build_gt_counts(uint32_t t, uint32_t m, int64_t* counts, Exec exec) {
    SumZeroBasis basis(t, m);
    const int64_t dim = int64_t(basis.dim());
    const int64_t nh = int64_t(basis.labels());
    std::memset(counts, 0, sizeof(int64_t) * size_t(dim) * size_t(dim));

    // Columns are independent; each column y receives one increment per h.
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int64_t y = 0; y < dim; y++) {
        for (int64_t h = 0; h < nh; h++) {
            uint64_t x = basis.transvect(uint64_t(y), uint64_t(h));
            counts[x * uint64_t(dim) + uint64_t(y)]++;
        }
    }
}

void matvec(const double* A, std::size_t n, const double* x, double* y, Exec exec) {
    const int64_t rows = int64_t(n);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int64_t i = 0; i < rows; i++) {
        const double* row = A + size_t(i) * n;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; j++) {
            acc += row[j] * x[j];
        }
        y[i] = acc;
    }
}

void matmul_i64(const int64_t* A, const int64_t* B, int64_t* C, std::size_t n, Exec exec) {
    const int64_t rows = int64_t(n);
    int overflow = 0;
#pragma omp parallel for schedule(static) reduction(| : overflow) if (exec == Exec::parallel)
    for (int64_t i = 0; i < rows; i++) {
        for (std::size_t j = 0; j < n; j++) {
            __int128 acc = 0;
            for (std::size_t k = 0; k < n; k++) {
                acc += __int128(A[size_t(i) * n + k]) * B[k * n + j];
            }
            if (acc > INT64_MAX || acc < INT64_MIN) {
                overflow = 1;
            }
            C[size_t(i) * n + j] = int64_t(acc);
        }
    }
    if (overflow) {
        throw std::overflow_error("matmul_i64: entry exceeds int64 range");
    }
}

void mc_second_moment_counts(uint32_t m, uint32_t k, uint64_t nsamples, uint64_t seed,
                             int64_t* counts, Exec exec) {
    SumZeroBasis basis(2, m);
    const uint64_t dim = basis.dim();
    const uint64_t label_mask = dim - 1;
    std::memset(counts, 0, sizeof(int64_t) * size_t(dim) * size_t(dim));

    const int64_t ns = int64_t(nsamples);
#ifdef _OPENMP
    int threads = exec == Exec::parallel ? omp_get_max_threads() : 1;
#else
    int threads = 1;
#endif
    std::vector<std::vector<int64_t>> local(size_t(threads),
                                            std::vector<int64_t>(size_t(dim) * size_t(dim), 0));

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int64_t s = 0; s < ns; s++) {
#ifdef _OPENMP
        int tid = exec == Exec::parallel ? omp_get_thread_num() : 0;
#else
        int tid = 0;
#endif
        int64_t* acc = local[size_t(tid)].data();
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(uint64_t(s))));
        rng();  // the Pauli draw; it acts trivially on the sum-zero sector
        std::vector<uint64_t> hs(k);
        for (uint32_t j = 0; j < k; j++) {
            hs[j] = rng() & label_mask;
        }
        for (uint64_t a = 0; a < dim; a++) {
            uint64_t img = a;
            for (uint32_t j = 0; j < k; j++) {
                img = basis.transvect(img, hs[j]);
            }
            acc[img * dim + a]++;
        }
    }
    for (const auto& buf : local) {
        for (uint64_t e = 0; e < dim * dim; e++) {
            counts[e] += buf[e];
        }
    }
}

}  // namespace tvd::kernels
