#pragma once

#include <cstdint>
#include <cstddef>

namespace tvd::kernels {

/// Execution policy for the hot loops. Every parallel kernel has a serial
/// twin producing bit-identical output; tests and the bench target compare
/// them.
enum class Exec { serial, parallel };

/// counts[x*dim + y] = #{h : componentwise T_h maps basis tuple y to x},
/// for the sum-zero basis at (t, m). dim = 4^{m(t-1)}; counts must hold
/// dim*dim entries and is overwritten.
void build_gt_counts(uint32_t t, uint32_t m, int64_t* counts, Exec exec);

/// y = A x for row-major square A.
void matvec(const double* A, std::size_t n, const double* x, double* y, Exec exec);

/// C = A * B for row-major square int64 matrices, with overflow checking.
void matmul_i64(const int64_t* A, const int64_t* B, int64_t* C, std::size_t n, Exec exec);

/// Accumulates the empirical t=2 second-moment counts of the scheme:
/// for each of nsamples draws of (pauli, h_1..h_k), counts[T(a)*dim + a]
/// is incremented for every label a, where T = T_{h_k} ... T_{h_1}.
/// Per-sample RNG streams are derived from (seed, sample index), so the
/// result is independent of the execution policy and thread count.
void mc_second_moment_counts(uint32_t m, uint32_t k, uint64_t nsamples, uint64_t seed,
                             int64_t* counts, Exec exec);

/// splitmix64; used to derive independent per-sample seeds.
uint64_t splitmix64(uint64_t x);

}  // namespace tvd::kernels
