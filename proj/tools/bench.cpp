// Times the parallel kernels against their serial reference twins and
// checks that both produce identical output.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "tvd/certify.hpp"
#include "tvd/kernels.hpp"
#include "tvd/superop.hpp"

#ifdef _OPENMP
#include <omp.h>
static int max_threads() { return omp_get_max_threads(); }
#else
static int max_threads() { return 1; }
#endif

namespace {

using Clock = std::chrono::steady_clock;
using tvd::kernels::Exec;

double time_call(const std::function<void()>& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; r++) {
        auto t0 = Clock::now();
        fn();
        auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-24s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   %s\n", name,
                serial * 1e3, parallel * 1e3, serial / parallel,
                identical ? "outputs identical" : "OUTPUT MISMATCH");
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", max_threads());

    {
        const uint32_t t = 3, m = 3;
        tvd::SumZeroBasis basis(t, m);
        std::vector<int64_t> a(basis.dim() * basis.dim());
        std::vector<int64_t> b(basis.dim() * basis.dim());
        double ts = time_call([&] { tvd::kernels::build_gt_counts(t, m, a.data(), Exec::serial); }, 3);
        double tp = time_call([&] { tvd::kernels::build_gt_counts(t, m, b.data(), Exec::parallel); }, 3);
        report("build_gt_counts t3 m3", ts, tp, a == b);
    }

    {
        const size_t n = 4096;
        Eigen::MatrixXd A = Eigen::MatrixXd::Random(n, n);
        A = (A + A.transpose()).eval();
        Eigen::VectorXd x = Eigen::VectorXd::Random(n);
        Eigen::VectorXd ys(n), yp(n);
        double ts = time_call([&] { tvd::kernels::matvec(A.data(), n, x.data(), ys.data(), Exec::serial); }, 5);
        double tp = time_call([&] { tvd::kernels::matvec(A.data(), n, x.data(), yp.data(), Exec::parallel); }, 5);
        report("matvec n=4096", ts, tp, ys == yp);
    }

    {
        tvd::Superoperator gt = tvd::build_GT(3, 2);
        const size_t n = gt.dim();
        std::vector<int64_t> cs(n * n), cp(n * n);
        double ts = time_call(
            [&] { tvd::kernels::matmul_i64(gt.mat.num.data(), gt.mat.num.data(), cs.data(), n, Exec::serial); }, 3);
        double tp = time_call(
            [&] { tvd::kernels::matmul_i64(gt.mat.num.data(), gt.mat.num.data(), cp.data(), n, Exec::parallel); }, 3);
        report("matmul_i64 n=256", ts, tp, cs == cp);
    }

    {
        const uint32_t m = 2, k = 8;
        const uint64_t samples = 100000;
        tvd::SumZeroBasis basis(2, m);
        std::vector<int64_t> cs(basis.dim() * basis.dim()), cp(cs.size());
        double ts = time_call(
            [&] { tvd::kernels::mc_second_moment_counts(m, k, samples, 7, cs.data(), Exec::serial); }, 3);
        double tp = time_call(
            [&] { tvd::kernels::mc_second_moment_counts(m, k, samples, 7, cp.data(), Exec::parallel); }, 3);
        report("mc_counts 1e5 samples", ts, tp, cs == cp);
    }

    return 0;
}
