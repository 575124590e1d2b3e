#include <doctest.h>

#include <random>
#include <vector>

#include "tvd/basis.hpp"
#include "tvd/kernels.hpp"

using namespace tvd;
using kernels::Exec;

TEST_CASE("serial and parallel build_gt_counts agree") {
    for (uint32_t t : {2u, 3u}) {
        for (uint32_t m = 1; m <= 2; m++) {
            SumZeroBasis basis(t, m);
            std::vector<int64_t> a(basis.dim() * basis.dim());
            std::vector<int64_t> b(a.size());
            kernels::build_gt_counts(t, m, a.data(), Exec::serial);
            kernels::build_gt_counts(t, m, b.data(), Exec::parallel);
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("serial and parallel matvec agree") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1, 1);
    const size_t n = 257;
    std::vector<double> A(n * n), x(n), ys(n), yp(n);
    for (auto& v : A) {
        v = dist(rng);
    }
    for (auto& v : x) {
        v = dist(rng);
    }
    kernels::matvec(A.data(), n, x.data(), ys.data(), Exec::serial);
    kernels::matvec(A.data(), n, x.data(), yp.data(), Exec::parallel);
    CHECK(ys == yp);
}

TEST_CASE("serial and parallel matmul_i64 agree and detect overflow") {
    std::mt19937_64 rng(5);
    const size_t n = 64;
    std::vector<int64_t> A(n * n), B(n * n), Cs(n * n), Cp(n * n);
    for (auto& v : A) {
        v = int64_t(rng() % 2048) - 1024;
    }
    for (auto& v : B) {
        v = int64_t(rng() % 2048) - 1024;
    }
    kernels::matmul_i64(A.data(), B.data(), Cs.data(), n, Exec::serial);
    kernels::matmul_i64(A.data(), B.data(), Cp.data(), n, Exec::parallel);
    CHECK(Cs == Cp);

    std::vector<int64_t> big(4, INT64_MAX / 2), out(4);
    CHECK_THROWS_AS(kernels::matmul_i64(big.data(), big.data(), out.data(), 2, Exec::serial),
                    std::overflow_error);
}

TEST_CASE("mc counts are independent of the execution policy") {
    SumZeroBasis basis(2, 2);
    std::vector<int64_t> a(basis.dim() * basis.dim());
    std::vector<int64_t> b(a.size());
    kernels::mc_second_moment_counts(2, 3, 500, 99, a.data(), Exec::serial);
    kernels::mc_second_moment_counts(2, 3, 500, 99, b.data(), Exec::parallel);
    CHECK(a == b);

    int64_t total = 0;
    for (int64_t v : a) {
        total += v;
    }
    CHECK(total == 500 * int64_t(basis.dim()));
}
