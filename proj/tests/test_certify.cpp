#include <doctest.h>

#include <cmath>
#include <random>

#include "tvd/certify.hpp"
#include "tvd/gf2.hpp"
#include "tvd/spectral.hpp"

using namespace tvd;

TEST_CASE("k_for_2design") {
    CHECK(k_for_2design(1.0) == 6);
    CHECK(k_for_2design(std::pow(2.0, -8)) == 16);  // 6 + 10
    CHECK(k_for_2design(std::pow(2.0, -4)) == 11);
    CHECK_THROWS_AS(k_for_2design(0.0), std::invalid_argument);
    CHECK_THROWS_AS(k_for_2design(2.0), std::invalid_argument);
}

TEST_CASE("k_for_3design") {
    // (9 + 10) / (1 - log2(1 + 4/8 + 1/96)) = 46.91 -> 47.
    CHECK(k_for_3design(3, std::pow(2.0, -10)) == 47);
    // epsilon = 1: quotient 9 / 0.405053 = 22.2 -> 23, strict ceiling.
    CHECK(k_for_3design(3, 1.0) == 23);
    CHECK_THROWS_AS(k_for_3design(2, 0.5), std::invalid_argument);
}

TEST_CASE("diamond_upper_bound") {
    // k = 0, t = 3: the vacuous bound N^3.
    CHECK(diamond_upper_bound(3, 3, 0) == doctest::Approx(512.0));
    // t=3, m=3, k=47 at the claimed constant comes in under 2^-10.
    double b = diamond_upper_bound(3, 3, 47, claimed_second_eig_bound(3));
    CHECK(b <= std::pow(2.0, -10));
    CHECK(b >= std::pow(2.0, -11));
    // N^3 lambda^k is monotone decreasing; the (5k+1) prefactor at t=2
    // delays monotonicity until k = 2.
    for (int64_t k = 0; k < 20; k++) {
        CHECK(diamond_upper_bound(3, 3, k + 1) < diamond_upper_bound(3, 3, k));
    }
    for (int64_t k = 2; k < 20; k++) {
        CHECK(diamond_upper_bound(2, 3, k + 1) < diamond_upper_bound(2, 3, k));
    }
}

TEST_CASE("empirical_distance at t=2") {
    // k=1 equals the second eigenvalue (1+1/N)/2; k=2 equals its square.
    EmpiricalDistance d1 = empirical_distance(2, 3, 1);
    CHECK(d1.op_norm == doctest::Approx(0.5625).epsilon(1e-9));
    EmpiricalDistance d2 = empirical_distance(2, 3, 2);
    CHECK(d2.op_norm == doctest::Approx(0.5625 * 0.5625).epsilon(1e-9));
    CHECK(d1.diamond_bound == doctest::Approx(64.0 * d1.op_norm));

    // Non-increasing in k, geometric in the tail.
    double prev = 1e9;
    for (int64_t k = 1; k <= 12; k += 2) {
        double v = empirical_distance(2, 2, k).op_norm;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("certificates carry consistent fields") {
    ConvergenceCertificate cert = make_certificate(2, 3, 0.25, /*empirical=*/true);
    CHECK(cert.k == k_for_2design(0.25));
    CHECK(cert.lambda == doctest::Approx(0.5625).epsilon(1e-9));
    CHECK(cert.empirical_bound == doctest::Approx(std::pow(0.5625, double(cert.k))).epsilon(1e-6));
    CHECK(cert.empirical_bound <= cert.closed_form_bound);
    CHECK(cert.method == "spectral");
}

TEST_CASE("sample_scheme determinism and label validity") {
    std::mt19937_64 rng1(7), rng2(7), rng3(8);
    for (int i = 0; i < 50; i++) {
        SchemeSample a = sample_scheme(2, 5, rng1);
        SchemeSample b = sample_scheme(2, 5, rng2);
        CHECK(a.pauli == b.pauli);
        CHECK(a.transvections == b.transvections);
        for (const auto& [h, f] : a.transvections) {
            if (h == 0) {
                CHECK(f == 0);
            } else {
                CHECK(symplectic_form_raw(h, f, 2) == 1);
            }
        }
    }
    SchemeSample c = sample_scheme(2, 0, rng3);
    CHECK(c.transvections.empty());
    bool differs = false;
    for (int i = 0; i < 10 && !differs; i++) {
        differs = sample_scheme(2, 5, rng1).pauli != sample_scheme(2, 5, rng3).pauli;
    }
    CHECK(differs);
}

TEST_CASE("Monte Carlo second moment approaches the exact operator") {
    const uint32_t m = 2, k = 8;
    const uint64_t n = 100000;
    Eigen::MatrixXd emp = mc_second_moment(m, k, n, 13);
    Superoperator gt = build_GT(2, m);
    Eigen::MatrixXd g = gt.dense();
    Eigen::MatrixXd exact = g;
    for (uint32_t i = 1; i < k; i++) {
        exact = exact * g;
    }
    int violations = 0;
    for (int64_t i = 0; i < exact.rows(); i++) {
        for (int64_t j = 0; j < exact.cols(); j++) {
            double p = exact(i, j);
            double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / double(n));
            if (std::abs(emp(i, j) - p) > 3.0 * se) {
                violations++;
            }
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("support growth") {
    SupportGrowth g1 = support_growth(2, 1, 5000);
    CHECK(g1.distinct == 16);  // all N^2 transvections are distinct
    CHECK(g1.group_order == 720);

    SupportGrowth g2 = support_growth(2, 2, 20000);
    CHECK(g2.distinct > 100);          // order of magnitude of N^4 = 256
    CHECK(g2.distinct <= 256);
    CHECK(g2.naive_size == doctest::Approx(256.0));

    SupportGrowth gsat = support_growth(2, 12, 30000);
    CHECK(gsat.distinct == 720);  // saturates at |Sp(4,F2)|
}
