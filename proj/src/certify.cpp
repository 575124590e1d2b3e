#include "tvd/certify.hpp"

#include <cmath>
#include <unordered_set>

#include "tvd/gf2.hpp"
#include "tvd/pauli.hpp"
#include "tvd/spectral.hpp"

namespace tvd {

int64_t k_for_2design(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw std::invalid_argument("k_for_2design: epsilon must lie in (0, 1]");
    }
    return int64_t(std::ceil(6.0 + 1.25 * std::log2(1.0 / epsilon)));
}

double claimed_second_eig_bound(uint32_t m) {
    const double N = double(uint64_t(1) << m);
    return 0.5 * (1.0 + 4.0 / N + 1.0 / (2.0 * N * (N - 2.0)));
}

double sector_second_eig_bound(uint32_t m) {
    const double N = double(uint64_t(1) << m);
    return 0.5 * (1.0 + 4.0 / N + 2.0 / (N * (N - 2.0)));
}

int64_t k_for_3design(uint32_t m, double epsilon) {
    if (m < 3) {
        throw std::invalid_argument("k_for_3design: stated for m >= 3");
    }
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw std::invalid_argument("k_for_3design: epsilon must lie in (0, 1]");
    }
    const double N = double(uint64_t(1) << m);
    double denom = 1.0 - std::log2(1.0 + 4.0 / N + 1.0 / (2.0 * N * (N - 2.0)));
    double q = (3.0 * double(m) + std::log2(1.0 / epsilon)) / denom;
    // Strict inequality: the next integer above q, even when q is integral.
    return int64_t(std::floor(q)) + 1;
}

double diamond_upper_bound(uint32_t t, uint32_t m, int64_t k, std::optional<double> lambda) {
    if (k < 0) {
        throw std::invalid_argument("diamond_upper_bound: k must be nonnegative");
    }
    const double N = double(uint64_t(1) << m);
    if (t == 2) {
        return double(5 * k + 1) * std::pow(0.5 * (1.0 + 1.0 / N), double(k));
    }
    double lam = lambda.value_or(claimed_second_eig_bound(m));
    return N * N * N * std::pow(lam, double(k));
}

EmpiricalDistance empirical_distance(uint32_t t, uint32_t m, int64_t k, uint64_t cap) {
    SumZeroBasis basis(t, m);
    EmpiricalDistance d;
    if (basis.dim() <= cap) {
        Superoperator gtgp = compose(build_GT(t, m, cap), build_GP(t, m, cap));
        Superoperator haar = build_H(t, m, cap);
        Eigen::MatrixXd a = gtgp.dense();
        Eigen::MatrixXd h = haar.dense();
        auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
            Eigen::VectorXd cur = x;
            for (int64_t i = 0; i < k; i++) {
                cur = a * cur;
            }
            y = cur - h * x;
        };
        d.op_norm = symmetric_op_norm_power(apply, gtgp.dim(), 1e-12);
    } else {
        SparseSuperoperator gt = build_GT_sparse(t, m);
        Eigen::MatrixXd hb = haar_basis(t, m);
        auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
            Eigen::VectorXd cur = x;
            Eigen::VectorXd next;
            for (int64_t i = 0; i < k; i++) {
                gt.apply(cur, next);
                cur.swap(next);
            }
            y = cur - hb * (hb.transpose() * x);
        };
        d.op_norm = symmetric_op_norm_power(apply, gt.dim(), 1e-12);
    }
    d.diamond_bound = std::pow(2.0, double(t * m)) * d.op_norm;
    return d;
}

ConvergenceCertificate make_certificate(uint32_t t, uint32_t m, double epsilon, bool empirical,
                                        uint64_t cap) {
    ConvergenceCertificate cert;
    cert.t = t;
    cert.m = m;
    cert.epsilon = epsilon;
    cert.k = t == 2 ? k_for_2design(epsilon) : k_for_3design(m, epsilon);
    cert.method = "closed_form";
    const double N = double(uint64_t(1) << m);
    cert.lambda = t == 2 ? 0.5 * (1.0 + 1.0 / N) : claimed_second_eig_bound(m);
    cert.closed_form_bound = diamond_upper_bound(t, m, cert.k);
    if (empirical) {
        cert.method = "spectral";
        cert.lambda = second_eigenvalue(t, m, cap);
        cert.empirical_bound = empirical_distance(t, m, cert.k, cap).op_norm;
    }
    return cert;
}

SchemeSample sample_scheme(uint32_t m, uint32_t k, std::mt19937_64& rng) {
    const uint64_t mask = num_labels(m) - 1;
    SchemeSample s;
    s.pauli = rng() & mask;
    s.transvections.reserve(k);
    for (uint32_t i = 0; i < k; i++) {
        uint64_t h = rng() & mask;
        uint64_t f = h == 0 ? 0 : find_anticommuting(F2Vec(h, m)).bits;
        s.transvections.push_back({h, f});
    }
    return s;
}

Eigen::MatrixXd mc_second_moment(uint32_t m, uint32_t k, uint64_t nsamples, uint64_t seed,
                                 kernels::Exec exec) {
    SumZeroBasis basis(2, m);
    std::vector<int64_t> counts(basis.dim() * basis.dim());
    kernels::mc_second_moment_counts(m, k, nsamples, seed, counts.data(), exec);
    Eigen::MatrixXd out(int64_t(basis.dim()), int64_t(basis.dim()));
    for (uint64_t i = 0; i < basis.dim(); i++) {
        for (uint64_t j = 0; j < basis.dim(); j++) {
            out(int64_t(i), int64_t(j)) = double(counts[i * basis.dim() + j]) / double(nsamples);
        }
    }
    return out;
}

SupportGrowth support_growth(uint32_t m, uint32_t k, uint64_t nsamples, uint64_t seed) {
    if (m > 3) {
        throw std::invalid_argument("support_growth: m too large");
    }
    SupportGrowth g;
    g.m = m;
    g.k = k;
    g.samples = nsamples;
    g.naive_size = std::pow(double(num_labels(m)), double(k));
    if (m <= 2) {
        g.group_order = enumerate_sp(m).size();
    }

    const uint64_t mask = num_labels(m) - 1;
    std::mt19937_64 rng(seed);
    std::unordered_set<uint64_t> seen;
    uint64_t collisions = 0;
    for (uint64_t s = 0; s < nsamples; s++) {
        SymplecticMatrix prod = SymplecticMatrix::identity(m);
        for (uint32_t i = 0; i < k; i++) {
            uint64_t h = rng() & mask;
            prod = SymplecticMatrix::transvection(F2Vec(h, m)).multiply(prod);
        }
        if (!seen.insert(prod.packed_key()).second) {
            collisions++;
        }
    }
    g.distinct = seen.size();
    if (collisions > 0) {
        // E[collisions] ~ C(n,2)/S while collisions are rare.
        double pairs = 0.5 * double(nsamples) * double(nsamples - 1);
        g.birthday_estimate = pairs / double(collisions);
    }
    return g;
}

}  // namespace tvd
