#pragma once

#include <Eigen/Dense>
#include <functional>

#include "tvd/basis.hpp"
#include "tvd/kernels.hpp"
#include "tvd/rational.hpp"

namespace tvd {

struct resource_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Default dense cap: the largest case with desk-scale golden values
/// (t = 3, m = 3 gives a 4096-dim sum-zero sector).
inline constexpr uint64_t kDefaultDenseCap = 4096;

/// Twirl channel on the sum-zero Pauli-product basis. Only the support of
/// the Pauli twirl is materialized; the annihilated complement of the full
/// 4^{tm}-dimensional operator space is kept as metadata.
struct Superoperator {
    uint32_t t = 2;
    uint32_t m = 1;
    RatMat mat;

    uint64_t dim() const { return mat.n; }
    uint64_t ambient_dim() const { return uint64_t(1) << (2 * m * t); }
    uint64_t annihilated_dim() const { return ambient_dim() - dim(); }

    Eigen::MatrixXd dense() const { return mat.dense(); }
    bool is_symmetric() const { return mat.is_symmetric(); }
};

void check_cap(uint32_t t, uint32_t m, uint64_t cap);

/// Pauli twirl restricted to its support: the identity on the sum-zero basis.
Superoperator build_GP(uint32_t t, uint32_t m, uint64_t cap = kDefaultDenseCap);

/// Transvection twirl: entry (x,y) = #{h : T_h maps tuple y to x} / N^2.
Superoperator build_GT(uint32_t t, uint32_t m, uint64_t cap = kDefaultDenseCap,
                       kernels::Exec exec = kernels::Exec::parallel);

/// Haar twirl on the sum-zero basis, from the closed-form rank-2 (t=2) and
/// rank-6 (t=3) projectors.
Superoperator build_H(uint32_t t, uint32_t m, uint64_t cap = kDefaultDenseCap);

/// Cross-check oracle: Haar twirl as the uniform average over the explicit
/// permutation action of all of Sp(2m,F_2). Exact; m <= 2 only.
Superoperator sp_average_H(uint32_t t, uint32_t m);

/// Exact matrix product A o B.
Superoperator compose(const Superoperator& A, const Superoperator& B);

/// A^k v by repeated multiplication.
Eigen::VectorXd power_apply(const Superoperator& A, uint64_t k, const Eigen::VectorXd& v);

/// Largest |eigenvalue| of A - deflate (deflate optional). Dense symmetric
/// eigensolve up to dense_eig_limit, power iteration above. Throws on
/// non-symmetric input.
double op_norm(const Superoperator& A, const Superoperator* deflate = nullptr,
               double tol = 1e-10, uint64_t dense_eig_limit = kDefaultDenseCap);

/// Power-iteration estimate of the largest |eigenvalue| of a symmetric
/// operator given only through its matvec.
double symmetric_op_norm_power(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                               uint64_t n, double tol = 1e-10, uint64_t seed = 12345,
                               uint64_t max_iters = 20000);

/// Row-compressed transvection twirl for dimensions past the dense cap.
/// Each row holds at most N^2 entries; only t = 3 is genuinely sparse
/// (at t = 2 half the labels land in every row).
struct SparseSuperoperator {
    uint32_t t = 3;
    uint32_t m = 1;
    uint64_t n = 0;
    int64_t den = 1;
    std::vector<uint64_t> row_ptr;
    std::vector<uint64_t> col_idx;
    std::vector<int64_t> val;

    uint64_t dim() const { return n; }
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y,
               kernels::Exec exec = kernels::Exec::parallel) const;
};

SparseSuperoperator build_GT_sparse(uint32_t t, uint32_t m, uint64_t dim_limit = uint64_t(1) << 20);

/// Orthonormal columns spanning range(H), from the closed-form projectors:
/// 2 columns at t = 2, 6 at t = 3.
Eigen::MatrixXd haar_basis(uint32_t t, uint32_t m);

}  // namespace tvd
