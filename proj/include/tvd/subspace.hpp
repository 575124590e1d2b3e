#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "tvd/basis.hpp"
#include "tvd/spectral.hpp"

namespace tvd {

/// Index image of the componentwise transvection T_h on the sum-zero basis.
std::vector<uint64_t> transvection_perm(const SumZeroBasis& basis, uint64_t h);

/// v -> U_h v (a coordinate permutation).
Eigen::VectorXd apply_transvection(const SumZeroBasis& basis, uint64_t h,
                                   const Eigen::VectorXd& v);

/// v -> GT v = (1/N^2) sum_h U_h v, without materializing the matrix.
Eigen::VectorXd apply_gt(const SumZeroBasis& basis, const Eigen::VectorXd& v);

/// |a^;b> = sqrt(2)/N sum_{<a,h>=1} (-1)^<b,h> |a,h,a+h>, for <a,b> = 0 and
/// a != 0. Unit norm; |a^;b> = -|a^;a+b>.
Eigen::VectorXd hat_ab(uint32_t m, uint64_t a, uint64_t b);

/// Commuting-sector analog: sqrt(2/(N^2-4)) sum_{<a,h>=0, h != 0,a} |a,h,a+h>.
Eigen::VectorXd hat_c(uint32_t m, uint64_t a);

/// |A(a)> = sum_{<h,a>=0, h != a,0} |h^;a>.
Eigen::VectorXd vec_A(uint32_t m, uint64_t a);

/// Gram matrix of the |A(a)> family and its grouped spectrum.
Eigen::MatrixXd gram_A(uint32_t m);
SpectrumReport gram_A_spectrum(uint32_t m, double group_tol = 1e-9);

/// Modified Gram-Schmidt with a drop tolerance; returns orthonormal columns.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& cols, double drop_tol = 1e-8);

enum class SubspaceLabel {
    Vnc_d,
    Vnc_1,
    Vnc_2,
    Vnc_nullS,
    Vnc_null1,
    Vnc_complement,
    Vc_d,
    W_image,
};
std::string subspace_label_name(SubspaceLabel label);

struct SubspaceBasis {
    SubspaceLabel label;
    uint32_t m = 0;
    Eigen::MatrixXd vectors;  // orthonormal columns over the sum-zero basis
    uint64_t claimed_dim = 0;

    uint64_t dim() const { return uint64_t(vectors.cols()); }
};

SubspaceBasis build_subspace(SubspaceLabel label, uint32_t m);

/// max over all N^2 transvections of ||(id - P) U_h B||_2 with P the
/// projector onto span(B). Pauli generators act as the identity on the
/// sum-zero sector and contribute nothing.
double verify_invariance(const SubspaceBasis& S);

/// (GT - id/4) annihilates |a^;b> + |b^;a+b> + |(a+b)^;a>. Exhaustive over
/// valid (a,b) for m <= 2; num_random pairs otherwise.
bool verify_null_eigenspace(uint32_t m, double tol = 1e-10, uint64_t num_random = 1000,
                            uint64_t seed = 2023);

enum class IntertwinerKind { d_to_nc, d_to_c, K_V12 };
double intertwiner_check(IntertwinerKind kind, uint32_t m);

struct WSubspaceEntry {
    SubspaceLabel label;
    uint64_t source_dim = 0;
    uint64_t image_rank = 0;
    double invariance_residual = 0.0;  // of span(W B), when nonzero rank
    double cs_overlap = 0.0;           // ||P_CS W B||
    double sym_overlap = 0.0;          // ||(id + W23)/2 W B||
};

struct WMapReport {
    bool w_pcs_zero_exact = false;      // W P_CS = 0
    bool w_commutes_gt_exact = false;   // [W, GT] = 0
    bool anticommute_exact = false;     // P+ W P+ = 0 for P+ = (id + W23)/2
    std::vector<WSubspaceEntry> entries;
};
WMapReport W_map_check(uint32_t m);
WMapReport W_map_check(uint32_t m, const std::vector<SubspaceBasis>& prebuilt);

struct InnerProductChecks {
    double inner11_err = 0.0;     // <a^;b|c^;d> = delta_ac (delta_bd - delta_{b+d,a})
    double inner_ps_err = 0.0;    // <a^|P_S|b^> closed form
    double inner_pw_err = 0.0;    // <a^|P_w|b^> closed form (real pair route)
    double inner_c_err = 0.0;     // commuting-sector <a-|P_k|b-> closed form
    double max_err() const;
};
InnerProductChecks inner_product_checks(uint32_t m);

struct SubspaceCheck {
    SubspaceLabel label;
    uint64_t dim = 0;
    double invariance_residual = 0.0;
    std::vector<double> gt_eigenvalues;  // of GT restricted to the subspace
    double gt_block_residual = 0.0;      // ||GT B - B (B^T GT B)||
    double orthogonality_max = 0.0;      // vs the other claimed subspaces
};

struct VerificationReport {
    uint32_t m = 0;
    std::vector<SubspaceCheck> subspaces;
    uint64_t sym_span_dim = 0;  // (23)-symmetric span of the NC sector
    uint64_t nc_dims_sum = 0;   // claimed subspaces + complement
    bool dimension_accounting_ok = false;
    double d_to_nc_residual = 0.0;
    double d_to_c_residual = 0.0;
    double k_v12_residual = 0.0;
    bool gram_ok = false;
    bool null_eigenspace_ok = false;
    InnerProductChecks inner;
    WMapReport wmap;
    std::optional<double> negative_control_residual;

    static constexpr double invariance_tol = 1e-9;
    static constexpr double intertwiner_tol = 1e-10;
    static constexpr double orthogonality_tol = 1e-10;
    static constexpr double inner_tol = 1e-12;
    bool pass() const;
};

VerificationReport run_verification(uint32_t m, bool negative_control = false,
                                    uint64_t seed = 2023);

}  // namespace tvd
