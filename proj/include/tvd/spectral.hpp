#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tvd/s3.hpp"
#include "tvd/superop.hpp"

namespace tvd {

enum class SectorTag { Identity, Diagonal1, Diagonal2, Diagonal3, NC, C, Haar, Other };

std::string sector_tag_name(SectorTag tag);

struct EigGroup {
    double value = 0.0;
    uint64_t multiplicity = 0;
    SectorTag tag = SectorTag::Other;
};

struct SpectrumReport {
    uint32_t t = 2;
    uint32_t m = 1;
    std::string op_name;
    std::vector<EigGroup> groups;  // sorted by descending eigenvalue

    uint64_t total_multiplicity() const;
};

/// Sector of a single basis index (coordinate classification).
SectorTag basis_sector(const SumZeroBasis& basis, uint64_t index);
std::vector<uint64_t> sector_indices(uint32_t t, uint32_t m, SectorTag tag);

/// Eigendecomposition with eigenvalues grouped at group_tol and tagged by
/// the dominant coordinate sector of each eigenspace; the unit eigenvalue
/// group of a twirl is tagged Haar.
SpectrumReport full_spectrum(const Superoperator& A, double group_tol = 1e-9,
                             const std::string& name = "");

struct T2SpectrumCheck {
    bool eigenvalues_ok = false;
    bool multiplicities_ok = false;
    bool eigenvector_conditions_ok = false;  // sum to zero and +-N/2 relation
    SpectrumReport report;
    bool ok() const { return eigenvalues_ok && multiplicities_ok && eigenvector_conditions_ok; }
};

/// Full t=2 eigensystem check: spectrum {1, (1 +- 1/N)/2} with exact
/// multiplicities {2, N(N-1)/2 - 1, N(N+1)/2 - 1}, plus the diagonal-sector
/// coefficient relations on the non-unit eigenvectors. Asserted for m >= 2;
/// at m = 1 the same data is computed but only reported.
T2SpectrumCheck verify_t2_spectrum(uint32_t m, double value_tol = 1e-10);

/// Largest |eigenvalue| of GT o GP - H.
double second_eigenvalue(uint32_t t, uint32_t m, uint64_t cap = kDefaultDenseCap);

/// K over nonzero labels, K[a][b] = 1 iff <a,b> = 1. Eigenvalues N^2/2 (x1)
/// and +-N/2; carries the coefficient constraints of the diagonal sector.
Eigen::MatrixXd commutation_matrix(uint32_t m);
SpectrumReport commutation_matrix_spectrum(uint32_t m, double group_tol = 1e-9);

/// One of T_1, T_2, T_3 restricted to the NC or C sector, as exact counts
/// over N^2 in the sector coordinates listed by sector_indices.
RatMat sector_T(uint32_t m, SectorTag sector, int which);
RatMat sector_restrict(const RatMat& full, const std::vector<uint64_t>& idx);

struct SectorReport {
    SectorTag sector = SectorTag::NC;
    uint32_t m = 0;
    uint64_t dim = 0;
    bool split_identity_ok = false;     // GT = id/4 + T1 + T2 + T3, exact
    bool permutation_relations_ok = false;  // T3 = W13 T1 W13 etc., exact
    double top_eigenvalue = 0.0;
    double second_eigenvalue = 0.0;
    double claimed_second_bound = 0.0;  // the claimed constant for this sector
    bool second_below_claimed = false;
    // NC: T1+ = 1/4 sum |a^><a^| entrywise. C: (id - W23) T1 = 0 exactly.
    bool t1_spectral_form_ok = false;
    // NC: distinct nonzero singular values of T1-. C: the claimed eigenvalues.
    std::vector<double> t1_singular_or_eigen;
    // NC: all nonzero singulars of T1- equal 1/(2N). C: eigenvalue set is
    // {1/4, +-1/(2N), 0} with the claimed multiplicities.
    bool t1_multiplicities_ok = false;
    double top_eigvec_residual = 0.0;     // |GT w_cs - w_cs|
    double ett_plus_wcs_residual = 0.0;   // NC only: |ETT+ w_cs - (3/4) w_cs|
};

SectorReport sector_decompose_GT(uint32_t m, SectorTag sector);

}  // namespace tvd
