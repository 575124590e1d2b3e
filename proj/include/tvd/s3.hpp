#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>

#include "tvd/rational.hpp"

namespace tvd {

/// Permutation of the three tensor copies; img[i] is the image of copy i.
struct Perm3 {
    std::array<uint8_t, 3> img;

    static Perm3 id() { return {{0, 1, 2}}; }
    static Perm3 t12() { return {{1, 0, 2}}; }
    static Perm3 t13() { return {{2, 1, 0}}; }
    static Perm3 t23() { return {{0, 2, 1}}; }
    static Perm3 c123() { return {{1, 2, 0}}; }  // 1->2->3->1
    static Perm3 c132() { return {{2, 0, 1}}; }  // 1->3->2->1

    Perm3 compose(const Perm3& o) const {  // this after o
        return {{img[o.img[0]], img[o.img[1]], img[o.img[2]]}};
    }
    Perm3 inverse() const {
        Perm3 r{};
        for (uint8_t i = 0; i < 3; i++) {
            r.img[img[i]] = i;
        }
        return r;
    }
    int sign() const;
    bool operator==(const Perm3& o) const { return img == o.img; }
};

std::array<Perm3, 6> all_perm3();

/// Index image of W_sigma on the t=3 sum-zero basis.
std::vector<uint64_t> s3_index_perm(uint32_t m, const Perm3& pi);

/// W_sigma on the t=3 sum-zero basis: |a1,a2,a3> -> |a_{s^-1(1)},...>.
/// A plain relabeling; on this basis the copy permutation carries no sign.
RatMat s3_w(uint32_t m, const Perm3& pi);

/// W = W_(123) - W_(132).
RatMat s3_w_diff(uint32_t m);

enum class S3Kind { CS, AS, S, Omega, OmegaStar, P1 };

/// The four projectors with rational entries: the symmetrizer CS, the
/// antisymmetrizer AS, the A_3 average S, and P1 = id - S.
RatMat s3_projector_rat(uint32_t m, S3Kind kind);

/// Any of the six isotypic projectors as a (real, imag) pair. The Omega
/// kinds are (1/2) P1 -+ i W / (2 sqrt 3); the others have a zero imaginary
/// part. Complex arithmetic stays confined to callers that need it.
struct ComplexDense {
    Eigen::MatrixXd re;
    Eigen::MatrixXd im;
};
ComplexDense s3_projector(uint32_t m, S3Kind kind);

}  // namespace tvd
