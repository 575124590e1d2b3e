#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tvd {

/// Label vector in F_2^{2m}. Bits 0..m-1 hold the X part, bits m..2m-1 the
/// Z part, so the symplectic form becomes a half-word swap.
struct F2Vec {
    uint64_t bits = 0;
    uint32_t m = 0;

    F2Vec() = default;
    F2Vec(uint64_t bits_, uint32_t m_);

    static constexpr uint32_t max_m = 30;

    uint64_t x_part() const { return bits & ((uint64_t(1) << m) - 1); }
    uint64_t z_part() const { return bits >> m; }
    bool is_zero() const { return bits == 0; }

    F2Vec operator+(const F2Vec& o) const;
    bool operator==(const F2Vec& o) const { return bits == o.bits && m == o.m; }
};

/// Number of labels in F_2^{2m}, i.e. N^2 with N = 2^m.
inline uint64_t num_labels(uint32_t m) { return uint64_t(1) << (2 * m); }

inline uint32_t parity64(uint64_t w) { return std::popcount(w) & 1u; }

/// <a,b> = a^T Omega b over F_2, with Omega the off-diagonal block form.
uint32_t symplectic_form(const F2Vec& a, const F2Vec& b);

/// Raw-word variant for inner loops; callers guarantee matching m.
inline uint32_t symplectic_form_raw(uint64_t a, uint64_t b, uint32_t m) {
    uint64_t lo = (uint64_t(1) << m) - 1;
    uint64_t b_sw = (b >> m) | ((b & lo) << m);
    return parity64(a & b_sw);
}

/// T_h a = a + <a,h> h. T_0 is the identity.
F2Vec transvection_apply(const F2Vec& h, const F2Vec& a);

inline uint64_t transvection_apply_raw(uint64_t h, uint64_t a, uint32_t m) {
    return symplectic_form_raw(a, h, m) ? (a ^ h) : a;
}

/// 2m x 2m matrix over F_2, stored as row bitmasks.
struct SymplecticMatrix {
    uint32_t m = 0;
    std::vector<uint64_t> rows;  // size 2m, row i as a 2m-bit word

    static SymplecticMatrix identity(uint32_t m);
    /// Matrix of T_h per its action a -> a + <a,h> h.
    static SymplecticMatrix transvection(const F2Vec& h);

    F2Vec apply(const F2Vec& a) const;
    SymplecticMatrix multiply(const SymplecticMatrix& o) const;  // this * o
    bool operator==(const SymplecticMatrix& o) const { return m == o.m && rows == o.rows; }

    /// Rows packed into one word; usable as a hash/set key for m <= 4.
    uint64_t packed_key() const;
};

/// S^T Omega S == Omega.
bool is_symplectic(const SymplecticMatrix& S);

/// Label of S T_h S^{-1}, which is T_{Sh}. Throws if S is not symplectic.
F2Vec conjugate_transvection(const SymplecticMatrix& S, const F2Vec& h);

/// Exact number of h in F_2^{2m} with <a_j,h> = b_j for all j:
/// 0 when inconsistent, N^2 / 2^d otherwise (d the rank of span{a_j}).
uint64_t count_solutions(std::span<const std::pair<F2Vec, uint32_t>> constraints, uint32_t m);

/// All of Sp(2m,F_2) via breadth-first closure over the N^2 transvection
/// generators. Guarded to m <= 2; |Sp(4,F_2)| = 720 is the largest case used.
std::vector<SymplecticMatrix> enumerate_sp(uint32_t m);

}  // namespace tvd
