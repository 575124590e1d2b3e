#pragma once

#include <span>

#include "tvd/gf2.hpp"

namespace tvd {

/// Exact element of the full Pauli group: i^phase E(vec), with
/// E(a) = i^(aX.aZ) X(aX) Z(aZ) the Hermitian coset representative.
struct PauliLabel {
    F2Vec vec;
    uint32_t phase = 0;  // exponent of i, mod 4

    PauliLabel() = default;
    PauliLabel(F2Vec v, uint32_t ph = 0) : vec(v), phase(ph & 3u) {}
    bool operator==(const PauliLabel& o) const { return vec == o.vec && phase == o.phase; }
};

/// E(a) E(b) = i^(aZ.bX - aX.bZ) E(a+b), dot products taken over the integers.
PauliLabel pauli_mul(const PauliLabel& p, const PauliLabel& q);

/// True iff the underlying Paulis commute, i.e. <a,b> = 0.
bool commutes(const PauliLabel& p, const PauliLabel& q);

/// Lexicographically smallest f with <h,f> = 1 (smallest as a packed word).
/// Returns 0 for h = 0, the identity-transvection case.
F2Vec find_anticommuting(const F2Vec& h);

/// Exact adjoint action of the transvection Clifford U = (F + iEF)/sqrt(2)
/// with E = E(h), F = E(f), on x: expands (F + iEF) x (F - iFE) / 2 term by
/// term and collapses it to a single label. Requires <h,f> = 1, or h = 0,
/// where U is a Pauli up to global phase and conjugation contributes
/// (-1)^<f,x> only.
PauliLabel transvection_adjoint(const F2Vec& h, const F2Vec& f, const PauliLabel& x);

/// Hermitian basis element for a sum-zero tuple: the operator
/// i^y E(a_1) x ... x E(a_{t-1}) x (i^-x E(a_t)) with a_t = sum a_j,
/// x fixed by E(a_t) = i^x E(a_1)...E(a_{t-1}) and y in {0,1} the
/// Hermitizing exponent.
struct SumZeroElement {
    std::vector<F2Vec> head;  // a_1 .. a_{t-1}
    uint32_t x = 0;
    uint32_t y = 0;

    uint32_t t() const { return uint32_t(head.size()) + 1; }
    F2Vec last() const;  // a_t = sum of head components
};

SumZeroElement canonicalize_sum_zero(std::span<const F2Vec> head);

/// Checks that conjugating every factor by U_{E(h),E(f)} carries the
/// canonical element of (a_1,...) to the canonical element of
/// (T_h a_1, ...) with combined phase exactly zero.
bool verify_signfree(const F2Vec& h, const F2Vec& f, const SumZeroElement& e);

}  // namespace tvd
