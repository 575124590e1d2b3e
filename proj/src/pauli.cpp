#include "tvd/pauli.hpp"

#include <array>

namespace tvd {

namespace {

uint32_t mul_phase(const F2Vec& a, const F2Vec& b) {
    // Exact exponent from E(a) = i^(aX.aZ) X(aX) Z(aZ):
    //   aX.aZ + bX.bZ + 2 aZ.bX - (aX^bX).(aZ^bZ),
    // dot products over the integers, reduced mod 4. The often-quoted
    // shorthand aZ.bX - aX.bZ expands (a+b)X.(a+b)Z as if the sum were
    // over Z; with overlapping supports that slips a sign, which the 2x2
    // matrix oracle in the tests would catch.
    int ax_az = std::popcount(a.x_part() & a.z_part());
    int bx_bz = std::popcount(b.x_part() & b.z_part());
    int az_bx = std::popcount(a.z_part() & b.x_part());
    int sx_sz = std::popcount((a.x_part() ^ b.x_part()) & (a.z_part() ^ b.z_part()));
    return uint32_t((ax_az + bx_bz + 2 * az_bx - sx_sz) & 3);
}

}  // namespace

PauliLabel pauli_mul(const PauliLabel& p, const PauliLabel& q) {
    if (p.vec.m != q.vec.m) {
        throw std::invalid_argument("pauli_mul dimension mismatch");
    }
    PauliLabel r;
    r.vec = p.vec + q.vec;
    r.phase = (p.phase + q.phase + mul_phase(p.vec, q.vec)) & 3u;
    return r;
}

bool commutes(const PauliLabel& p, const PauliLabel& q) {
    return symplectic_form(p.vec, q.vec) == 0;
}

F2Vec find_anticommuting(const F2Vec& h) {
    if (h.is_zero()) {
        F2Vec f;
        f.m = h.m;
        return f;
    }
    for (uint64_t f = 1; f < num_labels(h.m); f++) {
        if (symplectic_form_raw(h.bits, f, h.m)) {
            return F2Vec(f, h.m);
        }
    }
    throw std::logic_error("find_anticommuting: unreachable for h != 0");
}

PauliLabel transvection_adjoint(const F2Vec& h, const F2Vec& f, const PauliLabel& x) {
    if (h.m != x.vec.m || f.m != x.vec.m) {
        throw std::invalid_argument("transvection_adjoint dimension mismatch");
    }
    if (h.is_zero()) {
        // U = e^{+-i pi/4} F: conjugation by the Pauli F alone.
        PauliLabel r = x;
        r.phase = (r.phase + 2 * symplectic_form(f, x.vec)) & 3u;
        return r;
    }
    if (symplectic_form(h, f) != 1) {
        throw std::invalid_argument("transvection_adjoint requires <h,f> = 1");
    }

    PauliLabel E{h};
    PauliLabel F{f};

    // (F + iEF) x (F - iFE) / 2 = (FxF + i EFxF - i FxFE + EFxFE) / 2.
    // Accumulate the four terms as Gaussian-integer coefficients per label.
    std::array<PauliLabel, 4> terms = {
        pauli_mul(pauli_mul(F, x), F),
        PauliLabel{pauli_mul(pauli_mul(pauli_mul(E, F), x), F).vec,
                   (pauli_mul(pauli_mul(pauli_mul(E, F), x), F).phase + 1) & 3u},
        PauliLabel{pauli_mul(pauli_mul(pauli_mul(F, x), F), E).vec,
                   (pauli_mul(pauli_mul(pauli_mul(F, x), F), E).phase + 3) & 3u},
        pauli_mul(pauli_mul(pauli_mul(pauli_mul(E, F), x), F), E),
    };

    // The label set of the four terms is {x, x+h}; tally i^phase per label.
    std::array<uint64_t, 2> labels = {x.vec.bits, x.vec.bits ^ h.bits};
    std::array<std::array<int, 4>, 2> tally{};
    for (const auto& t : terms) {
        int slot = t.vec.bits == labels[0] ? 0 : 1;
        if (t.vec.bits != labels[slot]) {
            throw std::logic_error("transvection_adjoint: unexpected label");
        }
        tally[slot][t.phase]++;
    }
    for (int slot = 0; slot < 2; slot++) {
        int re = tally[slot][0] - tally[slot][2];
        int im = tally[slot][1] - tally[slot][3];
        if (re == 0 && im == 0) {
            continue;
        }
        uint32_t ph;
        if (re == 2 && im == 0) {
            ph = 0;
        } else if (re == 0 && im == 2) {
            ph = 1;
        } else if (re == -2 && im == 0) {
            ph = 2;
        } else if (re == 0 && im == -2) {
            ph = 3;
        } else {
            throw std::logic_error("transvection_adjoint: non-unit coefficient");
        }
        return PauliLabel{F2Vec(labels[slot], x.vec.m), ph};
    }
    throw std::logic_error("transvection_adjoint: all terms cancelled");
}

F2Vec SumZeroElement::last() const {
    F2Vec s = head.at(0);
    for (size_t j = 1; j < head.size(); j++) {
        s = s + head[j];
    }
    return s;
}

SumZeroElement canonicalize_sum_zero(std::span<const F2Vec> head) {
    if (head.size() < 1 || head.size() > 2) {
        throw std::invalid_argument("canonicalize_sum_zero supports t = 2 and t = 3");
    }
    SumZeroElement e;
    e.head.assign(head.begin(), head.end());
    PauliLabel prod{head[0]};
    for (size_t j = 1; j < head.size(); j++) {
        prod = pauli_mul(prod, PauliLabel{head[j]});
    }
    // prod = i^p E(a_t), so E(a_t) = i^{-p} prod and x = -p mod 4. The
    // trailing factor i^{-x} E(a_t) then carries phase i^{-2x... }
    e.x = (4 - prod.phase) & 3u;
    // i^{-x} E(a_t) is Hermitian iff x is even; odd x needs the i^y fix.
    e.y = e.x & 1u;
    return e;
}

bool verify_signfree(const F2Vec& h, const F2Vec& f, const SumZeroElement& e) {
    std::vector<F2Vec> new_head;
    uint32_t phase_sum = 0;
    for (const auto& a : e.head) {
        PauliLabel r = transvection_adjoint(h, f, PauliLabel{a});
        new_head.push_back(r.vec);
        phase_sum += r.phase;
    }
    PauliLabel r_last = transvection_adjoint(h, f, PauliLabel{e.last()});
    phase_sum += r_last.phase;

    SumZeroElement e2 = canonicalize_sum_zero(new_head);
    if (!(e2.last() == r_last.vec)) {
        return false;
    }
    // i^y (prod of conjugated factors) i^{-x} must equal i^{y'} ... i^{-x'}.
    uint32_t lhs = (e.y + phase_sum + (4 - e.x)) & 3u;
    uint32_t rhs = (e2.y + (4 - e2.x)) & 3u;
    return lhs == rhs;
}

}  // namespace tvd
