#include "tvd/gf2.hpp"

#include <unordered_set>

namespace tvd {

namespace {

void require_same_m(const F2Vec& a, const F2Vec& b) {
    if (a.m != b.m) {
        throw std::invalid_argument("F2Vec dimension mismatch");
    }
}

}  // namespace

F2Vec::F2Vec(uint64_t bits_, uint32_t m_) : bits(bits_), m(m_) {
    if (m_ == 0 || m_ > max_m) {
        throw std::invalid_argument("F2Vec: m out of range");
    }
    if (bits_ >> (2 * m_)) {
        throw std::invalid_argument("F2Vec: bits exceed 2m");
    }
}

F2Vec F2Vec::operator+(const F2Vec& o) const {
    require_same_m(*this, o);
    F2Vec r;
    r.bits = bits ^ o.bits;
    r.m = m;
    return r;
}

uint32_t symplectic_form(const F2Vec& a, const F2Vec& b) {
    require_same_m(a, b);
    return symplectic_form_raw(a.bits, b.bits, a.m);
}

F2Vec transvection_apply(const F2Vec& h, const F2Vec& a) {
    require_same_m(h, a);
    F2Vec r = a;
    r.bits = transvection_apply_raw(h.bits, a.bits, a.m);
    return r;
}

SymplecticMatrix SymplecticMatrix::identity(uint32_t m) {
    SymplecticMatrix s;
    s.m = m;
    s.rows.resize(2 * m);
    for (uint32_t i = 0; i < 2 * m; i++) {
        s.rows[i] = uint64_t(1) << i;
    }
    return s;
}

SymplecticMatrix SymplecticMatrix::transvection(const F2Vec& h) {
    // Row i of T_h sends a to a_i + h_i <a,h>, i.e. e_i + h_i (Omega h).
    SymplecticMatrix s = identity(h.m);
    uint32_t m = h.m;
    uint64_t lo = (uint64_t(1) << m) - 1;
    uint64_t omega_h = (h.bits >> m) | ((h.bits & lo) << m);
    for (uint32_t i = 0; i < 2 * m; i++) {
        if ((h.bits >> i) & 1) {
            s.rows[i] ^= omega_h;
        }
    }
    return s;
}

F2Vec SymplecticMatrix::apply(const F2Vec& a) const {
    if (a.m != m) {
        throw std::invalid_argument("SymplecticMatrix::apply dimension mismatch");
    }
    uint64_t out = 0;
    for (uint32_t i = 0; i < 2 * m; i++) {
        out |= uint64_t(parity64(rows[i] & a.bits)) << i;
    }
    F2Vec r;
    r.bits = out;
    r.m = m;
    return r;
}

SymplecticMatrix SymplecticMatrix::multiply(const SymplecticMatrix& o) const {
    if (o.m != m) {
        throw std::invalid_argument("SymplecticMatrix::multiply dimension mismatch");
    }
    // (this * o) row i needs column access on o; transpose o first.
    std::vector<uint64_t> o_cols(2 * m, 0);
    for (uint32_t r = 0; r < 2 * m; r++) {
        for (uint32_t c = 0; c < 2 * m; c++) {
            o_cols[c] |= ((o.rows[r] >> c) & 1) << r;
        }
    }
    SymplecticMatrix out;
    out.m = m;
    out.rows.resize(2 * m);
    for (uint32_t i = 0; i < 2 * m; i++) {
        uint64_t row = 0;
        for (uint32_t j = 0; j < 2 * m; j++) {
            row |= uint64_t(parity64(rows[i] & o_cols[j])) << j;
        }
        out.rows[i] = row;
    }
    return out;
}

uint64_t SymplecticMatrix::packed_key() const {
    if (2 * m * 2 * m > 64) {
        throw std::invalid_argument("packed_key requires m <= 4");
    }
    uint64_t key = 0;
    for (uint32_t i = 0; i < 2 * m; i++) {
        key |= rows[i] << (i * 2 * m);
    }
    return key;
}

bool is_symplectic(const SymplecticMatrix& S) {
    uint32_t m = S.m;
    if (S.rows.size() != 2 * m) {
        return false;
    }
    // <Se_i, Se_j> must equal Omega_{ij} for all basis pairs.
    std::vector<uint64_t> cols(2 * m, 0);
    for (uint32_t r = 0; r < 2 * m; r++) {
        for (uint32_t c = 0; c < 2 * m; c++) {
            cols[c] |= ((S.rows[r] >> c) & 1) << r;
        }
    }
    for (uint32_t i = 0; i < 2 * m; i++) {
        for (uint32_t j = 0; j < 2 * m; j++) {
            uint32_t omega_ij = (j == i + m || i == j + m) ? 1 : 0;
            if (symplectic_form_raw(cols[i], cols[j], m) != omega_ij) {
                return false;
            }
        }
    }
    return true;
}

F2Vec conjugate_transvection(const SymplecticMatrix& S, const F2Vec& h) {
    if (!is_symplectic(S)) {
        throw std::invalid_argument("conjugate_transvection: S is not symplectic");
    }
    return S.apply(h);
}

uint64_t count_solutions(std::span<const std::pair<F2Vec, uint32_t>> constraints, uint32_t m) {
    // Row-reduce the system <a_j,h> = b_j over F_2. Each equation is a row
    // (Omega a_j | b_j); rank gives the solution count N^2 / 2^rank.
    std::vector<uint64_t> rows;
    rows.reserve(constraints.size());
    uint64_t lo = (uint64_t(1) << m) - 1;
    for (const auto& [a, b] : constraints) {
        if (a.m != m) {
            throw std::invalid_argument("count_solutions dimension mismatch");
        }
        uint64_t omega_a = (a.bits >> m) | ((a.bits & lo) << m);
        rows.push_back(omega_a | (uint64_t(b & 1) << (2 * m)));
    }
    uint32_t rank = 0;
    for (uint32_t col = 0; col < 2 * m; col++) {
        uint64_t pivot_mask = uint64_t(1) << col;
        size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot] & pivot_mask)) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && (rows[r] & pivot_mask)) {
                rows[r] ^= rows[rank];
            }
        }
        rank++;
    }
    // A surviving row 0...0|1 marks an inconsistent system.
    for (size_t r = rank; r < rows.size(); r++) {
        if (rows[r]) {
            return 0;
        }
    }
    return uint64_t(1) << (2 * m - rank);
}

std::vector<SymplecticMatrix> enumerate_sp(uint32_t m) {
    if (m > 2) {
        throw std::invalid_argument("enumerate_sp: m too large (closure guarded to m <= 2)");
    }
    std::vector<SymplecticMatrix> gens;
    for (uint64_t h = 0; h < num_labels(m); h++) {
        gens.push_back(SymplecticMatrix::transvection(F2Vec(h, m)));
    }
    std::vector<SymplecticMatrix> out;
    std::unordered_set<uint64_t> seen;
    std::vector<SymplecticMatrix> frontier{SymplecticMatrix::identity(m)};
    seen.insert(frontier[0].packed_key());
    out.push_back(frontier[0]);
    while (!frontier.empty()) {
        std::vector<SymplecticMatrix> next;
        for (const auto& S : frontier) {
            for (const auto& g : gens) {
                SymplecticMatrix prod = g.multiply(S);
                if (seen.insert(prod.packed_key()).second) {
                    out.push_back(prod);
                    next.push_back(std::move(prod));
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace tvd
