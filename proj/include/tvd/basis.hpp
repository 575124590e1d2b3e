#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace tvd {

/// Index scheme for the sum-zero Pauli-product basis at t copies: a basis
/// element is the (t-1)-tuple (a_1,...,a_{t-1}) of labels, with a_t their
/// sum. Index 0 is the all-zero tuple (the identity operator).
struct SumZeroBasis {
    uint32_t t = 2;
    uint32_t m = 1;

    SumZeroBasis(uint32_t t_, uint32_t m_) : t(t_), m(m_) {
        if (t_ < 2 || t_ > 3) {
            throw std::invalid_argument("SumZeroBasis: t must be 2 or 3");
        }
        if (m_ == 0 || 2 * m_ * (t_ - 1) > 40) {
            throw std::invalid_argument("SumZeroBasis: m out of range");
        }
    }

    uint64_t labels() const { return uint64_t(1) << (2 * m); }
    uint64_t dim() const { return uint64_t(1) << (2 * m * (t - 1)); }

    uint64_t index_of(std::array<uint64_t, 2> head) const {
        return t == 2 ? head[0] : head[0] | (head[1] << (2 * m));
    }
    std::array<uint64_t, 2> head_of(uint64_t index) const {
        uint64_t mask = labels() - 1;
        return t == 2 ? std::array<uint64_t, 2>{index & mask, 0}
                      : std::array<uint64_t, 2>{index & mask, index >> (2 * m)};
    }
    /// a_t, the implied last component.
    uint64_t last_of(uint64_t index) const {
        auto h = head_of(index);
        return t == 2 ? h[0] : h[0] ^ h[1];
    }
    /// Componentwise transvection image of a basis index.
    uint64_t transvect(uint64_t index, uint64_t h) const;
};

inline uint64_t SumZeroBasis::transvect(uint64_t index, uint64_t h) const {
    auto comps = head_of(index);
    uint64_t lo = labels() - 1;
    uint64_t h_sw = ((h >> m) | ((h & ((uint64_t(1) << m) - 1)) << m)) & lo;
    uint64_t a1 = (std::popcount(comps[0] & h_sw) & 1) ? (comps[0] ^ h) : comps[0];
    if (t == 2) {
        return a1;
    }
    uint64_t a2 = (std::popcount(comps[1] & h_sw) & 1) ? (comps[1] ^ h) : comps[1];
    return index_of({a1, a2});
}

}  // namespace tvd
