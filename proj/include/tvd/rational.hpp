#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tvd {

/// Dense square matrix with exact entries num[i*n+j] / den. Keeps the
/// algebraic identities (symmetry, commutation, stochasticity) testable
/// without floating point.
struct RatMat {
    uint64_t n = 0;
    int64_t den = 1;
    std::vector<int64_t> num;

    RatMat() = default;
    explicit RatMat(uint64_t n_, int64_t den_ = 1) : n(n_), den(den_), num(n_ * n_, 0) {}

    static RatMat identity(uint64_t n);

    int64_t& at(uint64_t i, uint64_t j) { return num[i * n + j]; }
    int64_t at(uint64_t i, uint64_t j) const { return num[i * n + j]; }

    bool is_symmetric() const;
    bool operator==(const RatMat& o) const;  // as rationals
    RatMat multiply(const RatMat& o) const;
    RatMat add(const RatMat& o) const;
    RatMat subtract(const RatMat& o) const;
    RatMat scale(int64_t p, int64_t q) const;  // entrywise * p/q, exact
    /// Divide out gcd(den, all numerators).
    void reduce();

    Eigen::MatrixXd dense() const;
};

inline RatMat RatMat::identity(uint64_t n_) {
    RatMat r(n_);
    for (uint64_t i = 0; i < n_; i++) {
        r.at(i, i) = 1;
    }
    return r;
}

inline bool RatMat::is_symmetric() const {
    for (uint64_t i = 0; i < n; i++) {
        for (uint64_t j = i + 1; j < n; j++) {
            if (at(i, j) != at(j, i)) {
                return false;
            }
        }
    }
    return true;
}

inline bool RatMat::operator==(const RatMat& o) const {
    if (n != o.n) {
        return false;
    }
    for (uint64_t k = 0; k < n * n; k++) {
        // num/den == num'/den'  <=>  num*den' == num'*den
        if (__int128(num[k]) * o.den != __int128(o.num[k]) * den) {
            return false;
        }
    }
    return true;
}

inline RatMat RatMat::multiply(const RatMat& o) const {
    if (n != o.n) {
        throw std::invalid_argument("RatMat::multiply dimension mismatch");
    }
    RatMat r(n, den * o.den);
    for (uint64_t i = 0; i < n; i++) {
        for (uint64_t j = 0; j < n; j++) {
            __int128 acc = 0;
            for (uint64_t k = 0; k < n; k++) {
                acc += __int128(at(i, k)) * o.at(k, j);
            }
            if (acc > INT64_MAX || acc < INT64_MIN) {
                throw std::overflow_error("RatMat::multiply overflow");
            }
            r.at(i, j) = int64_t(acc);
        }
    }
    r.reduce();
    return r;
}

inline void RatMat::reduce() {
    int64_t g = den < 0 ? -den : den;
    for (int64_t v : num) {
        g = std::gcd(g, v < 0 ? -v : v);
        if (g == 1) {
            break;
        }
    }
    if (g > 1) {
        den /= g;
        for (auto& v : num) {
            v /= g;
        }
    }
}

inline RatMat RatMat::add(const RatMat& o) const {
    if (n != o.n) {
        throw std::invalid_argument("RatMat::add dimension mismatch");
    }
    int64_t l = std::lcm(den, o.den);
    int64_t sa = l / den, sb = l / o.den;
    RatMat r(n, l);
    for (uint64_t k = 0; k < n * n; k++) {
        r.num[k] = num[k] * sa + o.num[k] * sb;
    }
    r.reduce();
    return r;
}

inline RatMat RatMat::subtract(const RatMat& o) const {
    return add(o.scale(-1, 1));
}

inline RatMat RatMat::scale(int64_t p, int64_t q) const {
    if (q == 0) {
        throw std::invalid_argument("RatMat::scale by zero denominator");
    }
    RatMat r = *this;
    r.den *= q;
    for (auto& v : r.num) {
        v *= p;
    }
    if (r.den < 0) {
        r.den = -r.den;
        for (auto& v : r.num) {
            v = -v;
        }
    }
    r.reduce();
    return r;
}

inline Eigen::MatrixXd RatMat::dense() const {
    Eigen::MatrixXd d(n, n);
    for (uint64_t i = 0; i < n; i++) {
        for (uint64_t j = 0; j < n; j++) {
            d(i, j) = double(at(i, j)) / double(den);
        }
    }
    return d;
}

}  // namespace tvd
