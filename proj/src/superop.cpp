#include "tvd/superop.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "tvd/gf2.hpp"

namespace tvd {

void check_cap(uint32_t t, uint32_t m, uint64_t cap) {
    SumZeroBasis basis(t, m);
    if (basis.dim() > cap) {
        throw resource_cap_error("sum-zero dimension " + std::to_string(basis.dim()) +
                                 " exceeds cap " + std::to_string(cap));
    }
}

Superoperator build_GP(uint32_t t, uint32_t m, uint64_t cap) {
    check_cap(t, m, cap);
    SumZeroBasis basis(t, m);
    Superoperator op;
    op.t = t;
    op.m = m;
    op.mat = RatMat::identity(basis.dim());
    return op;
}

Superoperator build_GT(uint32_t t, uint32_t m, uint64_t cap, kernels::Exec exec) {
    check_cap(t, m, cap);
    SumZeroBasis basis(t, m);
    Superoperator op;
    op.t = t;
    op.m = m;
    op.mat = RatMat(basis.dim(), int64_t(basis.labels()));
    kernels::build_gt_counts(t, m, op.mat.num.data(), exec);
    return op;
}

Superoperator build_H(uint32_t t, uint32_t m, uint64_t cap) {
    check_cap(t, m, cap);
    SumZeroBasis basis(t, m);
    const int64_t n2 = int64_t(basis.labels());  // N^2
    Superoperator op;
    op.t = t;
    op.m = m;

    if (t == 2) {
        // |0><0| + |w><w| with |w> the normalized sum over the diagonal.
        RatMat h(basis.dim(), n2 - 1);
        h.at(0, 0) = n2 - 1;
        for (uint64_t a = 1; a < basis.dim(); a++) {
            for (uint64_t b = 1; b < basis.dim(); b++) {
                h.at(a, b) = 1;
            }
        }
        op.mat = std::move(h);
        return op;
    }

    // t = 3: identity, the three diagonal sums, |C> and |NC>.
    const int64_t den = n2 * (n2 - 1) * (n2 - 4);
    RatMat h(basis.dim(), den);
    const int64_t w_num = n2 * (n2 - 4);        // 1/(N^2-1)
    const int64_t c_num = 2 * n2;               // 2/((N^2-1)(N^2-4))
    const int64_t nc_num = 2 * (n2 - 4);        // 2/(N^2(N^2-1))

    auto classify = [&](uint64_t idx) -> int {
        auto hd = basis.head_of(idx);
        uint64_t a = hd[0], b = hd[1], c = hd[0] ^ hd[1];
        if (idx == 0) {
            return 0;                   // identity
        }
        if (a == 0) {
            return 1;                   // |0,x,x>
        }
        if (b == 0) {
            return 2;                   // |x,0,x>
        }
        if (c == 0) {
            return 3;                   // |x,x,0>
        }
        return symplectic_form_raw(a, b, m) ? 5 : 4;  // NC : C
    };

    std::vector<int> cls(basis.dim());
    for (uint64_t i = 0; i < basis.dim(); i++) {
        cls[i] = classify(i);
    }
    for (uint64_t i = 0; i < basis.dim(); i++) {
        for (uint64_t j = 0; j < basis.dim(); j++) {
            if (cls[i] != cls[j]) {
                continue;
            }
            switch (cls[i]) {
                case 0: h.at(i, j) = den; break;
                case 1:
                case 2:
                case 3: h.at(i, j) = w_num; break;
                case 4: h.at(i, j) = c_num; break;
                case 5: h.at(i, j) = nc_num; break;
            }
        }
    }
    h.reduce();
    op.mat = std::move(h);
    return op;
}

Superoperator sp_average_H(uint32_t t, uint32_t m) {
    SumZeroBasis basis(t, m);
    auto sp = enumerate_sp(m);
    RatMat h(basis.dim(), int64_t(sp.size()));
    for (const auto& S : sp) {
        // Precompute the label image once per group element.
        std::vector<uint64_t> img(basis.labels());
        for (uint64_t a = 0; a < basis.labels(); a++) {
            img[a] = S.apply(F2Vec(a, m)).bits;
        }
        for (uint64_t y = 0; y < basis.dim(); y++) {
            auto hd = basis.head_of(y);
            uint64_t x = basis.index_of({img[hd[0]], t == 2 ? 0 : img[hd[1]]});
            h.at(x, y)++;
        }
    }
    h.reduce();
    Superoperator op;
    op.t = t;
    op.m = m;
    op.mat = std::move(h);
    return op;
}

namespace {

bool is_scaled_identity(const RatMat& r) {
    for (uint64_t i = 0; i < r.n; i++) {
        for (uint64_t j = 0; j < r.n; j++) {
            if (r.at(i, j) != (i == j ? r.den : 0)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

Superoperator compose(const Superoperator& A, const Superoperator& B) {
    if (A.dim() != B.dim() || A.t != B.t || A.m != B.m) {
        throw std::invalid_argument("compose dimension mismatch");
    }
    // The Pauli twirl is the identity on this sector; skip the full product
    // when either factor is one.
    if (is_scaled_identity(B.mat)) {
        return A;
    }
    if (is_scaled_identity(A.mat)) {
        return B;
    }
    Superoperator op;
    op.t = A.t;
    op.m = A.m;
    op.mat = RatMat(A.dim(), A.mat.den * B.mat.den);
    kernels::matmul_i64(A.mat.num.data(), B.mat.num.data(), op.mat.num.data(), A.dim(),
                        kernels::Exec::parallel);
    op.mat.reduce();
    return op;
}

Eigen::VectorXd power_apply(const Superoperator& A, uint64_t k, const Eigen::VectorXd& v) {
    if (uint64_t(v.size()) != A.dim()) {
        throw std::invalid_argument("power_apply dimension mismatch");
    }
    Eigen::MatrixXd d = A.dense();
    Eigen::VectorXd cur = v;
    for (uint64_t i = 0; i < k; i++) {
        cur = d * cur;
    }
    return cur;
}

double symmetric_op_norm_power(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                               uint64_t n, double tol, uint64_t seed, uint64_t max_iters) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd v(n);
    for (uint64_t i = 0; i < n; i++) {
        v(i) = gauss(rng);
    }
    v.normalize();
    Eigen::VectorXd w(n);
    double rho_prev = 0.0;
    for (uint64_t it = 0; it < max_iters; it++) {
        apply(v, w);
        double rho = w.norm();
        if (rho == 0.0) {
            return 0.0;
        }
        v = w / rho;
        if (it > 2 && std::abs(rho - rho_prev) <= tol * std::max(1.0, rho)) {
            return rho;
        }
        rho_prev = rho;
    }
    return rho_prev;
}

SparseSuperoperator build_GT_sparse(uint32_t t, uint32_t m, uint64_t dim_limit) {
    SumZeroBasis basis(t, m);
    if (basis.dim() > dim_limit) {
        throw resource_cap_error("sparse dimension " + std::to_string(basis.dim()) +
                                 " exceeds limit " + std::to_string(dim_limit));
    }
    SparseSuperoperator sp;
    sp.t = t;
    sp.m = m;
    sp.n = basis.dim();
    sp.den = int64_t(basis.labels());
    sp.row_ptr.assign(sp.n + 1, 0);

    // T_h is an involution, so row x gathers from exactly the columns
    // transvect(x, h); dedup per row.
    const uint64_t nh = basis.labels();
    std::vector<std::vector<std::pair<uint64_t, int64_t>>> rows(sp.n);
    for (uint64_t x = 0; x < sp.n; x++) {
        std::vector<uint64_t> imgs(nh);
        for (uint64_t h = 0; h < nh; h++) {
            imgs[h] = basis.transvect(x, h);
        }
        std::sort(imgs.begin(), imgs.end());
        auto& row = rows[x];
        for (uint64_t i = 0; i < nh;) {
            uint64_t j = i;
            while (j < nh && imgs[j] == imgs[i]) {
                j++;
            }
            row.push_back({imgs[i], int64_t(j - i)});
            i = j;
        }
        sp.row_ptr[x + 1] = sp.row_ptr[x] + row.size();
    }
    sp.col_idx.resize(sp.row_ptr[sp.n]);
    sp.val.resize(sp.row_ptr[sp.n]);
    for (uint64_t x = 0; x < sp.n; x++) {
        uint64_t at = sp.row_ptr[x];
        for (const auto& [c, v] : rows[x]) {
            sp.col_idx[at] = c;
            sp.val[at] = v;
            at++;
        }
    }
    return sp;
}

void SparseSuperoperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y,
                                kernels::Exec exec) const {
    if (uint64_t(x.size()) != n) {
        throw std::invalid_argument("SparseSuperoperator::apply dimension mismatch");
    }
    y.resize(int64_t(n));
    const double inv_den = 1.0 / double(den);
    const int64_t rows = int64_t(n);
#pragma omp parallel for schedule(static) if (exec == kernels::Exec::parallel)
    for (int64_t i = 0; i < rows; i++) {
        double acc = 0.0;
        for (uint64_t k = row_ptr[i]; k < row_ptr[i + 1]; k++) {
            acc += double(val[k]) * x(int64_t(col_idx[k]));
        }
        y(i) = acc * inv_den;
    }
}

Eigen::MatrixXd haar_basis(uint32_t t, uint32_t m) {
    SumZeroBasis basis(t, m);
    const double n2 = double(basis.labels());
    const uint64_t dim = basis.dim();
    if (t == 2) {
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(int64_t(dim), 2);
        b(0, 0) = 1.0;
        for (uint64_t a = 1; a < dim; a++) {
            b(int64_t(a), 1) = 1.0 / std::sqrt(n2 - 1.0);
        }
        return b;
    }
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(int64_t(dim), 6);
    const double w_norm = 1.0 / std::sqrt(n2 - 1.0);
    const double c_norm = std::sqrt(2.0 / ((n2 - 1.0) * (n2 - 4.0)));
    const double nc_norm = std::sqrt(2.0 / (n2 * (n2 - 1.0)));
    b(0, 0) = 1.0;
    for (uint64_t i = 1; i < dim; i++) {
        auto hd = basis.head_of(i);
        uint64_t a = hd[0], c = hd[1], s = hd[0] ^ hd[1];
        if (a == 0) {
            b(int64_t(i), 1) = w_norm;
        } else if (c == 0) {
            b(int64_t(i), 2) = w_norm;
        } else if (s == 0) {
            b(int64_t(i), 3) = w_norm;
        } else if (symplectic_form_raw(a, c, m) == 0) {
            b(int64_t(i), 4) = c_norm;
        } else {
            b(int64_t(i), 5) = nc_norm;
        }
    }
    return b;
}

double op_norm(const Superoperator& A, const Superoperator* deflate, double tol,
               uint64_t dense_eig_limit) {
    if (!A.is_symmetric()) {
        throw std::invalid_argument("op_norm requires a symmetric superoperator");
    }
    if (deflate != nullptr && (!deflate->is_symmetric() || deflate->dim() != A.dim())) {
        throw std::invalid_argument("op_norm: bad deflation operator");
    }
    if (A.dim() <= dense_eig_limit) {
        Eigen::MatrixXd d = A.dense();
        if (deflate != nullptr) {
            d -= deflate->dense();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d, Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::MatrixXd a = A.dense();
    Eigen::MatrixXd dfl;
    if (deflate != nullptr) {
        dfl = deflate->dense();
    }
    auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        kernels::matvec(a.data(), A.dim(), x.data(), y.data(), kernels::Exec::parallel);
        if (deflate != nullptr) {
            Eigen::VectorXd z(x.size());
            kernels::matvec(dfl.data(), A.dim(), x.data(), z.data(), kernels::Exec::parallel);
            y -= z;
        }
    };
    return symmetric_op_norm_power(apply, A.dim(), tol);
}

}  // namespace tvd
