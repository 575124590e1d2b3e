#include "tvd/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "tvd/gf2.hpp"
#include "tvd/s3.hpp"
#include "tvd/superop.hpp"

namespace tvd {

std::vector<uint64_t> transvection_perm(const SumZeroBasis& basis, uint64_t h) {
    std::vector<uint64_t> img(basis.dim());
    for (uint64_t i = 0; i < basis.dim(); i++) {
        img[i] = basis.transvect(i, h);
    }
    return img;
}

Eigen::VectorXd apply_transvection(const SumZeroBasis& basis, uint64_t h,
                                   const Eigen::VectorXd& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    for (uint64_t i = 0; i < basis.dim(); i++) {
        out(int64_t(basis.transvect(i, h))) = v(int64_t(i));
    }
    return out;
}

Eigen::VectorXd apply_gt(const SumZeroBasis& basis, const Eigen::VectorXd& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    for (uint64_t h = 0; h < basis.labels(); h++) {
        for (uint64_t i = 0; i < basis.dim(); i++) {
            out(int64_t(basis.transvect(i, h))) += v(int64_t(i));
        }
    }
    return out / double(basis.labels());
}

Eigen::VectorXd hat_ab(uint32_t m, uint64_t a, uint64_t b) {
    if (a == 0 || symplectic_form_raw(a, b, m) != 0) {
        throw std::invalid_argument("hat_ab requires a != 0 and <a,b> = 0");
    }
    SumZeroBasis basis(3, m);
    const double N = double(uint64_t(1) << m);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(int64_t(basis.dim()));
    for (uint64_t h = 0; h < basis.labels(); h++) {
        if (symplectic_form_raw(a, h, m) != 1) {
            continue;
        }
        double sign = symplectic_form_raw(b, h, m) ? -1.0 : 1.0;
        v(int64_t(basis.index_of({a, h}))) = sign * std::sqrt(2.0) / N;
    }
    return v;
}

Eigen::VectorXd hat_c(uint32_t m, uint64_t a) {
    if (a == 0) {
        throw std::invalid_argument("hat_c requires a != 0");
    }
    SumZeroBasis basis(3, m);
    const double n2 = double(num_labels(m));
    Eigen::VectorXd v = Eigen::VectorXd::Zero(int64_t(basis.dim()));
    for (uint64_t h = 0; h < basis.labels(); h++) {
        if (h == 0 || h == a || symplectic_form_raw(a, h, m) != 0) {
            continue;
        }
        v(int64_t(basis.index_of({a, h}))) = std::sqrt(2.0 / (n2 - 4.0));
    }
    return v;
}

Eigen::VectorXd vec_A(uint32_t m, uint64_t a) {
    if (a == 0) {
        throw std::invalid_argument("vec_A requires a != 0");
    }
    SumZeroBasis basis(3, m);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(int64_t(basis.dim()));
    for (uint64_t h = 1; h < basis.labels(); h++) {
        if (h == a || symplectic_form_raw(h, a, m) != 0) {
            continue;
        }
        v += hat_ab(m, h, a);
    }
    return v;
}

Eigen::MatrixXd gram_A(uint32_t m) {
    const int64_t n = int64_t(num_labels(m)) - 1;
    Eigen::MatrixXd A(int64_t(SumZeroBasis(3, m).dim()), n);
    for (int64_t a = 1; a <= n; a++) {
        A.col(a - 1) = vec_A(m, uint64_t(a));
    }
    return A.transpose() * A;
}

SpectrumReport gram_A_spectrum(uint32_t m, double group_tol) {
    Eigen::MatrixXd G = gram_A(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    SpectrumReport rep;
    rep.t = 3;
    rep.m = m;
    rep.op_name = "gram_A";
    const auto& vals = es.eigenvalues();
    int64_t i = vals.size() - 1;
    while (i >= 0) {
        int64_t j = i;
        while (j - 1 >= 0 && std::abs(vals(j - 1) - vals(i)) <= group_tol) {
            j--;
        }
        rep.groups.push_back({vals(i), uint64_t(i - j + 1), SectorTag::Other});
        i = j - 1;
    }
    return rep;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& cols, double drop_tol) {
    Eigen::MatrixXd basis(cols.rows(), cols.cols());
    int64_t r = 0;
    for (int64_t c = 0; c < cols.cols(); c++) {
        Eigen::VectorXd v = cols.col(c);
        // Two MGS passes keep the basis orthonormal to machine precision.
        for (int pass = 0; pass < 2; pass++) {
            for (int64_t k = 0; k < r; k++) {
                v -= basis.col(k).dot(v) * basis.col(k);
            }
        }
        double norm = v.norm();
        if (norm > drop_tol) {
            basis.col(r++) = v / norm;
        }
    }
    return basis.leftCols(r);
}

std::string subspace_label_name(SubspaceLabel label) {
    switch (label) {
        case SubspaceLabel::Vnc_d: return "Vnc_d";
        case SubspaceLabel::Vnc_1: return "Vnc_1";
        case SubspaceLabel::Vnc_2: return "Vnc_2";
        case SubspaceLabel::Vnc_nullS: return "Vnc_nullS";
        case SubspaceLabel::Vnc_null1: return "Vnc_null1";
        case SubspaceLabel::Vnc_complement: return "Vnc_complement";
        case SubspaceLabel::Vc_d: return "Vc_d";
        case SubspaceLabel::W_image: return "W_image";
    }
    return "?";
}

namespace {

// Valid (a,b) arguments of the null-space triples: both nonzero, distinct,
// commuting.
std::vector<std::pair<uint64_t, uint64_t>> null_pairs(uint32_t m) {
    std::vector<std::pair<uint64_t, uint64_t>> out;
    for (uint64_t a = 1; a < num_labels(m); a++) {
        for (uint64_t b = 1; b < num_labels(m); b++) {
            if (b != a && symplectic_form_raw(a, b, m) == 0) {
                out.push_back({a, b});
            }
        }
    }
    return out;
}

// The triple vector is invariant under (a,b) -> (b,a+b) -> (a+b,a); one
// representative per orbit spans the same space with a third of the columns.
std::vector<std::pair<uint64_t, uint64_t>> null_pair_orbits(uint32_t m) {
    std::vector<std::pair<uint64_t, uint64_t>> out;
    for (const auto& [a, b] : null_pairs(m)) {
        std::pair<uint64_t, uint64_t> alts[3] = {{a, b}, {b, a ^ b}, {a ^ b, a}};
        if (*std::min_element(alts, alts + 3) == alts[0]) {
            out.push_back({a, b});
        }
    }
    return out;
}

Eigen::VectorXd null_triple(uint32_t m, uint64_t a, uint64_t b) {
    return hat_ab(m, a, b) + hat_ab(m, b, a ^ b) + hat_ab(m, a ^ b, a);
}

Eigen::MatrixXd k_eigenvectors(uint32_t m, int sign, double tol = 1e-9) {
    const double N = double(uint64_t(1) << m);
    Eigen::MatrixXd K = commutation_matrix(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    std::vector<int64_t> take;
    for (int64_t i = 0; i < es.eigenvalues().size(); i++) {
        if (std::abs(es.eigenvalues()(i) - sign * N / 2.0) <= tol) {
            take.push_back(i);
        }
    }
    Eigen::MatrixXd out(K.rows(), int64_t(take.size()));
    for (size_t i = 0; i < take.size(); i++) {
        out.col(int64_t(i)) = es.eigenvectors().col(take[i]);
    }
    return out;
}

Eigen::MatrixXd matrix_A(uint32_t m) {
    const int64_t n = int64_t(num_labels(m)) - 1;
    Eigen::MatrixXd A(int64_t(SumZeroBasis(3, m).dim()), n);
    for (int64_t a = 1; a <= n; a++) {
        A.col(a - 1) = vec_A(m, uint64_t(a));
    }
    return A;
}

// Orthonormal basis of the (23)-symmetric span of the NC sector.
Eigen::MatrixXd nc_sym_basis(uint32_t m) {
    SumZeroBasis basis(3, m);
    std::vector<Eigen::VectorXd> cols;
    for (uint64_t a = 1; a < basis.labels(); a++) {
        for (uint64_t b = 1; b < basis.labels(); b++) {
            if (symplectic_form_raw(a, b, m) != 1 || b > (a ^ b)) {
                continue;  // one representative per unordered pair {b, a+b}
            }
            Eigen::VectorXd v = Eigen::VectorXd::Zero(int64_t(basis.dim()));
            v(int64_t(basis.index_of({a, b}))) = 1.0 / std::sqrt(2.0);
            v(int64_t(basis.index_of({a, a ^ b}))) = 1.0 / std::sqrt(2.0);
            cols.push_back(v);
        }
    }
    Eigen::MatrixXd out(int64_t(basis.dim()), int64_t(cols.size()));
    for (size_t i = 0; i < cols.size(); i++) {
        out.col(int64_t(i)) = cols[i];
    }
    return out;
}

constexpr SubspaceLabel kNcInvariantLabels[] = {SubspaceLabel::Vnc_d, SubspaceLabel::Vnc_1,
                                             SubspaceLabel::Vnc_2, SubspaceLabel::Vnc_nullS,
                                             SubspaceLabel::Vnc_null1};

Eigen::MatrixXd concat_cols(const std::vector<const Eigen::MatrixXd*>& parts) {
    int64_t total = 0;
    for (const auto* p : parts) {
        total += p->cols();
    }
    Eigen::MatrixXd all(parts[0]->rows(), total);
    int64_t at = 0;
    for (const auto* p : parts) {
        all.middleCols(at, p->cols()) = *p;
        at += p->cols();
    }
    return all;
}

}  // namespace

namespace {

using SubspaceCache = std::map<SubspaceLabel, SubspaceBasis>;

const SubspaceBasis& build_cached(SubspaceCache& cache, SubspaceLabel label, uint32_t m);

SubspaceBasis build_impl(SubspaceCache& cache, SubspaceLabel label, uint32_t m) {
    SumZeroBasis basis(3, m);
    const uint64_t n2 = num_labels(m);
    const double N = double(uint64_t(1) << m);
    SubspaceBasis s;
    s.label = label;
    s.m = m;

    switch (label) {
        case SubspaceLabel::Vnc_d: {
            Eigen::MatrixXd cols(int64_t(basis.dim()), int64_t(n2 - 1));
            for (uint64_t a = 1; a < n2; a++) {
                cols.col(int64_t(a - 1)) = hat_ab(m, a, 0);
            }
            s.vectors = orthonormalize(cols);
            s.claimed_dim = n2 - 1;
            break;
        }
        case SubspaceLabel::Vc_d: {
            Eigen::MatrixXd cols(int64_t(basis.dim()), int64_t(n2 - 1));
            for (uint64_t a = 1; a < n2; a++) {
                cols.col(int64_t(a - 1)) = hat_c(m, a);
            }
            s.vectors = orthonormalize(cols);
            s.claimed_dim = n2 - 1;
            break;
        }
        case SubspaceLabel::Vnc_1:
        case SubspaceLabel::Vnc_2: {
            // Coefficient constraints solved as +-N/2 eigenvectors of the
            // commutation matrix; the +N/2 commuting-sum family is K = -N/2.
            int ksign = label == SubspaceLabel::Vnc_1 ? -1 : +1;
            Eigen::MatrixXd lambda = k_eigenvectors(m, ksign);
            s.vectors = orthonormalize(matrix_A(m) * lambda);
            s.claimed_dim = ksign < 0 ? uint64_t(N * (N + 1) / 2) - 1
                                      : uint64_t(N * (N - 1) / 2) - 1;
            break;
        }
        case SubspaceLabel::Vnc_nullS:
        case SubspaceLabel::Vnc_null1: {
            // P_S v = (v + W_123 v + W_132 v)/3 and P_1 = id - P_S, applied
            // as index permutations.
            auto p123 = s3_index_perm(m, Perm3::c123());
            auto p132 = s3_index_perm(m, Perm3::c132());
            auto pairs = null_pair_orbits(m);
            Eigen::MatrixXd cols(int64_t(basis.dim()), int64_t(pairs.size()));
            for (size_t i = 0; i < pairs.size(); i++) {
                Eigen::VectorXd v = null_triple(m, pairs[i].first, pairs[i].second);
                Eigen::VectorXd ps = v;
                for (uint64_t r = 0; r < basis.dim(); r++) {
                    ps(int64_t(p123[r])) += v(int64_t(r));
                    ps(int64_t(p132[r])) += v(int64_t(r));
                }
                ps /= 3.0;
                cols.col(int64_t(i)) = label == SubspaceLabel::Vnc_nullS ? ps : v - ps;
            }
            s.vectors = orthonormalize(cols);
            s.claimed_dim = s.dim();
            break;
        }
        case SubspaceLabel::Vnc_complement: {
            Eigen::MatrixXd sym = nc_sym_basis(m);
            std::vector<const Eigen::MatrixXd*> parts;
            for (auto l : kNcInvariantLabels) {
                parts.push_back(&build_cached(cache, l, m).vectors);
            }
            Eigen::MatrixXd listed = concat_cols(parts);
            Eigen::MatrixXd residual = sym - listed * (listed.transpose() * sym);
            s.vectors = orthonormalize(residual);
            s.claimed_dim = s.dim();
            break;
        }
        case SubspaceLabel::W_image: {
            const SubspaceBasis& vd = build_cached(cache, SubspaceLabel::Vnc_d, m);
            Eigen::MatrixXd w = s3_w_diff(m).dense();
            s.vectors = orthonormalize(w * vd.vectors);
            s.claimed_dim = s.dim();
            break;
        }
    }
    return s;
}

const SubspaceBasis& build_cached(SubspaceCache& cache, SubspaceLabel label, uint32_t m) {
    auto it = cache.find(label);
    if (it == cache.end()) {
        it = cache.emplace(label, build_impl(cache, label, m)).first;
    }
    return it->second;
}

}  // namespace

SubspaceBasis build_subspace(SubspaceLabel label, uint32_t m) {
    SubspaceCache cache;
    return build_impl(cache, label, m);
}

double verify_invariance(const SubspaceBasis& S) {
    SumZeroBasis basis(3, S.m);
    const Eigen::MatrixXd& B = S.vectors;
    double worst = 0.0;
    for (uint64_t h = 0; h < basis.labels(); h++) {
        auto perm = transvection_perm(basis, h);
        Eigen::MatrixXd UB(B.rows(), B.cols());
        for (uint64_t i = 0; i < uint64_t(B.rows()); i++) {
            UB.row(int64_t(perm[i])) = B.row(int64_t(i));
        }
        Eigen::MatrixXd off = UB - B * (B.transpose() * UB);
        double r = off.norm();  // Frobenius upper-bounds the spectral norm
        if (r > 1e-13) {
            r = Eigen::JacobiSVD<Eigen::MatrixXd>(off).singularValues()(0);
        }
        worst = std::max(worst, r);
    }
    return worst;
}

bool verify_null_eigenspace(uint32_t m, double tol, uint64_t num_random, uint64_t seed) {
    SumZeroBasis basis(3, m);
    auto pairs = null_pairs(m);
    std::vector<std::pair<uint64_t, uint64_t>> chosen;
    if (m <= 2 || pairs.size() <= num_random) {
        chosen = pairs;
    } else {
        std::mt19937_64 rng(seed);
        for (uint64_t i = 0; i < num_random; i++) {
            chosen.push_back(pairs[rng() % pairs.size()]);
        }
    }
    for (const auto& [a, b] : chosen) {
        Eigen::VectorXd v = null_triple(m, a, b);
        Eigen::VectorXd r = apply_gt(basis, v) - 0.25 * v;
        if (r.norm() > tol * std::max(1.0, v.norm())) {
            return false;
        }
    }
    return true;
}

double intertwiner_check(IntertwinerKind kind, uint32_t m) {
    SumZeroBasis b3(3, m);
    SumZeroBasis b2(2, m);
    const uint64_t n2 = num_labels(m);

    // t=2 diagonal-sector permutation action on the labels 1..N^2-1.
    auto diag_perm = [&](uint64_t h) {
        std::vector<uint64_t> img(n2);
        for (uint64_t a = 1; a < n2; a++) {
            img[a] = transvection_apply_raw(h, a, m);
        }
        return img;
    };

    double worst = 0.0;
    switch (kind) {
        case IntertwinerKind::d_to_nc:
        case IntertwinerKind::d_to_c: {
            Eigen::MatrixXd L(int64_t(b3.dim()), int64_t(n2 - 1));
            for (uint64_t a = 1; a < n2; a++) {
                L.col(int64_t(a - 1)) = kind == IntertwinerKind::d_to_nc
                                            ? hat_ab(m, a, 0)
                                            : hat_c(m, a);
            }
            for (uint64_t h = 0; h < n2; h++) {
                auto perm3 = transvection_perm(b3, h);
                auto permd = diag_perm(h);
                Eigen::MatrixXd lhs(L.rows(), L.cols());
                for (uint64_t i = 0; i < uint64_t(L.rows()); i++) {
                    lhs.row(int64_t(perm3[i])) = L.row(int64_t(i));
                }
                Eigen::MatrixXd rhs(L.rows(), L.cols());
                for (uint64_t a = 1; a < n2; a++) {
                    rhs.col(int64_t(permd[a] - 1)) = L.col(int64_t(a - 1));
                }
                worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
            }
            return worst;
        }
        case IntertwinerKind::K_V12: {
            // K sends sum_a lambda_a |A(a)> to sum_a lambda_a |a,a>, on the
            // coefficient subspace sum lambda = 0. Verified through the
            // pseudo-inverse so K is computed, not assumed.
            Eigen::MatrixXd MA = matrix_A(m);
            // Basis of {lambda : sum lambda = 0}.
            int64_t n = int64_t(n2) - 1;
            Eigen::MatrixXd C(n, n - 1);
            for (int64_t j = 0; j < n - 1; j++) {
                Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
                c(j) = 1.0;
                c(j + 1) = -1.0;
                C.col(j) = c;
            }
            Eigen::MatrixXd MAC = MA * C;  // full column rank
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(MAC);
            auto k_of = [&](const Eigen::VectorXd& w) {
                Eigen::VectorXd mu = qr.solve(w);
                Eigen::VectorXd lambda = C * mu;
                Eigen::VectorXd out = Eigen::VectorXd::Zero(int64_t(b2.dim()));
                for (int64_t a = 1; a <= n; a++) {
                    out(a) = lambda(a - 1);
                }
                return out;
            };
            Eigen::MatrixXd domain = MAC;
            for (uint64_t h = 0; h < n2; h++) {
                auto perm3 = transvection_perm(b3, h);
                auto perm2 = transvection_perm(b2, h);
                for (int64_t c = 0; c < domain.cols(); c++) {
                    Eigen::VectorXd w = domain.col(c);
                    Eigen::VectorXd uw(w.size());
                    uw.setZero();
                    for (uint64_t i = 0; i < uint64_t(w.size()); i++) {
                        uw(int64_t(perm3[i])) = w(int64_t(i));
                    }
                    Eigen::VectorXd kw = k_of(w);
                    Eigen::VectorXd ukw(kw.size());
                    ukw.setZero();
                    for (uint64_t i = 0; i < uint64_t(kw.size()); i++) {
                        ukw(int64_t(perm2[i])) = kw(int64_t(i));
                    }
                    double r = (k_of(uw) - ukw).norm();
                    worst = std::max(worst, r / std::max(1.0, kw.norm()));
                }
            }
            return worst;
        }
    }
    return worst;
}

WMapReport W_map_check(uint32_t m, const std::vector<SubspaceBasis>& prebuilt) {
    WMapReport rep;
    SumZeroBasis basis(3, m);
    const uint64_t dim = basis.dim();

    // W and the S3 projectors are signed sums of basis permutations, so
    // every exact product here is a permutation composition, not a matmul.
    std::array<std::vector<uint64_t>, 6> perms;
    {
        auto all = all_perm3();
        for (size_t i = 0; i < 6; i++) {
            perms[i] = s3_index_perm(m, all[i]);
        }
    }
    const auto& p123 = perms[4];
    const auto& p132 = perms[5];
    const auto& p23 = perms[3];

    // W P_CS = 0: per column, the (123)-shifted images of the six group
    // elements must cancel the (132)-shifted ones.
    {
        bool zero = true;
        std::vector<int32_t> acc(dim, 0);
        for (uint64_t j = 0; j < dim && zero; j++) {
            std::vector<uint64_t> touched;
            for (const auto& p : perms) {
                uint64_t x = p[j];
                acc[p123[x]] += 1;
                acc[p132[x]] -= 1;
                touched.push_back(p123[x]);
                touched.push_back(p132[x]);
            }
            for (uint64_t t : touched) {
                zero = zero && acc[t] == 0;
                acc[t] = 0;
            }
        }
        rep.w_pcs_zero_exact = zero;
    }

    // [W, GT] = 0: column j of W GT is the signed permutation of GT's
    // column j; column j of GT W is a signed difference of two GT columns.
    Superoperator gt = build_GT(3, m);
    {
        bool equal = true;
        std::vector<int64_t> lhs(dim);
        for (uint64_t j = 0; j < dim && equal; j++) {
            std::fill(lhs.begin(), lhs.end(), 0);
            for (uint64_t i = 0; i < dim; i++) {
                int64_t v = gt.mat.at(i, j);
                if (v != 0) {
                    lhs[p123[i]] += v;
                    lhs[p132[i]] -= v;
                }
            }
            uint64_t ja = p123[j], jb = p132[j];
            for (uint64_t i = 0; i < dim; i++) {
                equal = equal && lhs[i] == gt.mat.at(i, ja) - gt.mat.at(i, jb);
            }
        }
        rep.w_commutes_gt_exact = equal;
    }

    // P+ W P+ = 0 for P+ = (id + W23)/2: each column expands into eight
    // signed unit vectors that must cancel.
    {
        bool zero = true;
        std::vector<int32_t> acc(dim, 0);
        for (uint64_t j = 0; j < dim && zero; j++) {
            uint64_t srcs[2] = {j, p23[j]};
            std::vector<uint64_t> touched;
            for (uint64_t s : srcs) {
                for (int sign : {+1, -1}) {
                    uint64_t x = sign > 0 ? p123[s] : p132[s];
                    acc[x] += sign;
                    acc[p23[x]] += sign;
                    touched.push_back(x);
                    touched.push_back(p23[x]);
                }
            }
            for (uint64_t t : touched) {
                zero = zero && acc[t] == 0;
                acc[t] = 0;
            }
        }
        rep.anticommute_exact = zero;
    }

    Eigen::MatrixXd wd = Eigen::MatrixXd::Zero(int64_t(dim), int64_t(dim));
    Eigen::MatrixXd pcs_d = Eigen::MatrixXd::Zero(int64_t(dim), int64_t(dim));
    Eigen::MatrixXd pp_d = Eigen::MatrixXd::Zero(int64_t(dim), int64_t(dim));
    for (uint64_t j = 0; j < dim; j++) {
        wd(int64_t(p123[j]), int64_t(j)) += 1.0;
        wd(int64_t(p132[j]), int64_t(j)) -= 1.0;
        for (const auto& p : perms) {
            pcs_d(int64_t(p[j]), int64_t(j)) += 1.0 / 6.0;
        }
        pp_d(int64_t(j), int64_t(j)) += 0.5;
        pp_d(int64_t(p23[j]), int64_t(j)) += 0.5;
    }
    for (auto label : kNcInvariantLabels) {
        const SubspaceBasis* src = nullptr;
        for (const auto& s : prebuilt) {
            if (s.label == label) {
                src = &s;
            }
        }
        SubspaceBasis fresh;
        if (src == nullptr) {
            fresh = build_subspace(label, m);
            src = &fresh;
        }
        WSubspaceEntry e;
        e.label = label;
        e.source_dim = src->dim();
        Eigen::MatrixXd wb = wd * src->vectors;
        Eigen::MatrixXd image = orthonormalize(wb);
        e.image_rank = uint64_t(image.cols());
        if (image.cols() > 0) {
            SubspaceBasis im;
            im.label = label;
            im.m = m;
            im.vectors = image;
            e.invariance_residual = verify_invariance(im);
            e.cs_overlap = (pcs_d * image).cwiseAbs().maxCoeff();
            e.sym_overlap = (pp_d * image).cwiseAbs().maxCoeff();
        }
        rep.entries.push_back(e);
    }
    return rep;
}

WMapReport W_map_check(uint32_t m) {
    return W_map_check(m, {});
}

double InnerProductChecks::max_err() const {
    return std::max(std::max(inner11_err, inner_ps_err), std::max(inner_pw_err, inner_c_err));
}

InnerProductChecks inner_product_checks(uint32_t m) {
    InnerProductChecks out;
    const uint64_t n2 = num_labels(m);
    const double n2d = double(n2);

    // <a^;b|c^;d> = delta_ac (delta_bd - delta_{b+d,a}).
    std::vector<std::pair<uint64_t, uint64_t>> hats;
    for (uint64_t a = 1; a < n2; a++) {
        for (uint64_t b = 0; b < n2; b++) {
            if (symplectic_form_raw(a, b, m) == 0) {
                hats.push_back({a, b});
            }
        }
    }
    std::vector<Eigen::VectorXd> hv;
    hv.reserve(hats.size());
    for (auto [a, b] : hats) {
        hv.push_back(hat_ab(m, a, b));
    }
    for (size_t i = 0; i < hats.size(); i++) {
        for (size_t j = i; j < hats.size(); j++) {
            auto [a, b] = hats[i];
            auto [c, d] = hats[j];
            double expect =
                a == c ? ((b == d ? 1.0 : 0.0) - ((b ^ d) == a ? 1.0 : 0.0)) : 0.0;
            out.inner11_err = std::max(out.inner11_err, std::abs(hv[i].dot(hv[j]) - expect));
        }
    }

    // <a^|P_S|b^> and the Omega-kind analog, through the real pair
    // {P1, i(P_w - P_w*)} = {P1, -W/sqrt(3)}.
    Eigen::MatrixXd ps = s3_projector_rat(m, S3Kind::S).dense();
    Eigen::MatrixXd p1 = s3_projector_rat(m, S3Kind::P1).dense();
    Eigen::MatrixXd wd = s3_w_diff(m).dense();
    std::vector<Eigen::VectorXd> hat0(n2);
    for (uint64_t a = 1; a < n2; a++) {
        hat0[a] = hat_ab(m, a, 0);
    }
    for (uint64_t a = 1; a < n2; a++) {
        Eigen::VectorXd ps_b = ps * hat0[a];
        Eigen::VectorXd p1_b = p1 * hat0[a];
        Eigen::VectorXd w_b = wd * hat0[a];
        for (uint64_t b = 1; b < n2; b++) {
            double anti = symplectic_form_raw(a, b, m) ? 1.0 : 0.0;
            double same = a == b ? 1.0 : 0.0;
            double expect_s = (same + 4.0 / n2d * anti) / 3.0;
            out.inner_ps_err =
                std::max(out.inner_ps_err, std::abs(hat0[b].dot(ps_b) - expect_s));
            // <b^|P_w|a^> = <b^|P1|a^>/2 + i <b^|W|a^>/(2 sqrt 3); the claim
            // is the real value (delta_ab - 2/N^2 delta_<>) / 3.
            double expect_w = (same - 2.0 / n2d * anti) / 3.0;
            out.inner_pw_err =
                std::max(out.inner_pw_err, std::abs(0.5 * hat0[b].dot(p1_b) - expect_w));
            out.inner_pw_err =
                std::max(out.inner_pw_err, std::abs(hat0[b].dot(w_b)) / (2.0 * std::sqrt(3.0)));
        }
    }

    // Commuting-sector inner products against P_S and the Omega kinds.
    std::vector<Eigen::VectorXd> qc(n2);
    for (uint64_t a = 1; a < n2; a++) {
        qc[a] = hat_c(m, a);
    }
    for (uint64_t a = 1; a < n2; a++) {
        Eigen::VectorXd ps_b = ps * qc[a];
        Eigen::VectorXd p1_b = p1 * qc[a];
        Eigen::VectorXd w_b = wd * qc[a];
        for (uint64_t b = 1; b < n2; b++) {
            double comm = (a != b && symplectic_form_raw(a, b, m) == 0) ? 1.0 : 0.0;
            double same = a == b ? 1.0 : 0.0;
            double expect_s = (same + 4.0 / (n2d - 4.0) * comm) / 3.0;
            double expect_w = (same - 2.0 / (n2d - 4.0) * comm) / 3.0;
            out.inner_c_err =
                std::max(out.inner_c_err, std::abs(qc[b].dot(ps_b) - expect_s));
            out.inner_c_err =
                std::max(out.inner_c_err, std::abs(0.5 * qc[b].dot(p1_b) - expect_w));
            out.inner_c_err =
                std::max(out.inner_c_err, std::abs(qc[b].dot(w_b)) / (2.0 * std::sqrt(3.0)));
        }
    }
    return out;
}

bool VerificationReport::pass() const {
    for (const auto& s : subspaces) {
        if (s.invariance_residual > invariance_tol ||
            s.orthogonality_max > orthogonality_tol || s.gt_block_residual > invariance_tol) {
            return false;
        }
    }
    if (d_to_nc_residual > intertwiner_tol || d_to_c_residual > intertwiner_tol ||
        k_v12_residual > intertwiner_tol) {
        return false;
    }
    if (!gram_ok || !null_eigenspace_ok || !dimension_accounting_ok) {
        return false;
    }
    if (inner.max_err() > inner_tol) {
        return false;
    }
    if (!wmap.w_pcs_zero_exact || !wmap.w_commutes_gt_exact || !wmap.anticommute_exact) {
        return false;
    }
    if (negative_control_residual && *negative_control_residual > invariance_tol) {
        return false;  // the injected control counts as a failing subspace
    }
    return true;
}

VerificationReport run_verification(uint32_t m, bool negative_control, uint64_t seed) {
    VerificationReport rep;
    rep.m = m;
    SumZeroBasis basis(3, m);
    const double N = double(uint64_t(1) << m);
    const double n2d = N * N;

    SubspaceCache cache;
    std::vector<SubspaceBasis> list;
    std::vector<SubspaceLabel> labels = {
        SubspaceLabel::Vnc_d,     SubspaceLabel::Vnc_1,          SubspaceLabel::Vnc_2,
        SubspaceLabel::Vnc_nullS, SubspaceLabel::Vnc_null1,      SubspaceLabel::Vnc_complement,
        SubspaceLabel::Vc_d,      SubspaceLabel::W_image};
    for (auto l : labels) {
        list.push_back(build_cached(cache, l, m));
    }

    for (size_t i = 0; i < list.size(); i++) {
        SubspaceCheck c;
        c.label = list[i].label;
        c.dim = list[i].dim();
        c.invariance_residual = verify_invariance(list[i]);

        // GT restricted to the subspace: eigenvalues and leakage.
        Eigen::MatrixXd gtb(list[i].vectors.rows(), list[i].vectors.cols());
        for (int64_t col = 0; col < list[i].vectors.cols(); col++) {
            gtb.col(col) = apply_gt(basis, list[i].vectors.col(col));
        }
        Eigen::MatrixXd r = list[i].vectors.transpose() * gtb;
        c.gt_block_residual = (gtb - list[i].vectors * r).norm();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (r + r.transpose()),
                                                          Eigen::EigenvaluesOnly);
        for (int64_t k = es.eigenvalues().size() - 1; k >= 0; k--) {
            double v = es.eigenvalues()(k);
            if (c.gt_eigenvalues.empty() || std::abs(c.gt_eigenvalues.back() - v) > 1e-7) {
                c.gt_eigenvalues.push_back(v);
            }
        }

        // Pairwise orthogonality. The W image belongs here too: it lands in
        // the (23)-antisymmetric part, away from every listed subspace.
        for (size_t j = 0; j < list.size(); j++) {
            if (j == i) {
                continue;
            }
            Eigen::MatrixXd overlap = list[i].vectors.transpose() * list[j].vectors;
            double v = overlap.size() == 0 ? 0.0
                                           : Eigen::JacobiSVD<Eigen::MatrixXd>(overlap)
                                                 .singularValues()(0);
            c.orthogonality_max = std::max(c.orthogonality_max, v);
        }
        rep.subspaces.push_back(c);
    }

    // Dimension accounting inside the (23)-symmetric NC span. The span
    // basis has one unit vector per unordered pair, orthonormal as built.
    rep.sym_span_dim = uint64_t(nc_sym_basis(m).cols());
    rep.nc_dims_sum = 0;
    for (const auto& s : list) {
        if (s.label != SubspaceLabel::Vc_d && s.label != SubspaceLabel::W_image) {
            rep.nc_dims_sum += s.dim();
        }
    }
    rep.dimension_accounting_ok = rep.nc_dims_sum == rep.sym_span_dim;

    rep.d_to_nc_residual = intertwiner_check(IntertwinerKind::d_to_nc, m);
    rep.d_to_c_residual = intertwiner_check(IntertwinerKind::d_to_c, m);
    rep.k_v12_residual = intertwiner_check(IntertwinerKind::K_V12, m);

    // Gram spectrum of the |A(a)> family: {0 x1, (N^2+N-2)/2, (N^2-N-2)/2}.
    SpectrumReport gram = gram_A_spectrum(m);
    rep.gram_ok = gram.groups.size() == 3 &&
                  std::abs(gram.groups[0].value - (n2d + N - 2) / 2) <= 1e-8 &&
                  gram.groups[0].multiplicity == uint64_t(N * (N - 1) / 2) - 1 &&
                  std::abs(gram.groups[1].value - (n2d - N - 2) / 2) <= 1e-8 &&
                  gram.groups[1].multiplicity == uint64_t(N * (N + 1) / 2) - 1 &&
                  std::abs(gram.groups[2].value) <= 1e-8 && gram.groups[2].multiplicity == 1;

    rep.null_eigenspace_ok = verify_null_eigenspace(m, 1e-10, 1000, seed);
    rep.inner = inner_product_checks(m);
    rep.wmap = W_map_check(m, list);

    if (negative_control) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss;
        Eigen::MatrixXd rnd(int64_t(basis.dim()), 5);
        for (int64_t i = 0; i < rnd.rows(); i++) {
            for (int64_t j = 0; j < rnd.cols(); j++) {
                rnd(i, j) = gauss(rng);
            }
        }
        SubspaceBasis control;
        control.label = SubspaceLabel::Vnc_d;
        control.m = m;
        control.vectors = orthonormalize(rnd);
        rep.negative_control_residual = verify_invariance(control);
    }
    return rep;
}

}  // namespace tvd
