#include "tvd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tvd/gf2.hpp"

namespace tvd {

std::string sector_tag_name(SectorTag tag) {
    switch (tag) {
        case SectorTag::Identity: return "identity";
        case SectorTag::Diagonal1: return "diagonal1";
        case SectorTag::Diagonal2: return "diagonal2";
        case SectorTag::Diagonal3: return "diagonal3";
        case SectorTag::NC: return "nc";
        case SectorTag::C: return "c";
        case SectorTag::Haar: return "haar";
        case SectorTag::Other: return "other";
    }
    return "other";
}

uint64_t SpectrumReport::total_multiplicity() const {
    uint64_t s = 0;
    for (const auto& g : groups) {
        s += g.multiplicity;
    }
    return s;
}

SectorTag basis_sector(const SumZeroBasis& basis, uint64_t index) {
    if (index == 0) {
        return SectorTag::Identity;
    }
    if (basis.t == 2) {
        return SectorTag::Diagonal1;
    }
    auto hd = basis.head_of(index);
    uint64_t a = hd[0], b = hd[1], c = hd[0] ^ hd[1];
    if (a == 0) {
        return SectorTag::Diagonal1;  // |0,x,x>
    }
    if (b == 0) {
        return SectorTag::Diagonal2;  // |x,0,x>
    }
    if (c == 0) {
        return SectorTag::Diagonal3;  // |x,x,0>
    }
    return symplectic_form_raw(a, b, basis.m) ? SectorTag::NC : SectorTag::C;
}

std::vector<uint64_t> sector_indices(uint32_t t, uint32_t m, SectorTag tag) {
    SumZeroBasis basis(t, m);
    std::vector<uint64_t> out;
    for (uint64_t i = 0; i < basis.dim(); i++) {
        if (basis_sector(basis, i) == tag) {
            out.push_back(i);
        }
    }
    return out;
}

SpectrumReport full_spectrum(const Superoperator& A, double group_tol, const std::string& name) {
    if (!A.is_symmetric()) {
        throw std::invalid_argument("full_spectrum requires a symmetric superoperator");
    }
    SumZeroBasis basis(A.t, A.m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.dense());
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("full_spectrum: eigensolver failed");
    }
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    const uint64_t n = A.dim();

    std::vector<int> sector_of(n);
    for (uint64_t i = 0; i < n; i++) {
        sector_of[i] = int(basis_sector(basis, i));
    }

    SpectrumReport rep;
    rep.t = A.t;
    rep.m = A.m;
    rep.op_name = name;
    // Eigen returns ascending order; group from the top.
    int64_t i = int64_t(n) - 1;
    while (i >= 0) {
        int64_t j = i;
        while (j - 1 >= 0 && std::abs(vals(j - 1) - vals(i)) <= group_tol) {
            j--;
        }
        EigGroup g;
        g.value = vals(i);
        g.multiplicity = uint64_t(i - j + 1);
        // Coordinate mass per sector over the whole eigenvalue group.
        std::array<double, 8> mass{};
        for (int64_t col = j; col <= i; col++) {
            for (uint64_t r = 0; r < n; r++) {
                double v = vecs(r, col);
                mass[size_t(sector_of[r])] += v * v;
            }
        }
        double total = double(g.multiplicity);
        if (std::abs(g.value - 1.0) <= group_tol) {
            g.tag = SectorTag::Haar;
        } else {
            g.tag = SectorTag::Other;
            for (size_t s = 0; s < mass.size(); s++) {
                if (mass[s] >= (1.0 - 1e-8) * total) {
                    g.tag = SectorTag(s);
                }
            }
        }
        rep.groups.push_back(g);
        i = j - 1;
    }
    return rep;
}

T2SpectrumCheck verify_t2_spectrum(uint32_t m, double value_tol) {
    T2SpectrumCheck check;
    const double N = double(uint64_t(1) << m);
    Superoperator gtgp = compose(build_GT(2, m), build_GP(2, m));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gtgp.dense());
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    const uint64_t n = gtgp.dim();

    check.report = full_spectrum(gtgp, 1e-9, "GT*GP");

    const double lam_plus = 0.5 * (1.0 + 1.0 / N);
    const double lam_minus = 0.5 * (1.0 - 1.0 / N);
    const uint64_t mult_plus = uint64_t(N * (N - 1) / 2) - 1;
    const uint64_t mult_minus = uint64_t(N * (N + 1) / 2) - 1;

    std::vector<std::pair<double, uint64_t>> expected = {{1.0, 2}};
    if (mult_plus > 0) {
        expected.push_back({lam_plus, mult_plus});
    }
    if (mult_minus > 0) {
        expected.push_back({lam_minus, mult_minus});
    }

    check.eigenvalues_ok = check.report.groups.size() == expected.size();
    check.multiplicities_ok = check.eigenvalues_ok;
    for (size_t g = 0; g < expected.size() && check.eigenvalues_ok; g++) {
        if (std::abs(check.report.groups[g].value - expected[g].first) > value_tol) {
            check.eigenvalues_ok = false;
        }
        if (check.report.groups[g].multiplicity != expected[g].second) {
            check.multiplicities_ok = false;
        }
    }

    // Non-unit eigenvectors live on the diagonal labels and their
    // coefficients satisfy sum lambda_a = 0 and K lambda = +-(N/2) lambda.
    Eigen::MatrixXd K = commutation_matrix(m);
    check.eigenvector_conditions_ok = true;
    for (uint64_t col = 0; col < n; col++) {
        double lam = vals(int64_t(col));
        int sign;
        if (std::abs(lam - lam_plus) <= value_tol) {
            sign = +1;
        } else if (std::abs(lam - lam_minus) <= value_tol) {
            sign = -1;
        } else {
            continue;
        }
        Eigen::VectorXd coeff = vecs.col(int64_t(col)).tail(int64_t(n - 1));
        double zero_mass = std::abs(vecs(0, int64_t(col)));
        double sum = coeff.sum();
        double rel = (K * coeff - sign * (N / 2.0) * coeff).norm() / coeff.norm();
        if (zero_mass > 1e-9 || std::abs(sum) > 1e-9 || rel > 1e-9) {
            check.eigenvector_conditions_ok = false;
        }
    }
    return check;
}

double second_eigenvalue(uint32_t t, uint32_t m, uint64_t cap) {
    SumZeroBasis basis(t, m);
    if (basis.dim() <= cap) {
        Superoperator gtgp = compose(build_GT(t, m, cap), build_GP(t, m, cap));
        Superoperator haar = build_H(t, m, cap);
        return op_norm(gtgp, &haar);
    }
    // Past the dense cap: deflated power iteration on the sparse operator.
    SparseSuperoperator gt = build_GT_sparse(t, m);
    Eigen::MatrixXd hb = haar_basis(t, m);
    auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        gt.apply(x, y);
        y -= hb * (hb.transpose() * x);
    };
    return symmetric_op_norm_power(apply, gt.dim(), 1e-10);
}

Eigen::MatrixXd commutation_matrix(uint32_t m) {
    const uint64_t n = num_labels(m) - 1;
    Eigen::MatrixXd K(n, n);
    for (uint64_t a = 1; a <= n; a++) {
        for (uint64_t b = 1; b <= n; b++) {
            K(a - 1, b - 1) = symplectic_form_raw(a, b, m) ? 1.0 : 0.0;
        }
    }
    return K;
}

SpectrumReport commutation_matrix_spectrum(uint32_t m, double group_tol) {
    Eigen::MatrixXd K = commutation_matrix(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
    SpectrumReport rep;
    rep.t = 2;
    rep.m = m;
    rep.op_name = "commutation_matrix";
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

RatMat sector_restrict(const RatMat& full, const std::vector<uint64_t>& idx) {
    RatMat out(idx.size(), full.den);
    for (size_t i = 0; i < idx.size(); i++) {
        for (size_t j = 0; j < idx.size(); j++) {
            out.at(i, j) = full.at(idx[i], idx[j]);
        }
    }
    return out;
}

RatMat sector_T(uint32_t m, SectorTag sector, int which) {
    if (sector != SectorTag::NC && sector != SectorTag::C) {
        throw std::invalid_argument("sector_T: sector must be NC or C");
    }
    if (which < 1 || which > 3) {
        throw std::invalid_argument("sector_T: which must be 1, 2 or 3");
    }
    SumZeroBasis basis(3, m);
    auto idx = sector_indices(3, m, sector);
    std::vector<int64_t> pos(basis.dim(), -1);
    for (size_t i = 0; i < idx.size(); i++) {
        pos[idx[i]] = int64_t(i);
    }
    const uint32_t want_first = sector == SectorTag::NC ? 1 : 0;

    RatMat T(idx.size(), int64_t(basis.labels()));
    for (size_t j = 0; j < idx.size(); j++) {
        auto hd = basis.head_of(idx[j]);
        uint64_t x = hd[0], y = hd[1], z = hd[0] ^ hd[1];
        // Conditions and output of T_1|a,b,a+b> = sum over suitable h of
        // |a,h,a+h>, transported to each slot by the defining relabelings.
        uint64_t c1, c2, out1, out2;
        switch (which) {
            case 1: c1 = x; c2 = y; break;   // a = x, b = y
            case 2: c1 = y; c2 = x; break;   // a = y, b = x
            default: c1 = z; c2 = y; break;  // a = z, b = y
        }
        for (uint64_t h = 0; h < basis.labels(); h++) {
            if (symplectic_form_raw(c1, h, m) != want_first ||
                symplectic_form_raw(c2, h, m) != 1) {
                continue;
            }
            switch (which) {
                case 1: out1 = x; out2 = h; break;
                case 2: out1 = h; out2 = y; break;
                default: out1 = z ^ h; out2 = h; break;
            }
            int64_t p = pos[basis.index_of({out1, out2})];
            if (p < 0) {
                throw std::logic_error("sector_T: image left the sector");
            }
            T.at(uint64_t(p), j)++;
        }
    }
    return T;
}

namespace {

RatMat restrict_w(uint32_t m, const Perm3& pi, const std::vector<uint64_t>& idx) {
    return sector_restrict(s3_w(m, pi), idx);
}

// Distinct values of a nonnegative-sorted list, grouped at tol.
std::vector<std::pair<double, uint64_t>> group_values(std::vector<double> v, double tol) {
    std::sort(v.begin(), v.end(), std::greater<double>());
    std::vector<std::pair<double, uint64_t>> out;
    for (double x : v) {
        if (!out.empty() && std::abs(out.back().first - x) <= tol) {
            out.back().second++;
        } else {
            out.push_back({x, 1});
        }
    }
    return out;
}

}  // namespace

SectorReport sector_decompose_GT(uint32_t m, SectorTag sector) {
    SectorReport rep;
    rep.sector = sector;
    rep.m = m;
    const double N = double(uint64_t(1) << m);
    const int64_t n2 = int64_t(num_labels(m));

    auto idx = sector_indices(3, m, sector);
    rep.dim = idx.size();
    if (idx.empty()) {  // the commuting sector is empty at m = 1
        rep.split_identity_ok = true;
        rep.permutation_relations_ok = true;
        rep.t1_spectral_form_ok = true;
        rep.t1_multiplicities_ok = true;
        return rep;
    }
    Superoperator gt = build_GT(3, m);
    RatMat gt_sector = sector_restrict(gt.mat, idx);

    RatMat t1 = sector_T(m, sector, 1);
    RatMat t2 = sector_T(m, sector, 2);
    RatMat t3 = sector_T(m, sector, 3);

    // GT = id/4 + T1 + T2 + T3, as exact counts over N^2.
    RatMat sum = t1.add(t2).add(t3).add(RatMat::identity(idx.size()).scale(n2 / 4, n2));
    rep.split_identity_ok = gt_sector == sum;

    // Permutation relations, exact.
    RatMat w23 = restrict_w(m, Perm3::t23(), idx);
    RatMat w13 = restrict_w(m, Perm3::t13(), idx);
    RatMat w12 = restrict_w(m, Perm3::t12(), idx);
    RatMat w123 = restrict_w(m, Perm3::c123(), idx);
    RatMat w132 = restrict_w(m, Perm3::c132(), idx);
    auto conj = [](const RatMat& w, const RatMat& t, const RatMat& winv) {
        return w.multiply(t).multiply(winv);
    };
    rep.permutation_relations_ok =
        conj(w23, t1, w23) == t1 && conj(w13, t2, w13) == t2 && conj(w12, t3, w12) == t3 &&
        conj(w13, t1, w13) == t3 && conj(w12, t1, w12) == t2 && conj(w123, t1, w132) == t2 &&
        conj(w132, t1, w123) == t3;

    // Eigenvalues of the sector restriction.
    Eigen::MatrixXd gt_d = gt_sector.dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gt_d, Eigen::EigenvaluesOnly);
    const auto& vals = es.eigenvalues();
    rep.top_eigenvalue = vals(vals.size() - 1);
    rep.second_eigenvalue = vals.size() > 1 ? vals(vals.size() - 2) : 0.0;
    rep.claimed_second_bound =
        sector == SectorTag::NC ? 0.5 * (1.0 + 7.0 / (4.0 * N))
                                : 0.5 * (1.0 + 4.0 / N + 2.0 / (N * (N - 2.0)));
    rep.second_below_claimed = rep.second_eigenvalue <= rep.claimed_second_bound;

    // The uniform sector sum is the top (unit) eigenvector.
    Eigen::VectorXd w_cs = Eigen::VectorXd::Constant(int64_t(idx.size()), 1.0);
    w_cs.normalize();
    rep.top_eigvec_residual = (gt_d * w_cs - w_cs).norm();

    Eigen::MatrixXd t1_d = t1.dense();
    Eigen::MatrixXd w23_d = w23.dense();
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(int64_t(idx.size()), int64_t(idx.size()));
    Eigen::MatrixXd p_plus = 0.5 * (id + w23_d);
    Eigen::MatrixXd p_minus = 0.5 * (id - w23_d);
    SumZeroBasis basis(3, m);

    if (sector == SectorTag::NC) {
        // T1+ must equal (1/4) sum_a |a^><a^|.
        Eigen::MatrixXd t1p = p_plus * t1_d * p_plus;
        Eigen::MatrixXd model = Eigen::MatrixXd::Zero(t1p.rows(), t1p.cols());
        for (uint64_t a = 1; a < uint64_t(n2); a++) {
            Eigen::VectorXd hat = Eigen::VectorXd::Zero(int64_t(idx.size()));
            for (size_t i = 0; i < idx.size(); i++) {
                auto hd = basis.head_of(idx[i]);
                if (hd[0] == a) {
                    hat(int64_t(i)) = std::sqrt(2.0) / N;
                }
            }
            model += 0.25 * hat * hat.transpose();
        }
        rep.t1_spectral_form_ok = (t1p - model).cwiseAbs().maxCoeff() <= 1e-12;

        // Nonzero singular values of T1- all equal 1/(2N).
        Eigen::MatrixXd t1m = p_minus * t1_d * p_minus;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(t1m);
        std::vector<double> nonzero;
        for (int64_t i = 0; i < svd.singularValues().size(); i++) {
            if (svd.singularValues()(i) > 1e-10) {
                nonzero.push_back(svd.singularValues()(i));
            }
        }
        auto grouped = group_values(nonzero, 1e-9);
        for (const auto& g : grouped) {
            rep.t1_singular_or_eigen.push_back(g.first);
        }
        rep.t1_multiplicities_ok =
            grouped.size() == 1 && std::abs(grouped[0].first - 1.0 / (2.0 * N)) <= 1e-10;

        // ETT+ has eigenvalue 3/4 on the uniform sector sum.
        Eigen::MatrixXd t2_d = t2.dense();
        Eigen::MatrixXd t3_d = t3.dense();
        Eigen::MatrixXd w13_d = w13.dense();
        Eigen::MatrixXd w12_d = w12.dense();
        Eigen::MatrixXd ett_plus = t1p + 0.25 * (id + w13_d) * t2_d * (id + w13_d) +
                                   0.25 * (id + w12_d) * t3_d * (id + w12_d);
        rep.ett_plus_wcs_residual = (ett_plus * w_cs - 0.75 * w_cs).norm();
    } else {
        // (id - W23) T1 = 0 exactly in the commuting sector.
        RatMat pm_t1 = RatMat::identity(idx.size()).subtract(w23).multiply(t1);
        bool sym_support = true;
        for (int64_t v : pm_t1.num) {
            sym_support = sym_support && v == 0;
        }
        rep.t1_spectral_form_ok = sym_support;

        // Eigenvalues {1/4, +-1/(2N), 0} with the stated multiplicities.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> est1(t1_d, Eigen::EigenvaluesOnly);
        std::vector<double> all(est1.eigenvalues().data(),
                                est1.eigenvalues().data() + est1.eigenvalues().size());
        std::map<int, uint64_t> mults;  // key: 0 -> 1/4, 1 -> +1/(2N), -1 -> -1/(2N), 2 -> 0
        bool values_ok = true;
        for (double v : all) {
            if (std::abs(v - 0.25) <= 1e-10) {
                mults[0]++;
            } else if (std::abs(v - 1.0 / (2.0 * N)) <= 1e-10) {
                mults[1]++;
            } else if (std::abs(v + 1.0 / (2.0 * N)) <= 1e-10) {
                mults[-1]++;
            } else if (std::abs(v) <= 1e-10) {
                mults[2]++;
            } else {
                values_ok = false;
            }
        }
        const double n2d = N * N;
        uint64_t expect_quarter = uint64_t(n2d - 1);
        uint64_t expect_plus = uint64_t((n2d - 1) * (n2d - 2 * N - 8) / 8);
        uint64_t expect_minus = uint64_t((n2d - 1) * (n2d + 2 * N - 8) / 8);
        rep.t1_multiplicities_ok = values_ok && mults[0] == expect_quarter &&
                                   mults[1] == expect_plus && mults[-1] == expect_minus;
        rep.t1_singular_or_eigen = {0.25, 1.0 / (2.0 * N), -1.0 / (2.0 * N)};
    }
    return rep;
}

}  // namespace tvd
