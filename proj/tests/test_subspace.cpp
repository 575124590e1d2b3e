#include <doctest.h>

#include <random>

#include "tvd/gf2.hpp"
#include "tvd/subspace.hpp"
#include "tvd/superop.hpp"

using namespace tvd;

TEST_CASE("apply_gt and apply_transvection match the built matrices") {
    for (uint32_t m = 1; m <= 2; m++) {
        SumZeroBasis basis(3, m);
        Eigen::MatrixXd gt = build_GT(3, m).dense();
        std::mt19937_64 rng(m);
        Eigen::VectorXd v(int64_t(basis.dim()));
        for (int64_t i = 0; i < v.size(); i++) {
            v(i) = double(rng() % 19) - 9.0;
        }
        CHECK((apply_gt(basis, v) - gt * v).norm() <= 1e-12 * v.norm());
        for (uint64_t h = 0; h < basis.labels(); h++) {
            Eigen::VectorXd direct = apply_transvection(basis, h, v);
            Eigen::VectorXd via_perm = Eigen::VectorXd::Zero(v.size());
            auto perm = transvection_perm(basis, h);
            for (uint64_t i = 0; i < basis.dim(); i++) {
                via_perm(int64_t(perm[i])) = v(int64_t(i));
            }
            REQUIRE((direct - via_perm).norm() == 0.0);
        }
    }
}

TEST_CASE("hat vectors: norms, sign convention, transvection action") {
    const uint32_t m = 2;
    SumZeroBasis basis(3, m);
    for (uint64_t a = 1; a < num_labels(m); a++) {
        for (uint64_t b = 0; b < num_labels(m); b++) {
            if (symplectic_form_raw(a, b, m) != 0) {
                continue;
            }
            Eigen::VectorXd v = hat_ab(m, a, b);
            CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
            // |a^;b> + |a^;a+b> = 0.
            CHECK((v + hat_ab(m, a, a ^ b)).norm() <= 1e-12);
            // U_h |a^;b> = |(T_h a)^; T_h b>.
            for (uint64_t h = 0; h < num_labels(m); h++) {
                Eigen::VectorXd lhs = apply_transvection(basis, h, v);
                uint64_t ta = transvection_apply_raw(h, a, m);
                uint64_t tb = transvection_apply_raw(h, b, m);
                REQUIRE((lhs - hat_ab(m, ta, tb)).norm() <= 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(hat_ab(m, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(hat_ab(m, 1, 4), std::invalid_argument);  // <a,b> = 1
}

TEST_CASE("A vectors: inner products, zero sum, transvection action") {
    const uint32_t m = 2;
    SumZeroBasis basis(3, m);
    const double n2 = double(num_labels(m));
    std::vector<Eigen::VectorXd> A(num_labels(m));
    Eigen::VectorXd total = Eigen::VectorXd::Zero(int64_t(basis.dim()));
    for (uint64_t a = 1; a < num_labels(m); a++) {
        A[a] = vec_A(m, a);
        total += A[a];
    }
    CHECK(total.norm() <= 1e-12);  // sum_a |A(a)> = 0
    for (uint64_t a = 1; a < num_labels(m); a++) {
        for (uint64_t b = 1; b < num_labels(m); b++) {
            double expect = (a == b ? n2 / 2.0 - 1.0 : 0.0) -
                            (symplectic_form_raw(a, b, m) == 0 ? 1.0 : 0.0);
            REQUIRE(A[a].dot(A[b]) == doctest::Approx(expect).epsilon(1e-12));
        }
        for (uint64_t h = 0; h < num_labels(m); h++) {
            uint64_t ta = transvection_apply_raw(h, a, m);
            REQUIRE((apply_transvection(basis, h, A[a]) - A[ta]).norm() <= 1e-12);
        }
    }
}

TEST_CASE("gram_A spectrum at m=2: {9 x5, 5 x9, 0 x1}") {
    SpectrumReport rep = gram_A_spectrum(2);
    REQUIRE(rep.groups.size() == 3);
    CHECK(rep.groups[0].value == doctest::Approx(9.0).epsilon(1e-10));
    CHECK(rep.groups[0].multiplicity == 5);
    CHECK(rep.groups[1].value == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(rep.groups[1].multiplicity == 9);
    CHECK(std::abs(rep.groups[2].value) <= 1e-10);
    CHECK(rep.groups[2].multiplicity == 1);
}

TEST_CASE("gram_A at m=1 degenerates to the zero matrix") {
    CHECK(gram_A(1).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("subspace dimensions at m=2") {
    CHECK(build_subspace(SubspaceLabel::Vnc_d, 2).dim() == 15);
    CHECK(build_subspace(SubspaceLabel::Vc_d, 2).dim() == 15);
    CHECK(build_subspace(SubspaceLabel::Vnc_1, 2).dim() == 9);   // N(N+1)/2 - 1
    CHECK(build_subspace(SubspaceLabel::Vnc_2, 2).dim() == 5);   // N(N-1)/2 - 1
    SubspaceBasis v1 = build_subspace(SubspaceLabel::Vnc_1, 2);
    SubspaceBasis v2 = build_subspace(SubspaceLabel::Vnc_2, 2);
    CHECK(v1.dim() + v2.dim() == 14);  // dim span{|A(a)>} = N^2 - 2
}

TEST_CASE("invariance of every claimed subspace at m=2") {
    for (auto label : {SubspaceLabel::Vnc_d, SubspaceLabel::Vnc_1, SubspaceLabel::Vnc_2,
                       SubspaceLabel::Vnc_nullS, SubspaceLabel::Vnc_null1,
                       SubspaceLabel::Vnc_complement, SubspaceLabel::Vc_d,
                       SubspaceLabel::W_image}) {
        SubspaceBasis s = build_subspace(label, 2);
        CHECK(s.dim() == s.claimed_dim);
        if (s.dim() > 0) {
            REQUIRE(verify_invariance(s) <= 1e-10);
        }
    }
}

TEST_CASE("a random subspace fails invariance (negative control)") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> gauss;
    SumZeroBasis basis(3, 2);
    Eigen::MatrixXd rnd(int64_t(basis.dim()), 4);
    for (int64_t i = 0; i < rnd.rows(); i++) {
        for (int64_t j = 0; j < rnd.cols(); j++) {
            rnd(i, j) = gauss(rng);
        }
    }
    SubspaceBasis control{SubspaceLabel::Vnc_d, 2, orthonormalize(rnd), 4};
    CHECK(verify_invariance(control) > 0.1);
}

TEST_CASE("the Haar subspace passes invariance trivially") {
    Superoperator h = build_H(3, 2);
    SubspaceBasis s{SubspaceLabel::Vnc_d, 2, orthonormalize(h.dense()), 6};
    CHECK(s.vectors.cols() == 6);
    CHECK(verify_invariance(s) <= 1e-12);
}

TEST_CASE("null eigenspace identity") {
    CHECK(verify_null_eigenspace(2));
    // Any single triple is itself an eigenvector with eigenvalue 1/4.
    SumZeroBasis basis(3, 2);
    Eigen::VectorXd v = hat_ab(2, 1, 2) + hat_ab(2, 2, 3) + hat_ab(2, 3, 1);
    CHECK((apply_gt(basis, v) - 0.25 * v).norm() <= 1e-12 * v.norm());
}

TEST_CASE("intertwiners at m=2") {
    CHECK(intertwiner_check(IntertwinerKind::d_to_nc, 2) <= 1e-10);
    CHECK(intertwiner_check(IntertwinerKind::d_to_c, 2) <= 1e-10);
    CHECK(intertwiner_check(IntertwinerKind::K_V12, 2) <= 1e-10);
}

TEST_CASE("W map checks at m=2") {
    WMapReport rep = W_map_check(2);
    CHECK(rep.w_pcs_zero_exact);
    CHECK(rep.w_commutes_gt_exact);
    CHECK(rep.anticommute_exact);
    for (const auto& e : rep.entries) {
        CHECK(e.cs_overlap <= 1e-12);
        if (e.image_rank > 0) {
            CHECK(e.invariance_residual <= 1e-9);
        }
        if (e.label == SubspaceLabel::Vnc_d) {
            // The diagonal NC family is not annihilated by W.
            CHECK(e.image_rank > 0);
        }
    }
}

TEST_CASE("closed-form inner products at m=2, exhaustive to 1e-12") {
    InnerProductChecks checks = inner_product_checks(2);
    CHECK(checks.inner11_err <= 1e-12);
    CHECK(checks.inner_ps_err <= 1e-12);
    CHECK(checks.inner_pw_err <= 1e-12);
    CHECK(checks.inner_c_err <= 1e-12);
}

TEST_CASE("full verification report at m=2") {
    VerificationReport rep = run_verification(2);
    CHECK(rep.pass());
    CHECK(rep.dimension_accounting_ok);
    CHECK(rep.gram_ok);
    CHECK(rep.null_eigenspace_ok);
    for (const auto& s : rep.subspaces) {
        CHECK(s.invariance_residual <= VerificationReport::invariance_tol);
        CHECK(s.orthogonality_max <= VerificationReport::orthogonality_tol);
    }

    VerificationReport controlled = run_verification(2, /*negative_control=*/true);
    REQUIRE(controlled.negative_control_residual.has_value());
    CHECK(*controlled.negative_control_residual > 0.1);
    CHECK_FALSE(controlled.pass());
}
