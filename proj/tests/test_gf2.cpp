#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tvd/gf2.hpp"

using namespace tvd;

TEST_CASE("symplectic form basics") {
    for (uint32_t m = 1; m <= 3; m++) {
        for (uint64_t a = 0; a < num_labels(m); a++) {
            CHECK(symplectic_form(F2Vec(a, m), F2Vec(a, m)) == 0);
            CHECK(symplectic_form(F2Vec(0, m), F2Vec(a, m)) == 0);
        }
    }
    // m=1: <e1, e2> = 1 by the block form of Omega.
    CHECK(symplectic_form(F2Vec(0b01, 1), F2Vec(0b10, 1)) == 1);
    CHECK_THROWS_AS(symplectic_form(F2Vec(1, 1), F2Vec(1, 2)), std::invalid_argument);
}

TEST_CASE("symplectic form is bilinear") {
    for (uint32_t m = 1; m <= 2; m++) {
        for (uint64_t a = 0; a < num_labels(m); a++) {
            for (uint64_t b = 0; b < num_labels(m); b++) {
                for (uint64_t c = 0; c < num_labels(m); c++) {
                    uint32_t lhs = symplectic_form_raw(a ^ b, c, m);
                    uint32_t rhs = symplectic_form_raw(a, c, m) ^ symplectic_form_raw(b, c, m);
                    REQUIRE(lhs == rhs);
                }
            }
        }
    }
    std::mt19937_64 rng(5);
    for (uint32_t m : {3u, 4u}) {
        uint64_t mask = num_labels(m) - 1;
        for (int i = 0; i < 2000; i++) {
            uint64_t a = rng() & mask, b = rng() & mask, c = rng() & mask;
            CHECK(symplectic_form_raw(a ^ b, c, m) ==
                  (symplectic_form_raw(a, c, m) ^ symplectic_form_raw(b, c, m)));
        }
    }
}

TEST_CASE("transvections fix h, fix 0, and square to the identity") {
    for (uint32_t m = 1; m <= 2; m++) {
        for (uint64_t h = 0; h < num_labels(m); h++) {
            F2Vec hv(h, m);
            CHECK(transvection_apply(hv, hv) == hv);
            for (uint64_t a = 0; a < num_labels(m); a++) {
                F2Vec av(a, m);
                F2Vec once = transvection_apply(hv, av);
                CHECK(transvection_apply(hv, once) == av);
                if (h == 0) {
                    CHECK(once == av);
                }
            }
        }
    }
    std::mt19937_64 rng(17);
    uint64_t mask = num_labels(3) - 1;
    for (int i = 0; i < 1000; i++) {
        F2Vec h(rng() & mask, 3), a(rng() & mask, 3);
        CHECK(transvection_apply(h, transvection_apply(h, a)) == a);
    }
}

TEST_CASE("is_symplectic") {
    CHECK(is_symplectic(SymplecticMatrix::identity(2)));
    for (uint64_t h = 0; h < num_labels(2); h++) {
        CHECK(is_symplectic(SymplecticMatrix::transvection(F2Vec(h, 2))));
    }
    SymplecticMatrix bad = SymplecticMatrix::identity(2);
    bad.rows[1] = 0;
    CHECK_FALSE(is_symplectic(bad));
}

TEST_CASE("transvection matrix matches the map") {
    for (uint64_t h = 0; h < num_labels(2); h++) {
        SymplecticMatrix T = SymplecticMatrix::transvection(F2Vec(h, 2));
        for (uint64_t a = 0; a < num_labels(2); a++) {
            CHECK(T.apply(F2Vec(a, 2)) == transvection_apply(F2Vec(h, 2), F2Vec(a, 2)));
        }
    }
}

TEST_CASE("conjugate_transvection") {
    SymplecticMatrix id = SymplecticMatrix::identity(2);
    CHECK(conjugate_transvection(id, F2Vec(9, 2)) == F2Vec(9, 2));

    // T_{l+h}(h) = l whenever <l,h> = 1.
    for (uint64_t h = 1; h < num_labels(2); h++) {
        for (uint64_t l = 1; l < num_labels(2); l++) {
            if (symplectic_form_raw(l, h, 2) != 1) {
                continue;
            }
            SymplecticMatrix S = SymplecticMatrix::transvection(F2Vec(l ^ h, 2));
            CHECK(conjugate_transvection(S, F2Vec(h, 2)) == F2Vec(l, 2));
        }
    }

    // Pointwise S T_h S^-1 = T_{Sh} on all 16 vectors, for random S and h.
    auto sp = enumerate_sp(2);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; trial++) {
        const SymplecticMatrix& S = sp[rng() % sp.size()];
        F2Vec h(rng() & (num_labels(2) - 1), 2);
        F2Vec sh = conjugate_transvection(S, h);
        // S^-1 by exhaustive inversion of the bijection.
        std::vector<uint64_t> inv(num_labels(2));
        for (uint64_t a = 0; a < num_labels(2); a++) {
            inv[S.apply(F2Vec(a, 2)).bits] = a;
        }
        for (uint64_t a = 0; a < num_labels(2); a++) {
            F2Vec lhs = S.apply(transvection_apply(h, F2Vec(inv[a], 2)));
            F2Vec rhs = transvection_apply(sh, F2Vec(a, 2));
            REQUIRE(lhs == rhs);
        }
    }

    SymplecticMatrix bad = SymplecticMatrix::identity(2);
    bad.rows[0] = 0;
    CHECK_THROWS_AS(conjugate_transvection(bad, F2Vec(1, 2)), std::invalid_argument);
}

TEST_CASE("count_solutions closed form") {
    SUBCASE("single nonzero constraint gives N^2/2") {
        for (uint32_t m = 1; m <= 3; m++) {
            for (uint64_t a = 1; a < num_labels(m); a++) {
                std::vector<std::pair<F2Vec, uint32_t>> cs = {{F2Vec(a, m), 1}};
                CHECK(count_solutions(cs, m) == num_labels(m) / 2);
            }
        }
    }
    SUBCASE("contradictory pair has no solutions") {
        std::vector<std::pair<F2Vec, uint32_t>> cs = {{F2Vec(3, 2), 0}, {F2Vec(3, 2), 1}};
        CHECK(count_solutions(cs, 2) == 0);
    }
    SUBCASE("two independent constraints at m=2 leave 4 solutions") {
        std::vector<std::pair<F2Vec, uint32_t>> cs = {{F2Vec(0b0001, 2), 1},
                                                      {F2Vec(0b0010, 2), 0}};
        CHECK(count_solutions(cs, 2) == 4);
    }
    SUBCASE("matches brute force on random systems") {
        std::mt19937_64 rng(11);
        for (uint32_t m = 1; m <= 2; m++) {
            uint64_t mask = num_labels(m) - 1;
            for (int trial = 0; trial < 300; trial++) {
                std::vector<std::pair<F2Vec, uint32_t>> cs;
                int rows = 1 + int(rng() % (2 * m + 1));
                for (int r = 0; r < rows; r++) {
                    cs.push_back({F2Vec(rng() & mask, m), uint32_t(rng() & 1)});
                }
                REQUIRE(count_solutions(cs, m) == oracles::count_solutions_brute(cs, m));
            }
        }
    }
}

TEST_CASE("enumerate_sp sizes and closure") {
    auto sp1 = enumerate_sp(1);
    CHECK(sp1.size() == 6);
    auto sp2 = enumerate_sp(2);
    CHECK(sp2.size() == 720);
    for (const auto& S : sp2) {
        REQUIRE(is_symplectic(S));
    }
    CHECK_THROWS_AS(enumerate_sp(3), std::invalid_argument);
}
