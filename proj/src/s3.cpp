#include "tvd/s3.hpp"

#include <cmath>

#include "tvd/basis.hpp"

namespace tvd {

int Perm3::sign() const {
    int inv = 0;
    for (int i = 0; i < 3; i++) {
        for (int j = i + 1; j < 3; j++) {
            inv += img[i] > img[j];
        }
    }
    return inv % 2 ? -1 : 1;
}

std::array<Perm3, 6> all_perm3() {
    return {Perm3::id(),  Perm3::t12(),  Perm3::t13(),
            Perm3::t23(), Perm3::c123(), Perm3::c132()};
}

std::vector<uint64_t> s3_index_perm(uint32_t m, const Perm3& pi) {
    SumZeroBasis basis(3, m);
    Perm3 inv = pi.inverse();
    std::vector<uint64_t> img(basis.dim());
    for (uint64_t y = 0; y < basis.dim(); y++) {
        auto hd = basis.head_of(y);
        std::array<uint64_t, 3> tuple = {hd[0], hd[1], hd[0] ^ hd[1]};
        img[y] = basis.index_of({tuple[inv.img[0]], tuple[inv.img[1]]});
    }
    return img;
}

RatMat s3_w(uint32_t m, const Perm3& pi) {
    SumZeroBasis basis(3, m);
    auto img = s3_index_perm(m, pi);
    RatMat w(basis.dim(), 1);
    for (uint64_t y = 0; y < basis.dim(); y++) {
        w.at(img[y], y) = 1;
    }
    return w;
}

RatMat s3_w_diff(uint32_t m) {
    return s3_w(m, Perm3::c123()).subtract(s3_w(m, Perm3::c132()));
}

RatMat s3_projector_rat(uint32_t m, S3Kind kind) {
    SumZeroBasis basis(3, m);
    RatMat acc(basis.dim(), 1);
    switch (kind) {
        case S3Kind::CS:
        case S3Kind::AS: {
            for (const auto& pi : all_perm3()) {
                RatMat w = s3_w(m, pi);
                int s = kind == S3Kind::AS ? pi.sign() : 1;
                acc = acc.add(w.scale(s, 6));
            }
            return acc;
        }
        case S3Kind::S: {
            acc = acc.add(s3_w(m, Perm3::id()).scale(1, 3));
            acc = acc.add(s3_w(m, Perm3::c123()).scale(1, 3));
            acc = acc.add(s3_w(m, Perm3::c132()).scale(1, 3));
            return acc;
        }
        case S3Kind::P1: {
            acc = acc.add(s3_w(m, Perm3::id()).scale(2, 3));
            acc = acc.add(s3_w(m, Perm3::c123()).scale(-1, 3));
            acc = acc.add(s3_w(m, Perm3::c132()).scale(-1, 3));
            return acc;
        }
        default:
            throw std::invalid_argument("s3_projector_rat: Omega kinds are not rational");
    }
}

ComplexDense s3_projector(uint32_t m, S3Kind kind) {
    ComplexDense out;
    switch (kind) {
        case S3Kind::Omega:
        case S3Kind::OmegaStar: {
            out.re = s3_projector_rat(m, S3Kind::P1).dense() * 0.5;
            double s = kind == S3Kind::Omega ? 1.0 : -1.0;
            out.im = s3_w_diff(m).dense() * (s / (2.0 * std::sqrt(3.0)));
            return out;
        }
        default: {
            out.re = s3_projector_rat(m, kind).dense();
            out.im = Eigen::MatrixXd::Zero(out.re.rows(), out.re.cols());
            return out;
        }
    }
}

}  // namespace tvd
