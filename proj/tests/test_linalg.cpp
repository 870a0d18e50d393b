#include <doctest.h>

#include <numbers>

#include "pack/format.hpp"
#include "pack/linalg.hpp"
#include "pack/rng.hpp"

using namespace pack;

TEST_CASE("psd_factor and psd_sqrt reproduce the PSD part") {
    Rng rng(3);
    Matrix b(4, 4);
    for (Eigen::Index i = 0; i < 16; ++i) {
        b(i) = rng.uniform(-1.0, 1.0);
    }
    const Matrix a = b * b.transpose();
    const Matrix l = psd_factor(a);
    CHECK((l * l.transpose() - a).cwiseAbs().maxCoeff() <= 1e-12);
    const Matrix s = psd_sqrt(a);
    CHECK((s * s - a).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kernels work in extended precision") {
    Eigen::Matrix<long double, 2, 2> a;
    a << 2, 1, 1, 2;
    CHECK(static_cast<double>(min_eigenvalue(a)) == doctest::Approx(1.0));
    const auto s = psd_sqrt(a);
    CHECK(static_cast<double>((s * s - a).cwiseAbs().maxCoeff()) <= 1e-15);
}

TEST_CASE("eigenvalues_ascending") {
    Matrix a = Vector::LinSpaced(4, 4.0, 1.0).asDiagonal();
    CHECK(eigenvalues_ascending(a) == Vector::LinSpaced(4, 1.0, 4.0));
}

TEST_CASE("arcsin_matrix") {
    const Matrix i3 = Matrix::Identity(3, 3);
    CHECK(arcsin_matrix(i3).isApprox(std::numbers::pi / 2.0 * i3));
    const Matrix ones = Matrix::Ones(3, 3);
    CHECK(arcsin_matrix(ones).isApprox(std::numbers::pi / 2.0 * ones));

    Matrix slightly = ones;
    slightly(0, 1) = 1.0 + 5e-10;
    CHECK(arcsin_matrix(slightly)(0, 1) == doctest::Approx(std::numbers::pi / 2.0));
    slightly(0, 1) = 1.0 + 1e-6;
    CHECK_THROWS_AS(arcsin_matrix(slightly), InvalidArgument);
}

TEST_CASE("derived seeds differ by path and are reproducible") {
    CHECK(derive_seed(1, {0, 0}) == derive_seed(1, {0, 0}));
    CHECK(derive_seed(1, {0, 1}) != derive_seed(1, {1, 0}));
    CHECK(derive_seed(1, {0}) != derive_seed(2, {0}));
    CHECK(derive_seed(1, {}) != derive_seed(1, {0}));
}

TEST_CASE("rng stream is fixed by the seed") {
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    // mt19937_64 with the default seed: 10000th output is fixed by the standard.
    Rng c(5489u);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) {
        v = c.next_u64();
    }
    CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("normal draws have unit variance") {
    Rng rng(11);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(std::abs(s2 / n - 1.0) < 0.01);
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 125.8925, 1e-300, -2.5, 6.02214076e23}) {
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(std::isnan(parse_double("nan")));
    CHECK(format_double(1.0) == "1");
    CHECK_THROWS_AS(parse_double("1.0x"), InvalidArgument);
    CHECK_THROWS_AS(parse_int<int>("12a"), InvalidArgument);
    CHECK(parse_int<int>("-12") == -12);
}
