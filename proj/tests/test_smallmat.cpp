#include "doctest.h"

#include "qtel/smallmat.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qtel;

TEST_CASE("kron follows the row-major convention") {
    ComplexMatrix a(2, 2), b(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 3.0;
    a(1, 1) = 4.0;
    b(0, 0) = 0.0;
    b(0, 1) = 5.0;
    b(1, 0) = 6.0;
    b(1, 1) = 7.0;
    const ComplexMatrix k = kron(a, b);
    REQUIRE(k.rows() == 4);
    CHECK(k(0, 1) == cdouble(5.0));
    CHECK(k(0, 3) == cdouble(10.0));
    CHECK(k(3, 2) == cdouble(24.0));
    CHECK(k(3, 3) == cdouble(28.0));
}

TEST_CASE("partial trace splits a product state") {
    std::mt19937_64 rng(11);
    const ComplexMatrix ra = testing::random_density(rng, 2);
    const ComplexMatrix rb = testing::random_density(rng, 2);
    const ComplexMatrix joint = kron(ra, rb);
    const ComplexMatrix ta = partial_trace(joint, {2, 2}, {0});
    const ComplexMatrix tb = partial_trace(joint, {2, 2}, {1});
    CHECK(max_abs_diff(ta, ra) < 1e-14);
    CHECK(max_abs_diff(tb, rb) < 1e-14);
}

TEST_CASE("partial trace keeps the trace") {
    std::mt19937_64 rng(12);
    const ComplexMatrix rho = testing::random_density(rng, 8);
    const ComplexMatrix kept = partial_trace(rho, {2, 2, 2}, {1});
    CHECK(std::abs(kept.trace().real() - 1.0) < 1e-13);
    CHECK(kept.rows() == 2);
}

TEST_CASE("hermitian eigensolver reproduces H v = lambda v") {
    std::mt19937_64 rng(13);
    for (int dim : {2, 4, 8}) {
        const ComplexMatrix h = testing::random_hermitian(rng, dim);
        const EigResult eig = hermitian_eig(h);
        for (int j = 0; j < dim; ++j) {
            ComplexMatrix v(dim, 1);
            for (int i = 0; i < dim; ++i) v(i, 0) = eig.vectors(i, j);
            const ComplexMatrix hv = h * v;
            const ComplexMatrix lv = v.scaled(eig.values[j]);
            CHECK(max_abs_diff(hv, lv) < 1e-10);
        }
        for (int j = 1; j < dim; ++j) CHECK(eig.values[j - 1] <= eig.values[j]);
        // orthonormal columns
        ComplexMatrix gram(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                cdouble s = 0.0;
                for (int r = 0; r < dim; ++r)
                    s += std::conj(eig.vectors(r, i)) * eig.vectors(r, j);
                gram(i, j) = s;
            }
        CHECK(max_abs_diff(gram, ComplexMatrix::identity(dim)) < 1e-10);
    }
}

TEST_CASE("psd_sqrt squares back to the input") {
    std::mt19937_64 rng(14);
    const ComplexMatrix rho = testing::random_density(rng, 4);
    const ComplexMatrix root = psd_sqrt(rho);
    CHECK(max_abs_diff(root * root, rho) < 1e-11);
}

TEST_CASE("gauss_legendre integrates polynomials and transcendentals") {
    const auto [x, w] = gauss_legendre(64, -1.0, 1.0);
    REQUIRE(x.size() == 64);
    double s0 = 0.0, s2 = 0.0, s10 = 0.0, sc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s0 += w[i];
        s2 += w[i] * x[i] * x[i];
        s10 += w[i] * std::pow(x[i], 10);
        sc += w[i] * std::cos(x[i]);
    }
    CHECK(std::abs(s0 - 2.0) < 1e-14);
    CHECK(std::abs(s2 - 2.0 / 3.0) < 1e-14);
    CHECK(std::abs(s10 - 2.0 / 11.0) < 1e-14);
    CHECK(std::abs(sc - 2.0 * std::sin(1.0)) < 1e-13);

    const auto [y, v] = gauss_legendre(64, 0.0, std::numbers::pi);
    double ssin = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) ssin += v[i] * std::sin(y[i]);
    CHECK(std::abs(ssin - 2.0) < 1e-13);
}
