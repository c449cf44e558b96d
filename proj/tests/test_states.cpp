#include "doctest.h"

#include "qtel/smallmat.hpp"
#include "qtel/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace qtel;

namespace {
constexpr double kPi = std::numbers::pi;

double norm2(const ComplexMatrix& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) s += std::norm(v(i, 0));
    return s;
}

cdouble overlap(const ComplexMatrix& a, const ComplexMatrix& b) {
    cdouble s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::conj(a(i, 0)) * b(i, 0);
    return s;
}
}  // namespace

TEST_CASE("bloch states are normalized and hit the poles") {
    CHECK(std::abs(norm2(bloch_to_ket(BlochState(0.7, 2.1))) - 1.0) < 1e-14);
    const ComplexMatrix north = bloch_to_ket(BlochState(0.0, 0.0));
    CHECK(std::abs(north(0, 0) - cdouble(1.0)) < 1e-14);
    const ComplexMatrix south = bloch_to_ket(BlochState(kPi, 1.3));
    CHECK(std::abs(south(1, 0) - cdouble(1.0)) < 1e-14);
    CHECK(std::abs(south(0, 0)) < 1e-14);
}

TEST_CASE("bloch state validation") {
    CHECK_THROWS_AS(BlochState(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BlochState(kPi + 0.1, 0.0), std::invalid_argument);
    const BlochState wrapped(0.5, -0.5);
    CHECK(wrapped.gamma >= 0.0);
    CHECK(wrapped.gamma < 2.0 * kPi);
    CHECK(std::abs(wrapped.gamma - (2.0 * kPi - 0.5)) < 1e-14);
}

TEST_CASE("bell states are orthonormal") {
    const BellKind kinds[] = {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus,
                              BellKind::PhiMinus};
    for (BellKind a : kinds)
        for (BellKind b : kinds) {
            const cdouble o = overlap(bell_state(a), bell_state(b));
            if (a == b)
                CHECK(std::abs(o - cdouble(1.0)) < 1e-14);
            else
                CHECK(std::abs(o) < 1e-14);
        }
    const ComplexMatrix psi_plus = bell_state(BellKind::PsiPlus);
    CHECK(std::abs(psi_plus(1, 0) - cdouble(1.0 / std::sqrt(2.0))) < 1e-14);
    CHECK(std::abs(psi_plus(2, 0) - cdouble(1.0 / std::sqrt(2.0))) < 1e-14);
    const ComplexMatrix phi_minus = bell_state(BellKind::PhiMinus);
    CHECK(std::abs(phi_minus(3, 0) + cdouble(1.0 / std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("magic basis is orthonormal with maximally mixed marginals") {
    const auto basis = magic_basis();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const cdouble o = overlap(basis[i], basis[j]);
            if (i == j)
                CHECK(std::abs(o - cdouble(1.0)) < 1e-14);
            else
                CHECK(std::abs(o) < 1e-14);
        }
        const ComplexMatrix red = partial_trace(density(basis[i]), {2, 2}, {0});
        CHECK(max_abs_diff(red, ComplexMatrix::identity(2).scaled(0.5)) < 1e-14);
    }
}

TEST_CASE("random_mes always yields a maximally entangled state") {
    for (double a : {0.0, 1.1, 4.4})
        for (double b : {0.3, 2.0})
            for (double c : {0.0, 5.9}) {
                const ComplexMatrix v = random_mes(a, b, c);
                CHECK(std::abs(norm2(v) - 1.0) < 1e-13);
                const ComplexMatrix red = partial_trace(density(v), {2, 2}, {1});
                CHECK(max_abs_diff(red, ComplexMatrix::identity(2).scaled(0.5)) < 1e-13);
            }
}

TEST_CASE("density builds a projector") {
    const ComplexMatrix rho = density(bloch_to_ket(BlochState(1.0, 0.4)));
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-14);
    CHECK(max_abs_diff(rho * rho, rho) < 1e-14);
    CHECK(is_hermitian(rho, 1e-14));
}
