#include "qtel/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtel {

namespace {
constexpr double kPi = std::numbers::pi;
}

BlochState::BlochState(double delta_, double gamma_) : delta(delta_), gamma(gamma_) {
    if (!(delta >= 0.0 && delta <= kPi))
        throw std::invalid_argument("BlochState: delta must lie in [0, pi]");
    gamma = std::fmod(gamma, 2.0 * kPi);
    if (gamma < 0.0) gamma += 2.0 * kPi;
}

ComplexMatrix bloch_to_ket(const BlochState& s) {
    ComplexMatrix v(2, 1);
    v(0, 0) = std::cos(s.delta / 2.0) * std::exp(cdouble(0.0, s.gamma));
    v(1, 0) = std::sin(s.delta / 2.0);
    return v;
}

ComplexMatrix bell_state(BellKind kind) {
    ComplexMatrix v(4, 1);
    const double r = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case BellKind::PsiPlus:  v(1, 0) = r; v(2, 0) = r;  break;
        case BellKind::PsiMinus: v(1, 0) = r; v(2, 0) = -r; break;
        case BellKind::PhiPlus:  v(0, 0) = r; v(3, 0) = r;  break;
        case BellKind::PhiMinus: v(0, 0) = r; v(3, 0) = -r; break;
    }
    return v;
}

ComplexMatrix density(const ComplexMatrix& ket) {
    if (ket.cols() != 1) throw std::invalid_argument("density: expected a column vector");
    return ket * ket.adjoint();
}

std::array<ComplexMatrix, 4> magic_basis() {
    const cdouble i(0.0, 1.0);
    return {bell_state(BellKind::PhiPlus),
            i * bell_state(BellKind::PhiMinus),
            i * bell_state(BellKind::PsiPlus),
            bell_state(BellKind::PsiMinus)};
}

ComplexMatrix random_mes(double a, double b, double c) {
    auto rz = [](double t) {
        ComplexMatrix m(2, 2);
        m(0, 0) = std::exp(cdouble(0.0, -t / 2.0));
        m(1, 1) = std::exp(cdouble(0.0, t / 2.0));
        return m;
    };
    ComplexMatrix ry(2, 2);
    ry(0, 0) = std::cos(b / 2.0);
    ry(0, 1) = -std::sin(b / 2.0);
    ry(1, 0) = std::sin(b / 2.0);
    ry(1, 1) = std::cos(b / 2.0);
    const ComplexMatrix u = rz(a) * ry * rz(c);
    return kron(u, ComplexMatrix::identity(2)) * bell_state(BellKind::PhiPlus);
}

}  // namespace qtel
