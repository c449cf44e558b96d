#pragma once

#include <array>

#include "qtel/smallmat.hpp"

namespace qtel {

// Pure qubit parameterized by polar angle delta in [0, pi] and phase gamma.
// Ket convention: cos(delta/2) e^{i gamma} |0> + sin(delta/2) |1>.
struct BlochState {
    double delta;
    double gamma;
    BlochState(double delta_, double gamma_);
};

enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

ComplexMatrix bloch_to_ket(const BlochState& s);  // 2x1 column
ComplexMatrix bell_state(BellKind kind);          // 4x1 column, basis |00>,|01>,|10>,|11>
ComplexMatrix density(const ComplexMatrix& ket);  // |v><v|

// Orthonormal basis {|phi+>, i|phi->, i|psi+>, |psi->}; any real unit
// combination of these is maximally entangled.
std::array<ComplexMatrix, 4> magic_basis();

// Maximally entangled state (U kron I)|phi+> with U = Rz(a) Ry(b) Rz(c).
ComplexMatrix random_mes(double a, double b, double c);

}  // namespace qtel
