#pragma once

#include "qtel/channels.hpp"
#include "qtel/smallmat.hpp"
#include "qtel/states.hpp"

namespace qtel {

// Wootters concurrence of a two-qubit density matrix.
double concurrence(const ComplexMatrix& rho);

// Fully entangled fraction f(rho) = max_Phi <Phi|rho|Phi> over maximally
// entangled |Phi>, computed exactly from the magic-basis representation.
double fully_entangled_fraction(const ComplexMatrix& rho);

// Monte-Carlo estimate of the fully entangled fraction: best of `n_samples`
// random maximally entangled states, refined by coordinate descent on the
// local-rotation angles. Always a lower bound on the exact value.
double fef_sampled(const ComplexMatrix& rho, int n_samples, unsigned seed);

// Closed-form fully entangled fraction / concurrence of the shared pair
// produced by `distribute(s)`.
double fef_closed_form(const DistributionScenario& s);
double concurrence_closed_form(const DistributionScenario& s);

// Optimal teleportation fidelity through a channel with fully entangled
// fraction f: F_max = (2 f + 1) / 3.
double max_teleport_fidelity(double f);

}  // namespace qtel
