#pragma once

#include "qtel/channels.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qtel {

// Fidelity references a teleported state can be measured against.
enum class Reference { Classical, UniversalClone, Pccm };

enum class SecurityLevel { Classical, Quantum, Secure };

struct SecurityVerdict {
    SecurityLevel level = SecurityLevel::Classical;
    Reference reference = Reference::UniversalClone;
    double reference_value = 0.0;
};

// Strict classification: F <= 2/3 is Classical, F > reference is Secure,
// anything between is Quantum. `delta` is used only for the Pccm reference.
SecurityVerdict classify(double fidelity, Reference reference, double delta = 0.0);

// Per-copy fidelity of the optimal symmetric universal 1 -> m cloner.
double universal_clone_fidelity(int m);

// Per-copy fidelity of the optimal phase-covariant cloner for a state at
// polar angle delta in [0, pi].
double pccm_fidelity(double delta);

struct ThresholdResult {
    std::string label;
    double target = 0.0;
    std::vector<double> crossings;
    std::optional<double> analytic_expected;
};

// All damping rates p in [0, 1] where quantity(p) crosses `target`: scan at
// step 1e-3, then bisect each bracket to |dp| < 1e-9.
ThresholdResult critical_damping(const std::function<double(double)>& quantity, double target,
                                 std::string label = {},
                                 std::optional<double> analytic_expected = std::nullopt);

// Fix one arm's damping rate; return the smallest rate of the other arm at
// which the closed-form fully entangled fraction crosses `target`. Empty when
// the fixed rate admits no crossing.
std::optional<double> unequal_rate_boundary(ChannelKind kind, BellKind bell, double target,
                                            double fixed_rate);

struct DeltaInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// Maximal delta-intervals within [0, pi] where the curve strictly exceeds the
// reference fidelity: 2048-point scan plus bisection to 1e-9 rad.
std::vector<DeltaInterval> secure_delta_range(const std::function<double(double)>& fidelity_curve,
                                              Reference reference);

// Rate boundary of the other arm keeping the ADC phi-family two-arm fully
// entangled fraction at 3/4 when one arm damps at rate x. Valid for
// x <= (3 - sqrt(3))/2, x != 1/2.
double adc_phi_three_quarter_boundary(double x);

// Largest equal two-arm ADC rate for which the even-outcome teleportation
// fidelity of states near the |1> pole (quartic pole approximation over the
// lower hemisphere) stays at or above the phase-covariant cloning fidelity.
double adc_pole_secure_bound();

}  // namespace qtel
