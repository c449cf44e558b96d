#pragma once

#include "qtel/smallmat.hpp"
#include "qtel/states.hpp"

#include <vector>

namespace qtel {

enum class ChannelKind { AmplitudeDamping, PhaseDamping, Depolarizing };

// How the initial Bell pair is distributed: which channel, which Bell state,
// noise on one arm (Bob's) or both, and whether the environment is monitored
// (watched = post-select on no detected excitation).
struct DistributionScenario {
    enum class Arms { OneArm, TwoArm };

    ChannelKind kind = ChannelKind::AmplitudeDamping;
    BellKind bell = BellKind::PsiPlus;
    Arms arms = Arms::TwoArm;
    double pa = 0.0;  // ignored for OneArm (Alice's arm is noiseless)
    double pb = 0.0;
    bool watched = false;

    static DistributionScenario one_arm(ChannelKind k, BellKind b, double pb,
                                        bool watched = false);
    static DistributionScenario two_arm(ChannelKind k, BellKind b, double pa, double pb,
                                        bool watched = false);
    static DistributionScenario two_arm_equal(ChannelKind k, BellKind b, double p,
                                              bool watched = false);
};

// Two-qubit state shared by Alice and Bob after distribution.
struct SharedState {
    ComplexMatrix rho{4, 4};
    double success_probability = 1.0;  // 1 exactly when unwatched
};

// Kraus representation of the single-qubit channel at rate p. The first
// element is always the no-excitation operator.
std::vector<ComplexMatrix> kraus_ops(ChannelKind kind, double p);

// rho -> sum_i K_i rho K_i^dag on a single qubit.
ComplexMatrix apply_channel(const ComplexMatrix& rho, ChannelKind kind, double p);

// Send the Bell pair through the scenario's channels by full Kraus simulation.
// Watched: keep only the first Kraus operator per noisy arm and renormalize;
// throws if the post-selection probability vanishes.
SharedState distribute(const DistributionScenario& s);

// Same state assembled from the closed-form matrix elements; oracle for
// distribute().
SharedState closed_form_shared(const DistributionScenario& s);

}  // namespace qtel
