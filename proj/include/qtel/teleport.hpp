#pragma once

#include "qtel/channels.hpp"
#include "qtel/smallmat.hpp"
#include "qtel/states.hpp"

#include <array>
#include <optional>
#include <variant>
#include <vector>

namespace qtel {

enum class Pauli { I, X, Y, Z };

ComplexMatrix pauli_matrix(Pauli p);

// Bob's recovery operation, one Pauli per measurement outcome.
struct CorrectionStrategy {
    enum class Provenance { Standard, PaperPrescribed, BruteForceOptimal };
    std::array<Pauli, 4> table{Pauli::I, Pauli::I, Pauli::I, Pauli::I};
    Provenance provenance = Provenance::Standard;
};

// Correction table derived from the circuit algebra of ideal teleportation
// with the given Bell resource.
CorrectionStrategy standard_strategy(BellKind bell);
// Same table, tagged as the externally prescribed one.
CorrectionStrategy prescribed_strategy(BellKind bell);

struct TeleportOutcome {
    int k = 0;
    double probability = 0.0;
    ComplexMatrix conditional_state{2, 2};  // Bob's state before correction
    ComplexMatrix corrected_state{2, 2};
    std::optional<double> fidelity;  // empty when probability < 1e-15
};

// Outcome index for measurement bits (input qubit, Alice's qubit), calibrated
// per Bell kind so that index k labels the same conditional state across the
// whole library.
int outcome_index(BellKind bell, int b_input, int b_alice);

// Run the teleportation circuit: CNOT (control = input, target = Alice's
// half), Hadamard on input, projective measurement of those two qubits,
// Pauli correction on Bob's qubit. Returns the four outcomes ordered by k.
std::array<TeleportOutcome, 4> teleport(const BlochState& input, BellKind bell,
                                        const SharedState& shared,
                                        const CorrectionStrategy& strategy);

struct FidelityReport {
    std::array<TeleportOutcome, 4> outcomes;
    double probability_weighted_mean = 0.0;
    double unweighted_outcome_mean = 0.0;

    // Conditional mean over the kept outcomes: sum(p_k F_k) / sum(p_k).
    double selective_mean(const std::vector<int>& kept) const;
};

FidelityReport fidelity_report(const BlochState& input, BellKind bell,
                               const SharedState& shared,
                               const CorrectionStrategy& strategy);

// Objective for brute-force strategy search.
struct PerOutcomeAtPoint {
    BlochState input;
};
struct BlochAverage {};
using StrategyObjective = std::variant<PerOutcomeAtPoint, BlochAverage>;

// Per outcome, pick the Pauli maximizing the objective; ties broken by the
// order I < X < Y < Z.
CorrectionStrategy optimal_strategy(BellKind bell, const SharedState& shared,
                                    const StrategyObjective& objective);

// Outcome-conditional fidelity in closed form for the covered configurations
// (unwatched; ADC requires equal two-arm rates). Throws on uncovered cases.
double closed_form_fidelity(const DistributionScenario& s, int k, const BlochState& input);

enum class Hemisphere { Upper, Lower, Full };

struct Weighted {};
struct Unweighted {};
struct Selective {
    std::vector<int> kept;
    Hemisphere hemisphere = Hemisphere::Upper;
};
using Averaging = std::variant<Weighted, Unweighted, Selective>;

// Bloch-sphere average fidelity: 64-node Gauss-Legendre in cos(delta) over
// the full sphere (or the hemisphere for Selective) times 16 uniform gamma
// nodes. Selective averages are conditional on the kept outcomes.
double bloch_average_fidelity(const DistributionScenario& s, const CorrectionStrategy& strategy,
                              const Averaging& averaging);

// Send the input qubit through the channel itself, no teleportation.
double direct_transmission_fidelity(const BlochState& input, ChannelKind kind, double p);

// Closed-form sphere averages used as quadrature references (ADC, equal
// rates p on both arms or rate p on Bob's arm only).
double adc_two_arm_outcome_average(double p);    // per-outcome average
double adc_one_arm_average(double p);            // 2/3 + (2 sqrt(q) - p)/6
double adc_one_arm_selective_average(double p);  // 2/3 + (4 sqrt(q) + p)/12

}  // namespace qtel
