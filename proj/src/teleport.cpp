#include "qtel/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroProb = 1e-15;

constexpr std::array<Pauli, 4> kPsiTable{Pauli::X, Pauli::I, Pauli::Y, Pauli::Z};
constexpr std::array<Pauli, 4> kPhiTable{Pauli::I, Pauli::X, Pauli::Z, Pauli::Y};
constexpr std::array<Pauli, 4> kPauliOrder{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

bool is_psi_family(BellKind b) {
    return b == BellKind::PsiPlus || b == BellKind::PsiMinus;
}

// Combined (H on qubit 0) * CNOT(0 -> 1) on three qubits, basis b0 b1 b2.
ComplexMatrix measurement_circuit() {
    ComplexMatrix u(8, 8);
    const double r = 1.0 / std::sqrt(2.0);
    for (int b = 0; b < 8; ++b) {
        const int b0 = (b >> 2) & 1;
        const int c = (b0 << 2) | (((b >> 1 & 1) ^ b0) << 1) | (b & 1);
        u(c & 3, b) += r;
        u((c & 3) | 4, b) += b0 ? -r : r;
    }
    return u;
}

double overlap(const ComplexMatrix& ket, const ComplexMatrix& rho) {
    return (ket.adjoint() * rho * ket)(0, 0).real();
}

}  // namespace

ComplexMatrix pauli_matrix(Pauli p) {
    ComplexMatrix m(2, 2);
    switch (p) {
        case Pauli::I:
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case Pauli::X:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case Pauli::Y:
            m(0, 1) = cdouble(0.0, -1.0);
            m(1, 0) = cdouble(0.0, 1.0);
            break;
        case Pauli::Z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

CorrectionStrategy standard_strategy(BellKind bell) {
    return {is_psi_family(bell) ? kPsiTable : kPhiTable,
            CorrectionStrategy::Provenance::Standard};
}

CorrectionStrategy prescribed_strategy(BellKind bell) {
    return {is_psi_family(bell) ? kPsiTable : kPhiTable,
            CorrectionStrategy::Provenance::PaperPrescribed};
}

int outcome_index(BellKind bell, int b_input, int b_alice) {
    if ((b_input & ~1) != 0 || (b_alice & ~1) != 0)
        throw std::invalid_argument("measurement bits must be 0 or 1");
    const int bits = (b_input << 1) | b_alice;
    const bool minus = bell == BellKind::PsiMinus || bell == BellKind::PhiMinus;
    return minus ? bits ^ 2 : bits;
}

std::array<TeleportOutcome, 4> teleport(const BlochState& input, BellKind bell,
                                        const SharedState& shared,
                                        const CorrectionStrategy& strategy) {
    const ComplexMatrix ket = bloch_to_ket(input);
    ComplexMatrix rho = kron(density(ket), shared.rho);  // qubits: input, Alice, Bob
    const ComplexMatrix u = measurement_circuit();
    rho = u * rho * u.adjoint();

    std::array<TeleportOutcome, 4> out;
    for (int b_input = 0; b_input < 2; ++b_input)
        for (int b_alice = 0; b_alice < 2; ++b_alice) {
            const int base = (b_input << 2) | (b_alice << 1);
            ComplexMatrix block(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) block(r, c) = rho(base + r, base + c);
            const int k = outcome_index(bell, b_input, b_alice);
            TeleportOutcome& o = out[k];
            o.k = k;
            o.probability = block.trace().real();
            if (o.probability < kZeroProb) {
                o.conditional_state = block;
                o.corrected_state = block;
                o.fidelity.reset();
                continue;
            }
            o.conditional_state = block.scaled(1.0 / o.probability);
            const ComplexMatrix p = pauli_matrix(strategy.table[k]);
            o.corrected_state = p * o.conditional_state * p.adjoint();
            o.fidelity = overlap(ket, o.corrected_state);
        }
    return out;
}

double FidelityReport::selective_mean(const std::vector<int>& kept) const {
    double num = 0.0, den = 0.0;
    for (int k : kept) {
        if (k < 0 || k > 3) throw std::invalid_argument("outcome index out of range");
        const TeleportOutcome& o = outcomes[k];
        if (!o.fidelity) continue;
        num += o.probability * *o.fidelity;
        den += o.probability;
    }
    if (den < kZeroProb)
        throw std::runtime_error("selective mean undefined: kept outcomes have zero probability");
    return num / den;
}

FidelityReport fidelity_report(const BlochState& input, BellKind bell,
                               const SharedState& shared,
                               const CorrectionStrategy& strategy) {
    FidelityReport rep;
    rep.outcomes = teleport(input, bell, shared, strategy);
    double wsum = 0.0, psum = 0.0, fsum = 0.0;
    int defined = 0;
    for (const TeleportOutcome& o : rep.outcomes) {
        if (!o.fidelity) continue;
        wsum += o.probability * *o.fidelity;
        psum += o.probability;
        fsum += *o.fidelity;
        ++defined;
    }
    rep.probability_weighted_mean = psum > 0.0 ? wsum / psum : 0.0;
    rep.unweighted_outcome_mean = defined > 0 ? fsum / defined : 0.0;
    return rep;
}

CorrectionStrategy optimal_strategy(BellKind bell, const SharedState& shared,
                                    const StrategyObjective& objective) {
    CorrectionStrategy result;
    result.provenance = CorrectionStrategy::Provenance::BruteForceOptimal;
    const CorrectionStrategy identity;  // leave conditional states untouched

    std::array<std::array<double, 4>, 4> score{};  // [outcome][pauli candidate]

    auto accumulate = [&](const BlochState& in, double weight) {
        const ComplexMatrix ket = bloch_to_ket(in);
        const auto outcomes = teleport(in, bell, shared, identity);
        for (int k = 0; k < 4; ++k) {
            if (!outcomes[k].fidelity) continue;
            for (int c = 0; c < 4; ++c) {
                const ComplexMatrix p = pauli_matrix(kPauliOrder[c]);
                score[k][c] +=
                    weight * overlap(ket, p * outcomes[k].conditional_state * p.adjoint());
            }
        }
    };

    if (const auto* at = std::get_if<PerOutcomeAtPoint>(&objective)) {
        accumulate(at->input, 1.0);
    } else {
        const auto [nodes, weights] = gauss_legendre(64, -1.0, 1.0);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (int j = 0; j < 16; ++j)
                accumulate(BlochState(std::acos(std::clamp(nodes[i], -1.0, 1.0)),
                                      2.0 * kPi * j / 16.0),
                           weights[i] / 16.0);
    }

    for (int k = 0; k < 4; ++k) {
        int arg = 0;
        for (int c = 1; c < 4; ++c)
            if (score[k][c] > score[k][arg] + 1e-12) arg = c;
        result.table[k] = kPauliOrder[arg];
    }
    return result;
}

double closed_form_fidelity(const DistributionScenario& s, int k, const BlochState& input) {
    if (k < 0 || k > 3) throw std::invalid_argument("outcome index out of range");
    if (s.watched)
        throw std::invalid_argument("no closed-form outcome fidelity for watched distribution");
    const bool one_arm = s.arms == DistributionScenario::Arms::OneArm;
    const double pb = s.pb, qb = 1.0 - pb;
    const double pa = one_arm ? 0.0 : s.pa, qa = 1.0 - pa;
    const double c = std::cos(input.delta);
    const double sin2 = std::sin(input.delta) * std::sin(input.delta);
    const bool psi = is_psi_family(s.bell);
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;

    switch (s.kind) {
        case ChannelKind::AmplitudeDamping: {
            if (one_arm) {
                const double x = (std::sqrt(qb) - qb) * sin2;
                const double par = psi ? sgn : -sgn;  // phi family flips outcome parity
                return 1.0 - 0.5 * (pb * (1.0 + par * c) - x);
            }
            if (std::abs(pa - pb) > 1e-12)
                throw std::invalid_argument(
                    "no closed-form outcome fidelity for unequal two-arm rates");
            const double p = pb;
            if (psi) {
                const double t = 1.0 + sgn * c;
                return 1.0 - p * t * t / (2.0 * (1.0 + sgn * p * c));
            }
            const double cos2d = std::cos(2.0 * input.delta);
            return 1.0 -
                   p * (3.0 - 2.0 * p - (2.0 * p - 1.0) * cos2d) / (4.0 * (1.0 + sgn * p * c));
        }
        case ChannelKind::PhaseDamping:
            return one_arm ? 1.0 - 0.5 * pb * sin2 : 1.0 - 0.5 * (1.0 - qa * qb) * sin2;
        case ChannelKind::Depolarizing:
            return one_arm ? 0.5 * (1.0 + qb) : 0.5 * (1.0 + qa * qb);
    }
    throw std::invalid_argument("unknown channel kind");
}

double bloch_average_fidelity(const DistributionScenario& s, const CorrectionStrategy& strategy,
                              const Averaging& averaging) {
    const SharedState shared = distribute(s);
    double lo = -1.0, hi = 1.0;
    const Selective* sel = std::get_if<Selective>(&averaging);
    if (sel != nullptr) {
        for (int k : sel->kept)
            if (k < 0 || k > 3) throw std::invalid_argument("outcome index out of range");
        if (sel->hemisphere == Hemisphere::Upper) lo = 0.0;
        if (sel->hemisphere == Hemisphere::Lower) hi = 0.0;
    }
    const bool weighted = std::holds_alternative<Weighted>(averaging);

    const auto [nodes, weights] = gauss_legendre(64, lo, hi);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double delta = std::acos(std::clamp(nodes[i], -1.0, 1.0));
        for (int j = 0; j < 16; ++j) {
            const double w = weights[i] / 16.0;
            const auto outcomes =
                teleport(BlochState(delta, 2.0 * kPi * j / 16.0), s.bell, shared, strategy);
            if (sel != nullptr) {
                for (int k : sel->kept) {
                    const TeleportOutcome& o = outcomes[k];
                    if (!o.fidelity) continue;
                    num += w * o.probability * *o.fidelity;
                    den += w * o.probability;
                }
            } else if (weighted) {
                double wsum = 0.0, psum = 0.0;
                for (const TeleportOutcome& o : outcomes) {
                    if (!o.fidelity) continue;
                    wsum += o.probability * *o.fidelity;
                    psum += o.probability;
                }
                num += w * (psum > 0.0 ? wsum / psum : 0.0);
                den += w;
            } else {
                double fsum = 0.0;
                int defined = 0;
                for (const TeleportOutcome& o : outcomes) {
                    if (!o.fidelity) continue;
                    fsum += *o.fidelity;
                    ++defined;
                }
                num += w * (defined > 0 ? fsum / defined : 0.0);
                den += w;
            }
        }
    }
    if (den < kZeroProb) throw std::runtime_error("average undefined: zero total weight");
    return num / den;
}

double direct_transmission_fidelity(const BlochState& input, ChannelKind kind, double p) {
    const ComplexMatrix ket = bloch_to_ket(input);
    return overlap(ket, apply_channel(density(ket), kind, p));
}

double adc_two_arm_outcome_average(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("rate must lie in [0, 1]");
    if (p < 1e-3)  // series form, stable against cancellation in 2p + q^2 log(q/(1+p))
        return 1.0 - 2.0 / 3.0 * p + p * p * (1.0 / 3.0 - p * (4.0 / 15.0 - p / 5.0));
    const double q = 1.0 - p;
    const double logterm = q > 0.0 ? q * q * std::log(q / (1.0 + p)) : 0.0;
    return (2.0 * p + logterm) / (4.0 * p * p);
}

double adc_one_arm_average(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("rate must lie in [0, 1]");
    return 2.0 / 3.0 + (2.0 * std::sqrt(1.0 - p) - p) / 6.0;
}

double adc_one_arm_selective_average(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("rate must lie in [0, 1]");
    return 2.0 / 3.0 + (4.0 * std::sqrt(1.0 - p) + p) / 12.0;
}

}  // namespace qtel
