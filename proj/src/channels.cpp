#include "qtel/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace qtel {

namespace {

void require_rate(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("channel rate must lie in [0, 1]");
}

ComplexMatrix basis_op(int a, int b) {  // |a><b| on one qubit
    ComplexMatrix m(2, 2);
    m(a, b) = 1.0;
    return m;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m(0, 1) = cdouble(0.0, -1.0);
    m(1, 0) = cdouble(0.0, 1.0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

ComplexMatrix ket4(int idx) {  // two-qubit basis ket
    ComplexMatrix v(4, 1);
    v(idx, 0) = 1.0;
    return v;
}

// Apply sum_i (K_i on `arm`) rho (...)^dag to a two-qubit state.
ComplexMatrix apply_arm(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& ks, int arm) {
    ComplexMatrix out(4, 4);
    const ComplexMatrix id = ComplexMatrix::identity(2);
    for (const auto& k : ks) {
        const ComplexMatrix op = arm == 0 ? kron(k, id) : kron(id, k);
        out += op * rho * op.adjoint();
    }
    return out;
}

bool is_psi(BellKind b) { return b == BellKind::PsiPlus || b == BellKind::PsiMinus; }
double bell_sign(BellKind b) {
    return (b == BellKind::PsiPlus || b == BellKind::PhiPlus) ? 1.0 : -1.0;
}

}  // namespace

DistributionScenario DistributionScenario::one_arm(ChannelKind k, BellKind b, double pb,
                                                   bool watched) {
    require_rate(pb);
    return {k, b, Arms::OneArm, 0.0, pb, watched};
}
DistributionScenario DistributionScenario::two_arm(ChannelKind k, BellKind b, double pa,
                                                   double pb, bool watched) {
    require_rate(pa);
    require_rate(pb);
    return {k, b, Arms::TwoArm, pa, pb, watched};
}
DistributionScenario DistributionScenario::two_arm_equal(ChannelKind k, BellKind b, double p,
                                                         bool watched) {
    require_rate(p);
    return {k, b, Arms::TwoArm, p, p, watched};
}

std::vector<ComplexMatrix> kraus_ops(ChannelKind kind, double p) {
    require_rate(p);
    const double q = 1.0 - p;
    switch (kind) {
        case ChannelKind::AmplitudeDamping: {
            ComplexMatrix k0(2, 2);
            k0(0, 0) = 1.0;
            k0(1, 1) = std::sqrt(q);
            return {k0, std::sqrt(p) * basis_op(0, 1)};
        }
        case ChannelKind::PhaseDamping:
            return {std::sqrt(q) * ComplexMatrix::identity(2),
                    std::sqrt(p) * basis_op(0, 0),
                    std::sqrt(p) * basis_op(1, 1)};
        case ChannelKind::Depolarizing:
            return {std::sqrt(1.0 - 0.75 * p) * ComplexMatrix::identity(2),
                    std::sqrt(0.25 * p) * pauli_x(),
                    std::sqrt(0.25 * p) * pauli_y(),
                    std::sqrt(0.25 * p) * pauli_z()};
    }
    throw std::invalid_argument("unknown channel kind");
}

ComplexMatrix apply_channel(const ComplexMatrix& rho, ChannelKind kind, double p) {
    ComplexMatrix out(2, 2);
    for (const auto& k : kraus_ops(kind, p)) out += k * rho * k.adjoint();
    return out;
}

SharedState distribute(const DistributionScenario& s) {
    require_rate(s.pa);
    require_rate(s.pb);
    const bool one_arm = s.arms == DistributionScenario::Arms::OneArm;
    ComplexMatrix rho = density(bell_state(s.bell));
    if (s.watched) {
        const ComplexMatrix kb = kraus_ops(s.kind, s.pb)[0];
        const ComplexMatrix ka =
            one_arm ? ComplexMatrix::identity(2) : kraus_ops(s.kind, s.pa)[0];
        const ComplexMatrix op = kron(ka, kb);
        rho = op * rho * op.adjoint();
        const double prob = rho.trace().real();
        if (prob < 1e-15) throw std::runtime_error("post-selected state undefined");
        return {rho.scaled(1.0 / prob), prob};
    }
    if (!one_arm) rho = apply_arm(rho, kraus_ops(s.kind, s.pa), 0);
    rho = apply_arm(rho, kraus_ops(s.kind, s.pb), 1);
    return {rho, 1.0};
}

SharedState closed_form_shared(const DistributionScenario& s) {
    require_rate(s.pa);
    require_rate(s.pb);
    const bool one_arm = s.arms == DistributionScenario::Arms::OneArm;
    const double pa = one_arm ? 0.0 : s.pa;
    const double pb = s.pb;
    const double qa = 1.0 - pa, qb = 1.0 - pb;
    const double sign = bell_sign(s.bell);

    if (s.kind == ChannelKind::AmplitudeDamping) {
        if (is_psi(s.bell)) {
            ComplexMatrix v = std::sqrt(qb) * ket4(1) + (sign * std::sqrt(qa)) * ket4(2);
            if (s.watched) {
                if (qa + qb < 1e-15)
                    throw std::runtime_error("post-selected state undefined");
                return {density(v).scaled(1.0 / (qa + qb)), 0.5 * (qa + qb)};
            }
            ComplexMatrix rho = density(v) + (pa + pb) * density(ket4(0));
            return {rho.scaled(0.5), 1.0};
        }
        ComplexMatrix v = ket4(0) + (sign * std::sqrt(qa * qb)) * ket4(3);
        if (s.watched)
            return {density(v).scaled(1.0 / (1.0 + qa * qb)), 0.5 * (1.0 + qa * qb)};
        ComplexMatrix rho = density(v) + (qb * pa) * density(ket4(1)) +
                            (pb * qa) * density(ket4(2)) + (pa * pb) * density(ket4(0));
        return {rho.scaled(0.5), 1.0};
    }

    const double x = qa * qb;  // joint no-excitation weight
    if (s.kind == ChannelKind::PhaseDamping) {
        if (s.watched) {
            if (x < 1e-15) throw std::runtime_error("post-selected state undefined");
            return {density(bell_state(s.bell)), x};
        }
        const int d1 = is_psi(s.bell) ? 1 : 0;
        const int d2 = is_psi(s.bell) ? 2 : 3;
        ComplexMatrix rho = x * density(bell_state(s.bell)) +
                            (0.5 * (1.0 - x)) * (density(ket4(d1)) + density(ket4(d2)));
        return {rho, 1.0};
    }

    // Depolarizing: each noisy arm keeps the Bell state with weight q and
    // mixes in I/4 otherwise.
    if (s.watched) {
        const double prob = (4.0 - 3.0 * pa) * (4.0 - 3.0 * pb) / 16.0;
        return {density(bell_state(s.bell)), prob};
    }
    ComplexMatrix rho = x * density(bell_state(s.bell)) +
                        (0.25 * (1.0 - x)) * ComplexMatrix::identity(4);
    return {rho, 1.0};
}

}  // namespace qtel
