#include "qtel/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qtel {

namespace {

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
    // (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y)
    ComplexMatrix yy(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy * rho.conjugate() * yy;
}

double mes_overlap(const ComplexMatrix& rho, double a, double b, double c) {
    const ComplexMatrix v = random_mes(a, b, c);
    return (v.adjoint() * rho * v)(0, 0).real();
}

}  // namespace

double concurrence(const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("concurrence expects a 4x4 density matrix");
    const ComplexMatrix root = psd_sqrt(rho);
    ComplexMatrix m = root * spin_flip(rho) * root;
    // Hermitian and PSD up to rounding; symmetrize before diagonalizing.
    m = (m + m.adjoint()).scaled(0.5);
    const EigResult eig = hermitian_eig(m);
    // Structural zero eigenvalues come back as O(1e-16) noise; their square
    // roots would shift the difference by ~1e-8, so flush them first.
    const double cut = 1e-13 * std::max(1.0, eig.values.back());
    double lam[4];
    for (int i = 0; i < 4; ++i) {
        const double v = eig.values[i];
        lam[i] = v > cut ? std::sqrt(v) : 0.0;
    }
    std::sort(lam, lam + 4, std::greater<double>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double fully_entangled_fraction(const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("fully_entangled_fraction expects a 4x4 density matrix");
    const auto basis = magic_basis();
    ComplexMatrix re(4, 4);
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            const cdouble mjk = (basis[j].adjoint() * rho * basis[k])(0, 0);
            re(j, k) = mjk.real();
        }
    re = (re + re.adjoint()).scaled(0.5);
    const EigResult eig = hermitian_eig(re);
    return eig.values[3];
}

double fef_sampled(const ComplexMatrix& rho, int n_samples, unsigned seed) {
    if (n_samples < 1) throw std::invalid_argument("fef_sampled needs n_samples >= 1");
    constexpr double pi = std::numbers::pi;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> two_pi(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> one_pi(0.0, pi);

    double best = 0.0;
    double ba = 0.0, bb = 0.0, bc = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double a = two_pi(rng), b = one_pi(rng), c = two_pi(rng);
        const double f = mes_overlap(rho, a, b, c);
        if (f > best) {
            best = f;
            ba = a;
            bb = b;
            bc = c;
        }
    }

    // Coordinate descent from the best sample.
    double step = pi / 8.0;
    while (step > 1e-7) {
        bool improved = true;
        while (improved) {
            improved = false;
            double* angles[3] = {&ba, &bb, &bc};
            for (double* ang : angles) {
                for (double dir : {+1.0, -1.0}) {
                    const double saved = *ang;
                    *ang = saved + dir * step;
                    const double f = mes_overlap(rho, ba, bb, bc);
                    if (f > best) {
                        best = f;
                        improved = true;
                    } else {
                        *ang = saved;
                    }
                }
            }
        }
        step *= 0.5;
    }
    return best;
}

double fef_closed_form(const DistributionScenario& s) {
    const bool one_arm = s.arms == DistributionScenario::Arms::OneArm;
    const double pa = one_arm ? 0.0 : s.pa;
    const double pb = s.pb;
    const double qa = 1.0 - pa, qb = 1.0 - pb;
    const bool psi = s.bell == BellKind::PsiPlus || s.bell == BellKind::PsiMinus;

    if (s.watched) {
        // Watched states are pure, where f = (1 + C)/2.
        return 0.5 * (1.0 + concurrence_closed_form(s));
    }
    switch (s.kind) {
        case ChannelKind::AmplitudeDamping: {
            if (psi) {
                const double root = std::sqrt(qa) + std::sqrt(qb);
                return std::max(0.25 * (pa + pb), 0.25 * root * root);
            }
            const double root = 1.0 + std::sqrt(qa * qb);
            return 0.25 * (pa * pb + root * root);
        }
        case ChannelKind::PhaseDamping:
            return 0.5 * (1.0 + qa * qb);
        case ChannelKind::Depolarizing: {
            const double x = qa * qb;
            return std::max(0.25 * (1.0 + 3.0 * x), 0.25 * (1.0 - x));
        }
    }
    throw std::invalid_argument("unknown channel kind");
}

double concurrence_closed_form(const DistributionScenario& s) {
    const bool one_arm = s.arms == DistributionScenario::Arms::OneArm;
    const double pa = one_arm ? 0.0 : s.pa;
    const double pb = s.pb;
    const double qa = 1.0 - pa, qb = 1.0 - pb;
    const bool psi = s.bell == BellKind::PsiPlus || s.bell == BellKind::PsiMinus;
    const double x = qa * qb;

    switch (s.kind) {
        case ChannelKind::AmplitudeDamping:
            if (s.watched) {
                if (psi && qa + qb < 1e-15)
                    throw std::runtime_error("post-selected state undefined");
                return psi ? 2.0 * std::sqrt(x) / (qa + qb) : 2.0 * std::sqrt(x) / (1.0 + x);
            }
            return psi ? std::sqrt(x) : (1.0 - std::sqrt(pa * pb)) * std::sqrt(x);
        case ChannelKind::PhaseDamping:
            if (s.watched && x < 1e-15)
                throw std::runtime_error("post-selected state undefined");
            return s.watched ? 1.0 : x;
        case ChannelKind::Depolarizing:
            return s.watched ? 1.0 : std::max(0.0, 0.5 * (3.0 * x - 1.0));
    }
    throw std::invalid_argument("unknown channel kind");
}

double max_teleport_fidelity(double f) {
    if (f < 0.25 - 1e-12 || f > 1.0 + 1e-12)
        throw std::invalid_argument("fully entangled fraction must lie in [1/4, 1]");
    return (2.0 * f + 1.0) / 3.0;
}

}  // namespace qtel
