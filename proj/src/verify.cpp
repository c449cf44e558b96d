#include "qtel/verify.hpp"

#include "qtel/channels.hpp"
#include "qtel/entanglement.hpp"
#include "qtel/security.hpp"
#include "qtel/smallmat.hpp"
#include "qtel/states.hpp"
#include "qtel/teleport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

namespace qtel {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<ChannelKind, 3> kKinds{
    ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping, ChannelKind::Depolarizing};
constexpr std::array<BellKind, 4> kBells{
    BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus};

bool watched_defined(const DistributionScenario& s) {
    if (!s.watched) return true;
    const bool one_arm = s.arms == DistributionScenario::Arms::OneArm;
    const double qa = one_arm ? 1.0 : 1.0 - s.pa;
    const double qb = 1.0 - s.pb;
    const bool psi = s.bell == BellKind::PsiPlus || s.bell == BellKind::PsiMinus;
    switch (s.kind) {
        case ChannelKind::AmplitudeDamping:
            return !psi || qa + qb >= 1e-15;
        case ChannelKind::PhaseDamping:
            return qa * qb >= 1e-15;
        case ChannelKind::Depolarizing:
            return true;
    }
    return true;
}

std::vector<DistributionScenario> scenario_grid(double p_step, bool include_watched) {
    std::vector<DistributionScenario> out;
    for (ChannelKind kind : kKinds)
        for (BellKind bell : kBells)
            for (int w = 0; w < (include_watched ? 2 : 1); ++w)
                for (double p = 0.0; p <= 1.0 + 1e-12; p += p_step) {
                    auto push = [&](const DistributionScenario& s) {
                        if (watched_defined(s)) out.push_back(s);
                    };
                    push(DistributionScenario::one_arm(kind, bell, p, w == 1));
                    push(DistributionScenario::two_arm_equal(kind, bell, p, w == 1));
                    push(DistributionScenario::two_arm(kind, bell, p, std::min(1.0, 0.3 + p / 2),
                                                      w == 1));
                }
    return out;
}

ComplexMatrix random_density_matrix(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cdouble(gauss(rng), gauss(rng));
    ComplexMatrix rho = g * g.adjoint();
    return rho.scaled(1.0 / rho.trace().real());
}

ComplexMatrix random_pure_state(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix v(dim, 1);
    double norm2 = 0.0;
    for (int i = 0; i < dim; ++i) {
        v(i, 0) = cdouble(gauss(rng), gauss(rng));
        norm2 += std::norm(v(i, 0));
    }
    return v.scaled(1.0 / std::sqrt(norm2));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

struct Runner {
    explicit Runner(std::ostream& os) : out(os) {}

    VerifyReport report;
    std::ostream& out;

    void check(const std::string& name, bool ok, const std::string& detail = {}) {
        report.checks.push_back({name, detail, ok, false});
        if (ok) {
            ++report.passed;
            out << "[PASS] " << name << "\n";
        } else {
            ++report.failed;
            out << "[FAIL] " << name;
            if (!detail.empty()) out << " (" << detail << ")";
            out << "\n";
        }
    }

    // A documented mismatch: the simulation must match the corrected reading
    // (consistent == true) for the entry to count as expected; otherwise it
    // is a genuine failure.
    void discrepancy(const std::string& name, bool consistent, const std::string& detail) {
        if (!consistent) {
            check(name, false, detail);
            return;
        }
        report.checks.push_back({name, detail, true, true});
        ++report.discrepancies;
        out << "[expected discrepancy] " << name << ": " << detail << "\n";
    }
};

void check_kraus_completeness(Runner& r) {
    double worst = 0.0;
    for (ChannelKind kind : kKinds)
        for (double p = 0.0; p <= 1.0 + 1e-12; p += 0.1) {
            ComplexMatrix acc(2, 2);
            for (const ComplexMatrix& k : kraus_ops(kind, p)) acc += k.adjoint() * k;
            worst = std::max(worst, max_abs_diff(acc, ComplexMatrix::identity(2)));
        }
    r.check("kraus-completeness", worst < 1e-13, "max deviation " + fmt(worst));
}

void check_shared_state_oracle(Runner& r) {
    double worst = 0.0, worst_prob = 0.0;
    for (const DistributionScenario& s : scenario_grid(0.25, true)) {
        const SharedState sim = distribute(s);
        const SharedState closed = closed_form_shared(s);
        worst = std::max(worst, max_abs_diff(sim.rho, closed.rho));
        worst_prob =
            std::max(worst_prob, std::abs(sim.success_probability - closed.success_probability));
    }
    r.check("shared-state-oracle", worst < 1e-12 && worst_prob < 1e-12,
            "max element deviation " + fmt(worst) + ", probability deviation " + fmt(worst_prob));
}

void check_entanglement_closed_forms(Runner& r) {
    double worst_c = 0.0, worst_f = 0.0;
    for (const DistributionScenario& s : scenario_grid(0.3, true)) {
        const SharedState sim = distribute(s);
        worst_c = std::max(worst_c,
                           std::abs(concurrence(sim.rho) - concurrence_closed_form(s)));
        worst_f = std::max(
            worst_f, std::abs(fully_entangled_fraction(sim.rho) - fef_closed_form(s)));
    }
    r.check("entanglement-closed-forms", worst_c < 1e-10 && worst_f < 1e-10,
            "concurrence deviation " + fmt(worst_c) + ", f_ent deviation " + fmt(worst_f));
}

void check_fef_oracle(Runner& r) {
    std::mt19937_64 rng(20240811);
    bool bound_ok = true;
    double worst_gap = 0.0;
    for (int i = 0; i < 20; ++i) {
        const ComplexMatrix rho = random_density_matrix(rng, 4);
        const double exact = fully_entangled_fraction(rho);
        const double sampled = fef_sampled(rho, 500, 1000 + i);
        bound_ok = bound_ok && sampled <= exact + 1e-10;
        worst_gap = std::max(worst_gap, exact - sampled);
    }
    r.check("fef-sampled-lower-bound", bound_ok && worst_gap < 1e-5,
            "largest exact-minus-sampled gap " + fmt(worst_gap));

    double worst_pure = 0.0;
    for (int i = 0; i < 30; ++i) {
        const ComplexMatrix rho = density(random_pure_state(rng, 4));
        worst_pure = std::max(worst_pure, std::abs(fully_entangled_fraction(rho) -
                                                   0.5 * (1.0 + concurrence(rho))));
    }
    r.check("fef-pure-state-relation", worst_pure < 1e-9,
            "max |f - (1+C)/2| = " + fmt(worst_pure));
}

void check_fidelity_closed_forms(Runner& r) {
    double worst = 0.0, worst_gamma = 0.0;
    for (ChannelKind kind : kKinds)
        for (BellKind bell : kBells)
            for (int arm = 0; arm < 2; ++arm)
                for (double p : {0.0, 0.2, 0.7, 1.0}) {
                    const DistributionScenario s =
                        arm == 0 ? DistributionScenario::one_arm(kind, bell, p)
                                 : DistributionScenario::two_arm_equal(kind, bell, p);
                    const SharedState shared = distribute(s);
                    const CorrectionStrategy strat = prescribed_strategy(bell);
                    for (double d : {0.0, 0.2 * kPi, 0.5 * kPi, 0.8 * kPi, kPi}) {
                        std::array<std::optional<double>, 4> at_zero{};
                        for (double g : {0.0, kPi / 3.0}) {
                            const auto outcomes =
                                teleport(BlochState(d, g), bell, shared, strat);
                            for (const TeleportOutcome& o : outcomes) {
                                if (!o.fidelity) continue;
                                const double closed =
                                    closed_form_fidelity(s, o.k, BlochState(d, g));
                                worst = std::max(worst, std::abs(*o.fidelity - closed));
                                if (g == 0.0)
                                    at_zero[static_cast<std::size_t>(o.k)] = *o.fidelity;
                                else if (at_zero[static_cast<std::size_t>(o.k)])
                                    worst_gamma = std::max(
                                        worst_gamma,
                                        std::abs(*o.fidelity -
                                                 *at_zero[static_cast<std::size_t>(o.k)]));
                            }
                        }
                    }
                }
    r.check("teleport-vs-closed-fidelity", worst < 1e-11, "max deviation " + fmt(worst));
    r.check("fidelity-gamma-independence", worst_gamma < 1e-12,
            "max gamma dependence " + fmt(worst_gamma));
}

void check_outcome_probabilities(Runner& r) {
    double worst = 0.0, worst_sum = 0.0, worst_quarter = 0.0;
    for (double p : {0.1, 0.5, 0.9})
        for (double d : {0.3, 1.4, 2.8})
            for (BellKind bell : {BellKind::PsiPlus, BellKind::PsiMinus}) {
                const DistributionScenario s =
                    DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping, bell, p);
                const auto outcomes =
                    teleport(BlochState(d, 0.4), bell, distribute(s), prescribed_strategy(bell));
                double sum = 0.0;
                for (const TeleportOutcome& o : outcomes) {
                    const double sign = o.k % 2 == 0 ? 1.0 : -1.0;
                    const double expected = (1.0 + sign * p * std::cos(d)) / 4.0;
                    worst = std::max(worst, std::abs(o.probability - expected));
                    sum += o.probability;
                }
                worst_sum = std::max(worst_sum, std::abs(sum - 1.0));

                const DistributionScenario one =
                    DistributionScenario::one_arm(ChannelKind::AmplitudeDamping, bell, p);
                for (const TeleportOutcome& o :
                     teleport(BlochState(d, 0.4), bell, distribute(one),
                              prescribed_strategy(bell)))
                    worst_quarter = std::max(worst_quarter, std::abs(o.probability - 0.25));
            }
    r.check("adc-outcome-probabilities", worst < 1e-12 && worst_sum < 1e-12,
            "max deviation " + fmt(std::max(worst, worst_sum)));
    r.check("one-arm-probabilities-quarter", worst_quarter < 1e-12,
            "max deviation " + fmt(worst_quarter));
}

void check_quadrature_averages(Runner& r) {
    using CK = ChannelKind;
    using BK = BellKind;
    const CorrectionStrategy psi_strat = prescribed_strategy(BK::PsiPlus);
    double worst = 0.0;
    auto cmp = [&](double got, double want) {
        worst = std::max(worst, std::abs(got - want));
    };

    for (double p : {0.3, 0.5}) {
        const auto s = DistributionScenario::two_arm_equal(CK::AmplitudeDamping, BK::PsiPlus, p);
        cmp(bloch_average_fidelity(s, psi_strat, Unweighted{}), adc_two_arm_outcome_average(p));
    }
    cmp(adc_two_arm_outcome_average(0.5), 1.0 + 0.25 * std::log(1.0 / 3.0));
    {
        const auto s = DistributionScenario::two_arm_equal(CK::AmplitudeDamping, BK::PsiPlus, 0.4);
        cmp(bloch_average_fidelity(s, psi_strat, Weighted{}), 1.0 - 2.0 * 0.4 / 3.0);
    }
    for (double p : {0.36, 0.8}) {
        const auto s = DistributionScenario::one_arm(CK::AmplitudeDamping, BK::PsiPlus, p);
        cmp(bloch_average_fidelity(s, psi_strat, Weighted{}), adc_one_arm_average(p));
    }
    for (double p : {0.5, 1.0}) {
        const auto s = DistributionScenario::one_arm(CK::AmplitudeDamping, BK::PsiPlus, p);
        cmp(bloch_average_fidelity(s, psi_strat, Selective{{1, 3}, Hemisphere::Upper}),
            adc_one_arm_selective_average(p));
    }
    {
        const auto s = DistributionScenario::two_arm_equal(CK::PhaseDamping, BK::PsiPlus, 0.6);
        cmp(bloch_average_fidelity(s, psi_strat, Weighted{}), 1.0 - 0.6 * (2.0 - 0.6) / 3.0);
        const auto one = DistributionScenario::one_arm(CK::PhaseDamping, BK::PsiPlus, 0.6);
        cmp(bloch_average_fidelity(one, psi_strat, Weighted{}), 1.0 - 0.6 / 3.0);
    }
    {
        const auto s = DistributionScenario::two_arm_equal(CK::Depolarizing, BK::PsiPlus, 0.7);
        cmp(bloch_average_fidelity(s, psi_strat, Weighted{}), 0.5 * (1.0 + 0.3 * 0.3));
        const auto one = DistributionScenario::one_arm(CK::Depolarizing, BK::PsiPlus, 0.7);
        cmp(bloch_average_fidelity(one, psi_strat, Weighted{}), 0.5 * (1.0 + 0.3));
    }
    r.check("quadrature-vs-closed-averages", worst < 1e-8, "max deviation " + fmt(worst));

    double worst_small = 0.0;
    for (double p : {1e-4, 5e-4, 1e-3})
        worst_small = std::max(worst_small, std::abs(adc_two_arm_outcome_average(p) -
                                                     (1.0 - 2.0 * p / 3.0 + p * p / 3.0)));
    r.check("small-rate-average-expansion", worst_small < 1e-6,
            "max deviation " + fmt(worst_small));
}

void check_direct_transmission(Runner& r) {
    double worst = 0.0;
    for (double p : {0.3, 0.8})
        for (double d : {0.2 * kPi, 0.6 * kPi}) {
            const BlochState in(d, 0.9);
            const double adc =
                direct_transmission_fidelity(in, ChannelKind::AmplitudeDamping, p);
            const auto one = DistributionScenario::one_arm(ChannelKind::AmplitudeDamping,
                                                           BellKind::PsiPlus, p);
            worst = std::max(worst, std::abs(adc - closed_form_fidelity(one, 1, in)));

            const double pdc = direct_transmission_fidelity(in, ChannelKind::PhaseDamping, p);
            const double s2 = std::sin(d) * std::sin(d);
            worst = std::max(worst, std::abs(pdc - (1.0 - 0.5 * p * s2)));

            const double dc = direct_transmission_fidelity(in, ChannelKind::Depolarizing, p);
            worst = std::max(worst, std::abs(dc - 0.5 * (2.0 - p)));
        }
    r.check("direct-transmission-closed-forms", worst < 1e-11, "max deviation " + fmt(worst));

    // Sphere averages of the direct scheme.
    const auto [nodes, weights] = gauss_legendre(64, -1.0, 1.0);
    double worst_avg = 0.0;
    for (double p : {0.36, 0.8}) {
        double adc_avg = 0.0, pdc_avg = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const BlochState in(std::acos(std::clamp(nodes[i], -1.0, 1.0)), 0.0);
            adc_avg += weights[i] *
                       direct_transmission_fidelity(in, ChannelKind::AmplitudeDamping, p);
            pdc_avg += weights[i] *
                       direct_transmission_fidelity(in, ChannelKind::PhaseDamping, p);
        }
        worst_avg = std::max(worst_avg, std::abs(adc_avg / 2.0 - adc_one_arm_average(p)));
        worst_avg = std::max(worst_avg, std::abs(pdc_avg / 2.0 - (1.0 - p / 3.0)));
    }
    r.check("direct-transmission-averages", worst_avg < 1e-8,
            "max deviation " + fmt(worst_avg));

    double worst_eq = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double d = 0.5 * kPi * i / 100;
        worst_eq = std::max(
            worst_eq,
            std::abs(direct_transmission_fidelity(BlochState(d, 0.0),
                                                  ChannelKind::AmplitudeDamping, 0.5) -
                     pccm_fidelity(d)));
    }
    r.check("direct-adc-half-rate-equals-pccm", worst_eq < 1e-9,
            "max deviation on [0, pi/2] " + fmt(worst_eq));
}

// Several fully entangled fraction curves touch the target again exactly at
// p = 1 (the state becomes separable with f = 1/2 there), so take the first
// crossing rather than demanding uniqueness.
double first_crossing(const ThresholdResult& t) {
    return t.crossings.empty() ? -1.0 : t.crossings.front();
}

void check_fent_thresholds(Runner& r) {
    using CK = ChannelKind;
    using BK = BellKind;
    struct Case {
        const char* name;
        DistributionScenario proto;
        double target;
        double expected;
    };
    auto two = [](CK k, BK b) { return DistributionScenario::two_arm_equal(k, b, 0.0); };
    auto one = [](CK k, BK b) { return DistributionScenario::one_arm(k, b, 0.0); };
    const std::vector<Case> cases = {
        {"adc-psi-two-half", two(CK::AmplitudeDamping, BK::PsiPlus), 0.5, 0.5},
        {"adc-psi-two-3q", two(CK::AmplitudeDamping, BK::PsiPlus), 0.75, 0.25},
        {"adc-one-half", one(CK::AmplitudeDamping, BK::PsiPlus), 0.5,
         2.0 * (std::sqrt(2.0) - 1.0)},
        {"adc-one-3q", one(CK::AmplitudeDamping, BK::PsiPlus), 0.75, 2.0 * std::sqrt(3.0) - 3.0},
        {"adc-phi-two-3q", two(CK::AmplitudeDamping, BK::PhiPlus), 0.75,
         1.0 - std::sqrt(2.0) / 2.0},
        {"pdc-two-3q", two(CK::PhaseDamping, BK::PsiPlus), 0.75, 1.0 - std::sqrt(2.0) / 2.0},
        {"pdc-one-3q", one(CK::PhaseDamping, BK::PsiPlus), 0.75, 0.5},
        {"dc-two-half", two(CK::Depolarizing, BK::PsiPlus), 0.5, 1.0 - std::sqrt(3.0) / 3.0},
        {"dc-two-3q", two(CK::Depolarizing, BK::PsiPlus), 0.75, 1.0 - std::sqrt(6.0) / 3.0},
        {"dc-one-half", one(CK::Depolarizing, BK::PsiPlus), 0.5, 2.0 / 3.0},
        {"dc-one-3q", one(CK::Depolarizing, BK::PsiPlus), 0.75, 1.0 / 3.0},
    };
    double worst = 0.0;
    std::string worst_name = "none";
    for (const Case& c : cases) {
        DistributionScenario proto = c.proto;
        const auto quantity = [&proto](double p) {
            DistributionScenario s = proto;
            s.pb = p;
            if (s.arms == DistributionScenario::Arms::TwoArm) s.pa = p;
            return fef_closed_form(s);
        };
        const ThresholdResult t = critical_damping(quantity, c.target, c.name, c.expected);
        const double got = first_crossing(t);
        const double dev = std::abs(got - c.expected);
        if (dev > worst) {
            worst = dev;
            worst_name = c.name;
        }
    }
    r.check("fent-thresholds-analytic", worst < 1e-6,
            "worst case " + worst_name + ", deviation " + fmt(worst));

    // Unequal-rate boundaries.
    const auto b1 = unequal_rate_boundary(CK::AmplitudeDamping, BK::PhiPlus, 0.5, 0.5);
    const auto b2 = unequal_rate_boundary(CK::AmplitudeDamping, BK::PhiPlus, 0.5, 0.25);
    const bool u_ok = b1 && b2 && std::abs(*b1 - 7.0 / 8.0) < 1e-6 &&
                      std::abs(*b2 - (6.0 * std::sqrt(6.0) - 13.0) / 2.0) < 1e-6;
    r.check("unequal-rate-spot-checks", u_ok,
            b1 && b2 ? "boundaries " + fmt(*b1) + ", " + fmt(*b2) : "missing boundary");

    const double g0 = adc_phi_three_quarter_boundary(0.0);
    const auto g_num = unequal_rate_boundary(CK::AmplitudeDamping, BK::PhiPlus, 0.75, 0.2);
    const bool g_ok = std::abs(g0 - (2.0 * std::sqrt(3.0) - 3.0)) < 1e-12 && g_num &&
                      std::abs(adc_phi_three_quarter_boundary(0.2) - *g_num) < 1e-6;
    r.check("phi-boundary-function-consistency", g_ok,
            "g(0) = " + fmt(g0) + (g_num ? ", g(0.2) vs numeric " +
                                               fmt(std::abs(adc_phi_three_quarter_boundary(0.2) -
                                                            *g_num))
                                         : ""));
}

void check_min_fidelity_thresholds(Runner& r) {
    const auto min_psi = [](double p) {
        const auto s = DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping,
                                                           BellKind::PsiPlus, p);
        double best = 1.0;
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i <= 720; ++i)
                best = std::min(best, closed_form_fidelity(s, k, BlochState(kPi * i / 720, 0.0)));
        return best;
    };
    const auto min_phi = [](double p) {
        const auto s = DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping,
                                                           BellKind::PhiPlus, p);
        double best = 1.0;
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i <= 720; ++i)
                best = std::min(best, closed_form_fidelity(s, k, BlochState(kPi * i / 720, 0.0)));
        return best;
    };
    const double p56 = first_crossing(critical_damping(min_psi, 5.0 / 6.0));
    const double p23 = first_crossing(critical_damping(min_psi, 2.0 / 3.0));
    const double f56 = first_crossing(critical_damping(min_phi, 5.0 / 6.0));
    const double worst = std::max({std::abs(p56 - 1.0 / 11.0), std::abs(p23 - 0.2),
                                   std::abs(f56 - 1.0 / 6.0)});
    r.check("all-state-fidelity-thresholds", worst < 1e-4, "max deviation " + fmt(worst));
}

void check_equatorial_thresholds(Runner& r) {
    const double ref = pccm_fidelity(kPi / 2.0);
    const BlochState eq(kPi / 2.0, 0.0);
    const auto adc_two = [&](double p) {
        return closed_form_fidelity(DistributionScenario::two_arm_equal(
                                        ChannelKind::AmplitudeDamping, BellKind::PsiPlus, p),
                                    0, eq);
    };
    const auto pdc_two = [&](double p) {
        return closed_form_fidelity(DistributionScenario::two_arm_equal(
                                        ChannelKind::PhaseDamping, BellKind::PsiPlus, p),
                                    0, eq);
    };
    const auto pdc_one = [&](double p) {
        return closed_form_fidelity(
            DistributionScenario::one_arm(ChannelKind::PhaseDamping, BellKind::PsiPlus, p), 0,
            eq);
    };
    const double t1 = first_crossing(critical_damping(adc_two, ref));
    const double t2 = first_crossing(critical_damping(pdc_two, ref));
    const double t3 = first_crossing(critical_damping(pdc_one, ref));
    const double worst = std::max({std::abs(t1 - (1.0 - std::sqrt(2.0) / 2.0)),
                                   std::abs(t2 - (1.0 - std::pow(2.0, -0.25))),
                                   std::abs(t3 - (1.0 - 1.0 / std::sqrt(2.0)))});
    r.check("equatorial-pccm-thresholds", worst < 1e-6, "max deviation " + fmt(worst));
}

void check_pccm(Runner& r) {
    const double at_eq = pccm_fidelity(kPi / 2.0);
    r.check("pccm-equator-value", std::abs(at_eq - (2.0 + std::sqrt(2.0)) / 4.0) < 1e-12,
            "F'(pi/2) = " + fmt(at_eq));

    // Evaluate both branch expressions exactly at pi/2.
    auto branch = [](double delta, double kappa) {
        const double s = std::sin(0.5 * (delta + kappa * kPi));
        const double c = std::cos(0.5 * (delta - kappa * kPi));
        return 0.5 * s * s + c * c * c * c +
               std::sqrt(2.0) / 4.0 * std::sin(delta) * std::sin(delta);
    };
    const double jump = std::abs(branch(kPi / 2.0, 0.0) - branch(kPi / 2.0, 1.0));
    r.check("pccm-branch-continuity", jump < 1e-12, "branch difference " + fmt(jump));

    double worst_series = 0.0;
    for (double dd : {0.01, 0.05, 0.1}) {
        const double series = 1.0 - (3.0 - 2.0 * std::sqrt(2.0)) / 8.0 * dd * dd;
        worst_series = std::max(worst_series, std::abs(pccm_fidelity(dd) - series));
        worst_series = std::max(worst_series, std::abs(pccm_fidelity(kPi - dd) - series));
    }
    r.check("pccm-pole-series", worst_series < 1e-4, "max deviation " + fmt(worst_series));

    double floor = 1.0;
    for (int i = 0; i <= 1000; ++i) floor = std::min(floor, pccm_fidelity(kPi * i / 1000));
    r.check("pccm-above-no-cloning", floor > 5.0 / 6.0, "minimum " + fmt(floor));

    const bool clone_ok = std::abs(universal_clone_fidelity(1) - 1.0) < 1e-15 &&
                          std::abs(universal_clone_fidelity(2) - 5.0 / 6.0) < 1e-15 &&
                          std::abs(universal_clone_fidelity(1000000) - 2.0 / 3.0) < 1e-6;
    r.check("universal-clone-values", clone_ok);
}

void check_secure_regions(Runner& r) {
    const auto direct_curve = [](double p) {
        return std::function<double(double)>([p](double d) {
            return direct_transmission_fidelity(BlochState(d, 0.0),
                                                ChannelKind::AmplitudeDamping, p);
        });
    };
    const auto classical = secure_delta_range(direct_curve(0.8), Reference::Classical);
    const bool c_ok = classical.size() == 1 && classical[0].lo == 0.0 &&
                      std::abs(classical[0].hi - 0.5436 * kPi) < 5e-4 * kPi;
    r.check("direct-adc-classical-endpoint", c_ok,
            classical.size() == 1 ? "endpoint " + fmt(classical[0].hi / kPi) + " pi"
                                  : "unexpected interval count");

    const auto universal = secure_delta_range(direct_curve(0.8), Reference::UniversalClone);
    const bool u_ok = universal.size() == 1 && universal[0].lo == 0.0 &&
                      std::abs(universal[0].hi - 0.4021 * kPi) < 5e-4 * kPi;
    r.check("direct-adc-no-cloning-endpoint", u_ok,
            universal.size() == 1 ? "endpoint " + fmt(universal[0].hi / kPi) + " pi"
                                  : "unexpected interval count");

    // PDC two-arm secure region against the universal clone reference.
    const double p = 0.9;
    const auto sc =
        DistributionScenario::two_arm_equal(ChannelKind::PhaseDamping, BellKind::PsiPlus, p);
    const SharedState sh = distribute(sc);
    const CorrectionStrategy strat = prescribed_strategy(sc.bell);
    const auto curve = [&](double d) {
        return fidelity_report(BlochState(d, 0.0), sc.bell, sh, strat)
            .probability_weighted_mean;
    };
    const auto region = secure_delta_range(curve, Reference::UniversalClone);
    bool pdc_ok = region.size() == 2;
    if (pdc_ok) {
        const double want = 1.0 / (3.0 * p * (2.0 - p));
        for (double edge : {region[0].hi, region[1].lo}) {
            const double s2 = std::sin(edge) * std::sin(edge);
            pdc_ok = pdc_ok && std::abs(s2 - want) < 1e-6;
        }
        pdc_ok = pdc_ok && region[0].lo == 0.0 && region[1].hi == kPi;
    }
    r.check("pdc-secure-region-boundary", pdc_ok);

    const auto full = secure_delta_range(direct_curve(0.0), Reference::Classical);
    r.check("zero-rate-full-region",
            full.size() == 1 && full[0].lo == 0.0 && full[0].hi == kPi);

    const double bound = adc_pole_secure_bound();
    r.check("pole-neighborhood-bound", std::abs(bound - 0.162) < 2e-3,
            "bound " + fmt(bound));
}

void check_strategies(Runner& r) {
    const auto noiseless =
        DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping, BellKind::PhiPlus, 0.0);
    const SharedState ideal = distribute(noiseless);
    const CorrectionStrategy at_point = optimal_strategy(
        BellKind::PhiPlus, ideal, PerOutcomeAtPoint{BlochState(1.1, 0.7)});
    const CorrectionStrategy averaged =
        optimal_strategy(BellKind::PhiPlus, ideal, BlochAverage{});
    const CorrectionStrategy std_phi = standard_strategy(BellKind::PhiPlus);
    r.check("optimal-strategy-noiseless",
            at_point.table == std_phi.table && averaged.table == std_phi.table &&
                at_point.provenance == CorrectionStrategy::Provenance::BruteForceOptimal);

    const auto adc =
        DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping, BellKind::PsiPlus, 0.5);
    const CorrectionStrategy adc_avg =
        optimal_strategy(BellKind::PsiPlus, distribute(adc), BlochAverage{});
    r.check("optimal-strategy-adc-recovers-prescription",
            adc_avg.table == prescribed_strategy(BellKind::PsiPlus).table);

    const auto pdc =
        DistributionScenario::two_arm_equal(ChannelKind::PhaseDamping, BellKind::PsiPlus, 0.5);
    const SharedState pdc_shared = distribute(pdc);
    const CorrectionStrategy pdc_opt =
        optimal_strategy(BellKind::PsiPlus, pdc_shared, BlochAverage{});
    const auto outcomes = teleport(BlochState(1.2, 0.3), BellKind::PsiPlus, pdc_shared, pdc_opt);
    double lo = 1.0, hi = 0.0;
    for (const TeleportOutcome& o : outcomes) {
        lo = std::min(lo, o.fidelity.value_or(1.0));
        hi = std::max(hi, o.fidelity.value_or(0.0));
    }
    r.check("optimal-strategy-pdc-equal-outcomes", hi - lo < 1e-12,
            "outcome fidelity spread " + fmt(hi - lo));
}

void check_outcome_sanity(Runner& r) {
    double worst_sum = 0.0, worst_state = 0.0;
    for (const DistributionScenario& s : scenario_grid(0.5, true)) {
        const SharedState shared = distribute(s);
        const auto outcomes =
            teleport(BlochState(0.7 * kPi, 1.9), s.bell, shared, standard_strategy(s.bell));
        double sum = 0.0;
        for (const TeleportOutcome& o : outcomes) {
            sum += o.probability;
            if (!o.fidelity) continue;
            worst_state = std::max(
                worst_state, std::abs(o.conditional_state.trace().real() - 1.0));
            worst_state = std::max(
                worst_state,
                max_abs_diff(o.conditional_state, o.conditional_state.adjoint()));
            const EigResult eig = hermitian_eig(
                (o.conditional_state + o.conditional_state.adjoint()).scaled(0.5));
            worst_state = std::max(worst_state, std::max(0.0, -eig.values.front()));
        }
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
    r.check("outcome-probabilities-normalized", worst_sum < 1e-12,
            "max deviation " + fmt(worst_sum));
    r.check("conditional-states-valid", worst_state < 1e-11,
            "max deviation " + fmt(worst_state));
}

void check_determinism(Runner& r) {
    std::mt19937_64 rng(7);
    const ComplexMatrix rho = random_density_matrix(rng, 4);
    const double a = fef_sampled(rho, 300, 12345);
    const double b = fef_sampled(rho, 300, 12345);
    r.check("seeded-sampling-deterministic", a == b);
}

void check_documented_discrepancies(Runner& r) {
    // One-arm ADC, all outcomes kept: printed mean is q - x/2, simulation and
    // the sphere-average identity require 1 - p/2 + x/2.
    {
        const double p = 0.5, d = kPi / 3.0;
        const double q = 1.0 - p;
        const double x = (std::sqrt(q) - q) * std::sin(d) * std::sin(d);
        const auto s =
            DistributionScenario::one_arm(ChannelKind::AmplitudeDamping, BellKind::PsiPlus, p);
        const FidelityReport rep = fidelity_report(BlochState(d, 0.0), s.bell, distribute(s),
                                                   prescribed_strategy(s.bell));
        const double corrected = 1.0 - 0.5 * p + 0.5 * x;
        const double printed = q - 0.5 * x;
        const bool consistent =
            std::abs(rep.probability_weighted_mean - corrected) < 1e-11 &&
            std::abs(corrected - printed) > 1e-3;
        r.discrepancy("one-arm-mean-closed-form", consistent,
                      "printed mean q - x/2 = " + fmt(printed) +
                          "; simulation gives 1 - p/2 + x/2 = " +
                          fmt(rep.probability_weighted_mean));
    }
    // Two-arm ADC mean: printed as the probability-weighted sum, but the
    // printed value equals the unweighted outcome mean.
    {
        const double p = 0.5, d = 0.0;
        const double c = std::cos(d);
        const auto s = DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping,
                                                           BellKind::PsiPlus, p);
        const FidelityReport rep = fidelity_report(BlochState(d, 0.0), s.bell, distribute(s),
                                                   prescribed_strategy(s.bell));
        const double printed = (2.0 - p * (1.0 + c * c)) / (2.0 * (1.0 - p * p * c * c));
        const double weighted_form = 1.0 - 0.5 * p * (1.0 + c * c);
        const bool consistent =
            std::abs(rep.unweighted_outcome_mean - printed) < 1e-11 &&
            std::abs(rep.probability_weighted_mean - weighted_form) < 1e-11 &&
            std::abs(printed - weighted_form) > 1e-3;
        r.discrepancy("two-arm-mean-weighting", consistent,
                      "printed value " + fmt(printed) +
                          " equals the unweighted outcome mean; the probability-weighted mean "
                          "is 1 - p(1 + cos^2 delta)/2 = " +
                          fmt(rep.probability_weighted_mean));
    }
    // Depolarizing output diagonal: printed chi * rho00 + mu * chi is
    // trace-inconsistent; the simulation realizes xi * rho00 + mu * chi.
    {
        const double p = 0.5, q = 1.0 - p;
        const double mu = (1.0 - q) / 2.0, chi = 1.0 + q;
        const double xi = q * q;
        const BlochState in(kPi / 3.0, 0.3 * kPi);
        const auto s =
            DistributionScenario::two_arm_equal(ChannelKind::Depolarizing, BellKind::PsiPlus, p);
        const auto outcomes =
            teleport(in, s.bell, distribute(s), prescribed_strategy(s.bell));
        const double rho00 = std::norm(std::cos(in.delta / 2.0));
        const double sim00 = outcomes[0].corrected_state(0, 0).real();
        const double corrected = xi * rho00 + mu * chi;
        const double printed = chi * rho00 + mu * chi;
        // Off-diagonals do follow the printed xi scaling.
        const cdouble in01 =
            bloch_to_ket(in)(0, 0) * std::conj(bloch_to_ket(in)(1, 0));
        const double off_dev =
            std::abs(outcomes[0].corrected_state(0, 1) - xi * in01);
        const bool consistent = std::abs(sim00 - corrected) < 1e-11 && off_dev < 1e-11 &&
                                std::abs(printed - corrected) > 1e-3;
        r.discrepancy("depolarizing-output-diagonal", consistent,
                      "printed diagonal chi*rho00 + mu*chi = " + fmt(printed) +
                          " breaks unit trace; simulation gives xi*rho00 + mu*chi = " +
                          fmt(sim00));
    }
}

}  // namespace

VerifyReport run_verify(std::ostream& out) {
    Runner r(out);
    check_kraus_completeness(r);
    check_shared_state_oracle(r);
    check_entanglement_closed_forms(r);
    check_fef_oracle(r);
    check_fidelity_closed_forms(r);
    check_outcome_probabilities(r);
    check_quadrature_averages(r);
    check_direct_transmission(r);
    check_fent_thresholds(r);
    check_min_fidelity_thresholds(r);
    check_equatorial_thresholds(r);
    check_pccm(r);
    check_secure_regions(r);
    check_strategies(r);
    check_outcome_sanity(r);
    check_determinism(r);
    check_documented_discrepancies(r);
    out << r.report.passed << " passed, " << r.report.failed << " failed, "
        << r.report.discrepancies << " expected discrepancies\n";
    return r.report;
}

}  // namespace qtel
