#include "doctest.h"

#include "qtel/channels.hpp"
#include "qtel/states.hpp"
#include "qtel/teleport.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace qtel;

namespace {
constexpr double kPi = std::numbers::pi;
const BellKind kBells[] = {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus,
                           BellKind::PhiMinus};
}  // namespace

TEST_CASE("noiseless teleportation is perfect for every bell resource") {
    for (BellKind bell : kBells) {
        SharedState shared;
        shared.rho = density(bell_state(bell));
        const auto outcomes =
            teleport(BlochState(1.234, 0.77), bell, shared, standard_strategy(bell));
        for (const TeleportOutcome& o : outcomes) {
            CHECK(std::abs(o.probability - 0.25) < 1e-13);
            REQUIRE(o.fidelity.has_value());
            CHECK(std::abs(*o.fidelity - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("outcome indices relabel the minus-family bells") {
    CHECK(outcome_index(BellKind::PsiPlus, 0, 0) == 0);
    CHECK(outcome_index(BellKind::PsiPlus, 0, 1) == 1);
    CHECK(outcome_index(BellKind::PsiPlus, 1, 0) == 2);
    CHECK(outcome_index(BellKind::PsiPlus, 1, 1) == 3);
    for (int bi : {0, 1})
        for (int ba : {0, 1}) {
            const int base = (bi << 1) | ba;
            CHECK(outcome_index(BellKind::PhiPlus, bi, ba) == base);
            CHECK(outcome_index(BellKind::PsiMinus, bi, ba) == (base ^ 2));
            CHECK(outcome_index(BellKind::PhiMinus, bi, ba) == (base ^ 2));
        }
}

TEST_CASE("simulated fidelities match the closed forms") {
    const struct {
        ChannelKind kind;
        BellKind bell;
    } configs[] = {
        {ChannelKind::AmplitudeDamping, BellKind::PsiPlus},
        {ChannelKind::AmplitudeDamping, BellKind::PsiMinus},
        {ChannelKind::AmplitudeDamping, BellKind::PhiPlus},
        {ChannelKind::AmplitudeDamping, BellKind::PhiMinus},
        {ChannelKind::PhaseDamping, BellKind::PsiPlus},
        {ChannelKind::PhaseDamping, BellKind::PhiMinus},
        {ChannelKind::Depolarizing, BellKind::PsiMinus},
        {ChannelKind::Depolarizing, BellKind::PhiPlus},
    };
    for (const auto& c : configs)
        for (int arm = 0; arm < 2; ++arm)
            for (double p : {0.15, 0.6}) {
                const DistributionScenario s =
                    arm == 0 ? DistributionScenario::one_arm(c.kind, c.bell, p)
                             : DistributionScenario::two_arm_equal(c.kind, c.bell, p);
                const SharedState shared = distribute(s);
                for (double d : {0.0, 0.35 * kPi, 0.5 * kPi, 0.95 * kPi}) {
                    const BlochState in(d, 0.6);
                    const auto outcomes =
                        teleport(in, c.bell, shared, prescribed_strategy(c.bell));
                    for (const TeleportOutcome& o : outcomes) {
                        REQUIRE(o.fidelity.has_value());
                        CHECK(std::abs(*o.fidelity - closed_form_fidelity(s, o.k, in)) <
                              1e-11);
                    }
                }
            }
}

TEST_CASE("spot values from the closed forms") {
    const BlochState eq(kPi / 2.0, 0.0);
    // two-arm ADC, p = 1/2, equator: even outcomes 3/4
    const auto adc = DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping,
                                                         BellKind::PsiPlus, 0.5);
    CHECK(std::abs(closed_form_fidelity(adc, 0, eq) - 0.75) < 1e-12);
    // two-arm PDC, p = 1/2, equator: 1 - (1 - q^2)/2 = 0.625
    const auto pdc =
        DistributionScenario::two_arm_equal(ChannelKind::PhaseDamping, BellKind::PsiPlus, 0.5);
    CHECK(std::abs(closed_form_fidelity(pdc, 2, eq) - 0.625) < 1e-12);
    // one-arm PDC, p = 1/2, equator: 0.75
    const auto pdc1 =
        DistributionScenario::one_arm(ChannelKind::PhaseDamping, BellKind::PhiPlus, 0.5);
    CHECK(std::abs(closed_form_fidelity(pdc1, 1, eq) - 0.75) < 1e-12);
    // one-arm DC, p = 1/2: (1 + q)/2 = 0.75 for every delta
    const auto dc =
        DistributionScenario::one_arm(ChannelKind::Depolarizing, BellKind::PsiMinus, 0.5);
    for (double d : {0.1, 1.0, 2.9})
        CHECK(std::abs(closed_form_fidelity(dc, 3, BlochState(d, 0.0)) - 0.75) < 1e-12);
}

TEST_CASE("fidelity is independent of the input phase") {
    const auto s = DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping,
                                                       BellKind::PhiPlus, 0.45);
    const SharedState shared = distribute(s);
    const auto a =
        teleport(BlochState(1.1, 0.0), s.bell, shared, prescribed_strategy(s.bell));
    const auto b =
        teleport(BlochState(1.1, 2.4), s.bell, shared, prescribed_strategy(s.bell));
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(*a[k].fidelity - *b[k].fidelity) < 1e-12);
        CHECK(std::abs(a[k].probability - b[k].probability) < 1e-12);
    }
}

TEST_CASE("adc outcome probabilities follow (1 +/- p cos d)/4") {
    const double p = 0.65, d = 0.9;
    const auto s =
        DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping, BellKind::PsiPlus, p);
    const auto outcomes = teleport(BlochState(d, 1.0), s.bell, distribute(s),
                                   prescribed_strategy(s.bell));
    for (const TeleportOutcome& o : outcomes) {
        const double sign = o.k % 2 == 0 ? 1.0 : -1.0;
        CHECK(std::abs(o.probability - (1.0 + sign * p * std::cos(d)) / 4.0) < 1e-13);
    }
    const auto one =
        DistributionScenario::one_arm(ChannelKind::AmplitudeDamping, BellKind::PsiPlus, p);
    for (const TeleportOutcome& o :
         teleport(BlochState(d, 1.0), one.bell, distribute(one), prescribed_strategy(one.bell)))
        CHECK(std::abs(o.probability - 0.25) < 1e-13);
}

TEST_CASE("closed form rejects uncovered configurations") {
    const BlochState in(1.0, 0.0);
    CHECK_THROWS_AS(closed_form_fidelity(DistributionScenario::two_arm(
                                             ChannelKind::AmplitudeDamping, BellKind::PsiPlus,
                                             0.2, 0.6),
                                         0, in),
                    std::invalid_argument);
    CHECK_THROWS_AS(closed_form_fidelity(DistributionScenario::two_arm_equal(
                                             ChannelKind::AmplitudeDamping, BellKind::PsiPlus,
                                             0.5, true),
                                         0, in),
                    std::invalid_argument);
}

TEST_CASE("fidelity report means and the selective mean") {
    const auto s = DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping,
                                                       BellKind::PsiPlus, 0.5);
    const FidelityReport rep = fidelity_report(BlochState(1.3, 0.2), s.bell, distribute(s),
                                               prescribed_strategy(s.bell));
    double wsum = 0.0, usum = 0.0, psum = 0.0;
    for (const TeleportOutcome& o : rep.outcomes) {
        wsum += o.probability * *o.fidelity;
        usum += *o.fidelity;
        psum += o.probability;
    }
    CHECK(std::abs(psum - 1.0) < 1e-13);
    CHECK(std::abs(rep.probability_weighted_mean - wsum) < 1e-14);
    CHECK(std::abs(rep.unweighted_outcome_mean - usum / 4.0) < 1e-14);
    const double sel = rep.selective_mean({1, 3});
    const double expect = (rep.outcomes[1].probability * *rep.outcomes[1].fidelity +
                           rep.outcomes[3].probability * *rep.outcomes[3].fidelity) /
                          (rep.outcomes[1].probability + rep.outcomes[3].probability);
    CHECK(std::abs(sel - expect) < 1e-14);
}

TEST_CASE("bloch averages match the closed references") {
    const CorrectionStrategy strat = prescribed_strategy(BellKind::PsiPlus);
    const double p = 0.5, q = 0.5;
    const auto two =
        DistributionScenario::two_arm_equal(ChannelKind::AmplitudeDamping, BellKind::PsiPlus, p);
    CHECK(std::abs(bloch_average_fidelity(two, strat, Unweighted{}) -
                   adc_two_arm_outcome_average(p)) < 1e-8);
    CHECK(std::abs(adc_two_arm_outcome_average(0.5) - (1.0 + 0.25 * std::log(1.0 / 3.0))) <
          1e-12);
    const auto one =
        DistributionScenario::one_arm(ChannelKind::AmplitudeDamping, BellKind::PsiPlus, p);
    CHECK(std::abs(bloch_average_fidelity(one, strat, Weighted{}) -
                   (2.0 / 3.0 + (2.0 * std::sqrt(q) - p) / 6.0)) < 1e-8);
    CHECK(std::abs(bloch_average_fidelity(one, strat, Selective{{1, 3}, Hemisphere::Upper}) -
                   (2.0 / 3.0 + (4.0 * std::sqrt(q) + p) / 12.0)) < 1e-8);
    const auto pdc =
        DistributionScenario::two_arm_equal(ChannelKind::PhaseDamping, BellKind::PsiPlus, p);
    CHECK(std::abs(bloch_average_fidelity(pdc, strat, Weighted{}) - (1.0 - p * (2.0 - p) / 3.0)) <
          1e-8);
    const auto dc =
        DistributionScenario::one_arm(ChannelKind::Depolarizing, BellKind::PsiPlus, p);
    CHECK(std::abs(bloch_average_fidelity(dc, strat, Weighted{}) - (1.0 + q) / 2.0) < 1e-8);
}

TEST_CASE("small-rate outcome average stays smooth across the series cutover") {
    // Both branches must track 1 - 2p/3 + p^2/3 up to the cubic term.
    for (double p : {1e-4, 0.9e-3, 1.1e-3, 1e-2}) {
        const double quadratic = 1.0 - 2.0 / 3.0 * p + p * p / 3.0;
        CHECK(std::abs(adc_two_arm_outcome_average(p) - quadratic) < 0.3 * p * p * p + 1e-9);
    }
    CHECK(std::abs(adc_two_arm_outcome_average(1e-8) - 1.0) < 1e-7);
    CHECK(std::abs(adc_two_arm_outcome_average(1.0) - 0.5) < 1e-12);
}

TEST_CASE("direct transmission closed forms") {
    const BlochState in(0.6 * kPi, 1.8);
    const double p = 0.7, q = 0.3;
    const double s2 = std::sin(0.6 * kPi) * std::sin(0.6 * kPi);
    CHECK(std::abs(direct_transmission_fidelity(in, ChannelKind::PhaseDamping, p) -
                   (1.0 - 0.5 * p * s2)) < 1e-13);
    CHECK(std::abs(direct_transmission_fidelity(in, ChannelKind::Depolarizing, p) -
                   (1.0 + q) / 2.0) < 1e-13);
    const auto one =
        DistributionScenario::one_arm(ChannelKind::AmplitudeDamping, BellKind::PsiPlus, p);
    CHECK(std::abs(direct_transmission_fidelity(in, ChannelKind::AmplitudeDamping, p) -
                   closed_form_fidelity(one, 1, in)) < 1e-12);
}

TEST_CASE("optimal strategy recovers the algebraic table without noise") {
    for (BellKind bell : kBells) {
        SharedState shared;
        shared.rho = density(bell_state(bell));
        const CorrectionStrategy opt =
            optimal_strategy(bell, shared, PerOutcomeAtPoint{BlochState(1.0, 0.5)});
        CHECK(opt.table == standard_strategy(bell).table);
        CHECK(opt.provenance == CorrectionStrategy::Provenance::BruteForceOptimal);
    }
}

TEST_CASE("optimal strategy never trails the prescription on average") {
    for (ChannelKind kind : {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping,
                             ChannelKind::Depolarizing}) {
        const auto s = DistributionScenario::two_arm_equal(kind, BellKind::PsiPlus, 0.7);
        const SharedState shared = distribute(s);
        const CorrectionStrategy opt = optimal_strategy(s.bell, shared, BlochAverage{});
        const double a = bloch_average_fidelity(s, opt, Weighted{});
        const double b = bloch_average_fidelity(s, prescribed_strategy(s.bell), Weighted{});
        CHECK(a >= b - 1e-12);
    }
}
