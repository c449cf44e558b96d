#include "qtel/security.hpp"

#include "qtel/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClassicalLimit = 2.0 / 3.0;
constexpr double kNoCloningLimit = 5.0 / 6.0;

double bisect(const std::function<double(double)>& h, double lo, double hi, double tol) {
    double flo = h(lo);
    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = h(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Crossings of h over [lo, hi] on an n-point inclusive scan grid.
std::vector<double> scan_crossings(const std::function<double(double)>& h, double lo, double hi,
                                   int n, double tol) {
    std::vector<double> out;
    double prev_x = lo;
    double prev_v = h(lo);
    bool prev_zero = std::abs(prev_v) < 1e-14;
    if (prev_zero) out.push_back(lo);
    for (int i = 1; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        const double v = h(x);
        const bool zero = std::abs(v) < 1e-14;
        if (zero) {
            out.push_back(x);
        } else if (!prev_zero && (prev_v < 0.0) != (v < 0.0)) {
            out.push_back(bisect(h, prev_x, x, tol));
        }
        prev_x = x;
        prev_v = v;
        prev_zero = zero;
    }
    return out;
}

}  // namespace

SecurityVerdict classify(double fidelity, Reference reference, double delta) {
    SecurityVerdict v;
    v.reference = reference;
    switch (reference) {
        case Reference::Classical:
            v.reference_value = kClassicalLimit;
            break;
        case Reference::UniversalClone:
            v.reference_value = kNoCloningLimit;
            break;
        case Reference::Pccm:
            v.reference_value = pccm_fidelity(delta);
            break;
    }
    if (fidelity > v.reference_value)
        v.level = SecurityLevel::Secure;
    else if (fidelity > kClassicalLimit)
        v.level = SecurityLevel::Quantum;
    else
        v.level = SecurityLevel::Classical;
    return v;
}

double universal_clone_fidelity(int m) {
    if (m < 1) throw std::invalid_argument("universal_clone_fidelity needs m >= 1");
    return (2.0 * m + 1.0) / (3.0 * m);
}

double pccm_fidelity(double delta) {
    if (delta < -1e-12 || delta > kPi + 1e-12)
        throw std::invalid_argument("pccm_fidelity: delta must lie in [0, pi]");
    delta = std::clamp(delta, 0.0, kPi);
    const double kappa = delta < kPi / 2.0 ? 0.0 : 1.0;
    const double s = std::sin(0.5 * (delta + kappa * kPi));
    const double co = std::cos(0.5 * (delta - kappa * kPi));
    const double sd = std::sin(delta);
    return 0.5 * s * s + co * co * co * co + std::sqrt(2.0) / 4.0 * sd * sd;
}

ThresholdResult critical_damping(const std::function<double(double)>& quantity, double target,
                                 std::string label, std::optional<double> analytic_expected) {
    ThresholdResult result;
    result.label = std::move(label);
    result.target = target;
    result.analytic_expected = analytic_expected;
    result.crossings = scan_crossings([&](double p) { return quantity(p) - target; }, 0.0, 1.0,
                                      1001, 1e-9);
    return result;
}

std::optional<double> unequal_rate_boundary(ChannelKind kind, BellKind bell, double target,
                                            double fixed_rate) {
    if (!(fixed_rate >= 0.0 && fixed_rate <= 1.0))
        throw std::invalid_argument("rate must lie in [0, 1]");
    const auto h = [&](double other) {
        return fef_closed_form(DistributionScenario::two_arm(kind, bell, fixed_rate, other)) -
               target;
    };
    const std::vector<double> crossings = scan_crossings(h, 0.0, 1.0, 1001, 1e-9);
    if (crossings.empty()) return std::nullopt;
    return crossings.front();
}

std::vector<DeltaInterval> secure_delta_range(const std::function<double(double)>& fidelity_curve,
                                              Reference reference) {
    const auto margin = [&](double delta) {
        double ref = 0.0;
        switch (reference) {
            case Reference::Classical:
                ref = kClassicalLimit;
                break;
            case Reference::UniversalClone:
                ref = kNoCloningLimit;
                break;
            case Reference::Pccm:
                ref = pccm_fidelity(delta);
                break;
        }
        return fidelity_curve(delta) - ref;
    };

    constexpr int n = 2048;
    std::vector<DeltaInterval> intervals;
    bool inside = false;
    DeltaInterval current;
    double prev_x = 0.0, prev_v = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = kPi * i / (n - 1);
        const double v = margin(x);
        const bool above = v > 0.0;
        if (i == 0) {
            if (above) {
                inside = true;
                current.lo = 0.0;
            }
        } else if (above != inside) {
            const double edge = bisect(margin, prev_x, x, 1e-9);
            if (above) {
                inside = true;
                current.lo = edge;
            } else {
                inside = false;
                current.hi = edge;
                intervals.push_back(current);
            }
        }
        prev_x = x;
        prev_v = v;
    }
    (void)prev_v;
    if (inside) {
        current.hi = kPi;
        intervals.push_back(current);
    }
    return intervals;
}

double adc_phi_three_quarter_boundary(double x) {
    const double disc = (1.0 - x) * (2.0 * x * x - 6.0 * x + 3.0);
    if (disc < 0.0)
        throw std::invalid_argument("adc_phi_three_quarter_boundary: rate outside valid range");
    const double denom = 1.0 - 2.0 * x;
    if (std::abs(denom) < 1e-9)
        throw std::invalid_argument("adc_phi_three_quarter_boundary: removable pole at x = 1/2");
    return (-3.0 + x * (3.0 + 2.0 * x) + 2.0 * std::sqrt(disc)) / (denom * denom);
}

double adc_pole_secure_bound() {
    // Margin of the quartic pole approximation of the even-outcome fidelity
    // over the PCCM reference on the lower hemisphere, minimized over delta.
    const auto min_margin = [](double p) {
        const double q = 1.0 - p;
        double best = 1.0;
        constexpr int n = 4097;
        for (int i = 0; i < n; ++i) {
            const double delta = kPi / 2.0 + (kPi / 2.0) * i / (n - 1);
            const double gap = kPi - delta;
            const double gap2 = gap * gap;
            const double f = 1.0 - p / (8.0 * q) * gap2 * gap2;
            const double m = f - pccm_fidelity(delta);
            if (m < best) best = m;
        }
        return best;
    };
    double lo = 0.0, hi = 1.0 - 1e-9;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (min_margin(mid) >= -1e-10)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace qtel
